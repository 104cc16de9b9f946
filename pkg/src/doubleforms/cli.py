"""Command-line front end.

Every subcommand prints one JSON document on stdout of the form
``{"command": ..., "status": ..., "payload": ...}``; progress and timing go
to stderr.  Exit codes: 0 success, 1 a verification found a violation,
2 the requested extension is unavailable (r = 0 and m = q), 3 the input
trace does not vanish, 64 usage error, 65 malformed input data.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
import time
from typing import List, Optional

from . import double_algebra as da

log = logging.getLogger("doubleforms")

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_UNAVAILABLE = 2
EXIT_TRACE = 3
EXIT_USAGE = 64
EXIT_DATA = 65


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _emit(command: str, status: str, payload) -> None:
    doc = {"command": command, "status": status, "payload": payload}
    sys.stdout.write(json.dumps(doc, ensure_ascii=False, sort_keys=False) + "\n")


def _read_json(path: str):
    try:
        if path == "-":
            return json.load(sys.stdin)
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise ValueError(f"{path} is not valid JSON: {exc}") from exc


# -- subcommands -------------------------------------------------------------------

def cmd_dims(args) -> int:
    from .fe_assembly import dim_full, dim_ring, dim_trace_free, space_dimension
    from .simplex_trace import ring_vanishing_basis, vanishing_trace_basis

    kind = "full" if args.full else "ring" if args.ring else "trace-free"
    fn = {"trace-free": dim_trace_free, "full": dim_full, "ring": dim_ring}[kind]
    try:
        value = fn(args.p, args.q, args.m, args.n)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    payload = {"p": args.p, "q": args.q, "m": args.m, "n": args.n, "kind": kind, "value": value}
    status = "ok"
    if args.verify_rank:
        if kind == "trace-free":
            rk = len(vanishing_trace_basis(args.p, args.q, args.m, 0, args.n)) \
                if args.m in da.valid_summands(args.p, args.q, args.n) else 0
        elif kind == "full":
            rk = space_dimension(args.p, args.q, args.m, 0, args.n)
        else:
            rk = len(ring_vanishing_basis(args.p, args.q, args.m, 0, args.n))
        payload["rank"] = rk
        payload["rank_matches"] = rk == value
        status = "ok" if rk == value else "failure"
    _emit("dims", status, payload)
    return EXIT_OK if status == "ok" else EXIT_VIOLATION


def cmd_dim_table(args) -> int:
    from .tables import table1

    if args.n_max < 0:
        raise UsageError("--n-max must be nonnegative")
    rows = table1(args.n_max)
    if args.text:
        cols = list(range(args.n_max + 1))
        width = max(len(r["label"]) for r in rows)
        lines = [" " * width + " | " + " ".join(f"{n:>3}" for n in cols)]
        for r in rows:
            cells = " ".join(f"{r['cells'].get(str(n), ''):>3}" for n in cols)
            lines.append(f"{r['label']:<{width}} | {cells}")
        sys.stdout.write("\n".join(lines) + "\n")
        return EXIT_OK
    _emit("dim-table", "ok", {"n_max": args.n_max, "columns": list(range(args.n_max + 1)), "rows": rows})
    return EXIT_OK


def _load_mesh(path: str):
    from .fe_assembly import SimplicialComplex

    data = _read_json(path)
    try:
        return SimplicialComplex.from_json(data)
    except (KeyError, TypeError) as exc:
        raise ValueError(f"mesh JSON must have num_vertices and cells: {exc}") from exc


def cmd_basis(args) -> int:
    from .extension import ExtensionUnavailable
    from .fe_assembly import global_basis
    from .tables import format_form

    T = _load_mesh(args.mesh)
    try:
        B = global_basis(T, args.p, args.q, args.m, args.r, verify=not args.no_verify)
    except ExtensionUnavailable as exc:
        _emit("basis", "unavailable", {"message": str(exc)})
        return EXIT_UNAVAILABLE
    except da.InvalidSummand as exc:
        raise UsageError(str(exc)) from exc
    if args.pretty:
        for i, el in enumerate(B):
            owner = ",".join(map(str, el.owner_face))
            sys.stdout.write(f"[{i}] face ({owner}) #{el.meta[4]}: {format_form(el.barycentric, el.owner_face)}\n")
        return EXIT_OK
    payload = {"mesh": T.to_json(), "p": args.p, "q": args.q, "m": args.m, "r": args.r,
               "count": len(B), "elements": [el.to_json() for el in B]}
    _emit("basis", "ok", payload)
    return EXIT_OK


def cmd_dof(args) -> int:
    from .fe_assembly import dof_table, rank_dof_table

    try:
        if args.r == 0:
            table = dof_table(args.p, args.q, args.m, args.N)
        else:
            if args.m not in da.valid_summands(args.p, args.q, args.N):
                raise da.InvalidSummand(f"m={args.m} is not a summand of ({args.p},{args.q}) for N={args.N}")
            table = rank_dof_table(args.p, args.q, args.m, args.r, args.N)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    payload = {"p": args.p, "q": args.q, "m": args.m, "r": args.r, "N": args.N}
    payload.update(table.to_json())
    _emit("dof", "ok", payload)
    return EXIT_OK


def cmd_extend(args) -> int:
    from .extension import ExtensionUnavailable, SummandMismatch, TraceNotVanishing, extend, verify_extension
    from .simplex_trace import SimplexForm

    data = _read_json(args.input)
    try:
        sf = SimplexForm.from_json(data)
    except (KeyError, TypeError) as exc:
        raise ValueError(f"input is not a simplex form: {exc}") from exc
    p, q = sf.p, sf.q
    C_factors = [2 * args.r + p + args.m + 1, 2 * args.r + q - args.m]
    try:
        res = extend(sf, p, q, args.m, args.r)
    except ExtensionUnavailable as exc:
        _emit("extend", "unavailable", {"message": str(exc), "C_factors": C_factors})
        return EXIT_UNAVAILABLE
    except TraceNotVanishing as exc:
        _emit("extend", "failure", {"error": "TraceNotVanishing", "message": str(exc)})
        return EXIT_TRACE
    except SummandMismatch as exc:
        _emit("extend", "failure", {"error": "SummandMismatch", "message": str(exc)})
        return EXIT_DATA
    payload = res.to_json()
    payload["C_factors"] = C_factors
    payload["checks"] = verify_extension(res.form, sf, args.m)
    ok = all(payload["checks"].values())
    _emit("extend", "ok" if ok else "failure", payload)
    return EXIT_OK if ok else EXIT_VIOLATION


def cmd_verify(args) -> int:
    from .verify import SUITES

    fn = SUITES[args.suite]
    kwargs = {"seed": args.seed}
    if args.max_dim is not None:
        kwargs["max_dim"] = args.max_dim
    if args.max_degree is not None:
        if args.suite == "algebra":
            raise UsageError("the algebra suite has no polynomial degree")
        kwargs["max_degree"] = args.max_degree
    if args.cases is not None:
        if args.suite == "fem":
            raise UsageError("the fem suite is exhaustive and takes no --cases")
        kwargs["cases"] = args.cases
    rep = fn(**kwargs)
    for c in rep.checks:
        log.info("%-50s %5d cases  %s", c.name, c.cases, "ok" if c.ok else "FAIL")
    doc = rep.to_json()
    _emit("verify", doc.pop("status"), doc)
    return EXIT_OK if rep.ok else EXIT_VIOLATION


def cmd_young(args) -> int:
    from .rep_theory import diagram_summand, diagram_trace_free, hook_dim_gl, hook_dim_sym

    try:
        if args.action == "dim-gl":
            if args.n is None:
                raise UsageError("dim-gl needs --n (the vector space dimension)")
            D = diagram_summand(args.p, args.q, args.m)
            payload = {"diagram": D.to_json(), "d": args.n, "value": hook_dim_gl(D, args.n)}
        elif args.action == "dim-sym":
            if args.n is None:
                raise UsageError("dim-sym needs --n (the simplex dimension)")
            D = diagram_trace_free(args.p, args.q, args.m, args.n)
            payload = {"diagram": D.to_json(), "n": args.n, "value": hook_dim_sym(D)}
        else:
            payload = {"summand": diagram_summand(args.p, args.q, args.m).to_json()}
            if args.n is not None:
                payload["trace_free"] = diagram_trace_free(args.p, args.q, args.m, args.n).to_json()
    except UsageError:
        raise
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    payload.update({"p": args.p, "q": args.q, "m": args.m})
    _emit("young", "ok", payload)
    return EXIT_OK


# -- parser ---------------------------------------------------------------------------

def _nonneg(s: str) -> int:
    try:
        v = int(s)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {s!r}")
    if v < 0:
        raise argparse.ArgumentTypeError(f"expected a nonnegative integer, got {v}")
    return v


def _pqm(sp, n_flag: Optional[str] = "--n", n_required: bool = True) -> None:
    sp.add_argument("--p", type=_nonneg, required=True)
    sp.add_argument("--q", type=_nonneg, required=True)
    sp.add_argument("--m", type=_nonneg, required=True)
    if n_flag:
        sp.add_argument(n_flag, type=_nonneg, required=n_required)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="doubleforms", description="Exact computations with polynomial double forms.")
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sp = sub.add_parser("dims", help="closed-form dimension counts")
    _pqm(sp)
    kind = sp.add_mutually_exclusive_group()
    kind.add_argument("--trace-free", action="store_true", help="vanishing-trace space on T^n (default)")
    kind.add_argument("--full", action="store_true", help="all constant forms in the summand on T^n")
    kind.add_argument("--ring", action="store_true", help="vanishing coordinate traces on R^{n+1}")
    sp.add_argument("--verify-rank", action="store_true", help="cross-check by exact rank computation")
    sp.set_defaults(func=cmd_dims)

    sp = sub.add_parser("dim-table", help="vanishing-trace dimensions for the low-degree rows")
    sp.add_argument("--n-max", type=_nonneg, default=6)
    sp.add_argument("--text", action="store_true", help="print an aligned text table instead of JSON")
    sp.set_defaults(func=cmd_dim_table)

    sp = sub.add_parser("basis", help="geometric-decomposition basis on a mesh")
    sp.add_argument("--mesh", required=True, help="mesh JSON file, or - for stdin")
    _pqm(sp, None)
    sp.add_argument("--r", type=_nonneg, default=0)
    fmt = sp.add_mutually_exclusive_group()
    fmt.add_argument("--json", action="store_true", help="JSON output (default)")
    fmt.add_argument("--pretty", action="store_true", help="one line per element in dλ notation")
    sp.add_argument("--no-verify", action="store_true", help="skip the invariant checks")
    sp.set_defaults(func=cmd_basis)

    sp = sub.add_parser("dof", help="degrees of freedom per face dimension")
    _pqm(sp, "--N")
    sp.add_argument("--r", type=_nonneg, default=0, help="r > 0 counts by rank")
    sp.set_defaults(func=cmd_dof)

    sp = sub.add_parser("extend", help="vanishing-trace extension of a simplex form")
    sp.add_argument("--input", required=True, help="simplex form JSON file, or - for stdin")
    sp.add_argument("--m", type=_nonneg, required=True)
    sp.add_argument("--r", type=_nonneg, required=True)
    sp.set_defaults(func=cmd_extend)

    sp = sub.add_parser("verify", help="run a seeded identity suite")
    sp.add_argument("--suite", required=True, choices=["algebra", "poly", "sphere", "extension", "fem"])
    sp.add_argument("--max-dim", type=_nonneg)
    sp.add_argument("--max-degree", type=_nonneg)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--cases", type=_nonneg)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("young", help="Young diagrams and hook-length counts")
    _pqm(sp, "--n", n_required=False)
    sp.add_argument("action", choices=["dim-gl", "dim-sym", "diagram"])
    sp.set_defaults(func=cmd_young)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s", stream=sys.stderr)
    start = time.perf_counter()
    try:
        code = args.func(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        sys.stderr.write(f"doubleforms {args.command}: error: {exc}\n")
        return EXIT_USAGE
    except ValueError as exc:
        _emit(args.command, "failure", {"error": type(exc).__name__, "message": str(exc)})
        return EXIT_DATA
    log.info("%s finished in %.3f s", args.command, time.perf_counter() - start)
    return code


if __name__ == "__main__":
    sys.exit(main())
