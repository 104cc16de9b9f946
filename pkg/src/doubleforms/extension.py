"""Vanishing-trace extension of double forms from T^n to R^{n+1}.

Given a form on T^n with vanishing trace in the m-summand, the extension is

    (-1)^k / C * push( u_N * hodge^{-1} d_L d_R( u_N^{-1} * star_S( pull(phi) ) ) )

where phi is any homogeneous degree-r extension, ``pull``/``push`` are the
sphere pullback and pushforward, star_S is the sphere double star, k = p+q and
C = (2r+p+m+1)(2r+q-m).  C vanishes exactly when r = 0 and m = q, where no
vanishing-trace extension need exist.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional

from . import double_algebra as da
from .poly_forms import (
    PolyDoubleForm,
    d_left,
    d_right,
    double_hodge_inv,
    in_summand,
    project_summand,
)
from .simplex_trace import (
    SimplexForm,
    arbitrary_extension,
    facet_trace,
    has_vanishing_trace,
    trace_hyperplane,
    trace_to_simplex,
)
from .sphere_lift import (
    NotDivisible,
    divide_uN,
    double_star_sphere,
    multiply_uN,
    sphere_pullback,
    sphere_pushforward,
)


class ExtensionUnavailable(ArithmeticError):
    """r = 0 and m = q: the constant C vanishes."""


class TraceNotVanishing(ValueError):
    """The input does not have vanishing trace on the boundary of T^n."""


class SummandMismatch(ValueError):
    """The input is not in the requested summand."""


def extension_constant(p: int, q: int, m: int, r: int) -> int:
    return (2 * r + p + m + 1) * (2 * r + q - m)


@dataclass(frozen=True)
class ExtensionResult:
    form: PolyDoubleForm
    constant_C: Fraction

    def to_json(self) -> dict:
        from .rationals_linalg import format_rational
        return {"form": self.form.to_json(), "constant_C": format_rational(self.constant_C)}


def _check_input(phibar: SimplexForm, p: int, q: int, m: int, r: int) -> None:
    if (phibar.p, phibar.q) != (p, q):
        raise ValueError(f"form has degree ({phibar.p},{phibar.q}), expected ({p},{q})")
    if r < 0:
        raise ValueError("polynomial degree r must be nonnegative")
    if phibar.form.max_degree() > r:
        raise ValueError(f"form has polynomial degree {phibar.form.max_degree()} > r = {r}")
    if not in_summand(phibar.form, m):
        raise SummandMismatch(f"form is not in the m={m} summand")
    if not has_vanishing_trace(phibar):
        raise TraceNotVanishing("form has a nonzero facet trace")


def extend_from(phi: PolyDoubleForm, p: int, q: int, m: int, r: int) -> PolyDoubleForm:
    """Run the extension formula on a given homogeneous degree-r extension."""
    C = extension_constant(p, q, m, r)
    if r == 0 and m == q:
        raise ExtensionUnavailable("r = 0 and m = q: the constant C vanishes")
    assert C != 0
    if phi.is_zero():
        return PolyDoubleForm.zero(phi.dim, p, q)
    if not phi.is_homogeneous(r):
        raise ValueError(f"arbitrary extension must be homogeneous of degree {r}")
    psi = double_star_sphere(sphere_pullback(phi))
    try:
        psi = divide_uN(psi)
    except NotDivisible as exc:
        raise TraceNotVanishing(str(exc)) from exc
    psi = double_hodge_inv(d_left(d_right(psi)))
    sign = -1 if (p + q) % 2 else 1
    psi = multiply_uN(psi).scale(Fraction(sign, C))
    return sphere_pushforward(psi)


def extend(phibar: SimplexForm, p: int, q: int, m: int, r: int,
           eliminate: int = 0) -> ExtensionResult:
    """Vanishing-trace extension of ``phibar`` from T^n to R^{n+1}.

    ``eliminate`` selects which barycentric coordinate is dropped when
    building the intermediate arbitrary extension; the result does not
    depend on it.
    """
    if r == 0 and m == q:
        raise ExtensionUnavailable("r = 0 and m = q: the constant C vanishes")
    _check_input(phibar, p, q, m, r)
    n = phibar.n
    C = Fraction(extension_constant(p, q, m, r))
    if phibar.is_zero():
        return ExtensionResult(PolyDoubleForm.zero(n + 1, p, q), C)
    phi = arbitrary_extension(phibar, r, eliminate)
    return ExtensionResult(extend_from(phi, p, q, m, r), C)


@dataclass
class ExtensionReport:
    ok: bool
    status: str
    constant_C: Optional[Fraction] = None
    C_factors: tuple = ()
    checks: Dict[str, bool] = field(default_factory=dict)
    degrees: Dict[str, object] = field(default_factory=dict)
    message: str = ""

    def to_json(self) -> dict:
        from .rationals_linalg import format_rational
        return {
            "ok": self.ok, "status": self.status,
            "constant_C": None if self.constant_C is None else format_rational(self.constant_C),
            "C_factors": list(self.C_factors), "checks": dict(self.checks),
            "degrees": dict(self.degrees), "message": self.message,
        }


def verify_extension(result_form: PolyDoubleForm, phibar: SimplexForm, m: int) -> Dict[str, bool]:
    n = phibar.n
    back = trace_to_simplex(result_form, n, phibar.vertices)
    return {
        "trace_recovers_input": back.form.same_terms(phibar.form),
        "hyperplane_traces_vanish": all(trace_hyperplane(result_form, i).is_zero()
                                        for i in range(n + 1)),
        "in_summand": result_form.is_zero() or in_summand(result_form, m),
    }


def extend_check(phibar: SimplexForm, p: int, q: int, m: int, r: int) -> ExtensionReport:
    """Run :func:`extend` and re-verify its output; never raises on the
    excluded case."""
    factors = (2 * r + p + m + 1, 2 * r + q - m)
    C = Fraction(factors[0] * factors[1])
    rep = ExtensionReport(ok=False, status="failure", constant_C=C, C_factors=factors)
    if r == 0 and m == q:
        rep.status = "unavailable"
        rep.message = f"C has a zero factor: C = {factors[0]} * {factors[1]}"
        return rep
    try:
        res = extend(phibar, p, q, m, r)
    except (TraceNotVanishing, SummandMismatch, ValueError) as exc:
        rep.message = f"{type(exc).__name__}: {exc}"
        return rep
    rep.checks = verify_extension(res.form, phibar, m)
    rep.degrees = {"input_degree": phibar.form.max_degree(), "r": r,
                   "sphere_degree": 2 * r + p + q,
                   "output_degrees": sorted(res.form.degrees())}
    rep.ok = all(rep.checks.values())
    rep.status = "ok" if rep.ok else "failure"
    return rep


def decompose_and_extend(phibar: SimplexForm, r: int) -> Dict[int, ExtensionResult]:
    """Split ``phibar`` into summands and extend each nonzero component.

    Errors from individual components are collected and re-raised together as
    the first error type encountered, with all messages joined.
    """
    p, q, n = phibar.p, phibar.q, phibar.n
    out: Dict[int, ExtensionResult] = {}
    errors: List[Exception] = []
    for m in da.valid_summands(p, q, n):
        comp = SimplexForm(project_summand(phibar.form, m), phibar.vertices)
        if comp.is_zero():
            continue
        try:
            out[m] = extend(comp, p, q, m, r)
        except (ExtensionUnavailable, TraceNotVanishing, SummandMismatch) as exc:
            errors.append(exc)
    if errors:
        msg = "; ".join(f"{type(e).__name__}: {e}" for e in errors)
        raise type(errors[0])(msg)
    return out
