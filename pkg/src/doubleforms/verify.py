"""Seeded randomized identity suites.

Each suite draws its cases from ``random.Random(seed)`` in a fixed order, so a
failing case can be replayed from the seed alone.  Suites never raise on a
failed identity; they record it in the report.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from . import double_algebra as da
from . import exterior_core as ec
from . import poly_forms as pf
from .double_algebra import DoubleCovector
from .poly_forms import PolyDoubleForm
from .rationals_linalg import EchelonBasis, sparse_nullspace


@dataclass
class CheckResult:
    name: str
    cases: int = 0
    failures: List[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_json(self) -> dict:
        return {"name": self.name, "cases": self.cases, "ok": self.ok,
                "failures": self.failures[:10]}


@dataclass
class SuiteReport:
    suite: str
    seed: int
    params: Dict[str, int]
    checks: List[CheckResult] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def check(self, name: str) -> CheckResult:
        for c in self.checks:
            if c.name == name:
                return c
        c = CheckResult(name)
        self.checks.append(c)
        return c

    def record(self, name: str, passed: bool, detail: str) -> None:
        c = self.check(name)
        c.cases += 1
        if not passed:
            c.failures.append(detail)

    def to_json(self) -> dict:
        return {"suite": self.suite, "seed": self.seed, "params": dict(self.params),
                "status": "ok" if self.ok else "failure",
                "checks": [c.to_json() for c in self.checks]}


# -- random generators ------------------------------------------------------------

def _subset(rng: random.Random, d: int, k: int) -> Tuple[int, ...]:
    return tuple(sorted(rng.sample(range(d), k)))


def _coeff(rng: random.Random) -> Fraction:
    return Fraction(rng.randint(-5, 5), rng.randint(1, 3))


def random_covector(rng: random.Random, d: int, p: int, q: int, nterms: int = 6) -> DoubleCovector:
    terms: Dict = {}
    for _ in range(nterms):
        key = (_subset(rng, d, p), _subset(rng, d, q))
        terms[key] = terms.get(key, 0) + _coeff(rng)
    return DoubleCovector(d, p, q, terms)


def random_multicovector(rng: random.Random, d: int, k: int, nterms: int = 4) -> ec.Multicovector:
    out = ec.Multicovector.zero(d, k)
    for _ in range(nterms):
        out = out + ec.Multicovector.basis(d, _subset(rng, d, k), _coeff(rng))
    return out


def random_monomial(rng: random.Random, d: int, r: int) -> Tuple[int, ...]:
    e = [0] * d
    for _ in range(r):
        e[rng.randrange(d)] += 1
    return tuple(e)


def random_poly(rng: random.Random, d: int, p: int, q: int, r: int, nterms: int = 5,
                coords: str = "lambda", homogeneous: bool = True) -> PolyDoubleForm:
    terms: Dict = {}
    for _ in range(nterms):
        deg = r if homogeneous else rng.randint(0, r)
        key = (random_monomial(rng, d, deg), _subset(rng, d, p), _subset(rng, d, q))
        terms[key] = terms.get(key, 0) + _coeff(rng)
    return PolyDoubleForm(d, p, q, {k: v for k, v in terms.items() if v}, coords)


def _pqd(rng: random.Random, max_dim: int, max_pq: int, min_dim: int = 1) -> Tuple[int, int, int]:
    d = rng.randint(min_dim, max_dim)
    return d, rng.randint(0, min(d, max_pq)), rng.randint(0, min(d, max_pq))


# -- helpers -------------------------------------------------------------------------

def _eq(a, b) -> bool:
    return a.terms == b.terms and (a.p, a.q) == (b.p, b.q)


def _sign(e: int) -> int:
    return -1 if e % 2 else 1


def _psum(a: PolyDoubleForm, b: PolyDoubleForm) -> PolyDoubleForm:
    """Sum that tolerates operators returning zero forms of shifted degree."""
    if a.is_zero():
        return b
    if b.is_zero():
        return a
    return a + b


def _poly_same(a: PolyDoubleForm, b: PolyDoubleForm) -> bool:
    if a.is_zero() or b.is_zero():
        return a.is_zero() and b.is_zero()
    return (a.p, a.q) == (b.p, b.q) and a.same_terms(b)


def _span_rank(forms: Sequence, key=lambda t: t) -> int:
    eb = EchelonBasis()
    idx: Dict = {}
    for f in forms:
        eb.add({idx.setdefault(key(k), len(idx)): c for k, c in f.terms.items()})
    return len(eb)


# -- suites ------------------------------------------------------------------------------

def suite_algebra(seed: int = 0, max_dim: int = 4, cases: int = 100) -> SuiteReport:
    """Constant-coefficient identities for covectors and double covectors."""
    rng = random.Random(seed)
    rep = SuiteReport("algebra", seed, {"max_dim": max_dim, "cases": cases})
    for _ in range(cases):
        d, p, q = _pqd(rng, max_dim, 4)
        phi, psi = random_covector(rng, d, p, q), random_covector(rng, d, p, q)
        tag = f"d={d} p={p} q={q}"

        lhs = da.bianchi_s(da.bianchi_s_star(phi)) - da.s_star_s(phi)
        rep.record("ss*-s*s=p-q", _eq(lhs, phi.scale(p - q)), tag)

        parts = {m: da.project_summand(phi, m) for m in da.valid_summands(p, q, d)}
        total = DoubleCovector.zero(d, p, q)
        ok = True
        for m, x in parts.items():
            total = total + x
            ok &= _eq(da.s_star_s(x), x.scale(da.eigenvalue(p, q, m)))
        rep.record("eigenvalues m(m+p-q+1)", ok and _eq(total, phi), tag)

        if q >= 1 and p + 1 <= d:
            chi = random_covector(rng, d, p + 1, q - 1)
            rep.record("adjoint <s phi, chi> = <phi, s* chi>",
                       da.inner_product(da.bianchi_s(phi), chi) == da.inner_product(phi, da.bianchi_s_star(chi)), tag)

        rep.record("tau s = s* tau",
                   _eq(da.transpose_tau(da.bianchi_s(phi)), da.bianchi_s_star(da.transpose_tau(phi))), tag)
        rep.record("tau star = star tau",
                   _eq(da.transpose_tau(da.double_hodge(phi)), da.double_hodge(da.transpose_tau(phi))), tag)
        k = p + q
        rep.record("star s* = (-1)^(k+1) s star",
                   _eq(da.double_hodge(da.bianchi_s_star(phi)),
                       da.bianchi_s(da.double_hodge(phi)).scale(_sign(k + 1))), tag)
        rep.record("star^-1 star = id", _eq(da.double_hodge_inv(da.double_hodge(phi)), phi), tag)

        ok_t = ok_h = ok_th = True
        for m, x in parts.items():
            mstar = m + p - q
            ok_t &= _eq(da.project_summand(da.transpose_tau(x), mstar), da.transpose_tau(x))
            hx = da.double_hodge(x)
            ok_h &= _eq(da.project_summand(hx, mstar), hx)
            thx = da.transpose_tau(hx)
            ok_th &= _eq(da.project_summand(thx, m), thx)
        rep.record("tau maps m to m*", ok_t, tag)
        rep.record("star maps m to m*", ok_h, tag)
        rep.record("tau star preserves m", ok_th, tag)

        ok_w = all(da.wedge_collapse(x).is_zero() for m, x in parts.items() if m < q)
        rep.record("wedge kills m < q", ok_w, tag)

        if p == q:
            sym = DoubleCovector.zero(d, p, q)
            skew = DoubleCovector.zero(d, p, q)
            for m, x in parts.items():
                if m % 2:
                    skew = skew + x
                else:
                    sym = sym + x
            rep.record("even m symmetric, odd m skew",
                       _eq(da.transpose_tau(sym), sym) and _eq(da.transpose_tau(skew), skew.scale(-1)), tag)

        ip = da.inner_product(phi, psi)
        top = da.double_hodge_inv(da.double_wedge(phi, da.double_hodge(psi)))
        rep.record("<phi,psi> = star^-1(phi wedge star psi)",
                   top.terms.get(((), ()), Fraction(0)) == ip and set(top.terms) <= {((), ())}, tag)

        kk = rng.randint(0, d)
        a = random_multicovector(rng, d, kk)
        acc = ec.Multicovector.zero(d, kk)
        for i in range(d):
            acc = acc + ec.wedge(ec.Multicovector.basis(d, (i,)), ec.contract(i, a)) if kk else acc
        rep.record("sum dx^i ^ (e_i . a) = k a", acc.terms == a.scale(kk).terms, f"d={d} k={kk}")
        rep.record("star star = (-1)^(k(d-k))",
                   ec.hodge(ec.hodge(a)).terms == a.scale(_sign(kk * (d - kk))).terms, f"d={d} k={kk}")

    # exhaustive rank statements in small dimension
    for d in range(1, min(max_dim, 4) + 1):
        for p in range(d + 1):
            for q in range(d + 1):
                _rank_checks(rep, d, p, q)
    return rep


def _matrix_rank(op: Callable, d: int, p: int, q: int) -> int:
    return _span_rank([op(b) for b in DoubleCovector.all_basis(d, p, q)])


def _rank_checks(rep: SuiteReport, d: int, p: int, q: int) -> None:
    tag = f"d={d} p={p} q={q}"
    dom = len(DoubleCovector.all_basis(d, p, q))
    for m in da.valid_summands(p, q, d):
        r = _matrix_rank(lambda b: da.project_summand(b, m), d, p, q)
        rep.record("rank P_m = dim formula", r == da.summand_dimension(p, q, m, d), f"{tag} m={m}")
        if m >= 1 and p + m <= d:
            def sm(b, m=m):
                x = da.project_summand(b, m)
                for _ in range(m):
                    x = da.bianchi_s(x)
                return x
            target = da.summand_dimension(p + m, q - m, 0, d)
            rep.record("s^m: m-summand onto 0-summand", r == _matrix_rank(sm, d, p, q) == target, f"{tag} m={m}")
    if q in da.valid_summands(p, q, d):
        rk = _matrix_rank(lambda b: da.wedge_collapse(da.project_summand(b, q)), d, p, q)
        rep.record("wedge injective on the q-summand", rk == da.summand_dimension(p, q, q, d), tag)
    if q >= 1 and p + 1 <= d:
        cod = len(DoubleCovector.all_basis(d, p + 1, q - 1))
        rk = _matrix_rank(da.bianchi_s, d, p, q)
        rep.record("s injective iff p < q", (rk == dom) == (p < q), tag)
        rep.record("s surjective iff p >= q-1", (rk == cod) == (p >= q - 1), tag)
    for l in range(1, q + 1):
        if p + l > d:
            break
        def sl(b, l=l):
            for _ in range(l):
                b = da.bianchi_s(b)
            return b
        rk = _matrix_rank(sl, d, p, q)
        cod = len(DoubleCovector.all_basis(d, p + l, q - l))
        rep.record("s^l injective iff p < q-l+1", (rk == dom) == (p < q - l + 1), f"{tag} l={l}")
        rep.record("s^l surjective iff p >= q-l", (rk == cod) == (p >= q - l), f"{tag} l={l}")
        kernel = dom - rk
        expect = sum(da.summand_dimension(p, q, mm, d) for mm in range(l) if mm in da.valid_summands(p, q, d))
        rep.record("dim ker s^l = sum of lower summands", kernel == expect, f"{tag} l={l}")


def _kL(x):
    return pf.koszul_left(x)


def _kR(x):
    return pf.koszul_right(x)


def suite_poly(seed: int = 0, max_dim: int = 5, max_degree: int = 3, cases: int = 100) -> SuiteReport:
    """Commutation and Cartan identities for polynomial double forms."""
    rng = random.Random(seed)
    rep = SuiteReport("poly", seed, {"max_dim": max_dim, "max_degree": max_degree, "cases": cases})
    s, ss = pf.bianchi_s, pf.bianchi_s_star
    dL, dR = pf.d_left, pf.d_right
    for _ in range(cases):
        d, p, q = _pqd(rng, max_dim, 3)
        r = rng.randint(0, max_degree)
        phi = random_poly(rng, d, p, q, r)
        tag = f"d={d} p={p} q={q} r={r}"
        same = _poly_same
        P = _psum
        rep.record("dL dR = dR dL", same(dL(dR(phi)), dR(dL(phi))), tag)
        rep.record("kL kR = kR kL", same(_kL(_kR(phi)), _kR(_kL(phi))), tag)
        rep.record("kL^2 = kR^2 = 0", _kL(_kL(phi)).is_zero() and _kR(_kR(phi)).is_zero(), tag)
        rep.record("kL s + s kL = kR", same(P(_kL(s(phi)), s(_kL(phi))), _kR(phi)), tag)
        rep.record("kL s* + s* kL = 0", P(_kL(ss(phi)), ss(_kL(phi))).is_zero(), tag)
        rep.record("kR s + s kR = 0", P(_kR(s(phi)), s(_kR(phi))).is_zero(), tag)
        rep.record("kR s* + s* kR = kL", same(P(_kR(ss(phi)), ss(_kR(phi))), _kL(phi)), tag)
        rep.record("dL s + s dL = 0", P(dL(s(phi)), s(dL(phi))).is_zero(), tag)
        rep.record("dL s* + s* dL = dR", same(P(dL(ss(phi)), ss(dL(phi))), dR(phi)), tag)
        rep.record("dR s + s dR = dL", same(P(dR(s(phi)), s(dR(phi))), dL(phi)), tag)
        rep.record("dL kR - kR dL = s", same(P(dL(_kR(phi)), _kR(dL(phi)).scale(-1)), s(phi)), tag)
        rep.record("dR kL - kL dR = s*", same(P(dR(_kL(phi)), _kL(dR(phi)).scale(-1)), ss(phi)), tag)
        rep.record("dL kL + kL dL = r+p", same(P(dL(_kL(phi)), _kL(dL(phi))), phi.scale(r + p)), tag)
        rep.record("dR kR + kR dR = r+q", same(P(dR(_kR(phi)), _kR(dR(phi))), phi.scale(r + q)), tag)

        for m in da.valid_summands(p, q, d):
            x = pf.project_summand(phi, m)
            if p + 1 <= d and q + 1 <= d:
                y = dL(dR(x))
                rep.record("dL dR preserves m", y.is_zero() or pf.in_summand(y, m), f"{tag} m={m}")
            if p >= 1 and q >= 1:
                y = _kL(_kR(x))
                rep.record("kL kR preserves m", y.is_zero() or pf.in_summand(y, m), f"{tag} m={m}")
        if q >= 1 and p + 2 <= d:
            rep.record("dL dR commutes with s", same(dL(dR(s(phi))), s(dL(dR(phi)))), tag)
        if p >= 1 and q + 2 <= d:
            rep.record("dL dR commutes with s*", same(dL(dR(ss(phi))), ss(dL(dR(phi)))), tag)
        if q >= 2 and p >= 1:
            rep.record("kL kR commutes with s", same(_kL(_kR(s(phi))), s(_kL(_kR(phi)))), tag)
        if p >= 2 and q >= 1:
            rep.record("kL kR commutes with s*", same(_kL(_kR(ss(phi))), ss(_kL(_kR(phi)))), tag)

        # kkdd eigenvalue on kappa-kernel elements kL kR psi
        if r >= 2 and p + 1 <= d and q + 1 <= d:
            psi = random_poly(rng, d, p + 1, q + 1, r - 2)
            ms = [m for m in da.valid_summands(p + 1, q + 1, d) if m in da.valid_summands(p, q, d)]
            if ms:
                m = rng.choice(ms)
                x = _kL(_kR(pf.project_summand(psi, m)))
                C = (r + p + m) * (r + q - m - 1)
                y = _kL(_kR(dL(dR(x))))
                rep.record("kL kR dL dR = (r+p+m)(r+q-m-1) on kernel",
                           (x.is_zero() and y.is_zero()) or same(y, x.scale(C)), f"{tag} m={m}")

    for d in range(1, min(max_dim, 3) + 1):
        for p in range(d + 1):
            for q in range(d + 1):
                for r in range(0, min(max_degree, 2) + 1):
                    _kernel_trichotomy(rep, d, p, q, r)
    return rep


def _kernel_basis(d: int, p: int, q: int, m: int, r: int) -> List[PolyDoubleForm]:
    """Basis of {phi in H_r Lambda^{p,q}_m : kL phi = kR phi = 0}."""
    gens = [pf.project_summand(b, m) for b in pf.full_basis(d, p, q, r, exact_degree=True)]
    eb = EchelonBasis()
    idx: Dict = {}
    span = []
    for g in gens:
        if eb.add({idx.setdefault(k, len(idx)): c for k, c in g.terms.items()}):
            span.append(g)
    if not span:
        return []
    # linear map coefficients -> (kL g, kR g)
    rows: Dict[Tuple, Dict[int, Fraction]] = {}
    for j, g in enumerate(span):
        for tag, img in (("L", _kL(g)), ("R", _kR(g))):
            for k, c in img.terms.items():
                rows.setdefault((tag,) + k, {})[j] = c
    null = sparse_nullspace(list(rows.values()), len(span))
    out = []
    for vec in null:
        acc = PolyDoubleForm.zero(d, p, q)
        for j, c in vec.items():
            acc = acc + span[j].scale(c)
        out.append(acc)
    return out


def _ipq_poly(phi: PolyDoubleForm, p: int, q: int) -> PolyDoubleForm:
    out = PolyDoubleForm.zero(phi.dim, p, q)
    for (mono, I, _), c in phi.terms.items():
        inc = da.include_ipq(ec.Multicovector.basis(phi.dim, I, c), p, q)
        out = out + PolyDoubleForm._raw(phi.dim, p, q, {(mono,) + k: v for k, v in inc.terms.items()})
    return out


def _kernel_trichotomy(rep: SuiteReport, d: int, p: int, q: int, r: int) -> None:
    for m in da.valid_summands(p, q, d):
        tag = f"d={d} p={p} q={q} m={m} r={r}"
        ker = _kernel_basis(d, p, q, m, r)
        if not ker:
            continue
        case1 = r == 0 and p == q == m == 0
        case2 = r == 1 and m == q
        case3 = r >= 2
        if not (case1 or case2 or case3):
            rep.record("kappa-kernel trichotomy", False, f"{tag}: nonzero kernel outside all cases")
            continue
        if case3:
            C = (r + p + m) * (r + q - m - 1)
            ok = all(_poly_same(_kL(_kR(pf.d_left(pf.d_right(x)).scale(Fraction(1, C)))), x) for x in ker)
            rep.record("kappa-kernel trichotomy", ok, tag)
        elif case2:
            k = p + q
            images = []
            if k + 1 <= d:
                for b in pf.full_basis(d, k + 1, 0, 0, exact_degree=True):
                    images.append(_ipq_poly(_kL(b), p, q))
            base = _span_rank(images)
            ok = all(_span_rank(images + [x]) == base for x in ker)
            rep.record("kappa-kernel trichotomy", ok, tag)
        else:
            rep.record("kappa-kernel trichotomy", len(ker) == 1, tag)


def suite_sphere(seed: int = 0, max_dim: int = 4, max_degree: int = 2, cases: int = 100) -> SuiteReport:
    """Sphere-star equivalences and pullback/pushforward round trips."""
    from .simplex_trace import SimplexForm, arbitrary_extension, vanishing_trace_basis
    from .sphere_lift import (double_star_sphere, divide_uN, sphere_pullback,
                              sphere_pushforward, star_sphere)

    rng = random.Random(seed)
    rep = SuiteReport("sphere", seed, {"max_dim": max_dim, "max_degree": max_degree, "cases": cases})
    for _ in range(cases):
        d, p, q = _pqd(rng, max_dim, 3)
        r = rng.randint(0, max_degree)
        tag = f"d={d} p={p} q={q} r={r}"
        psi = random_poly(rng, d, p, q, r, coords="u")
        rep.record("double sphere star: nu = koszul",
                   _poly_same(double_star_sphere(psi, "nu"), double_star_sphere(psi, "koszul")), tag)
        alpha = random_poly(rng, d, p, 0, r, coords="u")
        rep.record("sphere star: nu = koszul",
                   _poly_same(star_sphere(alpha, "nu"), star_sphere(alpha, "koszul")), tag)

        phi = random_poly(rng, d, p, q, r)
        pulled = sphere_pullback(phi)
        # multiplying by lambda_0...lambda_n puts the form in the pushforward domain
        phiN = pf.mul_poly(phi, {(1,) * d: Fraction(1)})
        pulledN = sphere_pullback(phiN)
        rep.record("push . pull = id", _poly_same(sphere_pushforward(pulledN), phiN), tag)
        rep.record("pull . push = id on the image",
                   _poly_same(sphere_pullback(sphere_pushforward(pulledN)), pulledN), tag)
        if q >= 1 and p + 1 <= d:
            rep.record("pullback commutes with s",
                       _poly_same(sphere_pullback(pf.bianchi_s(phi)), pf.bianchi_s(pulled)), tag)
        if p >= 1 and q + 1 <= d:
            rep.record("pullback commutes with s*",
                       _poly_same(sphere_pullback(pf.bianchi_s_star(phi)), pf.bianchi_s_star(pulled)), tag)
        rep.record("pullback commutes with tau",
                   _poly_same(sphere_pullback(pf.transpose_tau(phi)), pf.transpose_tau(pulled)), tag)
        m = rng.choice(da.valid_summands(p, q, d))
        rep.record("pullback commutes with P_m",
                   _poly_same(sphere_pullback(pf.project_summand(phi, m)), pf.project_summand(pulled, m)), tag)

        # homogenization independence on T^n with n = d-1
        n = d - 1
        if p <= n and q <= n:
            aff = random_poly(rng, n, p, q, r, coords="affine", homogeneous=False) if n else \
                PolyDoubleForm.zero(0, p, q, "affine")
            sf = SimplexForm(aff, tuple(range(n + 1)))
            e0 = arbitrary_extension(sf, r, 0)
            e1 = arbitrary_extension(sf, r, n)
            rep.record("sphere star independent of homogenization",
                       _poly_same(double_star_sphere(sphere_pullback(e0)), double_star_sphere(sphere_pullback(e1))),
                       tag)

    # divisibility by u_N for vanishing-trace inputs
    for n in range(1, max_dim):
        for p in range(n + 1):
            for q in range(n + 1):
                for m in da.valid_summands(p, q, n):
                    for r in range(max_degree + 1):
                        basis = vanishing_trace_basis(p, q, m, r, n)
                        if not basis:
                            continue
                        acc = PolyDoubleForm.zero(n, p, q, "affine")
                        for b in basis:
                            acc = acc + b.form.scale(_coeff(rng) or 1)
                        sf = SimplexForm(acc, tuple(range(n + 1)))
                        star = double_star_sphere(sphere_pullback(arbitrary_extension(sf, r)))
                        try:
                            divide_uN(star)
                            ok = True
                        except ArithmeticError:
                            ok = False
                        rep.record("vanishing trace implies u_N divides", ok, f"n={n} p={p} q={q} m={m} r={r}")
    return rep


def suite_extension(seed: int = 0, max_dim: int = 4, max_degree: int = 2, cases: int = 0) -> SuiteReport:
    """Extension invariants for every trace-free basis element.

    ``max_dim`` bounds the simplex dimension n.  With ``cases > 0`` random
    linear combinations are tested as well.
    """
    from .extension import extend, verify_extension
    from .simplex_trace import SimplexForm, vanishing_trace_basis

    rng = random.Random(seed)
    rep = SuiteReport("extension", seed, {"max_dim": max_dim, "max_degree": max_degree, "cases": cases})
    for n in range(0, max_dim + 1):
        for p in range(n + 1):
            for q in range(n + 1):
                for m in da.valid_summands(p, q, n):
                    for r in range(max_degree + 1):
                        if r == 0 and m == q:
                            continue
                        basis = vanishing_trace_basis(p, q, m, r, n)
                        inputs = list(basis)
                        for _ in range(cases if basis else 0):
                            acc = PolyDoubleForm.zero(n, p, q, "affine")
                            for b in basis:
                                acc = acc + b.form.scale(_coeff(rng))
                            inputs.append(SimplexForm(acc, tuple(range(n + 1))))
                        for i, b in enumerate(inputs):
                            tag = f"n={n} p={p} q={q} m={m} r={r} #{i}"
                            res = extend(b, p, q, m, r).form
                            checks = verify_extension(res, b, m)
                            rep.record("trace recovers input", checks["trace_recovers_input"], tag)
                            rep.record("hyperplane traces vanish", checks["hyperplane_traces_vanish"], tag)
                            rep.record("output in summand", checks["in_summand"], tag)
                            if n >= 1:
                                alt = extend(b, p, q, m, r, eliminate=n).form
                                rep.record("independent of homogenization", _poly_same(res, alt) or
                                           (res.is_zero() and alt.is_zero()), tag)
    return rep


def suite_fem(seed: int = 0, max_dim: int = 3, max_degree: int = 1) -> SuiteReport:
    """Global bases on a simplex and on a two-cell mesh; DOF identities."""
    from .fe_assembly import (SimplicialComplex, basis_rank, check_single_valued, dim_ring,
                              dim_ring_closed, dim_trace_free, expected_count, global_basis,
                              verify_basis, verify_dof_sum)

    rng = random.Random(seed)
    rep = SuiteReport("fem", seed, {"max_dim": max_dim, "max_degree": max_degree})
    meshes = []
    for N in range(1, max_dim + 1):
        meshes.append(SimplicialComplex.simplex(N))
        meshes.append(SimplicialComplex(N + 2, (tuple(range(N + 1)), tuple(range(1, N + 2)))))
    for T in meshes:
        N = T.dim
        for p in range(N + 1):
            for q in range(N + 1):
                for m in da.valid_summands(p, q, N):
                    for r in range(max_degree + 1):
                        if r == 0 and m == q:
                            continue
                        tag = f"cells={len(T.cells)} N={N} p={p} q={q} m={m} r={r}"
                        B = global_basis(T, p, q, m, r, verify=False)
                        rep.record("count = sum over faces", len(B) == expected_count(T, p, q, m, r), tag)
                        if r == 0:
                            total = sum(dim_trace_free(p, q, m, len(F) - 1) for F in T.all_faces())
                            rep.record("count = sum of closed forms", len(B) == total, tag)
                        problems = verify_basis(B, T)
                        rep.record("basis invariants", not problems, f"{tag}: {problems[:2]}")
                        if len(T.cells) == 2 and B:
                            el = B[rng.randrange(len(B))]
                            shared = set(T.cells[0]) & set(T.cells[1])
                            if len(el.local) == 2 and not el.local[1].is_zero():
                                bad = type(el)(el.owner_face, {0: el.local[0], 1: el.local[1].scale(-1)},
                                               el.meta, el.barycentric)
                                sv = check_single_valued([bad], T)
                                from .simplex_trace import face_trace
                                nonzero = not face_trace(el.local[1], tuple(sorted(shared))).is_zero()
                                rep.record("corrupted element is detected", (not sv.ok) == nonzero, tag)
    for p in range(5):
        for q in range(5):
            for m in range(max(0, q - p), q):
                for n in range(7):
                    rep.record("dof sum identity", verify_dof_sum(p, q, m, n), f"p={p} q={q} m={m} n={n}")
                    rep.record("ring dimension closed form",
                               dim_ring(p, q, m, n) == dim_ring_closed(p, q, m, n), f"p={p} q={q} m={m} n={n}")
                    # dim_ring(..., n) is the space on R^{n+1}
                    rep.record("tf(n) + tf(n+1) = ring on R^(n+1)",
                               dim_trace_free(p, q, m, n) + dim_trace_free(p, q, m, n + 1) == dim_ring(p, q, m, n),
                               f"p={p} q={q} m={m} n={n}")
    return rep


SUITES = {
    "algebra": suite_algebra,
    "poly": suite_poly,
    "sphere": suite_sphere,
    "extension": suite_extension,
    "fem": suite_fem,
}
