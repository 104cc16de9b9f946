"""Constant-coefficient (p,q)-covectors and the pointwise operators on them.

A (p,q)-covector is a Fraction-valued mapping on pairs (I, J) of increasing
multi-indices, standing for e^I (x) e^J.  Every operator is defined on a basis
element by a cached table and extended linearly; ``poly_forms`` reuses the same
tables coefficientwise.

The summand decomposition uses the eigenvalues m(m+p-q+1) of s*s, and the
projector onto a summand is the Lagrange interpolation polynomial in s*s.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Callable, Dict, Iterable, List, Mapping, Tuple

from .exterior_core import (
    MultiIndex,
    Multicovector,
    check_multi_index,
    contract_index,
    hodge_index,
    merge,
)
from .rationals_linalg import ZERO, as_rational

Pair = Tuple[MultiIndex, MultiIndex]
BasisImage = Tuple[Tuple[Pair, int], ...]


class InvalidSummand(ValueError):
    """Raised when a summand index m is outside the nonzero range."""


# -- basis-level operator tables ---------------------------------------------

@lru_cache(maxsize=None)
def s_basis(d: int, I: MultiIndex, J: MultiIndex) -> BasisImage:
    """s(e^{I,J}) = sum_i (e^i ^ e^I) (x) (e_i -| e^J)."""
    out: Dict[Pair, int] = {}
    for i in J:
        s1, I2 = merge((i,), I)
        if not s1:
            continue
        s2, J2 = contract_index(i, J)
        out[(I2, J2)] = out.get((I2, J2), 0) + s1 * s2
    return tuple((k, v) for k, v in out.items() if v)


@lru_cache(maxsize=None)
def s_star_basis(d: int, I: MultiIndex, J: MultiIndex) -> BasisImage:
    """s*(e^{I,J}) = sum_i (e_i -| e^I) (x) (e^i ^ e^J)."""
    out: Dict[Pair, int] = {}
    for i in I:
        s2, J2 = merge((i,), J)
        if not s2:
            continue
        s1, I2 = contract_index(i, I)
        out[(I2, J2)] = out.get((I2, J2), 0) + s1 * s2
    return tuple((k, v) for k, v in out.items() if v)


@lru_cache(maxsize=None)
def hodge_pair(d: int, I: MultiIndex, J: MultiIndex) -> BasisImage:
    sI, Ic = hodge_index(I, d)
    sJ, Jc = hodge_index(J, d)
    return (((Ic, Jc), sI * sJ),)


def _hodge_sq_sign(d: int, p: int, q: int) -> int:
    return -1 if (p * (d - p) + q * (d - q)) % 2 else 1


@lru_cache(maxsize=None)
def hodge_inv_pair(d: int, I: MultiIndex, J: MultiIndex) -> BasisImage:
    # the inverse is the star followed by the sign of the star squared on the
    # output degrees, which equals the sign on the input degrees
    ((K, sign),) = hodge_pair(d, I, J)
    return ((K, sign * _hodge_sq_sign(d, len(I), len(J))),)


def apply_table(terms: Mapping[Pair, Fraction], table: Callable, d: int) -> Dict[Pair, Fraction]:
    out: Dict[Pair, Fraction] = {}
    for (I, J), c in terms.items():
        for key, v in table(d, I, J):
            y = out.get(key, ZERO) + v * c
            if y:
                out[key] = y
            else:
                out.pop(key, None)
    return out


def eigenvalue(p: int, q: int, m: int) -> int:
    """Eigenvalue of s*s on the m-summand of (p,q)-covectors."""
    return m * (m + p - q + 1)


def valid_summands(p: int, q: int, d: int) -> List[int]:
    """All m with max{0, q-p} <= m <= min{q, d-p}."""
    if p < 0 or q < 0 or p > d or q > d:
        return []
    return list(range(max(0, q - p), min(q, d - p) + 1))


def summand_dimension(p: int, q: int, m: int, d: int) -> int:
    """Closed-form dimension of the m-summand of (p,q)-covectors on Q^d."""
    from math import comb
    if m not in valid_summands(p, q, d):
        return 0
    num = (p - q + 2 * m + 1) * comb(d, p + m) * comb(d + 1, q - m)
    den = p + m + 1
    assert num % den == 0
    return num // den


def lagrange_coefficients(p: int, q: int, d: int, m: int) -> List[Tuple[int, Fraction]]:
    """Factors (lambda_m', 1/(lambda_m - lambda_m')) of the projector onto m."""
    ms = valid_summands(p, q, d)
    if m not in ms:
        raise InvalidSummand(f"m={m} is not a nonzero summand of ({p},{q}) in dimension {d}")
    lam = eigenvalue(p, q, m)
    return [(eigenvalue(p, q, k), Fraction(1, lam - eigenvalue(p, q, k)))
            for k in ms if k != m]


# -- the DoubleCovector type -------------------------------------------------

@dataclass(frozen=True)
class DoubleCovector:
    """An element of Lambda^p (x) Lambda^q over Q^dim."""

    dim: int
    p: int
    q: int
    terms: Mapping[Pair, Fraction] = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for (I, J), c in self.terms.items():
            I = check_multi_index(I, self.dim)
            J = check_multi_index(J, self.dim)
            if len(I) != self.p or len(J) != self.q:
                raise ValueError(f"term {(I, J)} does not have degree ({self.p},{self.q})")
            c = as_rational(c)
            if c:
                clean[(I, J)] = c
        object.__setattr__(self, "terms", clean)

    @classmethod
    def _raw(cls, dim, p, q, terms) -> "DoubleCovector":
        obj = object.__new__(cls)
        object.__setattr__(obj, "dim", dim)
        object.__setattr__(obj, "p", p)
        object.__setattr__(obj, "q", q)
        object.__setattr__(obj, "terms", terms)
        return obj

    @classmethod
    def zero(cls, dim: int, p: int, q: int) -> "DoubleCovector":
        return cls._raw(dim, p, q, {})

    @classmethod
    def basis(cls, dim: int, I: Iterable[int], J: Iterable[int], coeff=1) -> "DoubleCovector":
        """coeff * dx^I (x) dx^J; each index list may come in any order."""
        a = Multicovector.basis(dim, I)
        b = Multicovector.basis(dim, J)
        return tensor(a, b).scale(coeff)

    @classmethod
    def all_basis(cls, dim: int, p: int, q: int) -> List["DoubleCovector"]:
        return [cls._raw(dim, p, q, {(I, J): Fraction(1)})
                for I in combinations(range(dim), p)
                for J in combinations(range(dim), q)]

    @property
    def k(self) -> int:
        return self.p + self.q

    def is_zero(self) -> bool:
        return not self.terms

    def _check(self, other: "DoubleCovector") -> None:
        if (self.dim, self.p, self.q) != (other.dim, other.p, other.q):
            raise ValueError(
                f"shape mismatch: {(self.dim, self.p, self.q)} vs {(other.dim, other.p, other.q)}")

    def __add__(self, other: "DoubleCovector") -> "DoubleCovector":
        self._check(other)
        out = dict(self.terms)
        for key, c in other.terms.items():
            y = out.get(key, ZERO) + c
            if y:
                out[key] = y
            else:
                out.pop(key)
        return DoubleCovector._raw(self.dim, self.p, self.q, out)

    def __neg__(self) -> "DoubleCovector":
        return self.scale(-1)

    def __sub__(self, other: "DoubleCovector") -> "DoubleCovector":
        return self + (-other)

    def scale(self, a) -> "DoubleCovector":
        a = as_rational(a)
        if not a:
            return DoubleCovector.zero(self.dim, self.p, self.q)
        return DoubleCovector._raw(self.dim, self.p, self.q,
                                   {k: a * c for k, c in self.terms.items()})

    def __rmul__(self, a) -> "DoubleCovector":
        return self.scale(a)

    def to_json(self) -> dict:
        from .rationals_linalg import format_rational
        return {
            "dim": self.dim, "p": self.p, "q": self.q,
            "terms": [{"I": list(I), "J": list(J), "coeff": format_rational(c)}
                      for (I, J), c in sorted(self.terms.items())],
        }

    @classmethod
    def from_json(cls, data: dict) -> "DoubleCovector":
        return cls(int(data["dim"]), int(data["p"]), int(data["q"]),
                   {(tuple(t["I"]), tuple(t["J"])): as_rational(t["coeff"])
                    for t in data["terms"]})


def tensor(a: Multicovector, b: Multicovector) -> DoubleCovector:
    if a.dim != b.dim:
        raise ValueError(f"dimension mismatch: {a.dim} vs {b.dim}")
    return DoubleCovector._raw(a.dim, a.degree, b.degree,
                               {(I, J): x * y for I, x in a.terms.items()
                                for J, y in b.terms.items()})


# -- operators ---------------------------------------------------------------

def bianchi_s(phi: DoubleCovector) -> DoubleCovector:
    if phi.q <= 0:
        return DoubleCovector.zero(phi.dim, phi.p + 1, phi.q - 1)
    return DoubleCovector._raw(phi.dim, phi.p + 1, phi.q - 1,
                               apply_table(phi.terms, s_basis, phi.dim))


def bianchi_s_star(phi: DoubleCovector) -> DoubleCovector:
    if phi.p <= 0:
        return DoubleCovector.zero(phi.dim, phi.p - 1, phi.q + 1)
    return DoubleCovector._raw(phi.dim, phi.p - 1, phi.q + 1,
                               apply_table(phi.terms, s_star_basis, phi.dim))


def transpose_tau(phi: DoubleCovector) -> DoubleCovector:
    return DoubleCovector._raw(phi.dim, phi.q, phi.p,
                               {(J, I): c for (I, J), c in phi.terms.items()})


def double_hodge(phi: DoubleCovector) -> DoubleCovector:
    d = phi.dim
    return DoubleCovector._raw(d, d - phi.p, d - phi.q,
                               apply_table(phi.terms, hodge_pair, d))


def double_hodge_inv(phi: DoubleCovector) -> DoubleCovector:
    d = phi.dim
    return DoubleCovector._raw(d, d - phi.p, d - phi.q,
                               apply_table(phi.terms, hodge_inv_pair, d))


def double_wedge(phi: DoubleCovector, psi: DoubleCovector) -> DoubleCovector:
    """Kulkarni-Nomizu product (a (x) b)(c (x) e) = (a ^ c) (x) (b ^ e)."""
    if phi.dim != psi.dim:
        raise ValueError(f"dimension mismatch: {phi.dim} vs {psi.dim}")
    out: Dict[Pair, Fraction] = {}
    for (I, J), x in phi.terms.items():
        for (K, L), y in psi.terms.items():
            s1, IK = merge(I, K)
            if not s1:
                continue
            s2, JL = merge(J, L)
            if not s2:
                continue
            v = out.get((IK, JL), ZERO) + s1 * s2 * x * y
            if v:
                out[(IK, JL)] = v
            else:
                out.pop((IK, JL))
    return DoubleCovector._raw(phi.dim, phi.p + psi.p, phi.q + psi.q, out)


def include_ipq(omega: Multicovector, p: int, q: int) -> DoubleCovector:
    """Natural inclusion of (p+q)-covectors as (p,q)-covectors."""
    if omega.degree != p + q:
        raise ValueError(f"degree {omega.degree} != p+q = {p + q}")
    d = omega.dim
    if p < 0 or q < 0:
        return DoubleCovector.zero(d, p, q)
    out: Dict[Pair, Fraction] = {}
    for K, c in omega.terms.items():
        for I in combinations(K, p):
            J = tuple(k for k in K if k not in I)
            sign, _ = merge(I, J)
            out[(I, J)] = out.get((I, J), ZERO) + sign * c
    return DoubleCovector(d, p, q, out)


def wedge_collapse(phi: DoubleCovector) -> Multicovector:
    out: Dict[MultiIndex, Fraction] = {}
    for (I, J), c in phi.terms.items():
        sign, K = merge(I, J)
        if sign:
            out[K] = out.get(K, ZERO) + sign * c
    return Multicovector(phi.dim, phi.p + phi.q, out)


def s_star_s(phi: DoubleCovector) -> DoubleCovector:
    return bianchi_s_star(bianchi_s(phi))


def project_summand(phi: DoubleCovector, m: int) -> DoubleCovector:
    """Spectral projection of ``phi`` onto the m-summand."""
    factors = lagrange_coefficients(phi.p, phi.q, phi.dim, m)
    out = phi
    for lam, w in factors:
        out = (s_star_s(out) - out.scale(lam)).scale(w)
    return out


def inner_product(phi: DoubleCovector, psi: DoubleCovector) -> Fraction:
    phi._check(psi)
    return sum((c * psi.terms.get(k, ZERO) for k, c in phi.terms.items()), ZERO)


def summand_of(phi: DoubleCovector) -> List[int]:
    """Summand indices m for which the projection of ``phi`` is nonzero."""
    return [m for m in valid_summands(phi.p, phi.q, phi.dim)
            if not project_summand(phi, m).is_zero()]
