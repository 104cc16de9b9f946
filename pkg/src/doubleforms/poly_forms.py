"""Double forms on R^d with polynomial coefficients.

A term is keyed by ``(monomial, I, J)`` where the monomial is an exponent
tuple of length d.  The variables are abstract (x_0, ..., x_{d-1}); the
``coords`` tag only records whether they are meant as barycentric lambdas,
sphere coordinates u, or affine simplex coordinates t.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import factorial
from typing import Callable, Dict, Iterable, List, Mapping, Optional, Tuple

from . import double_algebra as da
from .double_algebra import DoubleCovector, Pair
from .exterior_core import MultiIndex, check_multi_index, contract_index, hodge_index, merge
from .rationals_linalg import ZERO, as_rational, format_rational

Monomial = Tuple[int, ...]
Key = Tuple[Monomial, MultiIndex, MultiIndex]
Polynomial = Dict[Monomial, Fraction]

COORDS = ("lambda", "u", "affine")


def _acc(out: Dict, key, c) -> None:
    y = out.get(key, ZERO) + c
    if y:
        out[key] = y
    else:
        out.pop(key, None)


def term_sort_key(key: Key):
    """Graded order on monomials (x_0 first within a degree), then I, then J."""
    mono, I, J = key
    return (sum(mono), tuple(-e for e in mono), I, J)


def monomial_sort_key(mono: Monomial):
    return (sum(mono), tuple(-e for e in mono))


@dataclass(frozen=True)
class PolyDoubleForm:
    """A (p,q)-form on R^dim with polynomial coefficients."""

    dim: int
    p: int
    q: int
    terms: Mapping[Key, Fraction] = field(default_factory=dict)
    coords: str = "lambda"

    def __post_init__(self):
        if self.coords not in COORDS:
            raise ValueError(f"unknown coords tag {self.coords!r}")
        clean = {}
        for (mono, I, J), c in self.terms.items():
            mono = tuple(int(e) for e in mono)
            if len(mono) != self.dim or any(e < 0 for e in mono):
                raise ValueError(f"bad monomial {mono} for dimension {self.dim}")
            I = check_multi_index(I, self.dim)
            J = check_multi_index(J, self.dim)
            if len(I) != self.p or len(J) != self.q:
                raise ValueError(f"term {(I, J)} does not have degree ({self.p},{self.q})")
            c = as_rational(c)
            if c:
                clean[(mono, I, J)] = c
        object.__setattr__(self, "terms", clean)

    @classmethod
    def _raw(cls, dim, p, q, terms, coords="lambda") -> "PolyDoubleForm":
        obj = object.__new__(cls)
        object.__setattr__(obj, "dim", dim)
        object.__setattr__(obj, "p", p)
        object.__setattr__(obj, "q", q)
        object.__setattr__(obj, "terms", terms)
        object.__setattr__(obj, "coords", coords)
        return obj

    # -- constructors ----------------------------------------------------

    @classmethod
    def zero(cls, dim: int, p: int, q: int, coords: str = "lambda") -> "PolyDoubleForm":
        return cls._raw(dim, p, q, {}, coords)

    @classmethod
    def constant(cls, phi: DoubleCovector, coords: str = "lambda") -> "PolyDoubleForm":
        z = (0,) * phi.dim
        return cls._raw(phi.dim, phi.p, phi.q,
                        {(z, I, J): c for (I, J), c in phi.terms.items()}, coords)

    @classmethod
    def term(cls, dim: int, mono: Iterable[int], I: Iterable[int], J: Iterable[int],
             coeff=1, coords: str = "lambda") -> "PolyDoubleForm":
        """coeff * x^mono dx^I (x) dx^J with I, J in any order."""
        phi = DoubleCovector.basis(dim, I, J, coeff)
        return mul_poly(cls.constant(phi, coords), {tuple(mono): Fraction(1)})

    @classmethod
    def scalar(cls, dim: int, poly: Mapping[Monomial, Fraction], coords: str = "lambda") -> "PolyDoubleForm":
        return cls(dim, 0, 0, {(tuple(m), (), ()): c for m, c in poly.items()}, coords)

    # -- basic arithmetic ------------------------------------------------

    @property
    def k(self) -> int:
        return self.p + self.q

    def is_zero(self) -> bool:
        return not self.terms

    def with_coords(self, coords: str) -> "PolyDoubleForm":
        if coords not in COORDS:
            raise ValueError(f"unknown coords tag {coords!r}")
        return PolyDoubleForm._raw(self.dim, self.p, self.q, self.terms, coords)

    def _check(self, other: "PolyDoubleForm") -> None:
        if (self.dim, self.p, self.q) != (other.dim, other.p, other.q):
            raise ValueError(
                f"shape mismatch: {(self.dim, self.p, self.q)} vs {(other.dim, other.p, other.q)}")
        if self.coords != other.coords:
            raise ValueError(f"coordinate mismatch: {self.coords} vs {other.coords}")

    def __add__(self, other: "PolyDoubleForm") -> "PolyDoubleForm":
        self._check(other)
        out = dict(self.terms)
        for key, c in other.terms.items():
            _acc(out, key, c)
        return PolyDoubleForm._raw(self.dim, self.p, self.q, out, self.coords)

    def __neg__(self) -> "PolyDoubleForm":
        return self.scale(-1)

    def __sub__(self, other: "PolyDoubleForm") -> "PolyDoubleForm":
        return self + (-other)

    def scale(self, a) -> "PolyDoubleForm":
        a = as_rational(a)
        if not a:
            return PolyDoubleForm.zero(self.dim, self.p, self.q, self.coords)
        return PolyDoubleForm._raw(self.dim, self.p, self.q,
                                   {k: a * c for k, c in self.terms.items()}, self.coords)

    def __rmul__(self, a) -> "PolyDoubleForm":
        return self.scale(a)

    def same_terms(self, other: "PolyDoubleForm") -> bool:
        """Equality of (dim, p, q, terms), ignoring the coords tag."""
        return ((self.dim, self.p, self.q) == (other.dim, other.p, other.q)
                and self.terms == other.terms)

    # -- degree bookkeeping ----------------------------------------------

    def degrees(self) -> set:
        return {sum(m) for (m, _, _) in self.terms}

    def max_degree(self) -> int:
        return max(self.degrees(), default=-1)

    def is_homogeneous(self, r: Optional[int] = None) -> bool:
        ds = self.degrees()
        if not ds:
            return True
        if len(ds) != 1:
            return False
        return r is None or ds == {r}

    def sorted_terms(self) -> List[Tuple[Key, Fraction]]:
        return sorted(self.terms.items(), key=lambda kv: term_sort_key(kv[0]))

    def at_monomial(self, mono: Monomial) -> DoubleCovector:
        return DoubleCovector._raw(self.dim, self.p, self.q,
                                   {(I, J): c for (m, I, J), c in self.terms.items() if m == mono})

    # -- serialization ---------------------------------------------------

    def to_json(self) -> dict:
        return {
            "dim": self.dim, "p": self.p, "q": self.q, "coords": self.coords,
            "terms": [{"monomial": list(m), "I": list(I), "J": list(J),
                       "coeff": format_rational(c)}
                      for (m, I, J), c in self.sorted_terms()],
        }

    @classmethod
    def from_json(cls, data: dict) -> "PolyDoubleForm":
        return cls(int(data["dim"]), int(data["p"]), int(data["q"]),
                   {(tuple(t["monomial"]), tuple(t["I"]), tuple(t["J"])): as_rational(t["coeff"])
                    for t in data["terms"]},
                   data.get("coords", "lambda"))


# -- polynomial helpers --------------------------------------------------------

def poly_mul(f: Mapping[Monomial, Fraction], g: Mapping[Monomial, Fraction]) -> Polynomial:
    out: Polynomial = {}
    for a, x in f.items():
        for b, y in g.items():
            _acc(out, tuple(i + j for i, j in zip(a, b)), x * y)
    return out


@lru_cache(maxsize=None)
def _sum_power(d: int, k: int) -> Tuple[Tuple[Monomial, int], ...]:
    """(x_0 + ... + x_{d-1})^k as multinomial coefficients."""
    out = []
    for mono in _compositions(k, d):
        c = factorial(k)
        for e in mono:
            c //= factorial(e)
        out.append((mono, c))
    return tuple(out)


@lru_cache(maxsize=None)
def _compositions(k: int, d: int) -> Tuple[Monomial, ...]:
    if d == 0:
        return ((),) if k == 0 else ()
    if d == 1:
        return ((k,),)
    out = []
    for e in range(k, -1, -1):
        for rest in _compositions(k - e, d - 1):
            out.append((e,) + rest)
    return tuple(out)


def monomials(d: int, k: int) -> Tuple[Monomial, ...]:
    """All exponent tuples of total degree k in d variables."""
    return _compositions(k, d)


def monomials_upto(d: int, r: int) -> List[Monomial]:
    out = []
    for k in range(r + 1):
        out.extend(sorted(monomials(d, k), key=monomial_sort_key))
    return out


def sum_of_variables_power(d: int, k: int) -> Polynomial:
    return {m: Fraction(c) for m, c in _sum_power(d, k)}


# -- operators ---------------------------------------------------------------

def _lift(phi: PolyDoubleForm, table: Callable, p: int, q: int) -> PolyDoubleForm:
    out: Dict[Key, Fraction] = {}
    d = phi.dim
    for (mono, I, J), c in phi.terms.items():
        for (I2, J2), v in table(d, I, J):
            _acc(out, (mono, I2, J2), v * c)
    return PolyDoubleForm._raw(d, p, q, out, phi.coords)


def mul_poly(phi: PolyDoubleForm, g: Mapping[Monomial, Fraction]) -> PolyDoubleForm:
    """Multiply every coefficient of ``phi`` by the polynomial ``g``."""
    out: Dict[Key, Fraction] = {}
    for (mono, I, J), c in phi.terms.items():
        for b, y in g.items():
            _acc(out, (tuple(i + j for i, j in zip(mono, b)), I, J), c * as_rational(y))
    return PolyDoubleForm._raw(phi.dim, phi.p, phi.q, out, phi.coords)


def d_left(phi: PolyDoubleForm) -> PolyDoubleForm:
    """d_L(f dx^{I,J}) = (df ^ dx^I) (x) dx^J."""
    out: Dict[Key, Fraction] = {}
    for (mono, I, J), c in phi.terms.items():
        for i, e in enumerate(mono):
            if not e:
                continue
            sign, I2 = merge((i,), I)
            if not sign:
                continue
            m2 = mono[:i] + (e - 1,) + mono[i + 1:]
            _acc(out, (m2, I2, J), sign * e * c)
    return PolyDoubleForm._raw(phi.dim, phi.p + 1, phi.q, out, phi.coords)


def d_right(phi: PolyDoubleForm) -> PolyDoubleForm:
    """d_R(f dx^{I,J}) = dx^I (x) (df ^ dx^J)."""
    out: Dict[Key, Fraction] = {}
    for (mono, I, J), c in phi.terms.items():
        for i, e in enumerate(mono):
            if not e:
                continue
            sign, J2 = merge((i,), J)
            if not sign:
                continue
            m2 = mono[:i] + (e - 1,) + mono[i + 1:]
            _acc(out, (m2, I, J2), sign * e * c)
    return PolyDoubleForm._raw(phi.dim, phi.p, phi.q + 1, out, phi.coords)


def koszul_left(phi: PolyDoubleForm) -> PolyDoubleForm:
    """Contract the left factor with X_id = sum_i x_i d/dx_i."""
    out: Dict[Key, Fraction] = {}
    for (mono, I, J), c in phi.terms.items():
        for a, i in enumerate(I):
            m2 = mono[:i] + (mono[i] + 1,) + mono[i + 1:]
            _acc(out, (m2, I[:a] + I[a + 1:], J), -c if a % 2 else c)
    return PolyDoubleForm._raw(phi.dim, phi.p - 1, phi.q, out, phi.coords)


def koszul_right(phi: PolyDoubleForm) -> PolyDoubleForm:
    out: Dict[Key, Fraction] = {}
    for (mono, I, J), c in phi.terms.items():
        for a, j in enumerate(J):
            m2 = mono[:j] + (mono[j] + 1,) + mono[j + 1:]
            _acc(out, (m2, I, J[:a] + J[a + 1:]), -c if a % 2 else c)
    return PolyDoubleForm._raw(phi.dim, phi.p, phi.q - 1, out, phi.coords)


def wedge_nu_left(phi: PolyDoubleForm) -> PolyDoubleForm:
    """Left wedge with the tautological covector sum_i x_i dx^i."""
    out: Dict[Key, Fraction] = {}
    for (mono, I, J), c in phi.terms.items():
        for i in range(phi.dim):
            sign, I2 = merge((i,), I)
            if sign:
                m2 = mono[:i] + (mono[i] + 1,) + mono[i + 1:]
                _acc(out, (m2, I2, J), sign * c)
    return PolyDoubleForm._raw(phi.dim, phi.p + 1, phi.q, out, phi.coords)


def wedge_nu_right(phi: PolyDoubleForm) -> PolyDoubleForm:
    out: Dict[Key, Fraction] = {}
    for (mono, I, J), c in phi.terms.items():
        for i in range(phi.dim):
            sign, J2 = merge((i,), J)
            if sign:
                m2 = mono[:i] + (mono[i] + 1,) + mono[i + 1:]
                _acc(out, (m2, I, J2), sign * c)
    return PolyDoubleForm._raw(phi.dim, phi.p, phi.q + 1, out, phi.coords)


def hodge_left(phi: PolyDoubleForm) -> PolyDoubleForm:
    d = phi.dim
    out = {}
    for (mono, I, J), c in phi.terms.items():
        sign, Ic = hodge_index(I, d)
        out[(mono, Ic, J)] = sign * c
    return PolyDoubleForm._raw(d, d - phi.p, phi.q, out, phi.coords)


def hodge_right(phi: PolyDoubleForm) -> PolyDoubleForm:
    d = phi.dim
    out = {}
    for (mono, I, J), c in phi.terms.items():
        sign, Jc = hodge_index(J, d)
        out[(mono, I, Jc)] = sign * c
    return PolyDoubleForm._raw(d, phi.p, d - phi.q, out, phi.coords)


def bianchi_s(phi: PolyDoubleForm) -> PolyDoubleForm:
    if phi.q <= 0:
        return PolyDoubleForm.zero(phi.dim, phi.p + 1, phi.q - 1, phi.coords)
    return _lift(phi, da.s_basis, phi.p + 1, phi.q - 1)


def bianchi_s_star(phi: PolyDoubleForm) -> PolyDoubleForm:
    if phi.p <= 0:
        return PolyDoubleForm.zero(phi.dim, phi.p - 1, phi.q + 1, phi.coords)
    return _lift(phi, da.s_star_basis, phi.p - 1, phi.q + 1)


def transpose_tau(phi: PolyDoubleForm) -> PolyDoubleForm:
    return PolyDoubleForm._raw(phi.dim, phi.q, phi.p,
                               {(m, J, I): c for (m, I, J), c in phi.terms.items()}, phi.coords)


def double_hodge(phi: PolyDoubleForm) -> PolyDoubleForm:
    return _lift(phi, da.hodge_pair, phi.dim - phi.p, phi.dim - phi.q)


def double_hodge_inv(phi: PolyDoubleForm) -> PolyDoubleForm:
    return _lift(phi, da.hodge_inv_pair, phi.dim - phi.p, phi.dim - phi.q)


def s_star_s(phi: PolyDoubleForm) -> PolyDoubleForm:
    return bianchi_s_star(bianchi_s(phi))


def project_summand(phi: PolyDoubleForm, m: int) -> PolyDoubleForm:
    """Coefficientwise projection onto the m-summand."""
    factors = da.lagrange_coefficients(phi.p, phi.q, phi.dim, m)
    out = phi
    for lam, w in factors:
        out = (s_star_s(out) - out.scale(lam)).scale(w)
    return out


def in_summand(phi: PolyDoubleForm, m: int) -> bool:
    if m not in da.valid_summands(phi.p, phi.q, phi.dim):
        return phi.is_zero()
    return project_summand(phi, m).same_terms(phi)


def homogenize(phi: PolyDoubleForm, r: int) -> PolyDoubleForm:
    """Multiply each term of degree e by (x_0 + ... + x_{d-1})^(r-e)."""
    out: Dict[Key, Fraction] = {}
    d = phi.dim
    for (mono, I, J), c in phi.terms.items():
        e = sum(mono)
        if e > r:
            raise ValueError(f"term of degree {e} exceeds target degree {r}")
        for b, y in _sum_power(d, r - e):
            _acc(out, (tuple(i + j for i, j in zip(mono, b)), I, J), c * y)
    return PolyDoubleForm._raw(d, phi.p, phi.q, out, phi.coords)


def inner_product(phi: PolyDoubleForm, psi: PolyDoubleForm) -> Fraction:
    """Coefficient pairing treating each (monomial, I, J) as orthonormal."""
    phi._check(psi)
    return sum((c * psi.terms.get(k, ZERO) for k, c in phi.terms.items()), ZERO)


def full_basis(d: int, p: int, q: int, r: int, exact_degree: bool = False,
               coords: str = "lambda") -> List[PolyDoubleForm]:
    """Monomial basis of degree-r (or degree <= r) polynomial (p,q)-forms."""
    monos = monomials_upto(d, r) if not exact_degree else sorted(monomials(d, r), key=monomial_sort_key)
    out = []
    for mono in monos:
        for I in combinations(range(d), p):
            for J in combinations(range(d), q):
                out.append(PolyDoubleForm._raw(d, p, q, {(mono, I, J): Fraction(1)}, coords))
    return out
