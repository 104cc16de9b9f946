"""Alternating multicovectors on Q^d: wedge, interior product, Hodge star.

A k-covector is stored as a mapping from strictly increasing index tuples to
nonzero Fractions.  The low-level helpers on index tuples (``merge``,
``remove_at``, ``complement``) are shared by the double form modules.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, Mapping, Optional, Tuple

from .rationals_linalg import ZERO, as_rational

MultiIndex = Tuple[int, ...]


@lru_cache(maxsize=None)
def merge(I: MultiIndex, J: MultiIndex) -> Tuple[int, Optional[MultiIndex]]:
    """Return (sign, K) with e^I ^ e^J = sign * e^K, or (0, None) on overlap."""
    if set(I) & set(J):
        return 0, None
    inversions = sum(1 for a in I for b in J if a > b)
    return (-1 if inversions % 2 else 1), tuple(sorted(I + J))


@lru_cache(maxsize=None)
def complement(I: MultiIndex, d: int) -> MultiIndex:
    s = set(I)
    return tuple(i for i in range(d) if i not in s)


@lru_cache(maxsize=None)
def hodge_index(I: MultiIndex, d: int) -> Tuple[int, MultiIndex]:
    """(sign, I^c) such that star(e^I) = sign * e^{I^c}."""
    Ic = complement(I, d)
    sign, _ = merge(I, Ic)
    return sign, Ic


@lru_cache(maxsize=None)
def contract_index(i: int, J: MultiIndex) -> Tuple[int, Optional[MultiIndex]]:
    """e_i -| e^J = sign * e^{J minus i}, with sign (-1)^a for J[a] = i."""
    for a, j in enumerate(J):
        if j == i:
            return (-1 if a % 2 else 1), J[:a] + J[a + 1:]
    return 0, None


def check_multi_index(I: Iterable[int], d: int) -> MultiIndex:
    I = tuple(int(i) for i in I)
    if any(b <= a for a, b in zip(I, I[1:])):
        raise ValueError(f"multi-index {I} is not strictly increasing")
    if I and (I[0] < 0 or I[-1] >= d):
        raise ValueError(f"multi-index {I} out of range for dimension {d}")
    return I


def _accumulate(out: Dict, key, c: Fraction) -> None:
    y = out.get(key, ZERO) + c
    if y:
        out[key] = y
    else:
        out.pop(key, None)


@dataclass(frozen=True)
class Multicovector:
    """An element of the k-th exterior power of (Q^d)^*."""

    dim: int
    degree: int
    terms: Mapping[MultiIndex, Fraction] = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for I, c in self.terms.items():
            I = check_multi_index(I, self.dim)
            if len(I) != self.degree:
                raise ValueError(f"index {I} does not have degree {self.degree}")
            c = as_rational(c)
            if c:
                clean[I] = c
        object.__setattr__(self, "terms", clean)

    @classmethod
    def basis(cls, dim: int, I: Iterable[int], coeff=1) -> "Multicovector":
        """coeff * dx^{i_1} ^ ... ^ dx^{i_k}; indices may come in any order."""
        I = tuple(I)
        if len(set(I)) != len(I):
            return cls(dim, len(I), {})
        inversions = sum(1 for a in range(len(I)) for b in range(a + 1, len(I)) if I[a] > I[b])
        sign = -1 if inversions % 2 else 1
        return cls(dim, len(I), {tuple(sorted(I)): sign * as_rational(coeff)})

    @classmethod
    def zero(cls, dim: int, degree: int) -> "Multicovector":
        return cls(dim, degree, {})

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "Multicovector") -> "Multicovector":
        _same_shape(self, other)
        out = dict(self.terms)
        for I, c in other.terms.items():
            _accumulate(out, I, c)
        return Multicovector(self.dim, self.degree, out)

    def __neg__(self) -> "Multicovector":
        return Multicovector(self.dim, self.degree, {I: -c for I, c in self.terms.items()})

    def __sub__(self, other: "Multicovector") -> "Multicovector":
        return self + (-other)

    def scale(self, a) -> "Multicovector":
        a = as_rational(a)
        return Multicovector(self.dim, self.degree, {I: a * c for I, c in self.terms.items()})

    def __rmul__(self, a) -> "Multicovector":
        return self.scale(a)


def _same_shape(a: Multicovector, b: Multicovector) -> None:
    if a.dim != b.dim:
        raise ValueError(f"dimension mismatch: {a.dim} vs {b.dim}")
    if a.degree != b.degree:
        raise ValueError(f"degree mismatch: {a.degree} vs {b.degree}")


def wedge(a: Multicovector, b: Multicovector) -> Multicovector:
    if a.dim != b.dim:
        raise ValueError(f"dimension mismatch: {a.dim} vs {b.dim}")
    out: Dict[MultiIndex, Fraction] = {}
    for I, x in a.terms.items():
        for J, y in b.terms.items():
            sign, K = merge(I, J)
            if sign:
                _accumulate(out, K, sign * x * y)
    return Multicovector(a.dim, a.degree + b.degree, out)


def contract(i: int, a: Multicovector) -> Multicovector:
    """Interior product of the basis vector e_i with ``a``."""
    if not 0 <= i < a.dim:
        raise ValueError(f"basis index {i} out of range for dimension {a.dim}")
    if a.degree == 0:
        return Multicovector(a.dim, 0, {})
    out: Dict[MultiIndex, Fraction] = {}
    for J, x in a.terms.items():
        sign, K = contract_index(i, J)
        if sign:
            _accumulate(out, K, sign * x)
    return Multicovector(a.dim, a.degree - 1, out)


def hodge(a: Multicovector) -> Multicovector:
    """Euclidean Hodge star with orientation dx^0 ^ ... ^ dx^{d-1}."""
    out = {}
    for I, x in a.terms.items():
        sign, Ic = hodge_index(I, a.dim)
        out[Ic] = sign * x
    return Multicovector(a.dim, a.dim - a.degree, out)


def inner(a: Multicovector, b: Multicovector) -> Fraction:
    """Inner product making the e^I basis orthonormal."""
    _same_shape(a, b)
    return sum((x * b.terms.get(I, ZERO) for I, x in a.terms.items()), ZERO)


def volume(dim: int) -> Multicovector:
    return Multicovector(dim, dim, {tuple(range(dim)): 1})
