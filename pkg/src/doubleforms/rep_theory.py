"""Young diagrams, hook-length counts and a symmetrizer-based projector.

Nothing here is used by the production code paths; these routines exist to
cross-check dimensions and projections computed elsewhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, permutations
from math import factorial, prod
from typing import Dict, List, Sequence, Tuple

from . import double_algebra as da
from .double_algebra import DoubleCovector


class CostGuardExceeded(ValueError):
    """The full-tensor expansion would be too large."""


@dataclass(frozen=True)
class YoungDiagram:
    """A Young diagram stored by its column heights (weakly decreasing)."""

    columns: Tuple[int, ...]

    def __post_init__(self):
        cols = tuple(int(c) for c in self.columns)
        if any(c <= 0 for c in cols):
            raise ValueError(f"column heights must be positive: {cols}")
        if any(b > a for a, b in zip(cols, cols[1:])):
            raise ValueError(f"column heights must be weakly decreasing: {cols}")
        object.__setattr__(self, "columns", cols)

    @classmethod
    def from_partition(cls, rows: Sequence[int]) -> "YoungDiagram":
        rows = [r for r in rows if r]
        if any(b > a for a, b in zip(rows, rows[1:])):
            raise ValueError(f"row lengths must be weakly decreasing: {tuple(rows)}")
        ncols = rows[0] if rows else 0
        return cls(tuple(sum(1 for r in rows if r > j) for j in range(ncols)))

    @property
    def rows(self) -> Tuple[int, ...]:
        """Row lengths, i.e. the partition."""
        height = self.columns[0] if self.columns else 0
        return tuple(sum(1 for c in self.columns if c > i) for i in range(height))

    @property
    def boxes(self) -> int:
        return sum(self.columns)

    @property
    def height(self) -> int:
        return self.columns[0] if self.columns else 0

    def cells(self) -> List[Tuple[int, int]]:
        """Boxes as (row, column), both 0-based."""
        return [(i, j) for j, h in enumerate(self.columns) for i in range(h)]

    def hook(self, i: int, j: int) -> int:
        return (self.rows[i] - j - 1) + (self.columns[j] - i - 1) + 1

    def hook_product(self) -> int:
        return prod(self.hook(i, j) for i, j in self.cells())

    def to_json(self) -> dict:
        return {"columns": list(self.columns), "partition": list(self.rows), "boxes": self.boxes}


def _columns(*heights: int) -> YoungDiagram:
    return YoungDiagram(tuple(h for h in heights if h))


def diagram_summand(p: int, q: int, m: int) -> YoungDiagram:
    """Two columns of heights p+m and q-m."""
    if min(p, q, m) < 0 or m > q:
        raise ValueError(f"invalid summand index m={m} for ({p},{q})")
    if p + m < q - m:
        raise ValueError(f"invalid shape: p+m={p + m} < q-m={q - m}")
    return _columns(p + m, q - m)


def diagram_trace_free(p: int, q: int, m: int, n: int) -> YoungDiagram:
    """Diagram whose standard tableaux count the vanishing-trace space on T^n."""
    if min(p, q, m, n) < 0 or not max(0, q - p) <= m <= q - 1:
        raise ValueError(f"invalid summand index m={m} for ({p},{q})")
    p1 = n + 1 - (q - m)
    q1 = n + 1 - (p + m)
    r1 = p + q - (n + 1)
    if r1 < 0 or q1 < 1:
        raise ValueError(f"no vanishing-trace diagram for ({p},{q},{m}) on T^{n}")
    return _columns(p1, q1, *([1] * r1))


def hook_dim_gl(D: YoungDiagram, d: int) -> int:
    """Dimension of the GL(d) irreducible with diagram D."""
    num = prod(d - i + j for i, j in D.cells())
    x = Fraction(num, D.hook_product())
    assert x.denominator == 1
    return int(x)


def hook_dim_sym(D: YoungDiagram) -> int:
    """Number of standard Young tableaux of shape D."""
    x = Fraction(factorial(D.boxes), D.hook_product())
    assert x.denominator == 1
    return int(x)


# -- symmetrizer projection ----------------------------------------------------

Tensor = Dict[Tuple[int, ...], Fraction]


def _perm_sign(perm: Sequence[int]) -> int:
    sign = 1
    for a, b in combinations(perm, 2):
        if a > b:
            sign = -sign
    return sign


_PERMS: Dict[int, List[Tuple[Tuple[int, ...], int]]] = {}


def _signed_perms(n: int):
    if n not in _PERMS:
        _PERMS[n] = [(pm, _perm_sign(pm)) for pm in permutations(range(n))]
    return _PERMS[n]


def _acc(out: Tensor, key, c) -> None:
    v = out.get(key, 0) + c
    if v:
        out[key] = v
    else:
        out.pop(key, None)


def expand_tensor(phi: DoubleCovector) -> Tensor:
    """All components of phi as a (p+q)-tensor."""
    T: Tensor = {}
    for (I, J), c in phi.terms.items():
        for a, sa in _signed_perms(len(I)):
            for b, sb in _signed_perms(len(J)):
                key = tuple(I[x] for x in a) + tuple(J[x] for x in b)
                _acc(T, key, sa * sb * c)
    return T


def antisymmetrize(T: Tensor, slots: Sequence[int]) -> Tensor:
    """Signed sum over permutations of the given slots (no 1/n!)."""
    out: Tensor = {}
    for key, c in T.items():
        for pm, sign in _signed_perms(len(slots)):
            k = list(key)
            for a, b in zip(slots, pm):
                k[a] = key[slots[b]]
            _acc(out, tuple(k), sign * c)
    return out


def symmetrize_pair(T: Tensor, a: int, b: int) -> Tensor:
    out = dict(T)
    for key, c in T.items():
        k = list(key)
        k[a], k[b] = k[b], k[a]
        _acc(out, tuple(k), c)
    return out


def projection_constant(p: int, q: int, m: int) -> Fraction:
    """Scalar by which the summand symmetrizer acts, for pre-antisymmetric input."""
    return (Fraction(p + m + 1, p - q + 2 * m + 1) * factorial(p + m) * factorial(q - m)
            * factorial(m) * Fraction(factorial(p - q + 2 * m), factorial(p - q + m)))


def young_project(phi: DoubleCovector, m: int) -> DoubleCovector:
    """Projection onto the m-summand through explicit (anti)symmetrization.

    Steps: antisymmetrize the first p+m slots, symmetrize each pair of
    matching slots across the two column blocks, antisymmetrize the first
    p+m slots again, and antisymmetrize the last q slots.  The first step
    acts on slots already antisymmetric in the first p places, which
    contributes an extra p! on top of :func:`projection_constant`.
    """
    p, q, d = phi.p, phi.q, phi.dim
    if d > 4 or p + q > 5:
        raise CostGuardExceeded(f"young_project is limited to d <= 4 and p+q <= 5 (got d={d}, p+q={p + q})")
    if m not in da.valid_summands(p, q, d):
        raise da.InvalidSummand(f"m={m} is not a nonzero summand of ({p},{q}) in dimension {d}")
    T = expand_tensor(phi)
    first = list(range(p + m))
    T = antisymmetrize(T, first)
    for a in range(q - m):
        T = symmetrize_pair(T, a, p + m + a)
    T = antisymmetrize(T, first)
    T = antisymmetrize(T, list(range(p, p + q)))
    scale = 1 / (factorial(p) * projection_constant(p, q, m))
    out = {}
    for key, c in T.items():
        I, J = key[:p], key[p:]
        if all(x < y for x, y in zip(I, I[1:])) and all(x < y for x, y in zip(J, J[1:])):
            out[(I, J)] = c * scale
    return DoubleCovector._raw(d, p, q, out)


def kkdd_constant_via_hooks(p: int, q: int, m: int, r: int) -> Fraction:
    """Eigenvalue of kappa_L kappa_R d_L d_R on the irreducible part
    kappa_L kappa_R H_{r-2} of the degree-r m-summand, from hook products.

    The numerator diagram has columns (p+m+1, q-m+1) plus r-2 singleton
    columns; the denominator removes its first row.  The result is checked
    against (r+p+m)(r+q-m-1).
    """
    if r < 2:
        raise ValueError("the kappa-image summand is zero for r < 2")
    if not max(0, q - p) <= m <= q:
        raise ValueError(f"invalid summand index m={m} for ({p},{q})")
    P, Q, R = p + m + 1, q - m + 1, r - 2
    top = _columns(P, Q, *([1] * R)).hook_product()
    bottom = _columns(P - 1, Q - 1).hook_product() * factorial(R)
    value = Fraction(top, bottom)
    expected = (r + p + m) * (r + q - m - 1)
    if value != expected:
        raise AssertionError(f"hook quotient {value} != (r+p+m)(r+q-m-1) = {expected}")
    return value
