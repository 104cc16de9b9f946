"""Traces of polynomial double forms on hyperplanes, simplices and faces.

The standard simplex T^n sits in R^{n+1} as sum(lambda) = 1.  Its canonical
coordinates are t_1..t_n = lambda_1..lambda_n (lambda_0 is eliminated); inside
a form of dimension n the variable t_j has index j-1.  A face inherits the
vertex order of its parent, and its own canonical coordinates again drop the
barycentric coordinate of its first vertex.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Dict, List, Optional, Sequence, Tuple

from . import double_algebra as da
from .exterior_core import merge
from .poly_forms import (
    Key,
    PolyDoubleForm,
    full_basis,
    homogenize,
    monomials_upto,
    project_summand,
    term_sort_key,
)
from .rationals_linalg import ZERO, EchelonBasis, as_rational, sparse_nullspace

AffineMap = Tuple[Tuple[Tuple[Fraction, ...], ...], Tuple[Fraction, ...]]


def _acc(out: Dict, key, c) -> None:
    y = out.get(key, ZERO) + c
    if y:
        out[key] = y
    else:
        out.pop(key, None)


@dataclass(frozen=True)
class SimplexForm:
    """A polynomial double form on T^n in canonical coordinates.

    ``vertices`` are the (global) labels of the barycentric roles 0..n.
    """

    form: PolyDoubleForm
    vertices: Tuple[int, ...]

    def __post_init__(self):
        verts = tuple(int(v) for v in self.vertices)
        object.__setattr__(self, "vertices", verts)
        if len(verts) != self.form.dim + 1:
            raise ValueError(f"{len(verts)} vertex labels for a form of dimension {self.form.dim}")
        if any(b <= a for a, b in zip(verts, verts[1:])):
            raise ValueError(f"vertex labels {verts} are not strictly increasing")
        if self.form.coords != "affine":
            object.__setattr__(self, "form", self.form.with_coords("affine"))

    @property
    def n(self) -> int:
        return self.form.dim

    @property
    def p(self) -> int:
        return self.form.p

    @property
    def q(self) -> int:
        return self.form.q

    def is_zero(self) -> bool:
        return self.form.is_zero()

    def __add__(self, other: "SimplexForm") -> "SimplexForm":
        self._check(other)
        return SimplexForm(self.form + other.form, self.vertices)

    def __sub__(self, other: "SimplexForm") -> "SimplexForm":
        self._check(other)
        return SimplexForm(self.form - other.form, self.vertices)

    def scale(self, a) -> "SimplexForm":
        return SimplexForm(self.form.scale(a), self.vertices)

    def _check(self, other: "SimplexForm") -> None:
        if self.vertices != other.vertices:
            raise ValueError(f"vertex mismatch: {self.vertices} vs {other.vertices}")

    def same(self, other: "SimplexForm") -> bool:
        return self.vertices == other.vertices and self.form.same_terms(other.form)

    def to_json(self) -> dict:
        out = self.form.to_json()
        out["n"] = self.n
        out["vertices"] = list(self.vertices)
        return out

    @classmethod
    def from_json(cls, data: dict) -> "SimplexForm":
        n = int(data.get("n", data["dim"]))
        if int(data["dim"]) != n:
            raise ValueError("simplex form must have dim == n")
        verts = data.get("vertices", list(range(n + 1)))
        body = dict(data)
        body["coords"] = "affine"
        return cls(PolyDoubleForm.from_json(body), tuple(verts))


# -- generic affine pullback -------------------------------------------------

def _linear_power(row: Tuple[Fraction, ...], b: Fraction, k: int, cache: Dict) -> Dict:
    key = (row, b, k)
    if key in cache:
        return cache[key]
    dd = len(row)
    if k == 0:
        res = {(0,) * dd: Fraction(1)}
    else:
        prev = _linear_power(row, b, k - 1, cache)
        res = {}
        for mono, c in prev.items():
            if b:
                _acc(res, mono, c * b)
            for j, a in enumerate(row):
                if a:
                    _acc(res, mono[:j] + (mono[j] + 1,) + mono[j + 1:], c * a)
    cache[key] = res
    return res


def _poly_mul(f: Dict, g: Dict) -> Dict:
    out: Dict = {}
    for a, x in f.items():
        for c, y in g.items():
            _acc(out, tuple(i + j for i, j in zip(a, c)), x * y)
    return out


class AffinePullback:
    """Pullback along x = A y + b, with per-instance caches."""

    def __init__(self, A: Sequence[Sequence], b: Sequence, d_out: Optional[int] = None):
        self.A = tuple(tuple(as_rational(x) for x in row) for row in A)
        self.b = tuple(as_rational(x) for x in b)
        if len(self.A) != len(self.b):
            raise ValueError("shape mismatch between A and b")
        if d_out is None:
            d_out = len(self.A[0]) if self.A else 0
        self.d_out = d_out
        if any(len(row) != self.d_out for row in self.A):
            raise ValueError("ragged matrix A")
        self.d_in = len(self.A)
        self._pow: Dict = {}
        self._mono: Dict = {}
        self._forms: Dict = {}
        self._terms: Dict = {}

    def monomial(self, mono: Tuple[int, ...]) -> Dict:
        if mono not in self._mono:
            res = {(0,) * self.d_out: Fraction(1)}
            for i, e in enumerate(mono):
                if e:
                    res = _poly_mul(res, _linear_power(self.A[i], self.b[i], e, self._pow))
            self._mono[mono] = res
        return self._mono[mono]

    def covector(self, I: Tuple[int, ...]) -> Dict:
        """dx^I written in the dy basis (minors of A)."""
        if I not in self._forms:
            res = {(): Fraction(1)}
            for i in I:
                nxt: Dict = {}
                for K, c in res.items():
                    for j, a in enumerate(self.A[i]):
                        if a:
                            sign, K2 = merge(K, (j,))
                            if sign:
                                _acc(nxt, K2, sign * a * c)
                res = nxt
            self._forms[I] = res
        return self._forms[I]

    def term(self, key: Key) -> Dict:
        if key not in self._terms:
            mono, I, J = key
            res: Dict = {}
            poly = self.monomial(mono)
            fI = self.covector(I)
            fJ = self.covector(J)
            for K, x in fI.items():
                for L, y in fJ.items():
                    xy = x * y
                    for mo, z in poly.items():
                        _acc(res, (mo, K, L), xy * z)
            self._terms[key] = res
        return self._terms[key]

    def __call__(self, phi: PolyDoubleForm, coords: Optional[str] = None) -> PolyDoubleForm:
        if phi.dim != self.d_in:
            raise ValueError(f"form dimension {phi.dim} does not match map source {self.d_in}")
        out: Dict = {}
        for key, c in phi.terms.items():
            for k2, v in self.term(key).items():
                _acc(out, k2, c * v)
        return PolyDoubleForm._raw(self.d_out, phi.p, phi.q, out, coords or phi.coords)


def pullback_affine(phi: PolyDoubleForm, A: Sequence[Sequence], b: Sequence) -> PolyDoubleForm:
    """Substitute x -> A y + b in coefficients and dx -> A dy in both factors.

    ``A`` has one row per source variable x_i and one column per target
    variable y_j.
    """
    return AffinePullback(A, b)(phi)


# -- traces ------------------------------------------------------------------

def trace_hyperplane(phi: PolyDoubleForm, i: int) -> PolyDoubleForm:
    """Trace on {x_i = 0}, reindexed to the remaining d-1 variables."""
    d = phi.dim
    if not 0 <= i < d:
        raise ValueError(f"hyperplane index {i} out of range for dimension {d}")
    drop = lambda K: tuple(k if k < i else k - 1 for k in K)
    out = {}
    for (mono, I, J), c in phi.terms.items():
        if mono[i] or i in I or i in J:
            continue
        out[(mono[:i] + mono[i + 1:], drop(I), drop(J))] = c
    return PolyDoubleForm._raw(d - 1, phi.p, phi.q, out, phi.coords)


@lru_cache(maxsize=None)
def _simplex_chart(n: int) -> AffinePullback:
    A = [[-1] * n] + [[1 if j == i else 0 for j in range(n)] for i in range(n)]
    b = [1] + [0] * n
    return AffinePullback(A, b)


def trace_to_simplex(phi: PolyDoubleForm, n: int, vertices: Optional[Sequence[int]] = None) -> SimplexForm:
    """Pull a form on R^{n+1} back to T^n in canonical coordinates."""
    if phi.dim != n + 1:
        raise ValueError(f"form dimension {phi.dim} != n+1 = {n + 1}")
    verts = tuple(vertices) if vertices is not None else tuple(range(n + 1))
    return SimplexForm(_simplex_chart(n)(phi, "affine"), verts)


@lru_cache(maxsize=None)
def _face_chart(n: int, roles: Tuple[int, ...]) -> AffinePullback:
    """Canonical coordinates of the face spanned by ``roles`` inside T^n.

    Row j gives t_{j+1} (the barycentric coordinate of role j+1) as an affine
    function of the face coordinates s_1..s_l.
    """
    l = len(roles) - 1
    A, b = [], []
    for role in range(1, n + 1):
        if role not in roles:
            A.append([0] * l)
            b.append(0)
            continue
        a = roles.index(role)
        if a == 0:
            A.append([-1] * l)
            b.append(1)
        else:
            A.append([1 if j == a - 1 else 0 for j in range(l)])
            b.append(0)
    return AffinePullback(A, b, d_out=l)


def face_trace(sf: SimplexForm, face_vertices: Sequence[int]) -> SimplexForm:
    """Trace of a simplex form on one of its faces, given by global labels."""
    fv = tuple(sorted(face_vertices))
    if not fv:
        raise ValueError("empty face")
    try:
        roles = tuple(sf.vertices.index(v) for v in fv)
    except ValueError:
        raise ValueError(f"{fv} is not a face of {sf.vertices}") from None
    if roles == tuple(range(sf.n + 1)):
        return sf
    return SimplexForm(_face_chart(sf.n, roles)(sf.form, "affine"), fv)


def facet_trace(sf: SimplexForm, i: int) -> SimplexForm:
    """Trace on the facet opposite barycentric role ``i``."""
    if sf.n < 1:
        raise ValueError("a 0-simplex has no facets")
    if not 0 <= i <= sf.n:
        raise ValueError(f"role {i} out of range for T^{sf.n}")
    return face_trace(sf, sf.vertices[:i] + sf.vertices[i + 1:])


# -- barycentric re-expression -------------------------------------------------

@lru_cache(maxsize=None)
def _lambda_chart(n: int, eliminate: int) -> AffinePullback:
    """t in terms of lambda_0..lambda_n, using sum(lambda) = 1 to drop one."""
    A, b = [], []
    for j in range(1, n + 1):
        if j == eliminate:
            A.append([0 if i == j else -1 for i in range(n + 1)])
            b.append(1)
        else:
            A.append([1 if i == j else 0 for i in range(n + 1)])
            b.append(0)
    return AffinePullback(A, b, d_out=n + 1)


def to_barycentric(sf: SimplexForm, eliminate: int = 0) -> PolyDoubleForm:
    """A (not necessarily homogeneous) form on R^{n+1} restricting to ``sf``.

    With ``eliminate=0`` this is t_j -> lambda_j; other values rewrite
    t_eliminate through the remaining barycentric coordinates.
    """
    n = sf.n
    if not 0 <= eliminate <= n:
        raise ValueError(f"cannot eliminate role {eliminate} on T^{n}")
    return _lambda_chart(n, eliminate)(sf.form, "lambda")


def arbitrary_extension(sf: SimplexForm, r: int, eliminate: int = 0) -> PolyDoubleForm:
    """Homogeneous degree-r form on R^{n+1} whose trace on T^n is ``sf``."""
    return homogenize(to_barycentric(sf, eliminate), r)


# -- vanishing-trace spaces --------------------------------------------------

def _canonical_index(d: int, p: int, q: int, r: int, exact_degree: bool = False) -> Dict[Key, int]:
    keys = [next(iter(f.terms)) for f in full_basis(d, p, q, r, exact_degree)]
    keys.sort(key=term_sort_key)
    return {k: i for i, k in enumerate(keys)}


def _canonical_span(forms: List[PolyDoubleForm], index: Dict[Key, int], d: int, p: int, q: int,
                    coords: str) -> List[PolyDoubleForm]:
    eb = EchelonBasis()
    for f in forms:
        eb.add({index[k]: c for k, c in f.terms.items()})
    inv = {i: k for k, i in index.items()}
    return [PolyDoubleForm._raw(d, p, q, {inv[i]: c for i, c in row.items()}, coords)
            for row in eb.rows()]


@lru_cache(maxsize=None)
def _vanishing_trace_full(p: int, q: int, r: int, n: int) -> Tuple[PolyDoubleForm, ...]:
    """Spanning set for all degree <= r (p,q)-forms on T^n with vanishing trace."""
    if p > n or q > n or p < 0 or q < 0:
        return ()
    cand = []
    for mono in monomials_upto(n, r):
        for I in combinations(range(n), p):
            for J in combinations(range(n), q):
                # vanishing trace on {t_j = 0} for every j forces t_j | coefficient
                # whenever dt_j is absent; those facets act diagonally on terms
                if all(mono[j] >= 1 or j in I or j in J for j in range(n)):
                    cand.append((mono, I, J))
    if n == 0:
        return tuple(PolyDoubleForm._raw(0, p, q, {k: Fraction(1)}, "affine") for k in cand)
    chart = _face_chart(n, tuple(range(1, n + 1)))
    rows: Dict[Key, Dict[int, Fraction]] = {}
    for col, key in enumerate(cand):
        for k2, v in chart.term(key).items():
            rows.setdefault(k2, {})[col] = v
    null = sparse_nullspace(rows.values(), len(cand))
    return tuple(PolyDoubleForm._raw(n, p, q, {cand[c]: x for c, x in v.items()}, "affine")
                 for v in null)


@lru_cache(maxsize=None)
def _vanishing_trace_basis(p: int, q: int, m: int, r: int, n: int) -> Tuple[SimplexForm, ...]:
    if m not in da.valid_summands(p, q, n):
        raise da.InvalidSummand(f"m={m} is not a nonzero summand of ({p},{q}) on T^{n}")
    full = _vanishing_trace_full(p, q, r, n)
    proj = [project_summand(f, m) for f in full]
    index = _canonical_index(n, p, q, r)
    basis = _canonical_span(proj, index, n, p, q, "affine")
    verts = tuple(range(n + 1))
    return tuple(SimplexForm(f, verts) for f in basis)


def vanishing_trace_basis(p: int, q: int, m: int, r: int, n: int) -> List[SimplexForm]:
    """Canonical (RREF) basis of the degree <= r, m-summand forms on T^n with
    vanishing trace on every facet."""
    return list(_vanishing_trace_basis(p, q, m, r, n))


def has_vanishing_trace(sf: SimplexForm) -> bool:
    if sf.n == 0:
        return True
    return all(facet_trace(sf, i).is_zero() for i in range(sf.n + 1))


def ring_vanishing_basis(p: int, q: int, m: int, r: int, n: int) -> List[PolyDoubleForm]:
    """Homogeneous degree-r m-summand forms on R^{n+1} with vanishing trace on
    every coordinate hyperplane, found by solving the trace constraints."""
    d = n + 1
    if m not in da.valid_summands(p, q, d):
        return []
    gens = [project_summand(f, m) for f in full_basis(d, p, q, r, exact_degree=True)]
    index = _canonical_index(d, p, q, r, exact_degree=True)
    span = _canonical_span(gens, index, d, p, q, "lambda")
    rows: Dict[Tuple, Dict[int, Fraction]] = {}
    for col, f in enumerate(span):
        for i in range(d):
            for k2, v in trace_hyperplane(f, i).terms.items():
                rows.setdefault((i,) + k2, {})[col] = v
    null = sparse_nullspace(rows.values(), len(span))
    out = []
    for v in null:
        acc = PolyDoubleForm.zero(d, p, q)
        for col, x in v.items():
            acc = acc + span[col].scale(x)
        out.append(acc)
    return _canonical_span(out, index, d, p, q, "lambda")
