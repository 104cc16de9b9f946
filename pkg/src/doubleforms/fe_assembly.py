"""Finite element spaces of double forms on simplicial complexes.

Each face F carries the vanishing-trace space on F.  A basis element on F is
extended once to a homogeneous form in the barycentric coordinates of F's
vertices; in every cell containing F it is that same barycentric expression,
written in the cell's canonical coordinates.  Its trace vanishes on every face
missing a vertex of F because such a face lies in a coordinate hyperplane.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import comb
from typing import Dict, List, Optional, Sequence, Tuple

from . import double_algebra as da
from .extension import ExtensionUnavailable, extend
from .poly_forms import PolyDoubleForm, full_basis, project_summand, term_sort_key
from .rationals_linalg import EchelonBasis
from .simplex_trace import SimplexForm, face_trace, trace_to_simplex, vanishing_trace_basis

Face = Tuple[int, ...]


@dataclass(frozen=True)
class SimplicialComplex:
    num_vertices: int
    cells: Tuple[Face, ...]

    def __post_init__(self):
        cells = tuple(tuple(int(v) for v in c) for c in self.cells)
        object.__setattr__(self, "cells", cells)
        if not cells:
            raise ValueError("a complex needs at least one cell")
        size = len(cells[0])
        for c in cells:
            if len(c) != size:
                raise ValueError("all cells must have the same dimension")
            if any(b <= a for a, b in zip(c, c[1:])):
                raise ValueError(f"cell {c} is not strictly increasing")
            if c[0] < 0 or c[-1] >= self.num_vertices:
                raise ValueError(f"cell {c} uses a vertex outside 0..{self.num_vertices - 1}")
        if len(set(cells)) != len(cells):
            raise ValueError("duplicate cells")

    @property
    def dim(self) -> int:
        return len(self.cells[0]) - 1

    def faces(self, l: int) -> List[Face]:
        out = set()
        for c in self.cells:
            out.update(combinations(c, l + 1))
        return sorted(out)

    def all_faces(self) -> List[Face]:
        return [f for l in range(self.dim + 1) for f in self.faces(l)]

    def cells_containing(self, face: Sequence[int]) -> List[int]:
        s = set(face)
        return [i for i, c in enumerate(self.cells) if s <= set(c)]

    def to_json(self) -> dict:
        return {"num_vertices": self.num_vertices, "cells": [list(c) for c in self.cells]}

    @classmethod
    def from_json(cls, data: dict) -> "SimplicialComplex":
        return cls(int(data["num_vertices"]), tuple(tuple(c) for c in data["cells"]))

    @classmethod
    def simplex(cls, N: int) -> "SimplicialComplex":
        return cls(N + 1, (tuple(range(N + 1)),))


@dataclass(frozen=True)
class GlobalBasisElement:
    owner_face: Face
    local: Dict[int, SimplexForm]
    meta: Tuple[int, int, int, int, int]
    barycentric: Optional[PolyDoubleForm] = None

    def to_json(self) -> dict:
        p, q, m, r, idx = self.meta
        out = {
            "owner_face": list(self.owner_face),
            "meta": {"p": p, "q": q, "m": m, "r": r, "index": idx},
            "local": [{"cell": c, "form": f.to_json()} for c, f in sorted(self.local.items())],
        }
        if self.barycentric is not None:
            out["barycentric"] = self.barycentric.to_json()
            out["barycentric_vertices"] = list(self.owner_face)
        return out


@dataclass(frozen=True)
class DofTable:
    counts: Dict[int, int]
    rank_derived: bool = False

    def to_json(self) -> dict:
        return {"counts": {str(l): c for l, c in sorted(self.counts.items())},
                "rank_derived": self.rank_derived}


# -- closed-form dimensions ---------------------------------------------------

def _binom(a: int, b: int) -> int:
    if a < 0 or b < 0 or b > a:
        return 0
    return comb(a, b)


def _exact(num: int, den: int) -> int:
    x = Fraction(num, den)
    assert x.denominator == 1, "dimension formula produced a non-integer"
    return int(x)


def dim_trace_free(p: int, q: int, m: int, n: int) -> int:
    """Dimension of the degree-0 vanishing-trace m-summand space on T^n."""
    if min(p, q, n) < 0:
        raise ValueError("p, q, n must be nonnegative")
    if not max(0, q - p) <= m <= q - 1:
        raise ValueError(f"m={m} outside max(0, q-p) <= m <= q-1 for ({p},{q})")
    return _exact((p - q + 2 * m + 1) * _binom(n + 1, q - m) * _binom(q - m - 1, n - p - m),
                  p + m + 1)


def dim_full(p: int, q: int, m: int, n: int) -> int:
    """Dimension of the constant m-summand (p,q)-forms on T^n."""
    if min(p, q, n) < 0:
        raise ValueError("p, q, n must be nonnegative")
    if m < max(0, q - p):
        raise ValueError(f"m={m} below max(0, q-p) for ({p},{q})")
    return _exact((p - q + 2 * m + 1) * _binom(n + 1, q - m) * _binom(n, p + m), p + m + 1)


def dim_ring(p: int, q: int, m: int, n: int) -> int:
    """Dimension of constant m-summand forms on R^{n+1} with vanishing
    hyperplane traces."""
    if min(p, q, n) < 0:
        raise ValueError("p, q, n must be nonnegative")
    if m < max(0, q - p):
        raise ValueError(f"m={m} below max(0, q-p) for ({p},{q})")
    return (_binom(n + 1, q - m) * _binom(q - m, n + 1 - p - m)
            - _binom(n + 1, q - m - 1) * _binom(q - m - 1, n - p - m))


def dim_ring_closed(p: int, q: int, m: int, n: int) -> int:
    """Three-case closed form of :func:`dim_ring`."""
    if m < q:
        return _exact((p - q + 2 * m + 1) * _binom(n + 1, q - m - 1) * _binom(q - m, n + 1 - p - m),
                      q - m)
    if m == q and p + q == n + 1:
        return 1
    return 0


def dim_ring_unrestricted(p: int, q: int, n: int) -> int:
    return _binom(n + 1, p) * _binom(p, n + 1 - q)


def dim_trace_free_base(p: int, q: int, m: int) -> int:
    """Trace-free dimension on T^p itself."""
    return _binom(p, q) if m == 0 else 0


def verify_dof_sum(p: int, q: int, m: int, n: int) -> bool:
    total = sum(_binom(n + 1, l + 1) * dim_trace_free(p, q, m, l) for l in range(n + 1))
    return total == dim_full(p, q, m, n)


def dof_table(p: int, q: int, m: int, N: int) -> DofTable:
    if not max(0, q - p) <= m <= q - 1:
        raise da.InvalidSummand(f"m={m} outside max(0, q-p) <= m <= q-1 for ({p},{q})")
    counts = {l: dim_trace_free(p, q, m, l) for l in range(N + 1)}
    return DofTable({l: c for l, c in counts.items() if c})


def rank_dof_table(p: int, q: int, m: int, r: int, N: int) -> DofTable:
    """Per-face counts from the rank of the trace constraints (any r)."""
    counts = {}
    for l in range(N + 1):
        if m in da.valid_summands(p, q, l):
            c = len(vanishing_trace_basis(p, q, m, r, l))
            if c:
                counts[l] = c
    return DofTable(counts, rank_derived=True)


def space_dimension(p: int, q: int, m: int, r: int, N: int) -> int:
    """Rank of the degree <= r m-summand (p,q)-forms on T^N."""
    if m not in da.valid_summands(p, q, N):
        return 0
    eb = EchelonBasis()
    keys = {}
    for f in full_basis(N, p, q, r):
        g = project_summand(f, m)
        eb.add({keys.setdefault(k, len(keys)): c for k, c in g.terms.items()})
    return len(eb)


# -- local extension -----------------------------------------------------------

def _add_vertex(lam: PolyDoubleForm, verts: Face, v: int) -> Tuple[PolyDoubleForm, Face]:
    """Re-express a barycentric form on ``verts`` over ``verts + {v}``.

    The new coordinate does not occur; existing variables and form indices are
    shifted to their positions in the enlarged, sorted vertex list.
    """
    if v in verts:
        raise ValueError(f"vertex {v} already present")
    new = tuple(sorted(verts + (v,)))
    pos = new.index(v)
    shift = lambda K: tuple(k if k < pos else k + 1 for k in K)
    out = {}
    for (mono, I, J), c in lam.terms.items():
        out[(mono[:pos] + (0,) + mono[pos:], shift(I), shift(J))] = c
    return PolyDoubleForm._raw(lam.dim + 1, lam.p, lam.q, out, lam.coords), new


def embed_barycentric(lam: PolyDoubleForm, face: Face, cell: Face,
                      order: Optional[Sequence[int]] = None) -> SimplexForm:
    """Write a barycentric form on ``face`` in the canonical coordinates of
    ``cell``, adding the missing vertices one at a time.

    ``order`` fixes the order in which vertices are added (default:
    increasing); the result does not depend on it.
    """
    face, cell = tuple(face), tuple(cell)
    if not set(face) <= set(cell):
        raise ValueError(f"{face} is not a face of {cell}")
    missing = sorted(set(cell) - set(face))
    if order is None:
        order = missing
    elif sorted(order) != missing:
        raise ValueError(f"order {tuple(order)} is not a permutation of {tuple(missing)}")
    verts = face
    for v in order:
        lam, verts = _add_vertex(lam, verts, v)
    assert verts == cell
    return trace_to_simplex(lam, len(cell) - 1, cell)


def local_extend_chain(phibar: SimplexForm, cell: Sequence[int], m: int, r: int,
                       order: Optional[Sequence[int]] = None) -> SimplexForm:
    """Extend a trace-free form on a face into a containing cell.

    The form on ``phibar.vertices`` is extended once to a homogeneous
    barycentric form with vanishing hyperplane traces; the remaining vertices
    of the cell are then added in increasing global order, or in ``order``.
    """
    cell = tuple(cell)
    face = phibar.vertices
    if not set(face) <= set(cell):
        raise ValueError(f"{face} is not a face of {cell}")
    if r == 0 and m == phibar.q:
        raise ExtensionUnavailable("r = 0 and m = q: the constant C vanishes")
    if face == cell:
        return phibar
    lam = extend(phibar, phibar.p, phibar.q, m, r).form
    return embed_barycentric(lam, face, cell, order)


@lru_cache(maxsize=None)
def _face_extensions(p: int, q: int, m: int, r: int, l: int) -> Tuple[Tuple[SimplexForm, PolyDoubleForm], ...]:
    out = []
    for b in vanishing_trace_basis(p, q, m, r, l):
        out.append((b, extend(b, p, q, m, r).form))
    return tuple(out)


def global_basis(T: SimplicialComplex, p: int, q: int, m: int, r: int,
                 verify: bool = True) -> List[GlobalBasisElement]:
    """Geometric-decomposition basis of the degree-r m-summand space on T."""
    if r == 0 and m == q:
        raise ExtensionUnavailable("r = 0 and m = q: the construction does not apply")
    if m not in da.valid_summands(p, q, T.dim):
        raise da.InvalidSummand(f"m={m} is not a nonzero summand of ({p},{q}) in dimension {T.dim}")
    elements = []
    for F in T.all_faces():
        l = len(F) - 1
        if m not in da.valid_summands(p, q, l):
            continue
        for idx, (b, lam) in enumerate(_face_extensions(p, q, m, r, l)):
            local = {}
            for ci in T.cells_containing(F):
                local[ci] = embed_barycentric(lam, F, T.cells[ci])
            elements.append(GlobalBasisElement(F, local, (p, q, m, r, idx), lam))
    if verify:
        problems = verify_basis(elements, T)
        if problems:
            raise AssertionError("basis invariants violated: " + "; ".join(problems[:5]))
    return elements


# -- verification ---------------------------------------------------------------

@dataclass
class SingleValuedReport:
    violations: List[dict] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_json(self) -> dict:
        return {"ok": self.ok, "violations": self.violations}


def check_single_valued(basis: Sequence[GlobalBasisElement], T: SimplicialComplex) -> SingleValuedReport:
    """Compare the traces of every element from both sides of every shared face."""
    rep = SingleValuedReport()
    pairs = []
    for a, b in combinations(range(len(T.cells)), 2):
        K = tuple(sorted(set(T.cells[a]) & set(T.cells[b])))
        if K:
            pairs.append((a, b, K))
    for e_idx, el in enumerate(basis):
        p, q = el.meta[0], el.meta[1]
        for a, b, K in pairs:
            if a not in el.local and b not in el.local:
                continue
            ta = face_trace(el.local[a], K) if a in el.local else None
            tb = face_trace(el.local[b], K) if b in el.local else None
            if ta is None:
                ok = tb.is_zero()
            elif tb is None:
                ok = ta.is_zero()
            else:
                ok = ta.form.same_terms(tb.form)
            if not ok:
                rep.violations.append({"element": e_idx, "cells": [a, b], "face": list(K)})
    return rep


def verify_basis(basis: Sequence[GlobalBasisElement], T: SimplicialComplex) -> List[str]:
    """Check every stated invariant of a global basis; return problem strings."""
    problems = []
    for e_idx, el in enumerate(basis):
        F = el.owner_face
        p, q, m, r, idx = el.meta
        cells = T.cells_containing(F)
        if sorted(el.local) != cells:
            problems.append(f"element {e_idx}: local forms on {sorted(el.local)}, expected {cells}")
            continue
        owner = vanishing_trace_basis(p, q, m, r, len(F) - 1)[idx]
        for ci in cells:
            sf = el.local[ci]
            if not face_trace(sf, F).form.same_terms(owner.form):
                problems.append(f"element {e_idx}: trace on owner {F} differs in cell {ci}")
            for v in F:
                facet = tuple(x for x in T.cells[ci] if x != v)
                if facet and not face_trace(sf, facet).is_zero():
                    problems.append(f"element {e_idx}: nonzero trace on {facet} in cell {ci}")
    sv = check_single_valued(basis, T)
    for v in sv.violations:
        problems.append(f"element {v['element']}: traces disagree on {v['face']}")
    if basis_rank(basis) != len(basis):
        problems.append("elements are linearly dependent")
    return problems


def basis_rank(basis: Sequence[GlobalBasisElement], cell: Optional[int] = None) -> int:
    """Rank of the elements, globally or restricted to one cell."""
    eb = EchelonBasis()
    keys: Dict = {}
    for el in basis:
        row = {}
        for ci, sf in el.local.items():
            if cell is not None and ci != cell:
                continue
            for k, c in sf.form.terms.items():
                row[keys.setdefault((ci,) + k, len(keys))] = c
        eb.add(row)
    return len(eb)


def expected_count(T: SimplicialComplex, p: int, q: int, m: int, r: int) -> int:
    total = 0
    for F in T.all_faces():
        l = len(F) - 1
        if r == 0 and m <= q - 1:
            total += dim_trace_free(p, q, m, l) if m >= max(0, q - p) else 0
        elif m in da.valid_summands(p, q, l):
            total += len(vanishing_trace_basis(p, q, m, r, l))
    return total
