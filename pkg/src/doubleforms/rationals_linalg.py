"""Exact rational scalars and dense linear algebra over Q.

Scalars are :class:`fractions.Fraction` values.  Matrices are small immutable
row-major containers; the elimination itself runs on sparse row dictionaries,
which keeps the trace-constraint systems of the finite element code cheap.

Example:
    >>> M = RatMatrix.from_rows([[1, 1, 0], [0, 1, 1]])
    >>> R, piv = rref(M)
    >>> R.to_rows(), piv
    ([[Fraction(1, 1), Fraction(0, 1), Fraction(-1, 1)], [Fraction(0, 1), Fraction(1, 1), Fraction(1, 1)]], (0, 1))
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, Sequence, Tuple, Union

Rational = Fraction
SparseRow = Dict[int, Fraction]

ZERO = Fraction(0)
ONE = Fraction(1)


def as_rational(x: Union[int, str, Fraction]) -> Fraction:
    """Coerce an int, Fraction or "num/den" string to a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"cannot interpret {x!r} as an exact rational")


def format_rational(x: Fraction) -> str:
    """Serialize as "num/den", omitting the denominator when it is 1."""
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def parse_rational(s: str) -> Fraction:
    if not isinstance(s, str):
        raise TypeError(f"expected a string, got {type(s).__name__}")
    return Fraction(s.strip())


@dataclass(frozen=True)
class RatMatrix:
    """Dense rows x cols matrix of Fractions, stored row-major."""

    rows: int
    cols: int
    entries: Tuple[Fraction, ...]

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise ValueError("negative matrix shape")
        if len(self.entries) != self.rows * self.cols:
            raise ValueError(
                f"entries length {len(self.entries)} != {self.rows}x{self.cols}")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: int = None) -> "RatMatrix":
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        for r in rows:
            if len(r) != cols:
                raise ValueError("ragged rows")
        flat = tuple(as_rational(x) for r in rows for x in r)
        return cls(len(rows), cols, flat)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "RatMatrix":
        return cls(rows, cols, (ZERO,) * (rows * cols))

    @classmethod
    def identity(cls, n: int) -> "RatMatrix":
        return cls(n, n, tuple(ONE if i == j else ZERO
                               for i in range(n) for j in range(n)))

    def __getitem__(self, ij: Tuple[int, int]) -> Fraction:
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> List[Fraction]:
        return list(self.entries[i * self.cols:(i + 1) * self.cols])

    def to_rows(self) -> List[List[Fraction]]:
        return [self.row(i) for i in range(self.rows)]

    def matvec(self, v: Sequence) -> List[Fraction]:
        if len(v) != self.cols:
            raise ValueError("shape mismatch in matvec")
        v = [as_rational(x) for x in v]
        return [sum((self[i, j] * v[j] for j in range(self.cols)), ZERO)
                for i in range(self.rows)]

    def sparse_rows(self) -> List[SparseRow]:
        out = []
        for i in range(self.rows):
            out.append({j: x for j, x in enumerate(self.row(i)) if x})
        return out


def _as_matrix(M) -> RatMatrix:
    if isinstance(M, RatMatrix):
        return M
    return RatMatrix.from_rows(M)


def _reduce(row: SparseRow, basis: Mapping[int, SparseRow]) -> SparseRow:
    """Eliminate every pivot column of ``basis`` from ``row`` (in place)."""
    for c in [c for c in row if c in basis]:
        f = row.get(c)
        if not f:
            continue
        for j, x in basis[c].items():
            y = row.get(j, ZERO) - f * x
            if y:
                row[j] = y
            else:
                row.pop(j, None)
    return row


class EchelonBasis:
    """Incrementally maintained reduced row echelon basis of a row space.

    Rows are sparse dictionaries ``column -> Fraction``.  After every insertion
    the stored rows are fully reduced (pivot 1, zeros above and below), so
    :meth:`rows` returns the unique RREF of the span at any time.
    """

    def __init__(self):
        self._piv: Dict[int, SparseRow] = {}

    def __len__(self) -> int:
        return len(self._piv)

    @property
    def pivots(self) -> Tuple[int, ...]:
        return tuple(sorted(self._piv))

    def reduce(self, row: Mapping[int, Fraction]) -> SparseRow:
        """Return the remainder of ``row`` modulo the current span."""
        return _reduce({c: Fraction(x) for c, x in row.items() if x}, self._piv)

    def contains(self, row: Mapping[int, Fraction]) -> bool:
        return not self.reduce(row)

    def add(self, row: Mapping[int, Fraction]) -> bool:
        """Insert ``row``; return True if it enlarged the span."""
        r = self.reduce(row)
        if not r:
            return False
        c = min(r)
        inv = 1 / r[c]
        r = {j: x * inv for j, x in r.items()}
        for other in self._piv.values():
            f = other.get(c)
            if f:
                for j, x in r.items():
                    y = other.get(j, ZERO) - f * x
                    if y:
                        other[j] = y
                    else:
                        other.pop(j, None)
        self._piv[c] = r
        return True

    def rows(self) -> List[SparseRow]:
        return [dict(sorted(self._piv[c].items())) for c in sorted(self._piv)]


def sparse_rref(rows: Iterable[Mapping[int, Fraction]]) -> Tuple[List[SparseRow], Tuple[int, ...]]:
    eb = EchelonBasis()
    for r in rows:
        eb.add(r)
    return eb.rows(), eb.pivots


def sparse_rank(rows: Iterable[Mapping[int, Fraction]]) -> int:
    eb = EchelonBasis()
    for r in rows:
        eb.add(r)
    return len(eb)


def sparse_nullspace(rows: Iterable[Mapping[int, Fraction]], ncols: int) -> List[SparseRow]:
    """Nullspace basis of a sparse matrix with ``ncols`` columns.

    Free variables are set to 1 one at a time in increasing column order and
    pivot variables are read off the RREF.
    """
    R, piv = sparse_rref(rows)
    pivset = set(piv)
    out = []
    for f in range(ncols):
        if f in pivset:
            continue
        v = {f: ONE}
        for c, r in zip(piv, R):
            x = r.get(f)
            if x:
                v[c] = -x
        out.append(dict(sorted(v.items())))
    return out


def rref(M) -> Tuple[RatMatrix, Tuple[int, ...]]:
    """Reduced row echelon form of ``M`` over Q and its pivot columns."""
    M = _as_matrix(M)
    R, piv = sparse_rref(M.sparse_rows())
    out = []
    for r in R:
        out.append([r.get(j, ZERO) for j in range(M.cols)])
    while len(out) < M.rows:
        out.append([ZERO] * M.cols)
    return RatMatrix.from_rows(out, cols=M.cols), piv


def nullspace_basis(M) -> List[List[Fraction]]:
    """Canonical nullspace basis (free variables set to 1, increasing order)."""
    M = _as_matrix(M)
    vs = sparse_nullspace(M.sparse_rows(), M.cols)
    return [[v.get(j, ZERO) for j in range(M.cols)] for v in vs]


def rank(M) -> int:
    M = _as_matrix(M)
    return sparse_rank(M.sparse_rows())
