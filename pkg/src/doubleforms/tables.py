"""Reference tables of low-order spaces and a dλ pretty printer.

``table1`` lays out the vanishing-trace dimensions for the classical low
(p,q) rows; ``TABLE2`` lists hand-written bases in barycentric shorthand,
with face vertices labelled i, j, k, l.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Sequence, Tuple

from .exterior_core import merge
from .poly_forms import PolyDoubleForm
from .rationals_linalg import format_rational

# (p, q, m) rows in display order: p in {q, q+1}, 1 <= q <= p <= 3, m < q.
TABLE1_ROWS: Tuple[Tuple[int, int, int], ...] = tuple(
    (p, q, m)
    for p in range(1, 4)
    for q in range(max(1, p - 1), p + 1)
    for m in range(q)
)


def aliases(p: int, q: int, m: int) -> List[Tuple[int, int, int]]:
    """Summands isomorphic through s^j: (p+j, q-j, m-j), j = 0..m."""
    return [(p + j, q - j, m - j) for j in range(m + 1)]


def row_label(p: int, q: int, m: int) -> str:
    return "≅".join(f"Λ^{{{a},{b}}}_{c}" for a, b, c in aliases(p, q, m))


def table1(n_max: int = 6) -> List[dict]:
    """Rows of nonzero vanishing-trace dimensions for n = 0..n_max."""
    from .fe_assembly import dim_trace_free

    rows = []
    for p, q, m in TABLE1_ROWS:
        cells = {}
        for n in range(n_max + 1):
            v = dim_trace_free(p, q, m, n)
            if v:
                cells[str(n)] = v
        rows.append({"label": row_label(p, q, m), "p": p, "q": q, "m": m, "cells": cells})
    return rows


# -- reference bases in shorthand ----------------------------------------------

ROLE = {"i": 0, "j": 1, "k": 2, "l": 3}


@dataclass(frozen=True)
class ShorthandTerm:
    """coeff * (dλ_A ⊗ dλ_B), or coeff * (dλ_A ⊙ dλ_B) when ``sym``."""

    coeff: int
    A: str
    B: str
    sym: bool

    def text(self) -> str:
        op = "⊙" if self.sym else "⊗"
        return f"dλ_{{{self.A}}}{op}dλ_{{{self.B}}}"


@dataclass(frozen=True)
class Table2Row:
    p: int
    q: int
    m: int
    n: int
    forms: Tuple[Tuple[ShorthandTerm, ...], ...]

    def texts(self) -> List[str]:
        out = []
        for f in self.forms:
            s = ""
            for t in f:
                sign = "-" if t.coeff < 0 else "+"
                s += (sign if s or t.coeff < 0 else "") + t.text()
            out.append(s)
        return out

    def lambda_forms(self) -> List[PolyDoubleForm]:
        return [shorthand_to_form(f, self.n, self.p, self.q) for f in self.forms]


def _t(sign: int, A: str, B: str, sym: bool) -> ShorthandTerm:
    return ShorthandTerm(sign, A, B, sym)


def _S(*pairs) -> Tuple[ShorthandTerm, ...]:
    return tuple(_t(s, A, B, True) for s, A, B in pairs)


def _X(*pairs) -> Tuple[ShorthandTerm, ...]:
    return tuple(_t(s, A, B, False) for s, A, B in pairs)


TABLE2: Tuple[Table2Row, ...] = (
    Table2Row(1, 1, 0, 1, (_S((1, "i", "j")),)),
    Table2Row(2, 1, 0, 2, (
        _X((1, "ij", "k"), (-1, "jk", "i")),
        _X((1, "ij", "k"), (-1, "ki", "j")),
    )),
    Table2Row(2, 2, 0, 2, (
        _S((1, "ij", "jk"), (1, "jk", "ki"), (1, "ki", "ij")),
    )),
    Table2Row(2, 2, 0, 3, (
        _S((1, "ij", "kl"), (-1, "ik", "lj")),
        _S((1, "ij", "kl"), (-1, "il", "jk")),
    )),
    Table2Row(2, 2, 1, 3, (
        _X((1, "ij", "kl"), (-1, "kl", "ij")),
        _X((1, "ik", "lj"), (-1, "lj", "ik")),
        _X((1, "il", "jk"), (-1, "jk", "il")),
    )),
    Table2Row(3, 1, 0, 3, (
        _X((1, "ijk", "l"), (-1, "kjl", "i")),
        _X((1, "ijk", "l"), (-1, "ikl", "j")),
        _X((1, "ijk", "l"), (-1, "jil", "k")),
    )),
)


def _covector(letters: str) -> Tuple[int, Tuple[int, ...]]:
    """Sign and sorted index tuple of dλ_{letters}."""
    sign, K = 1, ()
    for ch in letters:
        s, K = merge(K, (ROLE[ch],))
        if not s:
            return 0, ()
        sign *= s
    return sign, K


def shorthand_to_form(terms: Sequence[ShorthandTerm], n: int, p: int, q: int) -> PolyDoubleForm:
    """Constant barycentric (p,q)-form on R^{n+1} for a shorthand expression."""
    out: Dict = {}
    zero = (0,) * (n + 1)

    def add(A: str, B: str, c: Fraction) -> None:
        sa, I = _covector(A)
        sb, J = _covector(B)
        if len(I) != p or len(J) != q:
            raise ValueError(f"term dλ_{A}, dλ_{B} is not of degree ({p},{q})")
        if max(I + J, default=0) > n:
            raise ValueError(f"role out of range for a {n}-simplex")
        key = (zero, I, J)
        v = out.get(key, Fraction(0)) + sa * sb * c
        if v:
            out[key] = v
        else:
            out.pop(key, None)

    for t in terms:
        if t.sym:
            add(t.A, t.B, Fraction(t.coeff, 2))
            add(t.B, t.A, Fraction(t.coeff, 2))
        else:
            add(t.A, t.B, Fraction(t.coeff))
    return PolyDoubleForm._raw(n + 1, p, q, out, "lambda")


def table2_row(p: int, q: int, m: int, n: int) -> Table2Row:
    for row in TABLE2:
        if (row.p, row.q, row.m, row.n) == (p, q, m, n):
            return row
    raise KeyError((p, q, m, n))


# -- pretty printing ---------------------------------------------------------------

_SUB = str.maketrans("0123456789", "₀₁₂₃₄₅₆₇₈₉")
_SUP = str.maketrans("0123456789", "⁰¹²³⁴⁵⁶⁷⁸⁹")


def _dl(K: Sequence[int], labels: Sequence[int]) -> str:
    if not K:
        return "1"
    return "∧".join(f"dλ{str(labels[k]).translate(_SUB)}" for k in K)


def _monomial_text(mono: Sequence[int], labels: Sequence[int], var: str) -> str:
    parts = []
    for i, e in enumerate(mono):
        if e:
            parts.append(f"{var}{str(labels[i]).translate(_SUB)}" + (str(e).translate(_SUP) if e > 1 else ""))
    return "·".join(parts)


def format_form(phi: PolyDoubleForm, labels: Sequence[int] = None) -> str:
    """Human-readable rendering, pairing I⊗J with J⊗I as ⊙ when possible."""
    labels = list(labels) if labels is not None else list(range(phi.dim))
    var = {"lambda": "λ", "u": "u", "affine": "t"}[phi.coords]
    if phi.coords == "affine":
        labels = [l for l in range(1, phi.dim + 1)] if labels == list(range(phi.dim)) else labels
        dsym = lambda K: "∧".join(f"dt{str(labels[k]).translate(_SUB)}" for k in K) or "1"
    else:
        dsym = lambda K: _dl(K, labels)
    terms = dict(phi.terms)
    pieces = []
    for key in sorted(terms, key=lambda k: (sum(k[0]), tuple(-e for e in k[0]), k[1], k[2])):
        if key not in terms:
            continue
        mono, I, J = key
        c = terms.pop(key)
        swapped = (mono, J, I)
        if phi.p == phi.q and I != J and terms.get(swapped) == c:
            terms.pop(swapped)
            body, c = f"{dsym(I)}⊙{dsym(J)}", 2 * c
        else:
            body = f"{dsym(I)}⊗{dsym(J)}" if phi.p or phi.q else ""
        mt = _monomial_text(mono, labels, var)
        factor = "·".join(x for x in (mt, body) if x) or "1"
        if c == 1:
            pieces.append(f"+ {factor}")
        elif c == -1:
            pieces.append(f"- {factor}")
        else:
            sign = "-" if c < 0 else "+"
            pieces.append(f"{sign} {format_rational(abs(c))}·{factor}")
    if not pieces:
        return "0"
    s = " ".join(pieces)
    return s[2:] if s.startswith("+ ") else "-" + s[2:]
