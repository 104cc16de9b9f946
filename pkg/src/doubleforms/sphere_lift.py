"""The map lambda_i = u_i^2 between the sphere and the simplex.

Forms in the "lambda" chart are pulled back to the "u" chart, where the
sphere Hodge operators live; the pushforward inverts the pullback on even
forms divisible by u_N = u_0 u_1 ... u_n.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict

from .poly_forms import (
    Key,
    PolyDoubleForm,
    double_hodge,
    hodge_left,
    hodge_right,
    koszul_left,
    koszul_right,
    mul_poly,
    wedge_nu_left,
    wedge_nu_right,
)
from .rationals_linalg import ZERO


class NotDivisible(ArithmeticError):
    """A form was required to be divisible by u_N but is not."""


class ParityError(ValueError):
    """A form was required to be even but is not."""


class OddResidue(AssertionError):
    """Pairing du_i with u_i left an odd power behind (internal invariant)."""


@dataclass(frozen=True)
class TautCovector:
    """The tautological covector nu = sum_i u_i du_i on R^dim."""

    dim: int

    def as_form(self) -> PolyDoubleForm:
        d = self.dim
        return PolyDoubleForm._raw(
            d, 1, 0,
            {(tuple(1 if j == i else 0 for j in range(d)), (i,), ()): Fraction(1)
             for i in range(d)}, "u")


def sphere_pullback(phi: PolyDoubleForm) -> PolyDoubleForm:
    """Pull back along lambda_i = u_i^2, so d lambda_i = 2 u_i du_i."""
    out: Dict[Key, Fraction] = {}
    scale = 2 ** (phi.p + phi.q)
    for (mono, I, J), c in phi.terms.items():
        e = [2 * x for x in mono]
        for i in I:
            e[i] += 1
        for j in J:
            e[j] += 1
        out[(tuple(e), I, J)] = scale * c
    return PolyDoubleForm._raw(phi.dim, phi.p, phi.q, out, "u")


def _index_counts(mono, I, J):
    counts = list(mono)
    for i in I:
        counts[i] += 1
    for j in J:
        counts[j] += 1
    return counts


def is_even(psi: PolyDoubleForm) -> bool:
    """Every variable appears an even number of times in every term."""
    return all(all(c % 2 == 0 for c in _index_counts(mono, I, J))
               for (mono, I, J) in psi.terms)


def uN(dim: int) -> Dict:
    return {(1,) * dim: Fraction(1)}


def divide_uN(psi: PolyDoubleForm) -> PolyDoubleForm:
    """Exact division of every coefficient by u_0 u_1 ... u_{d-1}."""
    out = {}
    for (mono, I, J), c in psi.terms.items():
        if any(e < 1 for e in mono):
            raise NotDivisible(f"monomial {mono} is not divisible by u_N")
        out[(tuple(e - 1 for e in mono), I, J)] = c
    return PolyDoubleForm._raw(psi.dim, psi.p, psi.q, out, psi.coords)


def multiply_uN(psi: PolyDoubleForm) -> PolyDoubleForm:
    return mul_poly(psi, uN(psi.dim))


def star_sphere(alpha: PolyDoubleForm, method: str = "nu") -> PolyDoubleForm:
    """Sphere Hodge star of a polynomial form (given as an (k,0) double form).

    ``method="nu"`` computes star(nu ^ alpha); ``method="koszul"`` computes
    (-1)^k kappa(star alpha).  Both must agree.
    """
    if alpha.q != 0:
        raise ValueError("star_sphere acts on single forms, stored with q = 0")
    if method == "nu":
        return hodge_left(wedge_nu_left(alpha))
    if method == "koszul":
        out = koszul_left(hodge_left(alpha))
        return out.scale(-1) if alpha.p % 2 else out
    raise ValueError(f"unknown method {method!r}")


def double_star_sphere(psi: PolyDoubleForm, method: str = "nu") -> PolyDoubleForm:
    """Apply the sphere star to both factors."""
    if method == "nu":
        return hodge_right(wedge_nu_right(hodge_left(wedge_nu_left(psi))))
    if method == "koszul":
        out = koszul_left(koszul_right(double_hodge(psi)))
        return out.scale(-1) if psi.k % 2 else out
    raise ValueError(f"unknown method {method!r}")


def sphere_pushforward(psi: PolyDoubleForm) -> PolyDoubleForm:
    """Invert the pullback on even forms divisible by u_N.

    Each du_i is paired with one factor u_i (u_i du_i -> d lambda_i / 2) and the
    remaining even power u_i^(2a) becomes lambda_i^a.
    """
    if not is_even(psi):
        raise ParityError("form is not even")
    for (mono, _, _) in psi.terms:
        if any(e < 1 for e in mono):
            raise NotDivisible(f"monomial {mono} is not divisible by u_N")
    out: Dict[Key, Fraction] = {}
    scale = Fraction(1, 2 ** (psi.p + psi.q))
    for (mono, I, J), c in psi.terms.items():
        e = list(mono)
        for i in sorted(I + J):
            e[i] -= 1
        if any(x < 0 or x % 2 for x in e):
            raise OddResidue(f"pairing failed on monomial {mono} with {I}, {J}")
        key = (tuple(x // 2 for x in e), I, J)
        y = out.get(key, ZERO) + scale * c
        if y:
            out[key] = y
        else:
            out.pop(key, None)
    return PolyDoubleForm._raw(psi.dim, psi.p, psi.q, out, "lambda")
