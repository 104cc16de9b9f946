import random
from fractions import Fraction
from itertools import permutations

import pytest
from hypothesis import given, settings, strategies as st

from doubleforms import poly_forms as pf
from doubleforms.extension import (
    ExtensionUnavailable, SummandMismatch, TraceNotVanishing, decompose_and_extend,
    extend, extend_check, extension_constant,
)
from doubleforms.poly_forms import PolyDoubleForm
from doubleforms.simplex_trace import (
    SimplexForm, pullback_affine, ring_vanishing_basis, to_barycentric,
    trace_to_simplex, vanishing_trace_basis,
)

F = Fraction
L = PolyDoubleForm.term


def test_regge_example(regge_T1):
    res = extend(regge_T1, 1, 1, 0, 0)
    expected = (L(2, (0, 0), [1], [0]) + L(2, (0, 0), [0], [1])).scale(F(-1, 2))
    assert res.form.same_terms(expected)
    assert res.constant_C == 2


def test_area_form_is_unavailable(area_T2):
    with pytest.raises(ExtensionUnavailable):
        extend(area_T2, 1, 1, 1, 0)


def test_area_form_has_no_ring_extension():
    assert ring_vanishing_basis(1, 1, 1, 0, 2) == []


def test_nonvanishing_trace_rejected(nonvanishing_T2):
    with pytest.raises(TraceNotVanishing):
        extend(nonvanishing_T2, 1, 1, 0, 0)


def test_summand_mismatch(regge_T1):
    with pytest.raises(SummandMismatch):
        extend(regge_T1, 1, 1, 1, 1)


def test_zero_maps_to_zero():
    zero = SimplexForm(PolyDoubleForm.zero(2, 2, 1, "affine"), (0, 1, 2))
    res = extend(zero, 2, 1, 0, 0)
    assert res.form.is_zero() and res.form.dim == 3


def test_extension_constant():
    assert extension_constant(1, 1, 0, 0) == 2
    assert extension_constant(1, 1, 1, 0) == 0
    assert extension_constant(2, 2, 1, 1) == 6 * 3


def test_extend_check_reports(regge_T1, area_T2):
    rep = extend_check(regge_T1, 1, 1, 0, 0)
    assert rep.ok and rep.constant_C == 2 and all(rep.checks.values())
    bad = extend_check(area_T2, 1, 1, 1, 0)
    assert bad.status == "unavailable" and 0 in bad.C_factors
    rng = random.Random(5)
    basis = vanishing_trace_basis(2, 1, 0, 0, 2)
    combo = basis[0].scale(rng.randint(1, 9)) + basis[1].scale(-rng.randint(1, 9))
    assert extend_check(combo, 2, 1, 0, 0).ok


def test_decompose_and_extend(regge_T1):
    out = decompose_and_extend(regge_T1, 0)
    assert set(out) == {0}


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_linearity(seed):
    rng = random.Random(seed)
    p, q, m, r, n = rng.choice([(1, 1, 0, 1, 2), (2, 1, 0, 0, 2), (2, 2, 0, 0, 3), (1, 1, 1, 1, 2)])
    basis = vanishing_trace_basis(p, q, m, r, n)
    x, y = rng.choice(basis), rng.choice(basis)
    a, b = F(rng.randint(-5, 5), rng.randint(1, 4)), F(rng.randint(-5, 5), rng.randint(1, 4))
    lhs = extend(x.scale(a) + y.scale(b), p, q, m, r).form
    rhs = extend(x, p, q, m, r).form.scale(a) + extend(y, p, q, m, r).form.scale(b)
    assert lhs.same_terms(rhs)


def _perm_matrix(sigma):
    k = len(sigma)
    return [[1 if sigma[i] == j else 0 for j in range(k)] for i in range(k)]


def _permute_lambda(phi, sigma):
    return pullback_affine(phi, _perm_matrix(sigma), [0] * len(sigma))


CASES = [(1, 1, 0, 0, 1), (1, 1, 0, 1, 2), (2, 1, 0, 0, 2), (1, 1, 1, 1, 2), (2, 2, 0, 0, 3), (2, 2, 1, 0, 3)]


@pytest.mark.parametrize("p,q,m,r,n", CASES)
def test_vertex_permutation_equivariance(p, q, m, r, n):
    for phibar in vanishing_trace_basis(p, q, m, r, n):
        ext = extend(phibar, p, q, m, r).form
        lam = to_barycentric(phibar)
        for sigma in permutations(range(n + 1)):
            moved = trace_to_simplex(_permute_lambda(lam, sigma), n)
            lhs = extend(moved, p, q, m, r).form
            assert lhs.same_terms(_permute_lambda(ext, sigma))


@pytest.mark.parametrize("p,q,m,r,n", CASES)
def test_homogenization_independence(p, q, m, r, n):
    for phibar in vanishing_trace_basis(p, q, m, r, n):
        ref = extend(phibar, p, q, m, r).form
        for elim in range(1, n + 1):
            assert extend(phibar, p, q, m, r, eliminate=elim).form.same_terms(ref)
