import random
from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given, settings, strategies as st

from doubleforms import double_algebra as da
from doubleforms.double_algebra import DoubleCovector, InvalidSummand
from doubleforms.exterior_core import Multicovector
from doubleforms.fe_assembly import dim_full
from doubleforms.rationals_linalg import rank
from doubleforms.verify import random_covector

B = DoubleCovector.basis
F = Fraction


def vol(d):
    return tuple(range(d))


def test_s_examples():
    assert da.bianchi_s(B(2, [0], [1])) == B(2, [0, 1], []).scale(-1)
    assert da.bianchi_s(B(3, [0, 2], [])).is_zero()
    assert da.bianchi_s(B(3, [0, 1], [0, 2])) == B(3, [0, 1, 2], [0]).scale(-1)


def test_s_star_examples():
    assert da.bianchi_s_star(B(2, [0, 1], [])) == B(2, [1], [0]) - B(2, [0], [1])
    assert da.bianchi_s_star(B(3, [], [0, 1])).is_zero()


def test_adjoint_example():
    phi, psi = B(2, [0], [1]), B(2, [0, 1], [])
    assert da.inner_product(da.bianchi_s(phi), psi) == -1
    assert da.inner_product(phi, da.bianchi_s_star(psi)) == -1


def test_transpose_examples():
    assert da.transpose_tau(B(2, [0], [1])) == B(2, [1], [0])
    phi = B(2, [0], [0, 1])
    assert da.transpose_tau(da.bianchi_s(phi)) == da.bianchi_s_star(da.transpose_tau(phi))


def test_double_hodge_examples():
    assert da.double_hodge(B(2, [0], [1])) == B(2, [1], [0]).scale(-1)
    for d in range(1, 5):
        assert da.double_hodge(B(d, [], [])) == B(d, vol(d), vol(d))
        assert da.double_hodge_inv(B(d, vol(d), vol(d))) == B(d, [], [])
    assert da.double_hodge(da.double_hodge(B(2, [0], []))) == B(2, [0], []).scale(-1)
    assert da.double_hodge_inv(da.double_hodge(B(2, [0], [1]))) == B(2, [0], [1])


def test_double_wedge_examples():
    assert da.double_wedge(B(2, [0], [1]), B(2, [1], [0])) == B(2, [0, 1], [0, 1]).scale(-1)
    phi = B(3, [0, 2], [1])
    assert da.double_wedge(B(3, [], []), phi) == phi
    x = B(2, [0], [1])
    assert da.double_hodge_inv(da.double_wedge(x, da.double_hodge(x))) == B(2, [], []).scale(1)


def test_include_ipq_examples():
    w = Multicovector.basis(2, [0, 1])
    assert da.include_ipq(w, 1, 1) == B(2, [0], [1]) - B(2, [1], [0])
    assert da.include_ipq(w, 2, 0) == B(2, [0, 1], [])
    assert da.bianchi_s(da.include_ipq(w, 1, 1)) == da.include_ipq(w, 2, 0).scale(-2)


def test_wedge_collapse_examples():
    assert da.wedge_collapse(B(2, [0], [1])) == Multicovector.basis(2, [0, 1])
    assert da.wedge_collapse(B(2, [0], [0])).is_zero()
    phi = B(3, [0], [1, 2])
    assert da.wedge_collapse(da.bianchi_s(phi)) == da.wedge_collapse(phi).scale(-2)


def test_valid_summands_examples():
    assert da.valid_summands(1, 1, 3) == [0, 1]
    assert da.valid_summands(2, 2, 3) == [0, 1]
    assert da.valid_summands(2, 2, 4) == [0, 1, 2]


def test_projection_examples():
    x = B(2, [0], [1])
    assert da.project_summand(x, 0) == (B(2, [0], [1]) + B(2, [1], [0])).scale(F(1, 2))
    assert da.project_summand(x, 1) == (B(2, [0], [1]) - B(2, [1], [0])).scale(F(1, 2))
    w = Multicovector.basis(3, [0, 1, 2])
    iw = da.include_ipq(w, 2, 1)
    assert da.project_summand(iw, 1) == iw
    assert da.project_summand(DoubleCovector.zero(3, 2, 1), 0).is_zero()
    with pytest.raises(InvalidSummand):
        da.project_summand(x, 2)


def test_inner_product_examples():
    assert da.inner_product(B(2, [0], [1]), B(2, [0], [1])) == 1
    assert da.inner_product(B(2, [0], [1]), B(2, [1], [0])) == 0


def test_serialization_round_trip():
    phi = B(3, [0, 2], [1]).scale(F(-1, 2)) + B(3, [1, 2], [0])
    assert DoubleCovector.from_json(phi.to_json()) == phi
    assert phi.to_json()["terms"][0]["coeff"] == "-1/2"


@st.composite
def double_covectors(draw, max_dim=4):
    seed = draw(st.integers(0, 10 ** 6))
    rng = random.Random(seed)
    d = draw(st.integers(1, max_dim))
    p = draw(st.integers(0, d))
    q = draw(st.integers(0, d))
    return random_covector(rng, d, p, q)


@settings(max_examples=150, deadline=None)
@given(double_covectors(max_dim=5))
def test_commutator_is_p_minus_q(phi):
    lhs = da.bianchi_s(da.bianchi_s_star(phi)) - da.s_star_s(phi)
    assert lhs == phi.scale(phi.p - phi.q)


@settings(max_examples=150, deadline=None)
@given(double_covectors())
def test_decomposition_and_eigenvalues(phi):
    p, q = phi.p, phi.q
    total = DoubleCovector.zero(phi.dim, p, q)
    for m in da.valid_summands(p, q, phi.dim):
        x = da.project_summand(phi, m)
        assert da.s_star_s(x) == x.scale(da.eigenvalue(p, q, m))
        assert da.project_summand(x, m) == x
        total = total + x
    assert total == phi


@settings(max_examples=100, deadline=None)
@given(double_covectors())
def test_star_intertwines_s(phi):
    k = phi.p + phi.q
    lhs = da.double_hodge(da.bianchi_s_star(phi))
    rhs = da.bianchi_s(da.double_hodge(phi)).scale((-1) ** (k + 1))
    assert lhs == rhs
    assert da.transpose_tau(da.double_hodge(phi)) == da.double_hodge(da.transpose_tau(phi))


@settings(max_examples=100, deadline=None)
@given(double_covectors(max_dim=3), st.integers(0, 10 ** 6))
def test_inner_product_via_star(phi, seed):
    psi = random_covector(random.Random(seed), phi.dim, phi.p, phi.q)
    got = da.double_hodge_inv(da.double_wedge(phi, da.double_hodge(psi)))
    assert got == B(phi.dim, [], []).scale(da.inner_product(phi, psi))


@settings(max_examples=100, deadline=None)
@given(double_covectors())
def test_symmetric_split(phi):
    if phi.p != phi.q:
        return
    for m in da.valid_summands(phi.p, phi.q, phi.dim):
        x = da.project_summand(phi, m)
        assert da.transpose_tau(x) == x.scale(-1 if m % 2 else 1)


def _rank_of_projection(d, p, q, m):
    basis = DoubleCovector.all_basis(d, p, q)
    keys = [(I, J) for I in combinations(range(d), p) for J in combinations(range(d), q)]
    rows = [[da.project_summand(b, m).terms.get(k, 0) for k in keys] for b in basis]
    return rank(rows)


@pytest.mark.parametrize("d", [2, 3, 4])
def test_summand_dimension_matches_projection_rank(d):
    for p in range(d + 1):
        for q in range(d + 1):
            for m in da.valid_summands(p, q, d):
                expected = da.summand_dimension(p, q, m, d)
                assert _rank_of_projection(d, p, q, m) == expected
                assert expected == dim_full(p, q, m, d)
