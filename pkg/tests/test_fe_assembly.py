import dataclasses
from itertools import permutations

import pytest

from doubleforms import double_algebra as da
from doubleforms.extension import ExtensionUnavailable
from doubleforms.fe_assembly import (
    SimplicialComplex, basis_rank, check_single_valued, dim_full, dim_ring,
    dim_ring_closed, dim_ring_unrestricted, dim_trace_free, dof_table, expected_count,
    global_basis, local_extend_chain, rank_dof_table, space_dimension, verify_basis,
    verify_dof_sum,
)
from doubleforms.simplex_trace import face_trace, ring_vanishing_basis, vanishing_trace_basis


def test_complex_validation():
    with pytest.raises(ValueError):
        SimplicialComplex(3, ((0, 1, 2), (0, 1)))
    with pytest.raises(ValueError):
        SimplicialComplex(3, ((0, 2, 1),))
    with pytest.raises(ValueError):
        SimplicialComplex(2, ((0, 1, 2),))
    T = SimplicialComplex.simplex(3)
    assert len(T.faces(1)) == 6 and T.dim == 3
    assert SimplicialComplex.from_json(T.to_json()) == T


def test_dim_trace_free_examples():
    assert dim_trace_free(3, 2, 0, 4) == 5
    assert dim_trace_free(3, 3, 1, 5) == 9
    assert dim_trace_free(1, 1, 0, 1) == 1


def test_dim_full_examples():
    assert dim_full(1, 1, 0, 3) == 6
    assert dim_full(2, 2, 0, 4) == 20
    assert dim_full(2, 2, 1, 3) == 3


def test_dim_ring_examples():
    assert dim_ring(1, 1, 1, 1) == 1
    for p in range(4):
        for q in range(4):
            for n in range(5):
                total = sum(dim_ring(p, q, m, n) for m in da.valid_summands(p, q, n + 1))
                assert total == dim_ring_unrestricted(p, q, n)


def test_dim_ring_recursion():
    for p in range(1, 5):
        for q in range(1, 5):
            for m in range(max(0, q - p), q):
                for n in range(6):
                    lhs = dim_trace_free(p, q, m, n) + dim_trace_free(p, q, m, n + 1)
                    assert lhs == dim_ring(p, q, m, n) == dim_ring_closed(p, q, m, n)


def test_dim_ring_matches_rank_oracle():
    for (p, q, m, n) in [(1, 1, 0, 1), (1, 1, 0, 2), (2, 1, 0, 2), (1, 1, 1, 1), (1, 1, 1, 2), (2, 2, 1, 3)]:
        assert len(ring_vanishing_basis(p, q, m, 0, n)) == dim_ring(p, q, m, n)


def test_verify_dof_sum_examples():
    assert verify_dof_sum(1, 1, 0, 3)
    assert verify_dof_sum(2, 2, 0, 3)
    assert verify_dof_sum(2, 1, 0, 2)
    assert sum(dim_trace_free(2, 2, 0, l) * [4, 6, 4, 1][l] for l in range(4)) == 6


def test_dof_table_examples():
    assert dof_table(1, 1, 0, 3).counts == {1: 1}
    assert dof_table(2, 1, 0, 3).counts == {2: 2}
    assert dof_table(2, 2, 0, 4).counts == {2: 1, 3: 2}
    with pytest.raises(da.InvalidSummand):
        dof_table(1, 1, 1, 3)
    t = rank_dof_table(1, 1, 0, 1, 2)
    assert t.rank_derived and t.counts == {1: 2, 2: 3}


def test_two_triangles_regge(two_triangles):
    basis = global_basis(two_triangles, 1, 1, 0, 0)
    assert len(basis) == 5
    assert {el.owner_face for el in basis} == set(two_triangles.faces(1))
    assert check_single_valued(basis, two_triangles).ok
    assert verify_basis(basis, two_triangles) == []


def test_single_tetrahedron_curvature():
    T = SimplicialComplex.simplex(3)
    basis = global_basis(T, 2, 2, 0, 0)
    assert len(basis) == 6
    assert basis_rank(basis) == 6 == space_dimension(2, 2, 0, 0, 3)


def test_area_form_unavailable():
    with pytest.raises(ExtensionUnavailable):
        global_basis(SimplicialComplex.simplex(2), 1, 1, 1, 0)


def test_two_tets(two_tets):
    for (p, q, m), count in {(1, 1, 0): 9, (2, 1, 0): 14, (2, 2, 0): 11, (2, 2, 1): 6, (3, 1, 0): 6}.items():
        basis = global_basis(two_tets, p, q, m, 0)
        assert len(basis) == count == expected_count(two_tets, p, q, m, 0)


@pytest.mark.parametrize("p,q,m,r", [(1, 1, 0, 1), (1, 1, 1, 1), (2, 1, 0, 1)])
def test_higher_degree_matches_space_dimension(p, q, m, r):
    T = SimplicialComplex.simplex(2)
    basis = global_basis(T, p, q, m, r)
    assert len(basis) == space_dimension(p, q, m, r, 2)


def test_corrupted_element_is_detected(two_triangles):
    basis = global_basis(two_triangles, 1, 1, 0, 0)
    shared = (1, 2)
    idx = next(i for i, el in enumerate(basis) if el.owner_face == shared)
    el = basis[idx]
    local = dict(el.local)
    local[1] = local[1].scale(-1)
    bad = list(basis)
    bad[idx] = dataclasses.replace(el, local=local)
    rep = check_single_valued(bad, two_triangles)
    assert not rep.ok
    assert any(v["face"] == [1, 2] for v in rep.violations)
    assert verify_basis(bad, two_triangles)


def test_single_cell_has_no_violations():
    T = SimplicialComplex.simplex(2)
    basis = global_basis(T, 2, 1, 0, 0, verify=False)
    assert check_single_valued(basis, T).ok


def test_local_extension_identity_and_order_independence():
    edge = vanishing_trace_basis(1, 1, 0, 0, 1)[0]
    same = local_extend_chain(edge, (0, 1), 0, 0)
    assert same.same(edge)
    from doubleforms.simplex_trace import SimplexForm
    phibar = SimplexForm(edge.form, (1, 3))
    cell = (0, 1, 2, 3, 4)
    ref = local_extend_chain(phibar, cell, 0, 0)
    for order in permutations((0, 2, 4)):
        assert local_extend_chain(phibar, cell, 0, 0, order=order).same(ref)
    assert face_trace(ref, (1, 3)).same(phibar)
    tet = (0, 1, 2, 3)
    assert local_extend_chain(edge, tet, 0, 0, order=(2, 3)).same(
        local_extend_chain(edge, tet, 0, 0, order=(3, 2)))


def test_regge_edge_into_triangle():
    from doubleforms.simplex_trace import trace_to_simplex
    from doubleforms.tables import ShorthandTerm, shorthand_to_form
    edge = vanishing_trace_basis(1, 1, 0, 0, 1)[0]
    ext = local_extend_chain(edge, (0, 1, 2), 0, 0)
    expected = shorthand_to_form([ShorthandTerm(-1, "i", "j", True)], 2, 1, 1)
    assert ext.same(trace_to_simplex(expected, 2))
