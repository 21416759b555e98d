import functools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from qdouble.double_algebra import basis_element, multiply, random_element, star
from qdouble.double_reps import irreps_of_double
from qdouble.errors import DimensionBudgetExceeded
from qdouble.group_core import builtin_group
from qdouble.lattice_geometry import (Ribbon, make_patch, random_ribbon, random_start, reverse,
                                      site_moves)
from qdouble.lattice_operators import (LocalOperator, edge_op_left, edge_op_proj, edge_op_right,
                                       face_projector, gauge_op, ground_space,
                                       ground_space_dimension, materialize, ribbon_multiplet,
                                       ribbon_op, ribbon_op_recursive, site_rep, vertex_projector)

OPEN = make_patch(6, 6, "open")
Z2, Z3, S3 = (builtin_group(n) for n in ("z2", "z3", "s3"))


def interior_site(patch):
    return next(s for s in patch.sites()
                if patch.vertex_interior(s.vertex) and patch.face_interior(s.face))


def test_edge_operators():
    G = S3
    for h in range(G.order):
        for g in range(G.order):
            L, R, T = edge_op_left(G, 0, h), edge_op_right(G, 0, h), edge_op_proj(G, 0, g)
            assert (L @ T).allclose(edge_op_proj(G, 0, G.mul(h, g)) @ L)
            assert (R @ T).allclose(edge_op_proj(G, 0, G.mul(g, G.inv(h))) @ R)
            assert L.commutator_norm(R) < 1e-12


def test_local_operator_embed_and_records():
    G = Z3
    L = edge_op_left(G, 4, 1)
    big = L.embed([2, 4, 7])
    assert big.support == (2, 4, 7) and big.dim == 27
    assert big.allclose(L)
    rec = L.to_records()
    assert rec["support"] == [4] and len(rec["entries"]) == 3
    with pytest.raises(ValueError):
        LocalOperator(G, [1, 1], np.eye(9))


@given(st.sampled_from(["z2", "z3", "s3"]), st.integers(0, 2 ** 32 - 1), st.integers(1, 4))
def test_kernel_matches_recursion(name, seed, length):
    """Configuration-map evaluation equals the triangle recursion."""
    G = builtin_group(name)
    r = random_ribbon(OPEN, random_start(OPEN, seed), length, seed)
    rng = np.random.default_rng(seed)
    for _ in range(3):
        h, g = (int(x) for x in rng.integers(0, G.order, 2))
        assert ribbon_op(r, G, h, g).allclose(ribbon_op_recursive(r, G, h, g), 1e-12)


@given(st.integers(0, 2 ** 32 - 1), st.integers(1, 4))
def test_scalar_ribbon_rules(seed, length):
    G = S3
    r = random_ribbon(OPEN, random_start(OPEN, seed), length, seed)
    ops = {(h, g): ribbon_op(r, G, h, g) for h in range(G.order) for g in range(G.order)}
    total = None
    for g in range(G.order):
        total = ops[0, g] if total is None else total + ops[0, g]
    assert total.allclose(LocalOperator.identity(G, r.support))
    rng = np.random.default_rng(seed)
    h1, g1, h2, g2 = (int(x) for x in rng.integers(0, G.order, 4))
    # the shift labels compose in order on positive ribbons and in reverse on negative ones
    h12 = G.mul(h1, h2) if r.is_positive() else G.mul(h2, h1)
    expected = ops[h12, g1] if g1 == g2 else ops[0, 0] * 0.0
    assert (ops[h1, g1] @ ops[h2, g2]).allclose(expected)
    assert ops[h1, g1].adjoint().allclose(ops[G.inv(h1), g1])
    # reversal: F_{rev rho}^{h,g} = F_rho^{g^-1 h^-1 g, g^-1}
    gi = G.inv(g1)
    rev = ribbon_op(reverse(r), G, h1, g1)
    assert rev.allclose(ops[G.conj(gi, G.inv(h1)), gi])


def test_negative_ribbon_reverses_shift_composition():
    """A single negative dual triangle acts by an anti-homomorphism of G."""
    G = S3
    s = interior_site(OPEN)
    tau = next(t for t in site_moves(OPEN, s, positive=False) if t.kind == "dual")
    r = Ribbon(OPEN, [tau])
    a, b = 1, 3
    assert G.mul(a, b) != G.mul(b, a)
    prod = ribbon_op(r, G, a, 0) @ ribbon_op(r, G, b, 0)
    assert prod.allclose(ribbon_op(r, G, G.mul(b, a), 0))
    assert not prod.allclose(ribbon_op(r, G, G.mul(a, b), 0))


def test_multiplet_matches_scalar_sum():
    G = S3
    r = random_ribbon(OPEN, random_start(OPEN, 2), 2, 2)
    D = irreps_of_double(G)[3]
    grid = materialize(ribbon_multiplet(r, D), G, r.support)
    for i in range(D.dim):
        for j in range(D.dim):
            ref = None
            for h in range(G.order):
                for g in range(G.order):
                    term = ribbon_op_recursive(r, G, h, g) * D.of(h, g)[i, j]
                    ref = term if ref is None else ref + term
            assert grid[i][j].allclose(ref, 1e-12)


def test_materialize_budget():
    r = random_ribbon(OPEN, random_start(OPEN, 2), 6, 2)
    with pytest.raises(DimensionBudgetExceeded):
        materialize(ribbon_multiplet(r, irreps_of_double(S3)[3]), S3, r.support)


@pytest.mark.parametrize("G", [Z2, S3], ids=["z2", "s3"])
def test_hamiltonian_terms_are_commuting_projectors(G):
    p = make_patch(4, 4, "open")
    v = p.interior_vertices()[0]
    A = vertex_projector(p, G, v)
    faces = [f for f in range(p.n_faces) if p.face_interior(f)][:4]
    for op in [A] + [face_projector(p, G, f) for f in faces]:
        assert op.allclose(op @ op) and op.allclose(op.adjoint())
    for f in faces:
        assert A.commutator_norm(face_projector(p, G, f)) < 1e-12


def test_gauge_operators_form_a_representation():
    G = S3
    s = interior_site(OPEN)
    for a in range(G.order):
        for b in range(G.order):
            lhs = gauge_op(OPEN, G, s, a) @ gauge_op(OPEN, G, s, b)
            assert lhs.allclose(gauge_op(OPEN, G, s, G.mul(a, b)))


@settings(max_examples=15)
@given(st.sampled_from(["z2", "s3"]), st.integers(0, 2 ** 32 - 1))
def test_site_rep_is_star_homomorphism(name, seed):
    check_site_rep(builtin_group(name), seed)


@functools.lru_cache(maxsize=None)
def cached_site_rep(G):
    return site_rep(OPEN, G, interior_site(OPEN))


def check_site_rep(G, seed):
    U = cached_site_rep(G)
    rng = np.random.default_rng(seed)
    a, b = random_element(G, rng), random_element(G, rng)
    assert (U(a) @ U(b)).allclose(U(multiply(a, b)), 1e-9)
    assert U(star(a)).allclose(U(a).adjoint(), 1e-9)


def test_site_rep_is_injective():
    G = Z3
    U = site_rep(OPEN, G, interior_site(OPEN))
    vecs = np.array([U(basis_element(G, g, h)).to_dense().ravel()
                     for g in range(G.order) for h in range(G.order)])
    assert np.linalg.matrix_rank(vecs) == G.order ** 2


@pytest.mark.parametrize("G,expected", [(Z2, 4), (Z3, 9)], ids=["z2", "z3"])
def test_ground_space_dimension(G, expected):
    p = make_patch(2, 2, "torus")
    assert ground_space_dimension(p, G) == expected
    states = ground_space(p, G)
    assert len(states) == expected
    A = vertex_projector(p, G, 0)
    assert all(abs(psi.expectation(A) - 1) < 1e-12 for psi in states)
