import numpy as np
import pytest
from hypothesis import given, strategies as st

from qdouble.double_algebra import basis_element, multiply, r_matrix, random_element
from qdouble.double_reps import (Representation, braiding, central_projector, direct_sum_rep,
                                 fusion_multiplicities, fusion_multiplicities_from_characters,
                                 intertwiner_space, irreps_of_double, irreps_suite,
                                 regular_representation, swap_matrix, tensor_rep, trivial_rep,
                                 verify_rep)
from qdouble.errors import GroupMismatch
from qdouble.group_core import BUILTIN_NAMES, builtin_group

# frozen from the brute-force oracle below and from the class/centralizer count
IRREP_DIMS = {
    "z2": [1] * 4,
    "z3": [1] * 9,
    "s3": [1, 1, 2, 3, 3, 2, 2, 2],
}


def abelian_oracle(G):
    """One-dimensional irreps ``D(g, h) = delta(g, c) chi(h)`` of D(G) for cyclic G."""
    n = G.order
    out = {}
    for c in range(n):
        for j in range(n):
            chi = np.exp(2j * np.pi * j * np.arange(n) / n)
            m = np.zeros((n * n, 1, 1), dtype=complex)
            for h in range(n):
                m[c * n + h, 0, 0] = chi[h]
            out[(c, j)] = Representation(G, m)
    return out


def oracle_monodromy(G, a, b):
    """``B(b, a) B(a, b)`` for one-dimensional irreps from the R-matrix terms."""
    def image(D1, D2):
        return sum(c * D1.matrices[g1 * G.order + h1, 0, 0] * D2.matrices[g2 * G.order + h2, 0, 0]
                   for (g1, h1), (g2, h2), c in r_matrix(G).terms())
    return image(a, b) * image(b, a)


def flux_charge(D):
    n = D.group.order
    P = D.flux_projectors()
    c = int(np.argmax([abs(np.trace(P[g])) for g in range(n)]))
    U = D.group_matrices()
    j = int(np.round(np.angle(U[1, 0, 0]) / (2 * np.pi) * n)) % n
    return c, j


@pytest.mark.parametrize("name", ["z2", "z3", "s3"])
def test_irrep_dimensions(name):
    assert [D.dim for D in irreps_of_double(builtin_group(name))] == IRREP_DIMS[name]


@pytest.mark.parametrize("name", BUILTIN_NAMES)
def test_irreps_suite(name):
    report = irreps_suite(builtin_group(name))
    assert report.passed, report.summary()
    assert sum(d * d for d in report.data["dims"]) == builtin_group(name).order ** 2


def test_perturbed_irrep_fails_suite():
    G = builtin_group("s3")
    irr = irreps_of_double(G)
    rng = np.random.default_rng(0)
    bad = Representation(G, irr[3].matrices + 0.05 * rng.normal(size=irr[3].matrices.shape))
    report = irreps_suite(G, irreps=irr[:3] + [bad] + irr[4:])
    assert not report.passed


def test_vacuum_is_counit():
    G = builtin_group("s3")
    assert np.allclose(irreps_of_double(G)[0].matrices, trivial_rep(G).matrices)


@pytest.mark.parametrize("name", ["z2", "z3"])
def test_abelian_irreps_match_oracle(name):
    G = builtin_group(name)
    oracle = abelian_oracle(G)
    for D in irreps_of_double(G):
        assert np.allclose(D.matrices, oracle[flux_charge(D)].matrices)


def test_z2_monodromy_from_oracle():
    G = builtin_group("z2")
    oracle = abelian_oracle(G)
    charge, flux = oracle[(0, 1)], oracle[(1, 0)]
    assert oracle_monodromy(G, charge, flux) == pytest.approx(-1.0)
    irr = {flux_charge(D): D for D in irreps_of_double(G)}
    B = braiding(irr[(1, 0)], irr[(0, 1)]).matrix @ braiding(irr[(0, 1)], irr[(1, 0)]).matrix
    assert abs(B[0, 0] + 1.0) < 1e-12
    for a in irr:
        for b in irr:
            M = braiding(irr[b], irr[a]).matrix @ braiding(irr[a], irr[b]).matrix
            assert abs(M[0, 0] - oracle_monodromy(G, oracle[a], oracle[b])) < 1e-12


def test_z2_fusion_is_group_ring():
    G = builtin_group("z2")
    irr = irreps_of_double(G)
    labels = [flux_charge(D) for D in irr]
    N = fusion_multiplicities(G, irr)
    for i, (c1, j1) in enumerate(labels):
        for k, (c2, j2) in enumerate(labels):
            expected = labels.index(((c1 + c2) % 2, (j1 + j2) % 2))
            assert N[i, k, expected] == 1 and N[i, k].sum() == 1


@pytest.mark.parametrize("name", ["z3", "s3"])
def test_fusion_routes_agree(name):
    G = builtin_group(name)
    N = fusion_multiplicities(G)
    assert np.array_equal(N, fusion_multiplicities_from_characters(G))
    dims = np.array([D.dim for D in irreps_of_double(G)])
    assert np.array_equal(np.einsum("ijk,k->ij", N, dims), np.outer(dims, dims))


def test_braiding_with_vacuum_is_swap():
    G = builtin_group("s3")
    irr = irreps_of_double(G)
    for D in irr:
        B = braiding(D, irr[0]).matrix
        assert np.allclose(B, swap_matrix(D.dim, 1))
        assert np.allclose(braiding(irr[0], D).matrix, swap_matrix(1, D.dim))


def test_braiding_two_dim_irreps_is_unitary_intertwiner():
    G = builtin_group("s3")
    irr = [D for D in irreps_of_double(G) if D.dim == 2][:2]
    B = braiding(irr[0], irr[1]).matrix
    assert B.shape == (4, 4)
    assert np.allclose(B @ B.conj().T, np.eye(4), atol=1e-12)
    src, dst = tensor_rep(irr[0], irr[1]), tensor_rep(irr[1], irr[0])
    assert np.allclose(np.einsum("ab,ibc->iac", B, src.matrices),
                       np.einsum("iab,bc->iac", dst.matrices, B), atol=1e-12)


@pytest.mark.parametrize("name", ["z3", "s3"])
def test_central_projectors(name):
    G = builtin_group(name)
    irr = irreps_of_double(G)
    ps = [central_projector(D) for D in irr]
    total = sum(p.coeffs for p in ps)
    assert np.allclose(total, sum(basis_element(G, g, 0).coeffs for g in range(G.order)))
    for i, p in enumerate(ps):
        assert multiply(p, p).allclose(p, 1e-12)
        for j, D in enumerate(irr):
            expected = np.eye(D.dim) if i == j else 0
            assert np.allclose(D(p), expected, atol=1e-12)


def test_regular_rep_and_direct_sum():
    G = builtin_group("s3")
    assert verify_rep(regular_representation(G)).passed
    D = irreps_of_double(G)[3]
    DD = direct_sum_rep(D, D)
    assert verify_rep(DD).passed
    assert intertwiner_space(DD, D).dim == 2


def test_group_mismatch():
    with pytest.raises(GroupMismatch):
        tensor_rep(trivial_rep(builtin_group("z2")), trivial_rep(builtin_group("z3")))


@given(st.integers(0, 7), st.integers(0, 7), st.integers(0, 2 ** 32 - 1))
def test_tensor_product_is_representation(i, j, seed):
    G = builtin_group("s3")
    irr = irreps_of_double(G)
    T = tensor_rep(irr[i], irr[j])
    rng = np.random.default_rng(seed)
    a, b = random_element(G, rng), random_element(G, rng)
    assert np.allclose(T(a) @ T(b), T(multiply(a, b)), atol=1e-9)
