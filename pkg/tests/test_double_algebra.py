import numpy as np
import pytest
from hypothesis import given, strategies as st

from qdouble.double_algebra import (antipode, basis_element, coproduct, counit, flip,
                                    hopf_axiom_suite, multiply, r_matrix, r_matrix_flipped,
                                    r_matrix_inverse, random_element, star, tensor_multiply, unit)
from qdouble.errors import GroupMismatch
from qdouble.group_core import builtin_group

GROUPS = ("z2", "z3", "s3")


def brute_product(G, a, b):
    """Product of coefficient vectors straight from the basis rule."""
    n = G.order
    out = np.zeros(n * n, dtype=complex)
    for g1 in range(n):
        for h1 in range(n):
            for g2 in range(n):
                for h2 in range(n):
                    if g1 == G.conj(h1, g2):
                        out[g1 * n + G.mul(h1, h2)] += a[g1 * n + h1] * b[g2 * n + h2]
    return out


@pytest.mark.parametrize("name", GROUPS)
def test_product_matches_brute_force(name):
    G = builtin_group(name)
    rng = np.random.default_rng(0)
    a, b = random_element(G, rng), random_element(G, rng)
    assert np.allclose(multiply(a, b).coeffs, brute_product(G, a.coeffs, b.coeffs), atol=1e-12)


def test_unit_counit_and_basis():
    G = builtin_group("s3")
    one = unit(G)
    for g in range(G.order):
        for h in range(G.order):
            x = basis_element(G, g, h)
            assert multiply(one, x).allclose(x) and multiply(x, one).allclose(x)
            assert counit(x) == (1.0 if g == 0 else 0.0)


def test_star_and_antipode_on_basis():
    G = builtin_group("s3")
    for g in range(G.order):
        for h in range(G.order):
            hi = G.inv(h)
            x = basis_element(G, g, h)
            assert star(x).allclose(basis_element(G, G.conj(hi, g), hi))
            assert antipode(x).allclose(basis_element(G, G.conj(hi, G.inv(g)), hi))


def test_r_matrix_z2_expansion():
    G = builtin_group("z2")
    terms = sorted((a, b) for a, b, c in r_matrix(G).terms() if abs(c - 1) < 1e-14)
    assert terms == [((0, 0), (0, 0)), ((0, 0), (1, 0)), ((1, 0), (0, 1)), ((1, 0), (1, 1))]
    assert len(list(r_matrix(G).terms())) == 4


@pytest.mark.parametrize("name", ["z2", "z3", "z4", "s3", "d4", "q8"])
def test_hopf_suite_passes(name):
    report = hopf_axiom_suite(builtin_group(name))
    assert report.passed, report.summary()


def test_flipped_r_matrix_fails_for_non_abelian():
    G = builtin_group("s3")
    report = hopf_axiom_suite(G, R=r_matrix_flipped(G))
    failed = {r.name for r in report.failures()}
    assert "quasi-triangularity (random)" in failed


def test_flipped_r_matrix_agrees_for_abelian():
    G = builtin_group("z3")
    assert hopf_axiom_suite(G, R=r_matrix_flipped(G)).passed


def test_wrong_antipode_is_detected():
    G = builtin_group("s3")
    report = hopf_axiom_suite(G, antipode_map=star)
    assert any(r.anchor == "hopf.antipode" for r in report.failures())


def test_r_inverse():
    G = builtin_group("s3")
    R = r_matrix(G)
    Rinv = r_matrix_inverse(G)
    one = np.outer(unit(G).coeffs, unit(G).coeffs).reshape(-1)
    assert np.allclose(tensor_multiply(R, Rinv).coeffs, one, atol=1e-12)


def test_group_mismatch():
    a = unit(builtin_group("z2"))
    b = unit(builtin_group("z3"))
    with pytest.raises(GroupMismatch):
        multiply(a, b)


@given(st.sampled_from(GROUPS), st.integers(0, 2 ** 32 - 1))
def test_algebra_properties(name, seed):
    G = builtin_group(name)
    rng = np.random.default_rng(seed)
    a, b, c = (random_element(G, rng) for _ in range(3))
    assert multiply(multiply(a, b), c).allclose(multiply(a, multiply(b, c)), 1e-9)
    assert star(multiply(a, b)).allclose(multiply(star(b), star(a)), 1e-9)
    assert star(star(a)).allclose(a, 1e-12)
    assert abs(counit(multiply(a, b)) - counit(a) * counit(b)) < 1e-9
    lhs = coproduct(multiply(a, b))
    rhs = tensor_multiply(coproduct(a), coproduct(b))
    assert lhs.allclose(rhs, 1e-9)


@given(st.sampled_from(GROUPS), st.integers(0, 2 ** 32 - 1))
def test_quasi_triangularity_property(name, seed):
    """Delta^op(a) R = R Delta(a) for random a."""
    G = builtin_group(name)
    a = random_element(G, np.random.default_rng(seed))
    R = r_matrix(G)
    D = coproduct(a)
    assert tensor_multiply(flip(D), R).allclose(tensor_multiply(R, D), 1e-9)
