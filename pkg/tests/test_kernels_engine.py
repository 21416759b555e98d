import numpy as np
import pytest
from hypothesis import given, strategies as st

from qdouble import kernels
from qdouble.double_reps import irreps_of_double
from qdouble.engine import (Frame, Identity, Kron, Local, Multiplet, Product, Scalar, State, Sum,
                            compare, ribbon_tables)
from qdouble.errors import DimensionBudgetExceeded
from qdouble.group_core import builtin_group
from qdouble.lattice_geometry import make_patch, random_ribbon, random_start, reverse
from qdouble.lattice_operators import edge_op_left

OPEN = make_patch(6, 6, "open")


@pytest.mark.skipif(not kernels._HAVE_NUMBA, reason="numba not installed")
@given(st.sampled_from(["z2", "z3", "s3", "q8"]), st.integers(0, 2 ** 32 - 1), st.integers(1, 6))
def test_numba_and_numpy_kernels_agree(name, seed, length):
    G = builtin_group(name)
    r = random_ribbon(OPEN, random_start(OPEN, seed), length, seed)
    frame = Frame(G, sorted(set(r.edges) | {0}))
    kinds, cases, place = ribbon_tables(r, frame)
    rng = np.random.default_rng(seed)
    codes = rng.integers(0, frame.size, 300, dtype=np.int64)
    labels = np.arange(G.order)
    t1, g1 = kernels.ribbon_map(codes, G.cayley, G.inverse, kinds, cases, place, labels, use_numba=True)
    t2, g2 = kernels.ribbon_map(codes, G.cayley, G.inverse, kinds, cases, place, labels, use_numba=False)
    assert np.array_equal(t1, t2) and np.array_equal(g1, g2)


def test_frame_encoding():
    G = builtin_group("z3")
    f = Frame(G, [5, 2, 9])
    assert f.edges == (2, 5, 9) and f.size == 27
    code = f.encode({2: 1, 5: 0, 9: 2})
    assert code == 1 * 9 + 0 * 3 + 2
    assert f.decode(code) == {2: 1, 5: 0, 9: 2}


def test_compare_detects_difference():
    G = builtin_group("s3")
    r = random_ribbon(OPEN, random_start(OPEN, 1), 3, 1)
    D = irreps_of_double(G)[3]
    frame = Frame(G, r.support)
    rng = np.random.default_rng(0)
    F = Multiplet(r, D)
    dev, mode = compare(Product(F, F.adjoint()), Identity((D.dim,)), frame, rng)
    assert dev < 1e-12 and mode == "dense"
    dev, _ = compare(F, Multiplet(reverse(r), D).adjoint(), frame, rng)
    assert dev < 1e-12
    dev, _ = compare(F, Identity((D.dim,)), frame, rng)
    assert dev > 1e-3


def test_sparse_probe_mode_agrees():
    G = builtin_group("s3")
    r = random_ribbon(OPEN, random_start(OPEN, 4), 4, 4)
    D = irreps_of_double(G)[3]
    frame = Frame(G, r.support)
    F = Multiplet(r, D)
    dev, mode = compare(Product(F.adjoint(), F), Identity((D.dim,)), frame,
                        np.random.default_rng(0), force_sparse=True)
    assert dev < 1e-12 and mode == "columns"


def test_sum_scalar_and_kron():
    G = builtin_group("z3")
    frame = Frame(G, [0, 1])
    rng = np.random.default_rng(0)
    L = Local(edge_op_left(G, 0, 1), (1,))
    two = Sum(L, L)
    dev, _ = compare(two, Sum(L, weights=[2.0]), frame, rng)
    assert dev < 1e-12
    s = Scalar(np.array([[2.0]]), (1,), (1,))
    dev, _ = compare(Product(s, L), two, frame, rng)
    assert dev < 1e-12
    K = Kron(Identity((2,)), Identity((3,)))
    assert K.in_dims == (2, 3)


def test_compare_budget():
    G = builtin_group("s3")
    frame = Frame(G, list(range(10)))
    with pytest.raises(DimensionBudgetExceeded):
        compare(Identity((1,)), Identity((1,)), frame, np.random.default_rng(0))


def test_state_helpers():
    G = builtin_group("z2")
    frame = Frame(G, [0, 1])
    dense = State(frame, np.array([1, 0, 0, 1j], dtype=complex))
    sparse = dense.to_sparse()
    assert sparse.codes.tolist() == [0, 3]
    assert abs(dense.vdot(sparse) - 2) < 1e-12
    assert dense.difference(sparse) < 1e-12


def test_env_flag_selects_numpy_backend():
    import os
    import subprocess
    import sys
    env = dict(os.environ, QDOUBLE_NO_NUMBA="1")
    out = subprocess.run([sys.executable, "-c", "from qdouble import kernels; print(kernels.backend())"],
                         env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "numpy"
