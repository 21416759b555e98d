import itertools

import numpy as np
import pytest
from hypothesis import given, strategies as st

from qdouble.errors import NotAGroup
from qdouble.group_core import (BUILTIN_NAMES, build_group, builtin_group, catalog_irreps,
                                centralizer, conjugacy_classes, irreps_equivalent, load_group,
                                subgroup_as_group, unitary_irreps)


def brute_classes(G):
    """Conjugacy classes by direct orbit enumeration."""
    seen, out = set(), []
    for g in range(G.order):
        if g in seen:
            continue
        orbit = {G.conj(h, g) for h in range(G.order)}
        seen |= orbit
        out.append(orbit)
    return out


@pytest.mark.parametrize("name", BUILTIN_NAMES)
def test_builtin_tables_are_groups(name):
    G = builtin_group(name)
    c = G.cayley
    assert np.all(c[0] == np.arange(G.order)) and np.all(c[:, 0] == np.arange(G.order))
    for a, b, d in itertools.product(range(G.order), repeat=3):
        assert c[c[a, b], d] == c[a, c[b, d]]
    assert np.all(c[np.arange(G.order), G.inverse] == 0)


@pytest.mark.parametrize("name,abelian", [("z4", True), ("s3", False), ("d4", False), ("q8", False)])
def test_abelian_flag(name, abelian):
    assert builtin_group(name).is_abelian() is abelian


@pytest.mark.parametrize("name", BUILTIN_NAMES)
def test_conjugacy_classes_match_brute_force(name):
    G = builtin_group(name)
    data = conjugacy_classes(G)
    assert sorted(map(sorted, data.classes)) == sorted(map(sorted, brute_classes(G)))
    for cls, r in zip(data.classes, data.class_representative):
        assert r in cls


def test_centralizer_is_subgroup():
    G = builtin_group("s3")
    for r in range(G.order):
        Z = centralizer(G, r)
        assert all(G.mul(a, b) in Z for a in Z for b in Z)
        assert all(G.mul(r, z) == G.mul(z, r) for z in Z)
        H, emb = subgroup_as_group(G, Z)
        assert H.order == len(Z)


def test_rejects_non_group():
    with pytest.raises(NotAGroup):
        build_group([[0, 1], [1, 1]])
    with pytest.raises(NotAGroup):
        build_group([[0, 1, 2], [1, 2, 0]])
    # a Latin square that is not associative
    bad = [[0, 1, 2, 3, 4], [1, 0, 3, 4, 2], [2, 4, 0, 1, 3], [3, 2, 4, 0, 1], [4, 3, 1, 2, 0]]
    with pytest.raises(NotAGroup):
        build_group(bad)


def test_load_group_file(tmp_path):
    f = tmp_path / "z3.txt"
    f.write_text("3\n0 1 2\n1 2 0\n2 0 1\n")
    G = load_group(f)
    assert G.order == 3 and G.same_as(builtin_group("z3"))
    bad = tmp_path / "bad.txt"
    bad.write_text("2\n0 1\n")
    with pytest.raises(NotAGroup):
        load_group(bad)
    with pytest.raises(NotAGroup):
        load_group(tmp_path / "missing.txt")


@pytest.mark.parametrize("name", BUILTIN_NAMES)
def test_irreps_are_unitary_and_complete(name):
    G = builtin_group(name)
    irr = unitary_irreps(G)
    assert sum(p.dim ** 2 for p in irr) == G.order
    for p in irr:
        for g in range(G.order):
            U = p.matrices[g]
            assert np.allclose(U @ U.conj().T, np.eye(p.dim), atol=1e-9)
            for h in range(G.order):
                assert np.allclose(U @ p.matrices[h], p.matrices[G.mul(g, h)], atol=1e-9)


@pytest.mark.parametrize("name", ["z3", "s3", "d4", "q8"])
def test_irreps_match_catalog(name):
    G = builtin_group(name)
    computed = unitary_irreps(G)
    catalog = catalog_irreps(name)
    assert len(computed) == len(catalog)
    for p in catalog:
        assert sum(irreps_equivalent(p, q) for q in computed) == 1


@given(st.permutations(list(range(1, 6))))
def test_relabeling_preserves_class_data(perm):
    """Relabeling S3 elements changes neither class sizes nor irrep dimensions."""
    G = builtin_group("s3")
    p = np.array([0] + list(perm))
    pinv = np.argsort(p)
    table = p[G.cayley[pinv][:, pinv]]
    H = build_group(table, name="s3-relabeled")
    sizes = sorted(len(c) for c in conjugacy_classes(H).classes)
    assert sizes == sorted(len(c) for c in conjugacy_classes(G).classes)
    assert sorted(q.dim for q in unitary_irreps(H)) == [1, 1, 2]
