import numpy as np
import pytest
from hypothesis import given, strategies as st

from qdouble.errors import BoundaryTouched, EdgeReuse, EmptyRibbon, EndpointMismatch, TooSmall
from qdouble.lattice_geometry import (DIRECT, DUAL, Ribbon, bridge_pair, closed_direct_ribbon,
                                      closed_dual_ribbon, common_start_pair, concat, empty_ribbon,
                                      endpoint_windings, homotopic_pair, make_patch, orientation,
                                      random_ribbon, random_start, reverse, ribbon_displacement,
                                      site_moves, triangle_is_positive)

OPEN = make_patch(8, 8, "open")
TORUS = make_patch(3, 3, "torus")


def interior_site(patch):
    return next(s for s in patch.sites()
                if patch.vertex_interior(s.vertex) and patch.face_interior(s.face))


@pytest.mark.parametrize("w,h", [(2, 2), (4, 3), (5, 5)])
def test_patch_counts(w, h):
    p = make_patch(w, h, "open")
    assert (p.n_vertices, p.n_faces) == (w * h, 2 * (w - 1) * (h - 1))
    assert p.n_vertices - p.n_edges + p.n_faces == 1
    t = make_patch(w, h, "torus")
    assert (t.n_vertices, t.n_edges, t.n_faces) == (w * h, 3 * w * h, 2 * w * h)


def test_patch_too_small():
    with pytest.raises(TooSmall):
        make_patch(1, 4)
    with pytest.raises(ValueError):
        make_patch(3, 3, "cylinder")


def test_face_edges_close_up():
    p = OPEN
    for f in range(p.n_faces):
        verts = list(p.face_vertices[f])
        for k, e in enumerate(p.face_edges[f]):
            assert {p.edge_tail[e], p.edge_head[e]} == {verts[k], verts[(k + 1) % 3]}


def test_closed_ribbons():
    s = interior_site(OPEN)
    dual, direct = closed_dual_ribbon(OPEN, s), closed_direct_ribbon(OPEN, s)
    assert (len(dual), len(direct)) == (6, 3)
    assert dual.start == dual.end == s and direct.start == direct.end == s
    assert all(t.kind == DUAL for t in dual) and all(t.kind == DIRECT for t in direct)
    assert orientation(dual) == "positive" and orientation(direct) == "negative"
    corner = next(s for s in OPEN.sites() if not OPEN.vertex_interior(s.vertex))
    with pytest.raises(BoundaryTouched):
        closed_dual_ribbon(OPEN, corner)


def test_concat_and_reverse():
    r = random_ribbon(OPEN, random_start(OPEN, 3), 6, 3)
    a, b = r[:2], r[2:]
    assert concat(a, b) == r
    back = reverse(r)
    assert back.start == r.end and back.end == r.start and reverse(back) == r
    with pytest.raises(EdgeReuse):
        concat(r, back)
    with pytest.raises(EndpointMismatch):
        concat(b, a)
    with pytest.raises(EmptyRibbon):
        orientation(empty_ribbon(OPEN, r.start))


def test_positive_moves_share_an_edge():
    """Both positive triangles leaving a site cross the same edge, as do both negative ones."""
    for s in OPEN.sites():
        if not (OPEN.vertex_interior(s.vertex) and OPEN.face_interior(s.face)):
            continue
        for sign in (True, False):
            moves = site_moves(OPEN, s, positive=sign)
            assert len(moves) == 2 and moves[0].edge == moves[1].edge
            assert {m.kind for m in moves} == {DIRECT, DUAL}


@given(st.integers(0, 2 ** 32 - 1), st.integers(1, 8))
def test_ribbons_are_uniformly_oriented(seed, length):
    """Edge uniqueness forbids switching orientation inside a ribbon."""
    r = random_ribbon(OPEN, random_start(OPEN, seed), length, seed)
    assert orientation(r) in ("positive", "negative")
    flipped = "negative" if orientation(r) == "positive" else "positive"
    assert orientation(reverse(r)) == flipped
    assert len(set(r.edges)) == len(r)


@given(st.integers(0, 2 ** 32 - 1))
def test_record_round_trip(seed):
    r = random_ribbon(TORUS, random_start(TORUS, seed), 5, seed)
    assert Ribbon.from_records(TORUS, r.to_records()) == r


@given(st.integers(0, 2 ** 32 - 1))
def test_bridge_pair_layout(seed):
    r1, r2, xi = bridge_pair(OPEN, seed, (2, 1, 2))
    assert r1.is_positive() and r2.is_negative() and xi.is_positive()
    sigma = concat(r1, xi, reverse(r2))
    assert sigma.is_positive() and r1.start == sigma.start


@given(st.integers(0, 2 ** 32 - 1))
def test_common_start_pair(seed):
    r1, r2 = common_start_pair(OPEN, 3, 3, seed)
    assert r1.start == r2.start and r1.is_positive() and r2.is_positive()
    assert (r1[0].kind, r2[0].kind) == (DUAL, DIRECT)
    assert not set(r1.edges[1:]) & set(r2.edges[1:])


def test_windings_detect_loops_around_endpoints():
    s = interior_site(OPEN)
    loop = closed_dual_ribbon(OPEN, s)
    assert any(endpoint_windings(loop, empty_ribbon(OPEN, s)))


@pytest.mark.parametrize("seed", range(4))
def test_homotopic_pair(seed):
    r1, r2 = homotopic_pair(TORUS, seed)
    assert r1 != r2 and (r1.start, r1.end) == (r2.start, r2.end)
    assert ribbon_displacement(r1) == ribbon_displacement(r2)
    assert not any(endpoint_windings(r1, r2))


def test_triangle_positivity_is_reversed_by_flip():
    r = random_ribbon(OPEN, random_start(OPEN, 9), 4, 9)
    for t in r:
        assert triangle_is_positive(OPEN, t) != triangle_is_positive(OPEN, t.flipped())
