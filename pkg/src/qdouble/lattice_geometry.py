"""Finite patches of the oriented triangular lattice, sites, triangles and ribbons.

Vertices sit at integer pairs ``(i, j)`` embedded in the plane at
``i * a1 + j * a2`` with ``a1 = (1, 0)`` and ``a2 = (1/2, sqrt(3)/2)``.  Every
vertex emits three edges, all pointing to the right:

* class 0, east: ``(i, j) -> (i + 1, j)``
* class 1, north-east: ``(i, j) -> (i, j + 1)``
* class 2, south-east: ``(i, j) -> (i + 1, j - 1)``

Each unit rhombus at ``(i, j)`` holds an up face ``(i, j), (i+1, j), (i, j+1)``
and a down face ``(i+1, j), (i+1, j+1), (i, j+1)``, both listed
counterclockwise.  The embedding has positive determinant, so orientation
tests are done directly in lattice coordinates.

Around a vertex the six edge directions are numbered counterclockwise
``k = 0..5`` (angle ``60 k`` degrees).  The face in the sector between
directions ``k`` and ``k + 1`` has sector index ``k``.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, NamedTuple, Sequence

import numpy as np

from .errors import (BoundaryTouched, EdgeReuse, EmptyRibbon, EndpointMismatch,
                     InvalidRibbon, Stuck, TooSmall)

__all__ = [
    "DIRECT",
    "DUAL",
    "Patch",
    "Site",
    "Triangle",
    "Ribbon",
    "make_patch",
    "empty_ribbon",
    "concat",
    "reverse",
    "orientation",
    "triangle_is_positive",
    "dual_case",
    "direct_sign",
    "closed_direct_ribbon",
    "closed_dual_ribbon",
    "site_moves",
    "random_ribbon",
    "bridge_pair",
    "common_start_pair",
    "ribbon_displacement",
    "homotopic_ribbon",
    "random_start",
    "ribbon_polyline",
    "endpoint_windings",
    "homotopic_pair",
]

DIRECT = "direct"
DUAL = "dual"

_EDGE_OFFSETS = ((1, 0), (0, 1), (1, -1))


class Site(NamedTuple):
    vertex: int
    face: int


class Triangle(NamedTuple):
    kind: str
    s0: Site
    s1: Site
    edge: int

    def flipped(self) -> "Triangle":
        return Triangle(self.kind, self.s1, self.s0, self.edge)


@dataclass(frozen=True, eq=False)
class Patch:
    """Incidence structure of a finite triangular-lattice patch.

    Attributes
    ----------
    edge_tail, edge_head : ndarray of int
        Endpoints of each oriented edge.
    edge_right, edge_left : ndarray of int
        Faces to the right and to the left of each edge (``-1`` if absent).
        The dual edge ``e*`` runs from the right face to the left face.
    face_vertices, face_edges : ndarray of int, shape (F, 3)
        Counterclockwise vertices, and the edge joining vertex ``k`` to
        vertex ``k + 1``.
    star_edges, star_faces : ndarray of int, shape (V, 6)
        Edge in direction ``k`` and face in sector ``k`` around each vertex.
    """

    width: int
    height: int
    boundary: str
    vertex_coords: np.ndarray
    edge_tail: np.ndarray
    edge_head: np.ndarray
    edge_class: np.ndarray
    edge_right: np.ndarray
    edge_left: np.ndarray
    face_vertices: np.ndarray
    face_edges: np.ndarray
    face_kind: tuple
    star_edges: np.ndarray
    star_faces: np.ndarray

    @property
    def n_vertices(self) -> int:
        return len(self.vertex_coords)

    @property
    def n_edges(self) -> int:
        return len(self.edge_tail)

    @property
    def n_faces(self) -> int:
        return len(self.face_vertices)

    @property
    def is_torus(self) -> bool:
        return self.boundary == "torus"

    def descriptor(self) -> str:
        return f"{self.width}x{self.height}-{self.boundary}"

    def vertex_id(self, i: int, j: int) -> int:
        if self.is_torus:
            return (i % self.width) + self.width * (j % self.height)
        if 0 <= i < self.width and 0 <= j < self.height:
            return i + self.width * j
        return -1

    def sector(self, v: int, f: int) -> int:
        """Sector index of face ``f`` around vertex ``v``."""
        hits = np.flatnonzero(self.star_faces[v] == f)
        if hits.size == 0:
            raise InvalidRibbon(f"vertex {v} does not lie on face {f}")
        return int(hits[0])

    def sites(self) -> list[Site]:
        return [Site(int(v), f) for f in range(self.n_faces) for v in self.face_vertices[f]]

    def vertex_interior(self, v: int) -> bool:
        return bool(np.all(self.star_faces[v] >= 0) and np.all(self.star_edges[v] >= 0))

    def face_interior(self, f: int) -> bool:
        return all(self.vertex_interior(int(v)) for v in self.face_vertices[f])

    def site_interior(self, s: Site) -> bool:
        return self.vertex_interior(s.vertex)

    def interior_vertices(self) -> list[int]:
        return [v for v in range(self.n_vertices) if self.vertex_interior(v)]

    def star_vertices(self, v: int) -> list[int]:
        """Neighbouring vertices in direction order (``-1`` where absent)."""
        out = []
        for k, e in enumerate(self.star_edges[v]):
            if e < 0:
                out.append(-1)
            else:
                out.append(int(self.edge_head[e] if k in (0, 1, 5) else self.edge_tail[e]))
        return out

    def dump(self) -> str:
        """Deterministic text rendering of the incidence data."""
        names = ("E", "NE", "SE")
        lines = [f"patch {self.descriptor()}: V={self.n_vertices} E={self.n_edges} F={self.n_faces}"]
        for v in range(self.n_vertices):
            i, j = self.vertex_coords[v]
            lines.append(f"vertex {v}: ({i},{j}) star_edges={self.star_edges[v].tolist()}"
                         f" star_faces={self.star_faces[v].tolist()}")
        for e in range(self.n_edges):
            lines.append(f"edge {e}: {names[self.edge_class[e]]} {self.edge_tail[e]}->{self.edge_head[e]}"
                         f" right={self.edge_right[e]} left={self.edge_left[e]}")
        for f in range(self.n_faces):
            lines.append(f"face {f}: {self.face_kind[f]} vertices={self.face_vertices[f].tolist()}"
                         f" edges={self.face_edges[f].tolist()}")
        return "\n".join(lines)


def make_patch(width: int, height: int, boundary: str = "open") -> Patch:
    """Build a ``width x height`` patch with ``open`` or ``torus`` boundary.

    Raises
    ------
    TooSmall
        If either side is shorter than 2.
    """
    if boundary not in ("open", "torus"):
        raise ValueError(f"boundary must be 'open' or 'torus', got {boundary!r}")
    if width < 2 or height < 2:
        raise TooSmall(f"patch must be at least 2x2, got {width}x{height}")
    W, H = int(width), int(height)
    torus = boundary == "torus"

    def vid(i, j):
        if torus:
            return (i % W) + W * (j % H)
        return i + W * j if (0 <= i < W and 0 <= j < H) else -1

    coords = np.array([(i, j) for j in range(H) for i in range(W)], dtype=np.int64)
    tails, heads, classes = [], [], []
    edge_at = {}
    for j in range(H):
        for i in range(W):
            for c, (di, dj) in enumerate(_EDGE_OFFSETS):
                t, h = vid(i, j), vid(i + di, j + dj)
                if t < 0 or h < 0:
                    continue
                edge_at[(t, c)] = len(tails)
                tails.append(t)
                heads.append(h)
                classes.append(c)

    def eid(i, j, c):
        t = vid(i, j)
        return edge_at.get((t, c), -1) if t >= 0 else -1

    def rhombus_key(i, j):
        return (i % W, j % H) if torus else (i, j)

    n_e = len(tails)
    right = np.full(n_e, -1, dtype=np.int64)
    left = np.full(n_e, -1, dtype=np.int64)
    fverts, fedges, fkind = [], [], []
    face_at = {}
    for j in range(H):
        for i in range(W):
            for kind in ("up", "down"):
                if kind == "up":
                    pos = [(i, j), (i + 1, j), (i, j + 1)]
                    edges = [eid(i, j, 0), eid(i, j + 1, 2), eid(i, j, 1)]
                else:
                    pos = [(i + 1, j), (i + 1, j + 1), (i, j + 1)]
                    edges = [eid(i + 1, j, 1), eid(i, j + 1, 0), eid(i, j + 1, 2)]
                verts = [vid(*p) for p in pos]
                if min(verts) < 0 or min(edges) < 0:
                    continue
                f = len(fverts)
                face_at[(kind, rhombus_key(i, j))] = f
                fverts.append(verts)
                fedges.append(edges)
                fkind.append(kind)
                c3 = np.sum(np.array(pos), axis=0)   # three times the centroid
                for k, e in enumerate(edges):
                    a = np.array(pos[k])
                    b = np.array(pos[(k + 1) % 3])
                    d = b - a
                    if tuple(d) == _EDGE_OFFSETS[classes[e]]:
                        p0 = a
                    else:
                        p0, d = b, -d
                    cross = d[0] * (c3[1] - 3 * p0[1]) - d[1] * (c3[0] - 3 * p0[0])
                    if cross < 0:
                        right[e] = f
                    else:
                        left[e] = f

    def fid(kind, i, j):
        if not torus and not (0 <= i < W and 0 <= j < H):
            return -1
        return face_at.get((kind, rhombus_key(i, j)), -1)

    n_v = W * H
    star_e = np.full((n_v, 6), -1, dtype=np.int64)
    star_f = np.full((n_v, 6), -1, dtype=np.int64)
    for v in range(n_v):
        i, j = int(coords[v, 0]), int(coords[v, 1])
        # directions 0, 1, 5 are outgoing edges, 2, 3, 4 incoming
        star_e[v] = [eid(i, j, 0), eid(i, j, 1), eid(i - 1, j + 1, 2),
                     eid(i - 1, j, 0), eid(i, j - 1, 1), eid(i, j, 2)]
        star_f[v] = [fid("up", i, j), fid("down", i - 1, j), fid("up", i - 1, j),
                     fid("down", i - 1, j - 1), fid("up", i, j - 1), fid("down", i, j - 1)]

    arrays = dict(
        vertex_coords=coords,
        edge_tail=np.array(tails, dtype=np.int64),
        edge_head=np.array(heads, dtype=np.int64),
        edge_class=np.array(classes, dtype=np.int64),
        edge_right=right,
        edge_left=left,
        face_vertices=np.array(fverts, dtype=np.int64).reshape(-1, 3),
        face_edges=np.array(fedges, dtype=np.int64).reshape(-1, 3),
        star_edges=star_e,
        star_faces=star_f,
    )
    for a in arrays.values():
        a.setflags(write=False)
    return Patch(width=W, height=H, boundary=boundary, face_kind=tuple(fkind), **arrays)


# -- triangles ---------------------------------------------------------------

def _check_triangle(patch: Patch, tau: Triangle) -> None:
    (v0, f0), (v1, f1) = tau.s0, tau.s1
    e = tau.edge
    if not (0 <= e < patch.n_edges):
        raise InvalidRibbon(f"edge {e} is not in the patch")
    for v, f in (tau.s0, tau.s1):
        if not (0 <= f < patch.n_faces) or v not in patch.face_vertices[f]:
            raise InvalidRibbon(f"({v}, {f}) is not a site")
    if tau.kind == DIRECT:
        if f0 != f1 or v0 == v1:
            raise InvalidRibbon(f"direct triangle {tau} must join two vertices of one face")
        if e not in patch.face_edges[f0] or {int(patch.edge_tail[e]), int(patch.edge_head[e])} != {v0, v1}:
            raise InvalidRibbon(f"edge {e} does not join {v0} and {v1} on face {f0}")
    elif tau.kind == DUAL:
        if v0 != v1 or f0 == f1:
            raise InvalidRibbon(f"dual triangle {tau} must join two faces at one vertex")
        if e not in patch.star_edges[v0] or {int(patch.edge_right[e]), int(patch.edge_left[e])} != {f0, f1}:
            raise InvalidRibbon(f"dual edge of {e} does not join faces {f0} and {f1}")
    else:
        raise InvalidRibbon(f"unknown triangle kind {tau.kind!r}")


def direct_sign(patch: Patch, tau: Triangle) -> int:
    """``+1`` if ``e = (v(s0), v(s1))`` as an oriented edge, else ``-1``."""
    return 1 if int(patch.edge_tail[tau.edge]) == tau.s0.vertex else -1


def dual_case(patch: Patch, tau: Triangle) -> int:
    """Case number 1..4 of a dual triangle.

    1: ``e* = (f(s0), f(s1))`` and ``v(s0)`` is the tail of ``e``.
    2: ``e* = (f(s0), f(s1))`` and ``v(s0)`` is the head.
    3: ``e* = (f(s1), f(s0))`` and ``v(s0)`` is the tail.
    4: ``e* = (f(s1), f(s0))`` and ``v(s0)`` is the head.
    """
    forward = int(patch.edge_right[tau.edge]) == tau.s0.face
    at_tail = int(patch.edge_tail[tau.edge]) == tau.s0.vertex
    return {(True, True): 1, (True, False): 2, (False, True): 3, (False, False): 4}[(forward, at_tail)]


def triangle_is_positive(patch: Patch, tau: Triangle) -> bool:
    """Direct: the face lies right of ``v(s0) -> v(s1)``.  Dual: the vertex lies left of ``f(s0) -> f(s1)``."""
    if tau.kind == DIRECT:
        e = tau.edge
        if direct_sign(patch, tau) > 0:
            return int(patch.edge_right[e]) == tau.s0.face
        return int(patch.edge_left[e]) == tau.s0.face
    return dual_case(patch, tau) in (1, 4)


# -- ribbons -----------------------------------------------------------------

class Ribbon:
    """A validated chain of triangles on a patch.

    ``anchor`` fixes the site of an empty ribbon; it is optional.
    """

    __slots__ = ("patch", "triangles", "anchor", "__dict__")

    def __init__(self, patch: Patch, triangles: Iterable[Triangle] = (), anchor: Site | None = None):
        tris = tuple(Triangle(t.kind, Site(*map(int, t.s0)), Site(*map(int, t.s1)), int(t.edge))
                     for t in triangles)
        seen = set()
        for i, tau in enumerate(tris):
            _check_triangle(patch, tau)
            if i and tris[i - 1].s1 != tau.s0:
                raise EndpointMismatch(f"triangle {i} starts at {tau.s0}, previous ends at {tris[i - 1].s1}")
            if tau.edge in seen:
                raise EdgeReuse(f"edge {tau.edge} used twice")
            seen.add(tau.edge)
        self.patch = patch
        self.triangles = tris
        self.anchor = Site(*anchor) if anchor is not None else None

    def __len__(self) -> int:
        return len(self.triangles)

    def __iter__(self):
        return iter(self.triangles)

    def __getitem__(self, idx):
        if isinstance(idx, slice):
            start, stop, step = idx.indices(len(self))
            if step != 1:
                raise ValueError("ribbon slices must be contiguous")
            if start >= stop:
                anchor = self.triangles[start].s0 if start < len(self) else self.end
                return Ribbon(self.patch, (), anchor=anchor)
            return Ribbon(self.patch, self.triangles[start:stop])
        return self.triangles[idx]

    def __eq__(self, other) -> bool:
        return isinstance(other, Ribbon) and other.patch is self.patch and other.triangles == self.triangles

    def __hash__(self) -> int:
        return hash(self.triangles)

    def __repr__(self) -> str:
        kinds = "".join("d" if t.kind == DIRECT else "*" for t in self.triangles)
        return f"Ribbon(len={len(self)}, kinds={kinds or '-'}, start={self.start}, end={self.end})"

    @property
    def start(self) -> Site | None:
        return self.triangles[0].s0 if self.triangles else self.anchor

    @property
    def end(self) -> Site | None:
        return self.triangles[-1].s1 if self.triangles else self.anchor

    @cached_property
    def edges(self) -> tuple[int, ...]:
        return tuple(t.edge for t in self.triangles)

    @cached_property
    def support(self) -> tuple[int, ...]:
        return tuple(sorted(self.edges))

    @property
    def is_empty(self) -> bool:
        return not self.triangles

    def is_positive(self) -> bool:
        return bool(self.triangles) and all(triangle_is_positive(self.patch, t) for t in self.triangles)

    def is_negative(self) -> bool:
        return bool(self.triangles) and not any(triangle_is_positive(self.patch, t) for t in self.triangles)

    def endpoints_separated(self) -> bool:
        """True when the end sites have distinct vertices and distinct faces."""
        s0, s1 = self.start, self.end
        return s0 is not None and s0.vertex != s1.vertex and s0.face != s1.face

    def to_records(self) -> list[dict]:
        return [{"kind": t.kind, "s0": list(t.s0), "s1": list(t.s1), "edge": t.edge}
                for t in self.triangles]

    @classmethod
    def from_records(cls, patch: Patch, records: Sequence[dict]) -> "Ribbon":
        return cls(patch, [Triangle(r["kind"], Site(*r["s0"]), Site(*r["s1"]), r["edge"])
                           for r in records])


def empty_ribbon(patch: Patch, site: Site | None = None) -> Ribbon:
    return Ribbon(patch, (), anchor=site)


def concat(*ribbons: Ribbon) -> Ribbon:
    """Concatenate ribbons; raises EndpointMismatch or EdgeReuse."""
    if not ribbons:
        raise ValueError("concat needs at least one ribbon")
    patch = ribbons[0].patch
    tris: list[Triangle] = []
    end = ribbons[0].start
    for r in ribbons:
        if r.patch is not patch:
            raise InvalidRibbon("ribbons live on different patches")
        if r.start is not None and end is not None and r.start != end:
            raise EndpointMismatch(f"ribbon ends at {end} but next starts at {r.start}")
        tris.extend(r.triangles)
        if r.end is not None:
            end = r.end
    used = [t.edge for t in tris]
    if len(set(used)) != len(used):
        raise EdgeReuse("concatenated ribbons share an edge")
    return Ribbon(patch, tris, anchor=None if tris else end)


def reverse(r: Ribbon) -> Ribbon:
    return Ribbon(r.patch, [t.flipped() for t in reversed(r.triangles)], anchor=r.anchor)


def orientation(r: Ribbon) -> str:
    """``"positive"``, ``"negative"`` or ``"mixed"``."""
    if r.is_empty:
        raise EmptyRibbon("orientation of the empty ribbon is undefined")
    if r.is_positive():
        return "positive"
    if r.is_negative():
        return "negative"
    return "mixed"


def closed_direct_ribbon(patch: Patch, s: Site) -> Ribbon:
    """Counterclockwise ribbon of three direct triangles around ``f(s)``."""
    v, f = s
    if not patch.face_interior(f):
        raise BoundaryTouched(f"face {f} touches the patch boundary")
    verts = [int(x) for x in patch.face_vertices[f]]
    k = verts.index(v)
    tris = []
    for step in range(3):
        a, b = (k + step) % 3, (k + step + 1) % 3
        tris.append(Triangle(DIRECT, Site(verts[a], f), Site(verts[b], f), int(patch.face_edges[f][a])))
    return Ribbon(patch, tris)


def closed_dual_ribbon(patch: Patch, s: Site) -> Ribbon:
    """Counterclockwise ribbon of six dual triangles around ``v(s)``."""
    v, f = s
    if not patch.vertex_interior(v):
        raise BoundaryTouched(f"vertex {v} touches the patch boundary")
    k = patch.sector(v, f)
    tris = []
    for step in range(6):
        a, b = (k + step) % 6, (k + step + 1) % 6
        tris.append(Triangle(DUAL, Site(v, int(patch.star_faces[v][a])), Site(v, int(patch.star_faces[v][b])),
                             int(patch.star_edges[v][b])))
    return Ribbon(patch, tris)


def site_moves(patch: Patch, s: Site, positive: bool | None = None) -> list[Triangle]:
    """Triangles starting at ``s``: direct moves along ``f(s)``, dual moves around ``v(s)``.

    ``positive=True`` keeps only positive triangles, ``False`` only negative ones.
    """
    v, f = s
    verts = [int(x) for x in patch.face_vertices[f]]
    k = verts.index(v)
    moves = [
        # clockwise around the face keeps the face on the right: positive
        Triangle(DIRECT, s, Site(verts[(k - 1) % 3], f), int(patch.face_edges[f][(k - 1) % 3])),
        Triangle(DIRECT, s, Site(verts[(k + 1) % 3], f), int(patch.face_edges[f][k])),
    ]
    q = patch.sector(v, f)
    for dq, edge_dir in ((1, (q + 1) % 6), (-1, q)):
        f2 = int(patch.star_faces[v][(q + dq) % 6])
        e = int(patch.star_edges[v][edge_dir])
        if f2 >= 0 and e >= 0:
            moves.append(Triangle(DUAL, s, Site(v, f2), e))
    if positive is None:
        return moves
    return [t for t in moves if triangle_is_positive(patch, t) == positive]


def _rng(seed) -> np.random.Generator:
    return seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)


def random_ribbon(patch: Patch, start: Site, length: int, seed=0, positive: bool | None = None,
                  avoid: Iterable[int] = (), interior: bool = True, first: str | None = None,
                  max_nodes: int = 20000) -> Ribbon:
    """Random self-avoiding ribbon of ``length`` triangles from ``start``.

    Parameters
    ----------
    positive : bool or None
        Restrict to positive (``True``) or negative (``False``) triangles.
    avoid : iterable of int
        Edges the ribbon must not use.
    interior : bool
        Keep every visited vertex away from the patch boundary.
    first : {"direct", "dual"} or None
        Kind of the first triangle.

    Raises
    ------
    Stuck
        When the randomized depth-first search exhausts ``max_nodes``.
    """
    if length < 0:
        raise ValueError("length must be non-negative")
    if length == 0:
        return empty_ribbon(patch, start)
    rng = _rng(seed)
    blocked = set(int(e) for e in avoid)
    path: list[Triangle] = []
    used: set[int] = set()
    budget = [max_nodes]

    def ok(t):
        if t.edge in blocked or t.edge in used:
            return False
        return not interior or patch.vertex_interior(t.s1.vertex)

    def dfs(s):
        if len(path) == length:
            return True
        budget[0] -= 1
        if budget[0] < 0:
            return False
        options = [t for t in site_moves(patch, s, positive) if ok(t)]
        if not path and first is not None:
            options = [t for t in options if t.kind == first]
        for i in rng.permutation(len(options)):
            t = options[i]
            path.append(t)
            used.add(t.edge)
            if dfs(t.s1):
                return True
            path.pop()
            used.discard(t.edge)
        return False

    if interior and not patch.vertex_interior(start.vertex):
        raise Stuck(f"start site {start} is on the boundary")
    if not dfs(Site(*start)):
        raise Stuck(f"no ribbon of length {length} from {start} within the search budget")
    return Ribbon(patch, path)


def _interior_sites(patch: Patch) -> list[Site]:
    return [s for s in patch.sites() if patch.vertex_interior(s.vertex)]


def random_start(patch: Patch, seed=0) -> Site:
    sites = _interior_sites(patch)
    if not sites:
        raise Stuck("patch has no interior site")
    return sites[int(_rng(seed).integers(len(sites)))]


def bridge_pair(patch: Patch, seed=0, lengths: tuple[int, int, int] = (3, 2, 3),
                start: Site | None = None, attempts: int = 50) -> tuple[Ribbon, Ribbon, Ribbon]:
    """Positive ``r1``, negative ``r2`` and bridge ``xi`` with ``r1 xi reverse(r2)`` a ribbon.

    The composite is a positive ribbon, so ``r2`` runs from the far end back
    towards ``xi``.
    """
    rng = _rng(seed)
    l1, lx, l2 = lengths
    for _ in range(attempts):
        s0 = start if start is not None else random_start(patch, rng)
        try:
            sigma = random_ribbon(patch, s0, l1 + lx + l2, rng, positive=True)
        except Stuck:
            continue
        r1, xi = sigma[:l1], sigma[l1:l1 + lx]
        r2 = reverse(sigma[l1 + lx:])
        return r1, r2, xi
    raise Stuck("bridge geometry does not fit the patch")


def common_start_pair(patch: Patch, len1: int, len2: int, seed=0, start: Site | None = None,
                      avoid: Iterable[int] = (), attempts: int = 200) -> tuple[Ribbon, Ribbon]:
    """Two positive ribbons leaving a common site in the braiding configuration.

    ``rho1`` begins with the positive dual triangle and ``rho2`` with the
    positive direct triangle at the common start.  These two triangles cross
    the same edge; apart from it the ribbons are edge-disjoint.
    """
    if len1 < 1 or len2 < 1:
        raise ValueError("both ribbons need at least one triangle")
    rng = _rng(seed)
    blocked = set(int(e) for e in avoid)
    for _ in range(attempts):
        s0 = start if start is not None else random_start(patch, rng)
        try:
            r1 = random_ribbon(patch, s0, len1, rng, positive=True, first=DUAL, avoid=blocked)
            shared = r1.triangles[0].edge
            r2_first = [t for t in site_moves(patch, s0, True) if t.kind == DIRECT]
            if not r2_first or r2_first[0].edge != shared:
                raise Stuck("no shared first edge")
            t0 = r2_first[0]
            if len2 == 1:
                r2 = Ribbon(patch, [t0])
            else:
                if not patch.vertex_interior(t0.s1.vertex):
                    raise Stuck("direct step leaves the interior")
                tail = random_ribbon(patch, t0.s1, len2 - 1, rng, positive=True,
                                     avoid=blocked | set(r1.edges))
                r2 = concat(Ribbon(patch, [t0]), tail)
        except Stuck:
            if start is not None and _ >= attempts // 4:
                break
            continue
        return r1, r2
    raise Stuck(f"no braiding configuration with lengths ({len1}, {len2}) fits the patch")


def ribbon_displacement(r: Ribbon) -> tuple[int, int]:
    """Net lattice displacement of the vertex path of ``r``, unwrapped on a torus."""
    di = dj = 0
    p = r.patch
    for tau in r.triangles:
        if tau.kind != DIRECT:
            continue
        oi, oj = _EDGE_OFFSETS[int(p.edge_class[tau.edge])]
        sign = 1 if int(p.edge_tail[tau.edge]) == tau.s0.vertex else -1
        di += sign * oi
        dj += sign * oj
    return di, dj


def _site_graph_path(patch: Patch, start: Site, disp0: tuple[int, int], goal: Site,
                     goal_disp: tuple[int, int], blocked: set, rng, max_states: int = 200000):
    """Breadth-first search over (site, displacement) with randomized neighbour order."""
    from collections import deque
    span = 2 * (patch.width + patch.height)
    root = (start, disp0)
    parent = {root: None}
    queue = deque([root])
    while queue:
        node = queue.popleft()
        s, d = node
        if s == goal and d == goal_disp and node != root:
            path = []
            while parent[node] is not None:
                node, tau = parent[node]
                path.append(tau)
            return path[::-1]
        moves = site_moves(patch, s)
        for i in rng.permutation(len(moves)):
            tau = moves[i]
            if tau.edge in blocked:
                continue
            nd = d
            if tau.kind == DIRECT:
                oi, oj = _EDGE_OFFSETS[int(patch.edge_class[tau.edge])]
                sign = 1 if int(patch.edge_tail[tau.edge]) == s.vertex else -1
                nd = (d[0] + sign * oi, d[1] + sign * oj)
            if abs(nd[0]) > span or abs(nd[1]) > span:
                continue
            child = (tau.s1, nd)
            if child in parent:
                continue
            parent[child] = (node, tau)
            if len(parent) > max_states:
                return None
            queue.append(child)
    return None


_DIRS6 = ((1, 0), (0, 1), (-1, 1), (-1, 0), (0, -1), (1, -1))
_SQ3 = np.sqrt(3.0) / 2.0


def _plane(p) -> np.ndarray:
    p = np.asarray(p, dtype=float)
    return np.stack([p[..., 0] + 0.5 * p[..., 1], _SQ3 * p[..., 1]], axis=-1)


def _sector_offset(k: int) -> np.ndarray:
    """Lattice-coordinate offset from a vertex to the centroid of its sector-``k`` face."""
    a, b = _DIRS6[k], _DIRS6[(k + 1) % 6]
    return np.array([(a[0] + b[0]) / 3.0, (a[1] + b[1]) / 3.0])


def ribbon_polyline(r: Ribbon, inset: float = 0.3) -> np.ndarray:
    """Plane coordinates of the site points visited by ``r``, unwrapped.

    A site ``(v, f)`` is drawn at ``v + inset * (centroid(f) - v)``, starting
    from the fundamental-cell position of ``v(start)``.
    """
    p = r.patch
    s = r.start
    v = np.array(p.vertex_coords[s.vertex], dtype=float)
    pts = [v + inset * _sector_offset(p.sector(*s))]
    for tau in r.triangles:
        if tau.kind == DIRECT:
            oi, oj = _EDGE_OFFSETS[int(p.edge_class[tau.edge])]
            sign = 1 if int(p.edge_tail[tau.edge]) == tau.s0.vertex else -1
            v = v + sign * np.array([oi, oj], dtype=float)
        pts.append(v + inset * _sector_offset(p.sector(*tau.s1)))
    return _plane(np.array(pts))


def _winding(poly: np.ndarray, q: np.ndarray) -> int:
    d = poly - q
    ang = np.arctan2(d[:, 1], d[:, 0])
    steps = np.diff(np.concatenate([ang, ang[:1]]))
    steps = (steps + np.pi) % (2 * np.pi) - np.pi
    return int(round(steps.sum() / (2 * np.pi)))


def endpoint_windings(r1: Ribbon, r2: Ribbon) -> list[int]:
    """Winding numbers of the loop ``r1`` then ``reverse(r2)`` around lifts of the endpoint vertices and faces.

    Both ribbons must start and end at the same sites with equal displacement.
    """
    if (r1.start, r1.end) != (r2.start, r2.end) or ribbon_displacement(r1) != ribbon_displacement(r2):
        raise EndpointMismatch("ribbons do not share endpoints and displacement")
    a = ribbon_polyline(r1)
    b = ribbon_polyline(r2)
    loop = np.concatenate([a, b[::-1][1:-1]]) if len(b) > 2 else a
    p = r1.patch
    lo = loop.min(axis=0) - 1.0
    hi = loop.max(axis=0) + 1.0
    points = []
    for s in (r1.start, r1.end):
        base = np.array(p.vertex_coords[s.vertex], dtype=float)
        k = p.sector(*s)
        for cand in (base, base + _sector_offset(k)):
            for di in range(-3, 4):
                for dj in range(-3, 4):
                    q = _plane(cand + np.array([di * p.width, dj * p.height], dtype=float))
                    if np.all(q >= lo) and np.all(q <= hi):
                        points.append(q)
    return [_winding(loop, q) for q in points]


def homotopic_pair(patch: Patch, seed=0, start: Site | None = None, max_len: int = 6,
                   samples: int = 800, interior: bool = True) -> tuple[Ribbon, Ribbon]:
    """Two distinct ribbons with common end sites that are deformable into each other.

    Random ribbons from a common start are bucketed by end site and unwrapped
    displacement.  A pair is accepted when the loop it forms does not wind
    around any lift of the endpoint vertices or faces.
    """
    rng = _rng(seed)
    for _ in range(20):
        s0 = random_start(patch, rng) if start is None else start
        buckets: dict = {}
        for _ in range(samples):
            n = int(rng.integers(1, max_len + 1))
            try:
                r = random_ribbon(patch, s0, n, rng, interior=interior)
            except Stuck:
                continue
            buckets.setdefault((r.end, ribbon_displacement(r)), {})[r.triangles] = r
        keys = [k for k, v in buckets.items() if len(v) > 1]
        for i in rng.permutation(len(keys)):
            group = list(buckets[keys[i]].values())
            order = rng.permutation(len(group))
            for a in range(len(order)):
                for b in range(a + 1, len(order)):
                    r1, r2 = group[order[a]], group[order[b]]
                    if not any(endpoint_windings(r1, r2)):
                        return r1, r2
    raise Stuck("no homotopic ribbon pair found")


def homotopic_ribbon(r: Ribbon, seed=0, max_len: int | None = None, samples: int = 4000) -> Ribbon:
    """A different ribbon with the end sites of ``r`` that is deformable into ``r``.

    Candidates are random ribbons from ``r.start``; one is accepted when it
    has the end site and unwrapped displacement of ``r`` and the loop it
    forms with ``r`` does not wind around any lift of the endpoint vertices
    or faces.
    """
    if r.is_empty:
        raise EmptyRibbon("need a non-empty ribbon")
    rng = _rng(seed)
    max_len = len(r) + 4 if max_len is None else max_len
    target = (r.end, ribbon_displacement(r))
    for _ in range(samples):
        n = int(rng.integers(1, max_len + 1))
        try:
            cand = random_ribbon(r.patch, r.start, n, rng, interior=False)
        except Stuck:
            continue
        if (cand.end, ribbon_displacement(cand)) != target or cand.triangles == r.triangles:
            continue
        if not any(endpoint_windings(r, cand)):
            return cand
    raise Stuck("no distinct homotopic ribbon found")
