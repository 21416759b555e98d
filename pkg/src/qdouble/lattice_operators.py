"""Support-restricted operator algebra on the edge Hilbert space of a patch.

Every edge carries ``C[G]`` with basis ``|g>``.  A ``LocalOperator`` is a
matrix on the configurations of a sorted edge support, coded in the same
mixed-radix order as ``engine.Frame`` (first edge most significant).
Operators on different supports are combined on the union support.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Sequence

import numpy as np
import scipy.sparse as sp

from ._config import DEFAULT_TOL, DENSE_MAX_DIM, DIMENSION_BUDGET, STATE_BUDGET
from .double_algebra import DoubleElement
from .double_reps import Representation, central_projector
from .engine import Frame, Local, Multiplet, OperatorMatrix, Product, State, _coalesce, ribbon_tables
from .errors import BoundaryTouched, DimensionBudgetExceeded, GroupMismatch
from .group_core import FiniteGroup
from .kernels import gauge_map, ribbon_map
from .lattice_geometry import (DIRECT, Patch, Ribbon, Site, Triangle, closed_direct_ribbon,
                               closed_dual_ribbon, dual_case, direct_sign)

__all__ = [
    "LocalOperator",
    "StateVector",
    "edge_op_left",
    "edge_op_right",
    "edge_op_proj",
    "triangle_op",
    "ribbon_op",
    "ribbon_op_recursive",
    "apply_ribbon_op",
    "gauge_op",
    "flux_op",
    "vertex_projector",
    "face_projector",
    "site_rep",
    "SiteRep",
    "hamiltonian_terms",
    "ground_projector",
    "ground_space",
    "ground_space_dimension",
    "flat_configuration",
    "ribbon_multiplet",
    "amplimorphism_apply",
    "materialize",
]


def _check_budget(n: int, k: int) -> int:
    dim = n ** k
    if dim > DIMENSION_BUDGET:
        raise DimensionBudgetExceeded(f"{n}^{k} = {dim} exceeds the operator budget {DIMENSION_BUDGET}")
    return dim


class LocalOperator:
    """Complex matrix on the configurations of a sorted edge support.

    Matrices up to ``DENSE_MAX_DIM`` are stored dense, larger ones as CSR.
    """

    def __init__(self, group: FiniteGroup, support: Sequence[int], matrix):
        supp = tuple(int(e) for e in support)
        if len(set(supp)) != len(supp):
            raise ValueError("support has duplicate edges")
        order = np.argsort(supp)
        dim = _check_budget(group.order, len(supp))
        if matrix.shape != (dim, dim):
            raise ValueError(f"matrix shape {matrix.shape} does not match support dimension {dim}")
        if list(order) != list(range(len(supp))):
            matrix = _permute_factors(matrix, group.order, len(supp), order)
            supp = tuple(supp[i] for i in order)
        self.group = group
        self.support = supp
        if sp.issparse(matrix):
            self.matrix = matrix.tocsr() if dim > DENSE_MAX_DIM else matrix.toarray().astype(complex)
        else:
            m = np.asarray(matrix, dtype=complex)
            self.matrix = sp.csr_matrix(m) if dim > DENSE_MAX_DIM else m

    # construction helpers
    @classmethod
    def identity(cls, group: FiniteGroup, support: Sequence[int] = ()) -> "LocalOperator":
        dim = _check_budget(group.order, len(support))
        m = sp.identity(dim, dtype=complex, format="csr") if dim > DENSE_MAX_DIM else np.eye(dim, dtype=complex)
        return cls(group, sorted(support), m)

    @classmethod
    def from_monomial(cls, group: FiniteGroup, support: Sequence[int], targets, weights) -> "LocalOperator":
        """Operator with ``O |x> = weights[x] |targets[x]>``."""
        dim = _check_budget(group.order, len(support))
        cols = np.arange(dim)
        keep = np.asarray(weights) != 0
        m = sp.csr_matrix((np.asarray(weights, dtype=complex)[keep], (np.asarray(targets)[keep], cols[keep])),
                          shape=(dim, dim))
        return cls(group, support, m)

    @property
    def dim(self) -> int:
        return self.group.order ** len(self.support)

    @property
    def is_sparse(self) -> bool:
        return sp.issparse(self.matrix)

    def to_dense(self) -> np.ndarray:
        return self.matrix.toarray() if self.is_sparse else np.array(self.matrix)

    def _sparse(self):
        return self.matrix if self.is_sparse else sp.csr_matrix(self.matrix)

    def embed(self, support: Sequence[int]) -> "LocalOperator":
        """Extend to a larger sorted support by tensoring with identities."""
        target = tuple(sorted(set(int(e) for e in support)))
        if target == self.support:
            return self
        if not set(self.support) <= set(target):
            raise ValueError("target support must contain the operator support")
        n = self.group.order
        dim = _check_budget(n, len(target))
        frame = Frame(self.group, target)
        rest = [e for e in target if e not in self.support]
        sub_place = frame.places(self.support)
        rest_place = frame.places(rest)
        k, r = len(self.support), len(rest)
        sub_digits = _all_digits(n, k)
        rest_digits = _all_digits(n, r)
        sub_codes = sub_digits @ sub_place if k else np.zeros(1, dtype=np.int64)
        rest_codes = rest_digits @ rest_place if r else np.zeros(1, dtype=np.int64)
        coo = self._sparse().tocoo()
        rows = (sub_codes[coo.row][:, None] + rest_codes[None, :]).ravel()
        cols = (sub_codes[coo.col][:, None] + rest_codes[None, :]).ravel()
        vals = np.repeat(coo.data, rest_codes.size)
        m = sp.csr_matrix((vals, (rows, cols)), shape=(dim, dim))
        return LocalOperator(self.group, target, m)

    def _pair(self, other: "LocalOperator"):
        if not self.group.same_as(other.group):
            raise GroupMismatch("operators belong to different groups")
        union = sorted(set(self.support) | set(other.support))
        return self.embed(union), other.embed(union)

    def __matmul__(self, other: "LocalOperator") -> "LocalOperator":
        a, b = self._pair(other)
        return LocalOperator(self.group, a.support, a.matrix @ b.matrix)

    def __add__(self, other: "LocalOperator") -> "LocalOperator":
        a, b = self._pair(other)
        return LocalOperator(self.group, a.support, a.matrix + b.matrix)

    def __sub__(self, other: "LocalOperator") -> "LocalOperator":
        return self + other * (-1.0)

    def __mul__(self, c) -> "LocalOperator":
        return LocalOperator(self.group, self.support, self.matrix * complex(c))

    __rmul__ = __mul__

    def adjoint(self) -> "LocalOperator":
        return LocalOperator(self.group, self.support, self.matrix.conj().T)

    def deviation(self, other: "LocalOperator") -> float:
        a, b = self._pair(other)
        diff = a.matrix - b.matrix
        if sp.issparse(diff):
            return float(np.max(np.abs(diff.data), initial=0.0))
        return float(np.max(np.abs(diff), initial=0.0))

    def allclose(self, other: "LocalOperator", tol: float = DEFAULT_TOL) -> bool:
        return self.deviation(other) <= tol

    def __eq__(self, other) -> bool:
        return isinstance(other, LocalOperator) and self.allclose(other)

    __hash__ = None

    def commutator_norm(self, other: "LocalOperator") -> float:
        return (self @ other).deviation(other @ self)

    def to_records(self) -> dict:
        coo = self._sparse().tocoo()
        return {"support": list(self.support),
                "entries": [[int(i), int(j), float(v.real), float(v.imag)]
                            for i, j, v in zip(coo.row, coo.col, coo.data)]}

    def apply_state(self, state: State) -> State:
        """Apply ``O (x) 1`` to an engine state whose frame contains the support."""
        frame = state.frame
        n = self.group.order
        codes = state.all_codes()
        place = frame.places(self.support)
        digits = (codes[:, None] // place[None, :]) % n if self.support else np.zeros((codes.size, 0), np.int64)
        k = len(self.support)
        weights = n ** np.arange(k - 1, -1, -1, dtype=np.int64)
        sub = digits @ weights if k else np.zeros(codes.size, dtype=np.int64)
        base = codes - (digits @ place if k else 0)
        csc = self._sparse().tocsc()
        counts = np.diff(csc.indptr)[sub]
        src = np.repeat(np.arange(codes.size), counts)
        starts = csc.indptr[sub]
        offs = np.arange(src.size) - np.repeat(np.cumsum(counts) - counts, counts)
        pos = np.repeat(starts, counts) + offs
        rows = csc.indices[pos]
        vals = csc.data[pos]
        row_digits = _all_digits(n, k)[rows] if k else np.zeros((rows.size, 0), np.int64)
        new_codes = base[src] + (row_digits @ place if k else 0)
        contrib = state.amps[src] * vals.reshape((-1,) + (1,) * (state.amps.ndim - 1))
        if state.dense:
            out = np.zeros_like(state.amps, dtype=complex)
            np.add.at(out, new_codes, contrib)
            return State(frame, out)
        return _coalesce(frame, [new_codes], [contrib])


def _permute_factors(matrix, n, k, order):
    """Reorder tensor factors so that factor ``order[i]`` becomes factor ``i``."""
    dense = matrix.toarray() if sp.issparse(matrix) else np.asarray(matrix)
    t = dense.reshape((n,) * (2 * k))
    perm = list(order) + [k + i for i in order]
    return np.transpose(t, perm).reshape(n ** k, n ** k)


@lru_cache(maxsize=64)
def _all_digits_cached(n: int, k: int) -> np.ndarray:
    grids = np.indices((n,) * k).reshape(k, -1).T
    grids.setflags(write=False)
    return grids.astype(np.int64)


def _all_digits(n: int, k: int) -> np.ndarray:
    if k == 0:
        return np.zeros((1, 0), dtype=np.int64)
    return _all_digits_cached(n, k)


# -- edge and triangle operators ---------------------------------------------

def edge_op_left(G: FiniteGroup, e: int, h: int) -> LocalOperator:
    """``L^h |g> = |h g>``."""
    targets = G.cayley[h, np.arange(G.order)]
    return LocalOperator.from_monomial(G, [e], targets, np.ones(G.order))


def edge_op_right(G: FiniteGroup, e: int, h: int) -> LocalOperator:
    """``R^h |g> = |g h^-1>``."""
    targets = G.cayley[np.arange(G.order), G.inverse[h]]
    return LocalOperator.from_monomial(G, [e], targets, np.ones(G.order))


def edge_op_proj(G: FiniteGroup, e: int, g: int) -> LocalOperator:
    """``T^g = |g><g|``."""
    w = np.zeros(G.order)
    w[g] = 1.0
    return LocalOperator.from_monomial(G, [e], np.arange(G.order), w)


def triangle_op(patch: Patch, G: FiniteGroup, tau: Triangle, label: int) -> LocalOperator:
    """``T_tau^g`` for a direct triangle, ``L_tau^h`` for a dual triangle."""
    e = tau.edge
    if tau.kind == DIRECT:
        return edge_op_proj(G, e, label if direct_sign(patch, tau) > 0 else int(G.inverse[label]))
    case = dual_case(patch, tau)
    inv = int(G.inverse[label])
    if case == 1:
        return edge_op_left(G, e, label)
    if case == 2:
        return edge_op_right(G, e, inv)
    if case == 3:
        return edge_op_left(G, e, inv)
    return edge_op_right(G, e, label)


def ribbon_op_recursive(ribbon: Ribbon, G: FiniteGroup, h: int, g: int) -> LocalOperator:
    """``F_rho^{h,g}`` from the triangle base cases and the splitting recursion.

    ``F_{tau rho'}^{h,g} = sum_k F_tau^{h,k} F_{rho'}^{k^-1 h k, k^-1 g}``, with
    ``F_eps^{h,g} = delta(g, 1)``, ``F_tau^{h,k} = T_tau^k`` for a direct and
    ``delta(k, 1) L_tau^h`` for a dual triangle.
    """
    patch = ribbon.patch
    tris = ribbon.triangles
    memo: dict = {}

    def F(i, hh, gg):
        key = (i, hh, gg)
        if key in memo:
            return memo[key]
        if i == len(tris):
            out = LocalOperator.identity(G) * (1.0 if gg == 0 else 0.0)
        else:
            tau = tris[i]
            out = None
            ks = range(G.order) if tau.kind == DIRECT else (0,)
            for k in ks:
                first = triangle_op(patch, G, tau, k if tau.kind == DIRECT else hh)
                kinv = int(G.inverse[k])
                rest = F(i + 1, int(G.cayley[G.cayley[kinv, hh], k]), int(G.cayley[kinv, gg]))
                term = first @ rest
                out = term if out is None else out + term
        memo[key] = out
        return out

    return F(0, h, g).embed(ribbon.support)


def ribbon_op(ribbon: Ribbon, G: FiniteGroup, h: int, g: int) -> LocalOperator:
    """``F_rho^{h,g}`` on ``supp(rho)`` through the configuration map kernel."""
    frame = Frame(G, ribbon.support)
    _check_budget(G.order, len(ribbon.support))
    codes = np.arange(frame.size, dtype=np.int64)
    if ribbon.is_empty:
        return LocalOperator.identity(G) * (1.0 if g == 0 else 0.0)
    kinds, cases, place = ribbon_tables(ribbon, frame)
    targets, gamma = ribbon_map(codes, G.cayley, G.inverse, kinds, cases, place, np.array([h]))
    return LocalOperator.from_monomial(G, frame.edges, targets[0], (gamma == g).astype(float))


def apply_ribbon_op(state: State, ribbon: Ribbon, G: FiniteGroup, h: int, g: int) -> State:
    """``(F_rho^{h,g} (x) 1) state``."""
    if ribbon.is_empty:
        return state if g == 0 else state.scaled(0.0)
    kinds, cases, place = ribbon_tables(ribbon, state.frame)
    codes = state.all_codes()
    targets, gamma = ribbon_map(codes, G.cayley, G.inverse, kinds, cases, place, np.array([h]))
    keep = gamma == g
    if state.dense:
        out = np.zeros_like(state.amps)
        out[targets[0, keep]] = state.amps[keep]
        return State(state.frame, out)
    return _coalesce(state.frame, [targets[0, keep]], [state.amps[keep]])


# -- gauge transformations, flux projectors, site representation ---------------

def _site_for_vertex(patch: Patch, v: int) -> Site:
    if not patch.vertex_interior(v):
        raise BoundaryTouched(f"vertex {v} touches the patch boundary")
    return Site(v, int(patch.star_faces[v][0]))


def gauge_op(patch: Patch, G: FiniteGroup, s: Site, h: int) -> LocalOperator:
    """``A_s^h``, the ribbon operator ``L^h`` on the closed dual ribbon around ``v(s)``."""
    ring = closed_dual_ribbon(patch, s)
    return ribbon_op(ring, G, h, 0)


def flux_op(patch: Patch, G: FiniteGroup, s: Site, g: int) -> LocalOperator:
    """``B_s^g``, the projector ``T^g`` on the closed direct ribbon around ``f(s)``."""
    ring = closed_direct_ribbon(patch, s)
    return ribbon_op(ring, G, 0, g)


def vertex_projector(patch: Patch, G: FiniteGroup, v: int) -> LocalOperator:
    s = _site_for_vertex(patch, v)
    ops = [gauge_op(patch, G, s, h) for h in range(G.order)]
    total = ops[0]
    for op in ops[1:]:
        total = total + op
    return total * (1.0 / G.order)


def face_projector(patch: Patch, G: FiniteGroup, f: int) -> LocalOperator:
    s = Site(int(patch.face_vertices[f][0]), f)
    return flux_op(patch, G, s, 0)


class SiteRep:
    """``U_s(g, h) = B_s^g A_s^h`` extended linearly to D(G).

    ``A_s^h`` is a permutation of configurations and ``B_s^g`` is diagonal,
    so ``U_s(a)`` has at most ``|G|`` entries per column:
    ``U_s(a) |x> = sum_h a(flux(A^h x), h) |A^h x>``.
    """

    def __init__(self, patch: Patch, G: FiniteGroup, s: Site):
        self.patch, self.group, self.site = patch, G, Site(*s)
        dual = closed_dual_ribbon(patch, s)
        direct = closed_direct_ribbon(patch, s)
        self.support = tuple(sorted(set(dual.edges) | set(direct.edges)))
        frame = Frame(G, self.support)
        codes = np.arange(frame.size, dtype=np.int64)
        kinds, cases, place = ribbon_tables(dual, frame)
        self._moves, _ = ribbon_map(codes, G.cayley, G.inverse, kinds, cases, place,
                                    np.arange(G.order))
        kinds, cases, place = ribbon_tables(direct, frame)
        _, self._flux = ribbon_map(codes, G.cayley, G.inverse, kinds, cases, place, np.array([0]))

    def basis(self, g: int, h: int) -> LocalOperator:
        n = self.group.order
        coeffs = np.zeros(n * n, dtype=complex)
        coeffs[g * n + h] = 1.0
        return self(DoubleElement(self.group, coeffs))

    def __call__(self, a: DoubleElement) -> LocalOperator:
        if not a.group.same_as(self.group):
            raise GroupMismatch("element and site belong to different groups")
        n = self.group.order
        dim = self._flux.size
        cols = np.tile(np.arange(dim), n)
        rows = self._moves.ravel()
        h = np.repeat(np.arange(n), dim)
        vals = a.coeffs[self._flux[rows] * n + h]
        keep = vals != 0
        m = sp.csr_matrix((vals[keep], (rows[keep], cols[keep])), shape=(dim, dim))
        return LocalOperator(self.group, self.support, m)


def site_rep(patch: Patch, G: FiniteGroup, s: Site) -> SiteRep:
    return SiteRep(patch, G, s)


# -- Hamiltonian and ground states --------------------------------------------

def hamiltonian_terms(patch: Patch, G: FiniteGroup) -> list[LocalOperator]:
    """Terms ``1 - A_v`` and ``1 - B_f`` for every interior vertex and face."""
    terms = []
    for v in patch.interior_vertices():
        A = vertex_projector(patch, G, v)
        terms.append(LocalOperator.identity(G, A.support) - A)
    for f in range(patch.n_faces):
        if patch.face_interior(f):
            B = face_projector(patch, G, f)
            terms.append(LocalOperator.identity(G, B.support) - B)
    return terms


def _gauge_places(patch: Patch, frame: Frame, v: int):
    out_e = [int(e) for k, e in enumerate(patch.star_edges[v]) if k in (0, 1, 5)]
    in_e = [int(e) for k, e in enumerate(patch.star_edges[v]) if k in (2, 3, 4)]
    return frame.places(out_e), frame.places(in_e)


def _face_flat(patch: Patch, G: FiniteGroup, frame: Frame, codes: np.ndarray, f: int) -> np.ndarray:
    ring = closed_direct_ribbon(patch, Site(int(patch.face_vertices[f][0]), f))
    kinds, cases, place = ribbon_tables(ring, frame)
    _, gamma = ribbon_map(codes, G.cayley, G.inverse, kinds, cases, place, np.array([0]))
    return gamma == 0


def ground_projector(patch: Patch, G: FiniteGroup) -> LocalOperator:
    """``prod_v A_v prod_f B_f`` on all edges of a torus patch."""
    if not patch.is_torus:
        raise ValueError("ground states are computed on torus patches only")
    n = G.order
    _check_budget(n, patch.n_edges)
    frame = Frame(G, range(patch.n_edges))
    codes = np.arange(frame.size, dtype=np.int64)
    flat = np.ones(codes.size, dtype=bool)
    for f in range(patch.n_faces):
        flat &= _face_flat(patch, G, frame, codes, f)
    P = sp.diags(flat.astype(complex), format="csr")
    for v in range(patch.n_vertices):
        po, pi = _gauge_places(patch, frame, v)
        Av = None
        for h in range(n):
            t = gauge_map(codes, G.cayley, G.inverse, po, pi, h)
            m = sp.csr_matrix((np.full(codes.size, 1.0 / n), (t, codes)), shape=(frame.size,) * 2)
            Av = m if Av is None else Av + m
        P = Av @ P
        P.eliminate_zeros()
    return LocalOperator(G, frame.edges, P)


def ground_space_dimension(patch: Patch, G: FiniteGroup) -> int:
    """Rank of the ground projector via its trace, counted over all configurations.

    ``Tr prod A_v prod B_f = |G|^-V sum_gauge #{flat x fixed by the gauge move}``.
    """
    if not patch.is_torus:
        raise ValueError("ground states are computed on torus patches only")
    n = G.order
    _check_budget(n, patch.n_edges)
    frame = Frame(G, range(patch.n_edges))
    codes = np.arange(frame.size, dtype=np.int64)
    flat = np.ones(codes.size, dtype=bool)
    for f in range(patch.n_faces):
        flat &= _face_flat(patch, G, frame, codes, f)
    x = codes[flat]
    fixed = 0
    places = [_gauge_places(patch, frame, v) for v in range(patch.n_vertices)]
    # enumerate all gauge moves (one group element per vertex)
    for move in np.ndindex(*(n,) * patch.n_vertices):
        y = x
        for v, h in enumerate(move):
            if h:
                y = gauge_map(y, G.cayley, G.inverse, places[v][0], places[v][1], h)
        fixed += int(np.count_nonzero(y == x))
    total = fixed / n ** patch.n_vertices
    return int(round(total))


def flat_configuration(patch: Patch, G: FiniteGroup, a: int, b: int) -> dict[int, int]:
    """Flat connection with holonomies ``a`` (across the width) and ``b`` (across the height).

    ``a`` and ``b`` must commute.  Each edge carries ``a^p b^q`` where ``(p, q)``
    is the number of times the edge wraps around the torus from a tail in the
    fundamental cell.
    """
    if not patch.is_torus:
        raise ValueError("flat sectors are defined on torus patches")
    if G.mul(a, b) != G.mul(b, a):
        raise ValueError("holonomies must commute")
    W, H = patch.width, patch.height
    offsets = ((1, 0), (0, 1), (1, -1))

    def power(g, k):
        out = 0
        base = g if k >= 0 else int(G.inverse[g])
        for _ in range(abs(k)):
            out = G.mul(out, base)
        return out

    config = {}
    for e in range(patch.n_edges):
        i, j = patch.vertex_coords[patch.edge_tail[e]]
        di, dj = offsets[patch.edge_class[e]]
        p, q = (i + di) // W, (j + dj) // H
        config[e] = G.mul(power(a, int(p)), power(b, int(q)))
    return config


@dataclass
class StateVector:
    """Sparse state on all edges of a patch (vector index axes optional)."""

    patch: Patch
    state: State

    @property
    def frame(self) -> Frame:
        return self.state.frame

    def norm(self) -> float:
        return self.state.norm()

    def vdot(self, other: "StateVector") -> complex:
        return self.state.vdot(other.state)

    def expectation(self, op: LocalOperator) -> complex:
        return self.state.vdot(op.apply_state(self.state)) / self.state.vdot(self.state)


def _gauge_orbit(patch: Patch, G: FiniteGroup, frame: Frame, seed_code: int) -> np.ndarray:
    places = [_gauge_places(patch, frame, v) for v in range(patch.n_vertices)]
    orbit = np.array([seed_code], dtype=np.int64)
    frontier = orbit
    while frontier.size:
        new = [gauge_map(frontier, G.cayley, G.inverse, po, pi, h)
               for po, pi in places for h in range(1, G.order)]
        cand = np.unique(np.concatenate(new))
        fresh = np.setdiff1d(cand, orbit, assume_unique=True)
        if orbit.size + fresh.size > STATE_BUDGET:
            raise DimensionBudgetExceeded("gauge orbit exceeds the state budget")
        orbit = np.union1d(orbit, fresh)
        frontier = fresh
    return orbit


def ground_space(patch: Patch, G: FiniteGroup) -> list[StateVector]:
    """Orthonormal ground states of the torus Hamiltonian.

    Flat basis configurations are projected with ``prod_v A_v``, which gives
    the uniform superposition over their gauge orbit.  Sectors are seeded by
    the flat connections of all commuting holonomy pairs; the span is complete
    once every pair has been tried.
    """
    if not patch.is_torus:
        raise ValueError("ground states are computed on torus patches only")
    frame = Frame(G, range(patch.n_edges))
    seen_min = set()
    states = []
    for a in range(G.order):
        for b in range(G.order):
            if G.mul(a, b) != G.mul(b, a):
                continue
            code = frame.encode(flat_configuration(patch, G, a, b))
            if any(code in orb for orb in _orbit_cache_lookup(states)):
                continue
            orbit = _gauge_orbit(patch, G, frame, code)
            key = int(orbit[0])
            if key in seen_min:
                continue
            seen_min.add(key)
            amps = np.full(orbit.size, 1.0 / np.sqrt(orbit.size), dtype=complex)
            states.append(StateVector(patch, State(frame, amps, orbit)))
    return states


def _orbit_cache_lookup(states):
    # orbits are sorted code arrays; membership via binary search
    return [_SortedCodes(s.state.codes) for s in states]


class _SortedCodes:
    def __init__(self, codes):
        self.codes = codes

    def __contains__(self, code):
        i = np.searchsorted(self.codes, code)
        return i < self.codes.size and self.codes[i] == code


# -- multiplets and amplimorphisms ---------------------------------------------

def ribbon_multiplet(ribbon: Ribbon, D: Representation, corrupt: str | None = None) -> Multiplet:
    """``F_rho^D = sum_{a,b} F_rho^{a,b} (x) D(a, b)`` as an operator matrix."""
    return Multiplet(ribbon, D, corrupt=corrupt)


def amplimorphism_apply(ribbon: Ribbon, D: Representation, O: LocalOperator) -> OperatorMatrix:
    """``mu_rho^D(O) = F_rho^D (O (x) 1) (F_rho^D)^*``."""
    if not O.group.same_as(D.group):
        raise GroupMismatch("operator and representation belong to different groups")
    F = Multiplet(ribbon, D)
    return Product(F, Local(O, (D.dim,)), F.adjoint())


def materialize(op: OperatorMatrix, G: FiniteGroup, support: Sequence[int]) -> list[list[LocalOperator]]:
    """Entries of an operator matrix as local operators on ``support``."""
    frame = Frame(G, support)
    n_in = int(np.prod(op.in_dims))
    n_out = int(np.prod(op.out_dims))
    N = frame.size
    if N * n_in > 2048:
        raise DimensionBudgetExceeded("materialization is limited to small frames")
    amps = np.eye(N * n_in, dtype=complex).reshape((N,) + tuple(op.in_dims) + (N * n_in,))
    out = op.apply(State(frame, amps)).amps.reshape(N, n_out, N, n_in)
    grid = []
    for i in range(n_out):
        row = []
        for j in range(n_in):
            row.append(LocalOperator(G, frame.edges, out[:, i, :, j]))
        grid.append(row)
    return grid
