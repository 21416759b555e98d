"""Matrix-valued operators on a frame of edges, applied to probe states.

Ribbon multiplets are never materialized as matrices.  An operator expression
(an ``OperatorMatrix``) is applied to a state whose amplitudes carry one
configuration axis plus one axis per representation factor.  Two operator
expressions are compared by applying both to random probe states: dense
random-phase arrays over the whole frame when they fit ``PROBE_BUDGET``, and
otherwise random combinations of sampled basis configurations.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

import numpy as np

from ._config import DIMENSION_BUDGET, PROBE_BUDGET, STATE_BUDGET
from .errors import DimensionBudgetExceeded, GroupMismatch
from .group_core import FiniteGroup
from .kernels import K_DIRECT, K_DUAL, ribbon_map
from .lattice_geometry import DIRECT, Ribbon, dual_case, direct_sign

__all__ = [
    "Frame",
    "State",
    "OperatorMatrix",
    "Multiplet",
    "Scalar",
    "Local",
    "Permute",
    "Reshape",
    "Identity",
    "Product",
    "Sum",
    "Kron",
    "ribbon_tables",
    "compare",
    "random_state",
]

MAX_CODE = 2 ** 62


@dataclass(frozen=True, eq=False)
class Frame:
    """Sorted edge list with mixed-radix place values (first edge most significant)."""

    group: FiniteGroup
    edges: tuple[int, ...]

    def __post_init__(self):
        edges = tuple(sorted(set(int(e) for e in self.edges)))
        object.__setattr__(self, "edges", edges)
        if self.group.order ** len(edges) >= MAX_CODE:
            raise DimensionBudgetExceeded(
                f"{self.group.order}^{len(edges)} configurations do not fit a 64-bit code")

    @property
    def n(self) -> int:
        return self.group.order

    @property
    def size(self) -> int:
        return self.n ** len(self.edges)

    @cached_property
    def place(self) -> dict[int, int]:
        k = len(self.edges)
        return {e: self.n ** (k - 1 - i) for i, e in enumerate(self.edges)}

    def places(self, edges: Sequence[int]) -> np.ndarray:
        try:
            return np.array([self.place[int(e)] for e in edges], dtype=np.int64)
        except KeyError as exc:
            raise ValueError(f"edge {exc.args[0]} is not in the frame") from None

    def digits(self, codes: np.ndarray, edges: Sequence[int]) -> np.ndarray:
        return (np.asarray(codes, dtype=np.int64)[:, None] // self.places(edges)[None, :]) % self.n

    def encode(self, values: dict[int, int]) -> int:
        return int(sum(self.place[e] * int(v) for e, v in values.items()))

    def decode(self, code: int) -> dict[int, int]:
        return {e: (int(code) // p) % self.n for e, p in self.place.items()}


def ribbon_tables(ribbon: Ribbon, frame: Frame, corrupt: str | None = None):
    """Kinds, cases and place values of the ribbon triangles in ``frame``.

    ``corrupt="dual_case"`` swaps left and right actions on every dual
    triangle (case 1 <-> 2, 3 <-> 4); it only serves as a negative control.
    """
    patch = ribbon.patch
    kinds, cases = [], []
    for tau in ribbon.triangles:
        if tau.kind == DIRECT:
            kinds.append(K_DIRECT)
            cases.append(1 if direct_sign(patch, tau) > 0 else 2)
        else:
            kinds.append(K_DUAL)
            c = dual_case(patch, tau)
            if corrupt == "dual_case":
                c = {1: 2, 2: 1, 3: 4, 4: 3}[c]
            cases.append(c)
    return (np.array(kinds, dtype=np.int64), np.array(cases, dtype=np.int64),
            frame.places(ribbon.edges))


class State:
    """Amplitudes ``amps[c, i1, i2, ...]`` over configurations and vector indices.

    ``codes`` is ``None`` for a dense state (all ``frame.size`` configurations in
    code order) or a sorted array of distinct configuration codes.
    """

    def __init__(self, frame: Frame, amps: np.ndarray, codes: np.ndarray | None = None):
        self.frame = frame
        self.amps = amps
        self.codes = codes
        if codes is None and amps.shape[0] != frame.size:
            raise ValueError("dense state must cover the whole frame")
        if codes is not None and codes.shape[0] != amps.shape[0]:
            raise ValueError("codes and amplitudes disagree in length")

    @property
    def dense(self) -> bool:
        return self.codes is None

    @property
    def dims(self) -> tuple[int, ...]:
        return tuple(self.amps.shape[1:])

    def all_codes(self) -> np.ndarray:
        return np.arange(self.frame.size, dtype=np.int64) if self.codes is None else self.codes

    def to_sparse(self) -> "State":
        if not self.dense:
            return self
        flat = self.amps.reshape(self.amps.shape[0], -1)
        keep = np.flatnonzero(np.any(flat != 0, axis=1))
        return State(self.frame, self.amps[keep], keep.astype(np.int64))

    def norm(self) -> float:
        return float(np.linalg.norm(self.amps))

    def vdot(self, other: "State") -> complex:
        """``<self|other>`` summed over all indices."""
        if self.dense and other.dense:
            return complex(np.vdot(self.amps, other.amps))
        a, b = self.to_sparse(), other.to_sparse()
        common, ia, ib = np.intersect1d(a.codes, b.codes, assume_unique=True, return_indices=True)
        return complex(np.vdot(a.amps[ia], b.amps[ib]))

    def difference(self, other: "State") -> float:
        """Largest absolute amplitude difference."""
        if self.dims != other.dims:
            raise ValueError(f"vector dimensions differ: {self.dims} vs {other.dims}")
        if self.dense and other.dense:
            return float(np.max(np.abs(self.amps - other.amps), initial=0.0))
        merged = _coalesce(self.frame, [self.to_sparse().codes, other.to_sparse().codes],
                           [self.to_sparse().amps, -other.to_sparse().amps])
        return float(np.max(np.abs(merged.amps), initial=0.0))

    def scaled(self, c: complex) -> "State":
        return State(self.frame, self.amps * c, self.codes)

    def __add__(self, other: "State") -> "State":
        if self.dense and other.dense:
            return State(self.frame, self.amps + other.amps)
        a, b = self.to_sparse(), other.to_sparse()
        return _coalesce(self.frame, [a.codes, b.codes], [a.amps, b.amps])

    def __sub__(self, other: "State") -> "State":
        return self + other.scaled(-1.0)


def _coalesce(frame: Frame, code_list, amp_list, drop_tol: float = 0.0) -> State:
    codes = np.concatenate(code_list)
    amps = np.concatenate(amp_list, axis=0)
    if codes.size == 0:
        return State(frame, amps, codes)
    uniq, inv = np.unique(codes, return_inverse=True)
    out = np.zeros((uniq.size,) + amps.shape[1:], dtype=complex)
    np.add.at(out, inv, amps)
    if drop_tol >= 0:
        flat = np.abs(out.reshape(out.shape[0], -1))
        keep = np.any(flat > drop_tol, axis=1)
        uniq, out = uniq[keep], out[keep]
    if uniq.size > STATE_BUDGET:
        raise DimensionBudgetExceeded(f"sparse state with {uniq.size} amplitudes exceeds the budget")
    return State(frame, out, uniq)


def _contract(block: np.ndarray, mat: np.ndarray, start: int, n_in: int, out_dims) -> np.ndarray:
    """Apply ``mat`` (prod(out) x prod(in)) to axes ``start..start+n_in`` of ``block[c, ...]``."""
    ax0 = start + 1
    shape = block.shape
    in_shape = shape[ax0:ax0 + n_in]
    moved = np.moveaxis(block, list(range(ax0, ax0 + n_in)), list(range(block.ndim - n_in, block.ndim)))
    rest = moved.shape[:-n_in]
    flat = moved.reshape(rest + (int(np.prod(in_shape)),))
    res = flat @ mat.T
    res = res.reshape(rest + tuple(out_dims))
    return np.moveaxis(res, list(range(res.ndim - len(out_dims), res.ndim)),
                       list(range(ax0, ax0 + len(out_dims))))


class OperatorMatrix:
    """An element of ``M_n(A)`` acting on vector axes ``offset .. offset+len(in_dims)``."""

    in_dims: tuple[int, ...]
    out_dims: tuple[int, ...]

    def apply(self, state: State, offset: int = 0) -> State:
        raise NotImplementedError

    def adjoint(self) -> "OperatorMatrix":
        raise NotImplementedError

    def support(self) -> set[int]:
        return set()

    def __matmul__(self, other: "OperatorMatrix") -> "OperatorMatrix":
        return Product(self, other)

    def __call__(self, state: State) -> State:
        return self.apply(state, 0)


class Identity(OperatorMatrix):
    def __init__(self, dims):
        self.in_dims = self.out_dims = tuple(dims)

    def apply(self, state, offset=0):
        return state

    def adjoint(self):
        return self


class Multiplet(OperatorMatrix):
    """``F_rho^D = sum_{a,b} F_rho^{a,b} (x) D(a, b)`` or its adjoint."""

    def __init__(self, ribbon: Ribbon, rep, adjoint: bool = False, corrupt: str | None = None):
        self.ribbon = ribbon
        self.rep = rep
        self.is_adjoint = adjoint
        self.corrupt = corrupt
        self.in_dims = self.out_dims = (rep.dim,)

    def adjoint(self):
        return Multiplet(self.ribbon, self.rep, not self.is_adjoint, self.corrupt)

    def support(self):
        return set(self.ribbon.edges)

    def apply(self, state, offset=0):
        G = self.rep.group
        if not G.same_as(state.frame.group):
            raise GroupMismatch("representation and frame use different groups")
        n = G.order
        if self.ribbon.is_empty:
            # F_eps^{a,b} = delta(b, 1): the multiplet is sum_a D(a, 1) = D(unit)
            mat = self.rep.matrices.reshape(n, n, self.rep.dim, self.rep.dim)[:, 0].sum(axis=0)
            if self.is_adjoint:
                mat = mat.conj().T
            return State(state.frame, _contract(state.amps, mat, offset, 1, self.out_dims), state.codes)
        kinds, cases, place = ribbon_tables(self.ribbon, state.frame, self.corrupt)
        codes = state.all_codes()
        labels = np.arange(n, dtype=np.int64)
        if self.is_adjoint:
            labels = G.inverse[labels]
        targets, gamma = ribbon_map(codes, G.cayley, G.inverse, kinds, cases, place, labels)
        mats = self.rep.matrices.reshape(n, n, self.rep.dim, self.rep.dim)
        order = np.argsort(gamma, kind="stable")
        bounds = np.searchsorted(gamma[order], np.arange(n + 1))
        pieces_codes, pieces_amps = [], []
        out = np.zeros_like(state.amps, dtype=complex) if state.dense else None
        for b in range(n):
            idx = order[bounds[b]:bounds[b + 1]]
            if idx.size == 0:
                continue
            block = state.amps[idx]
            for a in range(n):
                mat = mats[a, b]
                if not np.any(mat):
                    continue
                if self.is_adjoint:
                    mat = mat.conj().T
                contrib = _contract(block, mat, offset, 1, self.out_dims)
                tgt = targets[a, idx]
                if out is not None:
                    out[tgt] += contrib
                else:
                    pieces_codes.append(tgt)
                    pieces_amps.append(contrib)
        if out is not None:
            return State(state.frame, out)
        if not pieces_codes:
            return State(state.frame, np.zeros((0,) + state.amps.shape[1:], dtype=complex),
                         np.zeros(0, dtype=np.int64))
        return _coalesce(state.frame, pieces_codes, pieces_amps)


class Scalar(OperatorMatrix):
    """``1 (x) t`` for a complex matrix ``t`` of shape ``(prod(out), prod(in))``."""

    def __init__(self, matrix, in_dims=None, out_dims=None):
        self.matrix = np.asarray(matrix, dtype=complex)
        self.in_dims = tuple(in_dims) if in_dims is not None else (self.matrix.shape[1],)
        self.out_dims = tuple(out_dims) if out_dims is not None else (self.matrix.shape[0],)
        if int(np.prod(self.in_dims)) != self.matrix.shape[1] or int(np.prod(self.out_dims)) != self.matrix.shape[0]:
            raise ValueError("matrix shape does not match the declared dimensions")

    def adjoint(self):
        return Scalar(self.matrix.conj().T, self.out_dims, self.in_dims)

    def apply(self, state, offset=0):
        amps = _contract(state.amps, self.matrix, offset, len(self.in_dims), self.out_dims)
        return State(state.frame, amps, state.codes)


class Permute(OperatorMatrix):
    """Permutation of vector factors; ``Permute((n1, n2), (1, 0))`` is the swap ``P12``."""

    def __init__(self, dims, perm):
        self.in_dims = tuple(dims)
        self.perm = tuple(perm)
        self.out_dims = tuple(self.in_dims[p] for p in self.perm)

    def adjoint(self):
        inv = tuple(int(i) for i in np.argsort(self.perm))
        return Permute(self.out_dims, inv)

    def apply(self, state, offset=0):
        ax = list(range(state.amps.ndim))
        lo = offset + 1
        ax[lo:lo + len(self.perm)] = [lo + p for p in self.perm]
        return State(state.frame, np.transpose(state.amps, ax), state.codes)


class Reshape(OperatorMatrix):
    """Regroup vector factors, e.g. ``(n1, n2) -> (n1 * n2,)`` with first-factor-major order."""

    def __init__(self, in_dims, out_dims):
        self.in_dims, self.out_dims = tuple(in_dims), tuple(out_dims)
        if int(np.prod(self.in_dims)) != int(np.prod(self.out_dims)):
            raise ValueError("reshape must preserve the total dimension")

    def adjoint(self):
        return Reshape(self.out_dims, self.in_dims)

    def apply(self, state, offset=0):
        shp = state.amps.shape
        lo = offset + 1
        new = shp[:lo] + self.out_dims + shp[lo + len(self.in_dims):]
        return State(state.frame, state.amps.reshape(new), state.codes)


class Local(OperatorMatrix):
    """``O (x) 1_n`` for a local operator ``O``."""

    def __init__(self, op, dims=()):
        self.op = op
        self.in_dims = self.out_dims = tuple(dims)

    def adjoint(self):
        return Local(self.op.adjoint(), self.in_dims)

    def support(self):
        return set(self.op.support)

    def apply(self, state, offset=0):
        return self.op.apply_state(state)


class Product(OperatorMatrix):
    """``ops[0] @ ops[1] @ ...``; the last factor acts first."""

    def __init__(self, *ops: OperatorMatrix):
        flat = []
        for op in ops:
            flat.extend(op.ops if isinstance(op, Product) else [op])
        for left, right in zip(flat, flat[1:]):
            if left.in_dims != right.out_dims:
                raise ValueError(f"cannot compose {left.in_dims} <- {right.out_dims}")
        self.ops = tuple(flat)
        self.in_dims = flat[-1].in_dims
        self.out_dims = flat[0].out_dims

    def adjoint(self):
        return Product(*[op.adjoint() for op in reversed(self.ops)])

    def support(self):
        out = set()
        for op in self.ops:
            out |= op.support()
        return out

    def apply(self, state, offset=0):
        for op in reversed(self.ops):
            state = op.apply(state, offset)
        return state


class Sum(OperatorMatrix):
    """``ops[0] + ops[1] + ...`` with common shapes, each term optionally scaled."""

    def __init__(self, *ops: OperatorMatrix, weights=None):
        if not ops:
            raise ValueError("empty sum")
        for op in ops[1:]:
            if op.in_dims != ops[0].in_dims or op.out_dims != ops[0].out_dims:
                raise ValueError("summands have different shapes")
        self.ops = tuple(ops)
        self.weights = tuple(1.0 for _ in ops) if weights is None else tuple(weights)
        self.in_dims, self.out_dims = ops[0].in_dims, ops[0].out_dims

    def adjoint(self):
        return Sum(*[op.adjoint() for op in self.ops], weights=[np.conj(w) for w in self.weights])

    def support(self):
        out = set()
        for op in self.ops:
            out |= op.support()
        return out

    def apply(self, state, offset=0):
        total = None
        for op, w in zip(self.ops, self.weights):
            term = op.apply(state, offset)
            term = term if w == 1.0 else term.scaled(w)
            total = term if total is None else total + term
        return total


class Kron(OperatorMatrix):
    """Tensor product of operator matrices, entries ``A_ij B_kl``.

    Entries multiply in the algebra, so ``B`` is applied before ``A``.  With
    ``left_first=True`` the entries are ``B_kl A_ij`` instead, which is what
    the adjoint of a tensor product produces.
    """

    def __init__(self, A: OperatorMatrix, B: OperatorMatrix, left_first: bool = False):
        self.A, self.B, self.left_first = A, B, left_first
        self.in_dims = A.in_dims + B.in_dims
        self.out_dims = A.out_dims + B.out_dims

    def adjoint(self):
        return Kron(self.A.adjoint(), self.B.adjoint(), not self.left_first)

    def support(self):
        return self.A.support() | self.B.support()

    def apply(self, state, offset=0):
        nA = len(self.A.in_dims)
        if self.left_first:
            state = self.A.apply(state, offset)
            return self.B.apply(state, offset + len(self.A.out_dims))
        state = self.B.apply(state, offset + nA)
        return self.A.apply(state, offset)


def random_state(frame: Frame, dims, rng: np.random.Generator, n_probe: int = 2,
                 n_columns: int = 24, force_sparse: bool = False) -> State:
    """Random-phase probe with a trailing batch axis of length ``n_probe``."""
    dims = tuple(dims) + (n_probe,)
    width = int(np.prod(dims))
    if not force_sparse and frame.size * width <= PROBE_BUDGET:
        amps = np.exp(2j * np.pi * rng.random((frame.size,) + dims))
        return State(frame, amps)
    codes = np.unique(rng.integers(0, frame.size, size=n_columns, dtype=np.int64))
    amps = np.exp(2j * np.pi * rng.random((codes.size,) + dims))
    return State(frame, amps, codes)


def compare(lhs: OperatorMatrix, rhs: OperatorMatrix, frame: Frame, rng: np.random.Generator,
            n_probe: int = 2, force_sparse: bool = False) -> tuple[float, str]:
    """Largest deviation between ``lhs`` and ``rhs`` on random probes.

    Returns ``(deviation, mode)`` where ``mode`` is ``"dense"`` or ``"columns"``.
    """
    if lhs.in_dims != rhs.in_dims or lhs.out_dims != rhs.out_dims:
        raise ValueError(f"shape mismatch: {lhs.in_dims}->{lhs.out_dims} vs {rhs.in_dims}->{rhs.out_dims}")
    if frame.size > DIMENSION_BUDGET:
        raise DimensionBudgetExceeded(f"frame of {len(frame.edges)} edges has {frame.size} configurations")
    psi = random_state(frame, lhs.in_dims, rng, n_probe=n_probe, force_sparse=force_sparse)
    mode = "dense" if psi.dense else "columns"
    return lhs.apply(psi).difference(rhs.apply(psi)), mode
