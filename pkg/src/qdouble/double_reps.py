"""Finite-dimensional unitary representations of D(G).

Irreps are built by induction from a conjugacy class ``C`` with
representative ``r`` and an irrep ``pi`` of the centralizer ``Z(r)``.  On the
basis ``|c, v>`` (``c`` in ``C``, ``v`` a basis vector of ``pi``)

    D(g, h) |c, v> = delta(g, h c h^-1) |h c h^-1, pi(z) v>,
    z = q_{hch^-1}^-1 h q_c,

where ``q_c`` is the smallest element with ``q_c r q_c^-1 = c``.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from ._linalg import intertwiner_basis
from .double_algebra import DoubleElement, _tables, r_matrix
from .errors import GroupMismatch
from .group_core import (FiniteGroup, centralizer, conjugacy_classes, subgroup_as_group,
                         unitary_irreps)
from .reporting import SuiteReport

__all__ = [
    "Representation",
    "IntertwinerBasis",
    "BraidingMatrix",
    "irreps_of_double",
    "tensor_rep",
    "direct_sum_rep",
    "intertwiner_space",
    "fusion_multiplicities",
    "fusion_multiplicities_from_characters",
    "braiding",
    "swap_matrix",
    "verify_rep",
    "irreps_suite",
    "regular_representation",
    "trivial_rep",
    "central_projector",
    "anyon_name",
]


@dataclass(frozen=True, eq=False)
class Representation:
    """Matrices ``D(g, h)`` stored as an array of shape ``(|G|^2, n, n)``.

    The first axis is the basis index ``g * |G| + h`` of D(G).
    """

    group: FiniteGroup
    matrices: np.ndarray
    label: tuple[int, int] | None = None

    def __post_init__(self):
        m = np.asarray(self.matrices, dtype=complex)
        d = self.group.order ** 2
        if m.ndim != 3 or m.shape[0] != d or m.shape[1] != m.shape[2]:
            raise ValueError(f"representation matrices must have shape ({d}, n, n)")
        object.__setattr__(self, "matrices", m)

    @property
    def dim(self) -> int:
        return self.matrices.shape[1]

    def __call__(self, a: DoubleElement) -> np.ndarray:
        if not a.group.same_as(self.group):
            raise GroupMismatch("element and representation belong to different groups")
        return np.einsum("i,iab->ab", a.coeffs, self.matrices)

    def of(self, g: int, h: int) -> np.ndarray:
        return self.matrices[g * self.group.order + h]

    def group_matrices(self) -> np.ndarray:
        """``U(h) = sum_k D(k, h)``, the image of the group element ``h``."""
        n = self.group.order
        return self.matrices.reshape(n, n, self.dim, self.dim).sum(axis=0)

    def flux_projectors(self) -> np.ndarray:
        """``P(g) = D(g, 1)``."""
        n = self.group.order
        return self.matrices.reshape(n, n, self.dim, self.dim)[:, 0]

    def character(self) -> np.ndarray:
        return np.trace(self.matrices, axis1=1, axis2=2)

    def _check(self, other: "Representation"):
        if not self.group.same_as(other.group):
            raise GroupMismatch("representations belong to different groups")


def anyon_name(rep: Representation) -> str:
    if rep.label is None:
        return f"rep[{rep.dim}]"
    return f"C{rep.label[0]}.pi{rep.label[1]}"


def _induced(G: FiniteGroup, cls: tuple[int, ...], rep_el: int, sub_emb: np.ndarray,
             pi_mats: np.ndarray) -> np.ndarray:
    n = G.order
    cls_pos = {c: i for i, c in enumerate(cls)}
    coset = {}
    for q in range(n):
        c = G.conj(q, rep_el)
        if c not in coset:
            coset[c] = q
    sub_index = {int(g): i for i, g in enumerate(sub_emb)}
    dp = pi_mats.shape[1]
    dim = len(cls) * dp
    mats = np.zeros((n * n, dim, dim), dtype=complex)
    for h in range(n):
        for c in cls:
            c2 = G.conj(h, c)
            z = G.mul(G.mul(G.inv(coset[c2]), h), coset[c])
            block = pi_mats[sub_index[z]]
            i2, i1 = cls_pos[c2], cls_pos[c]
            mats[c2 * n + h, i2 * dp:(i2 + 1) * dp, i1 * dp:(i1 + 1) * dp] = block
    return mats


def irreps_of_double(G: FiniteGroup, seed: int = 0) -> list[Representation]:
    """All irreps of D(G), ordered by (class index, centralizer-irrep index).

    The class of the identity comes first and the trivial centralizer irrep
    comes first within each class, so index 0 is the vacuum (counit).
    """
    return list(_irreps_of_double_cached(G, int(seed)))


@lru_cache(maxsize=32)
def _irreps_of_double_cached(G: FiniteGroup, seed: int):
    data = conjugacy_classes(G)
    out = []
    for ci, (cls, r) in enumerate(zip(data.classes, data.class_representative)):
        Z, emb = subgroup_as_group(G, centralizer(G, r), name=f"{G.name}_Z{r}")
        for pj, pi in enumerate(unitary_irreps(Z, seed=seed)):
            mats = _induced(G, cls, r, emb, pi.matrices)
            mats.setflags(write=False)
            out.append(Representation(G, mats, label=(ci, pj)))
    return tuple(out)


def trivial_rep(G: FiniteGroup) -> Representation:
    """The counit representation ``D(g, h) = delta(g, 1)``."""
    n = G.order
    mats = np.zeros((n * n, 1, 1), dtype=complex)
    mats[:n, 0, 0] = 1.0
    return Representation(G, mats, label=(0, 0))


def regular_representation(G: FiniteGroup) -> Representation:
    """Left regular representation of D(G) on itself (a *-representation)."""
    t = _tables(G)
    d = t.dim
    mats = np.zeros((d, d, d), dtype=complex)
    i, j = np.nonzero(t.prod >= 0)
    mats[i, t.prod[i, j], j] = 1.0
    return Representation(G, mats)


def tensor_rep(D1: Representation, D2: Representation) -> Representation:
    """``(D1 x D2)(a) = (D1 (x) D2)(Delta a)``."""
    D1._check(D2)
    G = D1.group
    t = _tables(G)
    n1, n2 = D1.dim, D2.dim
    mats = np.zeros((t.dim, n1 * n2, n1 * n2), dtype=complex)
    for k in range(t.n):
        left = D1.matrices[t.cop_left[:, k]]
        right = D2.matrices[t.cop_right[:, k]]
        mats += np.einsum("iab,icd->iacbd", left, right).reshape(t.dim, n1 * n2, n1 * n2)
    return Representation(G, mats)


def direct_sum_rep(D1: Representation, D2: Representation) -> Representation:
    D1._check(D2)
    n1, n2 = D1.dim, D2.dim
    mats = np.zeros((D1.matrices.shape[0], n1 + n2, n1 + n2), dtype=complex)
    mats[:, :n1, :n1] = D1.matrices
    mats[:, n1:, n1:] = D2.matrices
    return Representation(D1.group, mats)


@dataclass(frozen=True, eq=False)
class IntertwinerBasis:
    """Orthonormal basis of ``(target | source)``, matrices ``n_target x n_source``."""

    target: Representation
    source: Representation
    basis: tuple[np.ndarray, ...]

    @property
    def dim(self) -> int:
        return len(self.basis)


def intertwiner_space(D1: Representation, D2: Representation, tol: float = 1e-7) -> IntertwinerBasis:
    """Intertwiners ``t`` with ``D1(a) t = t D2(a)`` for every basis element ``a``."""
    D1._check(D2)
    basis = intertwiner_basis(D1.matrices, D2.matrices, tol)
    return IntertwinerBasis(target=D1, source=D2, basis=tuple(basis))


def fusion_multiplicities(G: FiniteGroup, irreps: list[Representation] | None = None) -> np.ndarray:
    """``N[i, j, k] = dim (D_k | D_i x D_j)`` from intertwiner spaces."""
    irreps = irreps_of_double(G) if irreps is None else irreps
    m = len(irreps)
    N = np.zeros((m, m, m), dtype=np.int64)
    for i in range(m):
        for j in range(m):
            prod = tensor_rep(irreps[i], irreps[j])
            for k in range(m):
                N[i, j, k] = intertwiner_space(irreps[k], prod).dim
    return N


def central_projector(D: Representation) -> DoubleElement:
    """Minimal central projection of D(G) belonging to the irrep ``D``.

    ``e_D = (dim D / |G|) sum_{g,h} conj(chi_D(g, h)) (g, h)``.
    """
    G = D.group
    return DoubleElement(G, (D.dim / G.order) * np.conj(D.character()))


def fusion_multiplicities_from_characters(G: FiniteGroup,
                                          irreps: list[Representation] | None = None) -> np.ndarray:
    """Fusion multiplicities from characters, ``Tr (D_i x D_j)(e_k) / dim D_k``."""
    irreps = irreps_of_double(G) if irreps is None else irreps
    t = _tables(G)
    m = len(irreps)
    chars = np.array([r.character() for r in irreps])
    N = np.zeros((m, m, m), dtype=np.int64)
    for i in range(m):
        for j in range(m):
            chi = np.zeros(t.dim, dtype=complex)
            for k in range(t.n):
                chi += chars[i][t.cop_left[:, k]] * chars[j][t.cop_right[:, k]]
            for k in range(m):
                val = np.dot(np.conj(chars[k]), chi) / G.order
                N[i, j, k] = int(round(val.real))
    return N


@dataclass(frozen=True, eq=False)
class BraidingMatrix:
    """``B(D1, D2)``, a unitary map from the space of ``D1 x D2`` to that of ``D2 x D1``."""

    matrix: np.ndarray
    D1: Representation
    D2: Representation


def swap_matrix(n1: int, n2: int) -> np.ndarray:
    """Permutation sending ``u (x) w`` in ``C^n1 (x) C^n2`` to ``w (x) u``."""
    P = np.zeros((n2 * n1, n1 * n2))
    for i in range(n1):
        for j in range(n2):
            P[j * n1 + i, i * n2 + j] = 1.0
    return P


def braiding(D1: Representation, D2: Representation) -> BraidingMatrix:
    """``B(D1, D2) = P12 (D1 (x) D2)(R)``."""
    D1._check(D2)
    R = r_matrix(D1.group).matrix
    rows, cols = np.nonzero(R)
    image = np.zeros((D1.dim * D2.dim,) * 2, dtype=complex)
    for i, j in zip(rows, cols):
        image += R[i, j] * np.kron(D1.matrices[i], D2.matrices[j])
    return BraidingMatrix(swap_matrix(D1.dim, D2.dim) @ image, D1, D2)


def verify_rep(D: Representation, tol: float = 1e-9) -> SuiteReport:
    """Check homomorphism, unitality and star-compatibility of ``D``."""
    G = D.group
    t = _tables(G)
    report = SuiteReport(suite="verify_rep", group=G.name)
    M = D.matrices
    prods = np.einsum("iab,jbc->ijac", M, M)
    target = np.zeros_like(prods)
    valid = t.prod >= 0
    target[valid] = M[t.prod[valid]]
    report.add("homomorphism D(a)D(b) = D(ab)", "reps.homomorphism",
               float(np.max(np.abs(prods - target))), tol)
    unit_img = np.einsum("i,iab->ab", t.unit, M)
    report.add("unital D(1) = I", "reps.unital",
               float(np.max(np.abs(unit_img - np.eye(D.dim)), initial=0.0)), tol)
    adj = np.conj(np.transpose(M, (0, 2, 1)))
    report.add("star D(a*) = D(a)^dagger", "reps.star",
               float(np.max(np.abs(M[t.star] - adj), initial=0.0)), tol)
    return report.finish()


def irreps_suite(G: FiniteGroup, irreps: list[Representation] | None = None, tol: float = 1e-9,
                 fusion_routes: bool | None = None) -> SuiteReport:
    """Completeness and inequivalence of the irreps of D(G).

    Checks each irrep with :func:`verify_rep`, that the squared dimensions sum
    to ``|G|^2`` and that the matrix of intertwiner-space dimensions between
    irreps is the identity.  For small groups the fusion multiplicities from
    intertwiner spaces are compared with those from characters.  Passing
    ``irreps`` replaces the computed list, which is how controls are run.
    """
    irreps = irreps_of_double(G) if irreps is None else irreps
    report = SuiteReport(suite="irreps", group=G.name)
    worst = {"homomorphism": 0.0, "unital": 0.0, "star": 0.0}
    for D in irreps:
        for rec in verify_rep(D, tol).records:
            key = rec.anchor.split(".")[1]
            worst[key] = max(worst[key], rec.max_deviation)
    for key, dev in worst.items():
        report.add(f"every irrep is {key}", f"reps.{key}", dev, tol, f"{len(irreps)} irreps")
    dims = [D.dim for D in irreps]
    report.add("sum of squared dimensions equals |G|^2", "reps.completeness",
               abs(sum(d * d for d in dims) - G.order ** 2), 0.0, f"dims {dims}")
    m = len(irreps)
    hom = np.array([[intertwiner_space(irreps[i], irreps[j]).dim for j in range(m)]
                    for i in range(m)])
    report.add("intertwiner dimensions form the identity matrix", "reps.schur",
               float(np.abs(hom - np.eye(m)).sum()), 0.0)
    if fusion_routes is None:
        fusion_routes = G.order <= 6
    if fusion_routes:
        N1 = fusion_multiplicities(G, irreps)
        N2 = fusion_multiplicities_from_characters(G, irreps)
        report.add("fusion multiplicities agree across routes", "reps.fusion",
                   float(np.abs(N1 - N2).sum()), 0.0)
    report.data["dims"] = dims
    return report.finish()
