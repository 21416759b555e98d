"""Finite groups given by Cayley tables.

Elements are integers ``0..order-1`` with ``0`` the identity.  The module
provides validation of tables, conjugacy classes, centralizers, subgroups
re-indexed as groups in their own right, and numerically computed unitary
irreps together with a small catalog of closed-form irreps used as fixtures.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path
from typing import Sequence

import numpy as np

from ._linalg import intertwiner_basis
from .errors import DecompositionFailed, NotAGroup

__all__ = [
    "FiniteGroup",
    "ConjugacyData",
    "GroupIrrep",
    "build_group",
    "conjugacy_classes",
    "centralizer",
    "subgroup_as_group",
    "unitary_irreps",
    "catalog_irreps",
    "builtin_group",
    "load_group",
    "BUILTIN_NAMES",
]


@dataclass(frozen=True, eq=False)
class FiniteGroup:
    """A finite group stored as a Cayley table.

    Attributes
    ----------
    order : int
        Number of elements.
    cayley : ndarray of int, shape (order, order)
        ``cayley[g, h]`` is the index of the product ``g h``.
    inverse : ndarray of int, shape (order,)
        ``inverse[g]`` is the index of ``g^{-1}``.
    name : str
        Label used in reports.
    """

    order: int
    cayley: np.ndarray
    inverse: np.ndarray
    name: str = "G"
    identity: int = 0
    _key: bytes = field(default=b"", repr=False)

    def mul(self, g: int, h: int) -> int:
        return int(self.cayley[g, h])

    def inv(self, g: int) -> int:
        return int(self.inverse[g])

    def conj(self, h: int, g: int) -> int:
        """Return ``h g h^{-1}``."""
        return int(self.cayley[self.cayley[h, g], self.inverse[h]])

    @property
    def elements(self) -> range:
        return range(self.order)

    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.cayley, self.cayley.T))

    def same_as(self, other: "FiniteGroup") -> bool:
        return self is other or (self.order == other.order
                                 and np.array_equal(self.cayley, other.cayley))

    def __eq__(self, other):
        return isinstance(other, FiniteGroup) and self.same_as(other)

    def __hash__(self):
        return hash((self.order, self._key))

    def __repr__(self):
        return f"FiniteGroup(name={self.name!r}, order={self.order})"


def build_group(cayley, name: str = "G") -> FiniteGroup:
    """Validate a Cayley table and return the group it defines.

    The identity is relabeled to index 0 by swapping it with the element
    currently at index 0.

    Raises
    ------
    NotAGroup
        If the table is not square, has entries out of range, or violates
        the identity, inverse, or associativity axiom.  The message names
        the offending element or triple.
    """
    table = np.asarray(cayley)
    if table.ndim != 2 or table.shape[0] != table.shape[1] or table.shape[0] == 0:
        raise NotAGroup("Cayley table must be a non-empty square table")
    if not np.issubdtype(table.dtype, np.integer):
        if not np.all(np.equal(np.mod(table, 1), 0)):
            raise NotAGroup("Cayley table entries must be integers")
        table = table.astype(np.int64)
    table = table.astype(np.int64)
    n = table.shape[0]
    if table.min() < 0 or table.max() >= n:
        raise NotAGroup(f"Cayley table entries must lie in 0..{n - 1}")

    ar = np.arange(n)
    ident = [e for e in range(n) if np.array_equal(table[e], ar) and np.array_equal(table[:, e], ar)]
    if not ident:
        raise NotAGroup("no identity element: no row and column equal to the index sequence")
    e = ident[0]

    if e != 0:
        perm = np.arange(n)
        perm[0], perm[e] = e, 0
        # relabel: new index i corresponds to old element perm[i]
        old_to_new = np.argsort(perm)
        table = old_to_new[table[np.ix_(perm, perm)]]

    inverse = np.full(n, -1, dtype=np.int64)
    for g in range(n):
        hits = np.flatnonzero(table[g] == 0)
        if hits.size == 0:
            raise NotAGroup(f"element {g} has no inverse")
        h = int(hits[0])
        if table[h, g] != 0:
            raise NotAGroup(f"element {g} has no two-sided inverse")
        inverse[g] = h

    left = table[table[:, :, None], ar[None, None, :]]       # (gh)k
    right = table[ar[:, None, None], table[None, :, :]]      # g(hk)
    bad = np.argwhere(left != right)
    if bad.size:
        g, h, k = (int(x) for x in bad[0])
        raise NotAGroup(f"associativity fails for triple ({g}, {h}, {k})")

    for g in range(n):
        if len(set(table[g].tolist())) != n or len(set(table[:, g].tolist())) != n:
            raise NotAGroup(f"row or column of element {g} is not a permutation")

    table.setflags(write=False)
    inverse.setflags(write=False)
    return FiniteGroup(order=n, cayley=table, inverse=inverse, name=name, _key=table.tobytes())


@dataclass(frozen=True)
class ConjugacyData:
    """Conjugacy classes ordered by their minimal element."""

    classes: tuple[tuple[int, ...], ...]
    class_of: tuple[int, ...]
    class_representative: tuple[int, ...]


def conjugacy_classes(G: FiniteGroup) -> ConjugacyData:
    return _conjugacy_cached(G)


@lru_cache(maxsize=64)
def _conjugacy_cached(G: FiniteGroup) -> ConjugacyData:
    n = G.order
    seen = np.full(n, -1, dtype=np.int64)
    classes = []
    for g in range(n):
        if seen[g] >= 0:
            continue
        orbit = sorted({G.conj(h, g) for h in range(n)})
        for x in orbit:
            seen[x] = len(classes)
        classes.append(tuple(orbit))
    reps = tuple(c[0] for c in classes)
    return ConjugacyData(classes=tuple(classes), class_of=tuple(int(c) for c in seen),
                         class_representative=reps)


def centralizer(G: FiniteGroup, r: int) -> tuple[int, ...]:
    """Elements commuting with ``r``, in increasing order."""
    return tuple(int(h) for h in np.flatnonzero(G.cayley[:, r] == G.cayley[r, :]))


def subgroup_as_group(G: FiniteGroup, elements: Sequence[int], name: str | None = None):
    """Re-index a subgroup as a group of its own.

    Returns
    -------
    H : FiniteGroup
        The subgroup with element ``i`` corresponding to ``embedding[i]``.
    embedding : ndarray of int
        Sorted element indices of the subgroup inside ``G``.
    """
    emb = np.array(sorted(set(int(x) for x in elements)), dtype=np.int64)
    if emb.size == 0 or emb[0] != 0:
        raise NotAGroup("subgroup must contain the identity")
    lookup = {int(g): i for i, g in enumerate(emb)}
    sub = G.cayley[np.ix_(emb, emb)]
    try:
        table = np.vectorize(lambda x: lookup[int(x)])(sub)
    except KeyError as exc:
        raise NotAGroup(f"element subset is not closed under the product ({exc})") from None
    H = build_group(table, name=name or f"{G.name}_sub{len(emb)}")
    return H, emb


@dataclass(frozen=True, eq=False)
class GroupIrrep:
    """Unitary irreducible representation, ``matrices[g]`` is ``pi(g)``."""

    dim: int
    matrices: np.ndarray

    def character(self) -> np.ndarray:
        return np.trace(self.matrices, axis1=1, axis2=2)


def _regular_left(G: FiniteGroup) -> np.ndarray:
    n = G.order
    mats = np.zeros((n, n, n))
    for g in range(n):
        mats[g, G.cayley[g], np.arange(n)] = 1.0
    return mats


def _regular_right(G: FiniteGroup) -> np.ndarray:
    n = G.order
    mats = np.zeros((n, n, n))
    for g in range(n):
        mats[g, G.cayley[np.arange(n), G.inverse[g]], np.arange(n)] = 1.0
    return mats


def _character_key(chi: np.ndarray):
    return tuple((round(-float(c.real), 6) + 0.0, round(float(c.imag), 6) + 0.0) for c in chi)


def unitary_irreps(H: FiniteGroup, seed: int = 0, tol: float = 1e-9,
                   max_retries: int = 8) -> list[GroupIrrep]:
    """Complete list of inequivalent unitary irreps of ``H``.

    The left regular representation is split by diagonalizing a random
    self-adjoint element of its commutant (spanned by the right regular
    representation).  Generic eigenspaces are irreducible; one eigenspace per
    distinct character is kept.  A decomposition is accepted only when every
    kept character has unit norm and the squared dimensions add up to the
    group order; otherwise a fresh seed is tried.

    Raises
    ------
    DecompositionFailed
        If no seed within ``max_retries`` yields a clean decomposition.
    """
    return list(_irreps_cached(H, int(seed), float(tol), int(max_retries)))


@lru_cache(maxsize=128)
def _irreps_cached(H: FiniteGroup, seed: int, tol: float, max_retries: int):
    n = H.order
    left = _regular_left(H)
    right = _regular_right(H)
    rng = np.random.default_rng(seed)
    for _attempt in range(max_retries):
        coeff = rng.normal(size=n) + 1j * rng.normal(size=n)
        coeff = coeff + np.conj(coeff[H.inverse])
        x = np.einsum("g,gij->ij", coeff, right)
        x = 0.5 * (x + x.conj().T)
        evals, evecs = np.linalg.eigh(x)
        scale = max(1.0, float(np.max(np.abs(evals))))
        cuts = np.flatnonzero(np.diff(evals) > 1e-6 * scale) + 1
        blocks = np.split(np.arange(n), cuts)

        found = {}
        ok = True
        for block in blocks:
            v = evecs[:, block]
            mats = np.einsum("ia,gij,jb->gab", v.conj(), left, v)
            leak = np.einsum("gij,jb->gib", left, v) - np.einsum("ia,gab->gib", v, mats)
            if np.max(np.abs(leak)) > 1e3 * tol:
                ok = False
                break
            chi = np.trace(mats, axis1=1, axis2=2)
            if abs(np.vdot(chi, chi).real - n) > 1e-6:
                ok = False
                break
            key = _character_key(chi)
            if key not in found:
                found[key] = GroupIrrep(dim=len(block), matrices=mats)
        if not ok or sum(r.dim ** 2 for r in found.values()) != n:
            continue
        irreps = sorted(found.values(), key=lambda r: (r.dim, _character_key(r.character())))
        for r in irreps:
            r.matrices.setflags(write=False)
        return tuple(irreps)
    raise DecompositionFailed(
        f"irrep decomposition of {H.name} did not resolve after {max_retries} attempts")


# ---------------------------------------------------------------------------
# built-in groups and closed-form irreps

def _cyclic_table(n: int) -> np.ndarray:
    ar = np.arange(n)
    return (ar[:, None] + ar[None, :]) % n


def _s3_perms():
    return list(itertools.permutations(range(3)))


def _s3_table() -> np.ndarray:
    perms = _s3_perms()
    index = {p: i for i, p in enumerate(perms)}
    table = np.zeros((6, 6), dtype=np.int64)
    for i, p in enumerate(perms):
        for j, q in enumerate(perms):
            table[i, j] = index[tuple(p[q[x]] for x in range(3))]
    return table


def _d4_elements():
    # r^k s^m stored at index k + 4 m
    return [(k, m) for m in range(2) for k in range(4)]


def _d4_table() -> np.ndarray:
    els = _d4_elements()
    index = {e: i for i, e in enumerate(els)}
    table = np.zeros((8, 8), dtype=np.int64)
    for i, (a, b) in enumerate(els):
        for j, (c, d) in enumerate(els):
            table[i, j] = index[((a + (-1) ** b * c) % 4, (b + d) % 2)]
    return table


def _q8_matrices() -> np.ndarray:
    one = np.eye(2, dtype=complex)
    qi = np.array([[1j, 0], [0, -1j]])
    qj = np.array([[0, 1], [-1, 0]], dtype=complex)
    qk = qi @ qj
    # order: 1, -1, i, -i, j, -j, k, -k
    return np.array([one, -one, qi, -qi, qj, -qj, qk, -qk])


def _table_from_matrices(mats: np.ndarray) -> np.ndarray:
    n = len(mats)
    table = np.zeros((n, n), dtype=np.int64)
    for i in range(n):
        for j in range(n):
            prod = mats[i] @ mats[j]
            hit = [k for k in range(n) if np.allclose(prod, mats[k])]
            table[i, j] = hit[0]
    return table


BUILTIN_NAMES = ("z2", "z3", "z4", "s3", "d4", "q8")


@lru_cache(maxsize=None)
def builtin_group(name: str) -> FiniteGroup:
    """Named built-in group: ``z1``..``z8``, ``s3``, ``d4`` or ``q8``."""
    key = name.strip().lower()
    if key.startswith("z") and key[1:].isdigit() and 1 <= int(key[1:]) <= 8:
        return build_group(_cyclic_table(int(key[1:])), name=key)
    if key == "s3":
        return build_group(_s3_table(), name=key)
    if key == "d4":
        return build_group(_d4_table(), name=key)
    if key == "q8":
        return build_group(_table_from_matrices(_q8_matrices()), name=key)
    raise KeyError(name)


def catalog_irreps(name: str) -> list[GroupIrrep]:
    """Closed-form irreps of a built-in group, indexed like ``builtin_group(name)``."""
    key = name.strip().lower()
    if key.startswith("z") and key[1:].isdigit():
        n = int(key[1:])
        ar = np.arange(n)
        return [GroupIrrep(1, np.exp(2j * np.pi * j * ar / n).reshape(n, 1, 1))
                for j in range(n)]
    if key == "s3":
        perms = _s3_perms()
        sign = np.array([np.linalg.det(np.eye(3)[list(p)]) for p in perms])
        pmats = np.array([np.eye(3)[:, list(p)] for p in perms])
        basis = np.array([[1, -1, 0], [1, 1, -2]], dtype=float).T
        basis /= np.linalg.norm(basis, axis=0)
        std = np.einsum("ia,gij,jb->gab", basis, pmats, basis).astype(complex)
        return [GroupIrrep(1, np.ones((6, 1, 1), complex)),
                GroupIrrep(1, sign.reshape(6, 1, 1).astype(complex)),
                GroupIrrep(2, std)]
    if key == "d4":
        els = _d4_elements()
        out = []
        for a in (1, -1):
            for b in (1, -1):
                vals = np.array([a ** k * b ** m for k, m in els], dtype=complex)
                out.append(GroupIrrep(1, vals.reshape(8, 1, 1)))
        rot = np.array([[0, -1], [1, 0]], dtype=complex)
        ref = np.diag([1, -1]).astype(complex)
        mats = np.array([np.linalg.matrix_power(rot, k) @ np.linalg.matrix_power(ref, m)
                         for k, m in els])
        out.append(GroupIrrep(2, mats))
        return out
    if key == "q8":
        out = []
        for a in (1, -1):
            for b in (1, -1):
                vals = np.array([1, 1, a, a, b, b, a * b, a * b], dtype=complex)
                out.append(GroupIrrep(1, vals.reshape(8, 1, 1)))
        out.append(GroupIrrep(2, _q8_matrices()))
        return out
    raise KeyError(name)


def irreps_equivalent(p1: GroupIrrep, p2: GroupIrrep, tol: float = 1e-7) -> bool:
    if p1.dim != p2.dim:
        return False
    return len(intertwiner_basis(p1.matrices, p2.matrices, tol)) == 1


def load_group(source: str | Path) -> FiniteGroup:
    """Load a built-in group by name or a Cayley table from a text file.

    The file format is the order ``n`` on the first line followed by ``n``
    rows of ``n`` whitespace-separated element indices.
    """
    text_source = str(source)
    try:
        return builtin_group(text_source)
    except KeyError:
        pass
    path = Path(text_source)
    if not path.is_file():
        raise NotAGroup(f"unknown group name or missing file: {text_source}")
    rows = [line.split() for line in path.read_text().splitlines() if line.strip()]
    try:
        n = int(rows[0][0])
        table = np.array([[int(x) for x in row] for row in rows[1:]], dtype=np.int64)
    except (ValueError, IndexError):
        raise NotAGroup(f"cannot parse group file {path}") from None
    if len(rows[0]) != 1 or table.shape != (n, n):
        raise NotAGroup(f"group file {path} must contain the order followed by {n} rows of {n} entries")
    return build_group(table, name=path.stem)
