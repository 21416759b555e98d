"""Small dense linear-algebra helpers shared by the representation modules."""
from __future__ import annotations

from typing import Sequence

import numpy as np


def intertwiner_basis(target: Sequence[np.ndarray] | np.ndarray,
                      source: Sequence[np.ndarray] | np.ndarray,
                      tol: float = 1e-7) -> list[np.ndarray]:
    """Orthonormal basis of ``{T : target[a] @ T == T @ source[a] for all a}``.

    The matrices ``T`` have shape ``(n_target, n_source)`` and the basis is
    orthonormal for the Frobenius inner product.  The null space is read off
    from the Gram matrix of the stacked linear system.
    """
    A = np.asarray(target, dtype=complex)
    B = np.asarray(source, dtype=complex)
    m, nt = A.shape[0], A.shape[1]
    ns = B.shape[1]
    if nt == 0 or ns == 0:
        return []
    # row-major vec: vec(A T) = (A kron I) vec T, vec(T B) = (I kron B^T) vec T
    K = (np.einsum("aij,kl->aikjl", A, np.eye(ns))
         - np.einsum("ij,alk->aikjl", np.eye(nt), B)).reshape(m, nt * ns, nt * ns)
    gram = np.einsum("aij,aik->jk", K.conj(), K)
    evals, evecs = np.linalg.eigh(gram)
    sing = np.sqrt(np.clip(evals, 0.0, None))
    keep = sing < tol * np.sqrt(m)
    return [evecs[:, i].reshape(nt, ns) for i in np.flatnonzero(keep)]


def is_unitary(m: np.ndarray, tol: float) -> bool:
    m = np.asarray(m)
    return bool(np.max(np.abs(m @ m.conj().T - np.eye(m.shape[0])), initial=0.0) <= tol)
