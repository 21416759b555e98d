"""Hot loops of the ribbon calculus.

A configuration of a frame of edges ``(e_0 < e_1 < ... < e_{k-1})`` is coded
as the mixed-radix integer ``sum_i x_{e_i} |G|^(k-1-i)``, so the first edge is
the most significant digit and codes agree with Kronecker-product ordering.

The ribbon operator ``F^{a,b}`` acts on a basis configuration as
``F^{a,b} |x> = delta(b, gamma(x)) |phi_a(x)>``, where ``gamma(x)`` is the
ordered product of the direct-triangle contributions and ``phi_a`` shifts each
dual-triangle edge by ``a`` conjugated with the direct prefix before it.
``ribbon_map`` evaluates ``phi_a`` for a batch of labels and ``gamma`` for a
batch of codes.

Kernels are compiled with numba unless ``QDOUBLE_NO_NUMBA`` is set, in which
case vectorized numpy versions are used.
"""
from __future__ import annotations

import numpy as np

from ._config import numba_requested

try:
    from numba import njit
    _HAVE_NUMBA = True
except ImportError:  # pragma: no cover
    _HAVE_NUMBA = False

USE_NUMBA = _HAVE_NUMBA and numba_requested()

# triangle kinds
K_DIRECT = 0
K_DUAL = 1
# direct cases: 1 reads x_e, 2 reads x_e^-1
# dual cases: 1 x -> l x, 2 x -> x l, 3 x -> l^-1 x, 4 x -> x l^-1


def backend() -> str:
    return "numba" if USE_NUMBA else "numpy"


def _ribbon_map_np(codes, mul, inv, kinds, cases, place, labels):
    n = mul.shape[0]
    codes = np.asarray(codes, dtype=np.int64)
    m = codes.shape[0]
    targets = np.repeat(codes[None, :], len(labels), axis=0)
    prefix = np.zeros(m, dtype=np.int64)
    labels = np.asarray(labels, dtype=np.int64)
    for t in range(len(kinds)):
        d = (codes // place[t]) % n
        if kinds[t] == K_DIRECT:
            c = d if cases[t] == 1 else inv[d]
            prefix = mul[prefix, c]
            continue
        # l = prefix^-1 a prefix for every label a, shape (labels, m)
        lab = mul[mul[inv[prefix][None, :], labels[:, None]], prefix[None, :]]
        case = cases[t]
        if case == 1:
            nd = mul[lab, d[None, :]]
        elif case == 2:
            nd = mul[d[None, :], lab]
        elif case == 3:
            nd = mul[inv[lab], d[None, :]]
        else:
            nd = mul[d[None, :], inv[lab]]
        targets += (nd - d[None, :]) * place[t]
    return targets, prefix


if _HAVE_NUMBA:
    @njit(cache=True)
    def _ribbon_map_nb(codes, mul, inv, kinds, cases, place, labels, targets, gamma):
        n = mul.shape[0]
        nt = kinds.shape[0]
        nl = labels.shape[0]
        for i in range(codes.shape[0]):
            x = codes[i]
            for li in range(nl):
                targets[li, i] = x
            k = 0
            for t in range(nt):
                d = (x // place[t]) % n
                if kinds[t] == 0:
                    c = d if cases[t] == 1 else inv[d]
                    k = mul[k, c]
                    continue
                kinv = inv[k]
                for li in range(nl):
                    lab = mul[mul[kinv, labels[li]], k]
                    case = cases[t]
                    if case == 1:
                        nd = mul[lab, d]
                    elif case == 2:
                        nd = mul[d, lab]
                    elif case == 3:
                        nd = mul[inv[lab], d]
                    else:
                        nd = mul[d, inv[lab]]
                    targets[li, i] += (nd - d) * place[t]
            gamma[i] = k


def ribbon_map(codes, mul, inv, kinds, cases, place, labels, use_numba: bool | None = None):
    """Return ``(targets, gamma)`` with ``targets[j, i] = phi_{labels[j]}(codes[i])``."""
    codes = np.ascontiguousarray(codes, dtype=np.int64)
    labels = np.ascontiguousarray(labels, dtype=np.int64)
    numba_on = USE_NUMBA if use_numba is None else (use_numba and _HAVE_NUMBA)
    if not numba_on:
        return _ribbon_map_np(codes, mul, inv, kinds, cases, place, labels)
    targets = np.empty((labels.shape[0], codes.shape[0]), dtype=np.int64)
    gamma = np.empty(codes.shape[0], dtype=np.int64)
    _ribbon_map_nb(codes, np.ascontiguousarray(mul, dtype=np.int64),
                   np.ascontiguousarray(inv, dtype=np.int64),
                   np.ascontiguousarray(kinds, dtype=np.int64),
                   np.ascontiguousarray(cases, dtype=np.int64),
                   np.ascontiguousarray(place, dtype=np.int64), labels, targets, gamma)
    return targets, gamma


def _digits_np(codes, n, place):
    return (codes[:, None] // place[None, :]) % n


def _replace_digits_np(codes, old, new, place):
    return codes + ((new - old) * place[None, :]).sum(axis=1)


def gauge_map(codes, mul, inv, place_out, place_in, h):
    """Gauge transformation ``A_v^h`` on codes.

    ``place_out`` holds place values of edges leaving ``v`` (``x -> h x``),
    ``place_in`` of edges entering ``v`` (``x -> x h^-1``).
    """
    n = mul.shape[0]
    codes = np.asarray(codes, dtype=np.int64)
    out = codes.copy()
    for p in place_out:
        d = (codes // p) % n
        out += (mul[h, d] - d) * p
    for p in place_in:
        d = (codes // p) % n
        out += (mul[d, inv[h]] - d) * p
    return out
