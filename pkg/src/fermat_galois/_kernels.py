"""Hot inner loops, each with a numba-compiled and a pure-numpy implementation.

The numba path is used when numba imports and the environment variable
``FERMAT_GALOIS_NUMBA`` is not set to a false value (``0``, ``false``, ``no``,
``off``).  Both paths are always importable through ``NUMBA_KERNELS`` and
``NUMPY_KERNELS`` so the benchmark can compare them in one process.
"""

from __future__ import annotations

import os
from functools import lru_cache

import numpy as np

_FALSE = {"0", "false", "no", "off"}

try:
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    HAVE_NUMBA = False

USE_NUMBA = HAVE_NUMBA and os.environ.get("FERMAT_GALOIS_NUMBA", "1").strip().lower() not in _FALSE
BACKEND = "numba" if USE_NUMBA else "numpy"


# ---------------------------------------------------------------------------
# loop versions (compiled by numba when available)


def _convolve_loops(a, b, modulus, c, cyclic):
    n0, n1, k = a.shape
    w = 2 * k - 1
    raw = np.zeros((n0, n1, w), np.int64)
    for i1 in range(n0):
        for j1 in range(n1):
            for s1 in range(k):
                v = a[i1, j1, s1]
                if v == 0:
                    continue
                for i2 in range(n0):
                    i = i1 + i2
                    if i >= n0:
                        if not cyclic:
                            break
                        i -= n0
                    for j2 in range(n1):
                        j = j1 + j2
                        if j >= n1:
                            if not cyclic:
                                break
                            j -= n1
                        for s2 in range(k):
                            raw[i, j, s1 + s2] += v * b[i2, j2, s2]
    out = np.empty((n0, n1, k), np.int64)
    for i in range(n0):
        for j in range(n1):
            # t^k = t - c folds degree d onto d-k+1 and d-k
            for d in range(w - 1, k - 1, -1):
                v = raw[i, j, d] % modulus
                raw[i, j, d - k + 1] += v
                raw[i, j, d - k] -= c * v
            for s in range(k):
                out[i, j, s] = raw[i, j, s] % modulus
    return out


def _rref_loops(m, p, inv):
    rows, cols = m.shape
    pivots = np.empty(min(rows, cols), np.int64)
    r = 0
    for col in range(cols):
        if r == rows:
            break
        piv = -1
        for i in range(r, rows):
            if m[i, col] != 0:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            for j in range(cols):
                tmp = m[r, j]
                m[r, j] = m[piv, j]
                m[piv, j] = tmp
        s = inv[m[r, col]]
        for j in range(col, cols):
            m[r, j] = (m[r, j] * s) % p
        for i in range(rows):
            if i == r:
                continue
            f = m[i, col]
            if f == 0:
                continue
            for j in range(col, cols):
                m[i, j] = (m[i, j] - f * m[r, j]) % p
        pivots[r] = col
        r += 1
    return pivots[:r]


def _count_pairs_loops(powers, targets):
    n = 0
    q = powers.shape[0]
    for x in range(q):
        t = targets[x]
        for y in range(q):
            if powers[y] == t:
                n += 1
    return n


# ---------------------------------------------------------------------------
# numpy versions


@lru_cache(maxsize=64)
def _gather_index(n0: int, n1: int, cyclic: bool) -> np.ndarray:
    """Index into a zero-padded flat grid realising 2-D convolution as a matmul.

    Row ``i1*n1 + j1`` lists, for every output slot ``(i, j)``, the flat
    position of ``b[i - i1, j - j1]`` (or the zero pad when out of range).
    """
    i1, j1, i, j = np.meshgrid(np.arange(n0), np.arange(n1), np.arange(n0), np.arange(n1),
                               indexing="ij")
    i2 = i - i1
    j2 = j - j1
    if cyclic:
        i2 %= n0
        j2 %= n1
        ok = np.ones(i2.shape, dtype=bool)
    else:
        ok = (i2 >= 0) & (j2 >= 0)
    idx = np.where(ok, i2 * n1 + j2, n0 * n1)
    return idx.reshape(n0 * n1, n0 * n1)


def _convolve_numpy(a, b, modulus, c, cyclic):
    n0, n1, k = a.shape
    w = 2 * k - 1
    idx = _gather_index(n0, n1, bool(cyclic))
    a_rows = a.reshape(n0 * n1, k).T  # (k, n0*n1)
    raw = np.zeros((n0 * n1, w), np.int64)
    pad = np.zeros(1, np.int64)
    for s2 in range(k):
        col = b[:, :, s2].reshape(-1)
        if not col.any():
            continue
        g = np.concatenate([col, pad])[idx]
        raw[:, s2:s2 + k] += (a_rows @ g).T
    raw = raw.reshape(n0, n1, w)
    for d in range(w - 1, k - 1, -1):
        v = raw[:, :, d] % modulus
        raw[:, :, d - k + 1] += v
        raw[:, :, d - k] -= c * v
    return raw[:, :, :k] % modulus


def _rref_numpy(m, p, inv):
    rows, cols = m.shape
    pivots = []
    r = 0
    for col in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(m[r:, col])
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            m[[r, piv]] = m[[piv, r]]
        m[r] = (m[r] * inv[m[r, col]]) % p
        f = m[:, col].copy()
        f[r] = 0
        hit = np.flatnonzero(f)
        if hit.size:
            m[hit] = (m[hit] - np.outer(f[hit], m[r])) % p
        pivots.append(col)
        r += 1
    return np.asarray(pivots, dtype=np.int64)


def _count_pairs_numpy(powers, targets):
    # one vectorised comparison row per x, in blocks to bound memory
    n = 0
    step = max(1, 4_000_000 // max(1, powers.size))
    for start in range(0, targets.size, step):
        block = targets[start:start + step]
        n += int(np.count_nonzero(block[:, None] == powers[None, :]))
    return n


NUMPY_KERNELS = {
    "convolve": _convolve_numpy,
    "rref": _rref_numpy,
    "count_pairs": _count_pairs_numpy,
}

if HAVE_NUMBA:
    NUMBA_KERNELS = {
        "convolve": njit(cache=True)(_convolve_loops),
        "rref": njit(cache=True)(_rref_loops),
        "count_pairs": njit(cache=True)(_count_pairs_loops),
    }
else:  # pragma: no cover
    NUMBA_KERNELS = {}

_ACTIVE = NUMBA_KERNELS if USE_NUMBA else NUMPY_KERNELS


def convolve(a: np.ndarray, b: np.ndarray, modulus: int, c: int, cyclic: bool) -> np.ndarray:
    """Product of two coefficient grids of shape (n0, n1, k).

    The first two axes are group-ring exponents, truncated (nilpotent basis) or
    cyclic (group basis); the last axis holds scalars in (Z/modulus)[t]/(t^k - t + c),
    with k == 1 meaning plain residues.
    """
    # writable C-contiguous int64 keeps numba on a single compiled signature
    a = np.require(a, np.int64, ("C", "W"))
    b = np.require(b, np.int64, ("C", "W"))
    return _ACTIVE["convolve"](a, b, int(modulus), int(c), bool(cyclic))


def rref_inplace(m: np.ndarray, p: int, inv: np.ndarray) -> np.ndarray:
    """Row-reduce ``m`` (entries in [0, p), C-contiguous int64) in place; return pivot columns."""
    if m.dtype != np.int64 or not m.flags.c_contiguous or not m.flags.writeable:
        raise ValueError("rref_inplace needs a writable C-contiguous int64 matrix")
    return _ACTIVE["rref"](m, int(p), np.require(inv, np.int64, ("C",)))


def count_pairs(powers: np.ndarray, targets: np.ndarray) -> int:
    """Number of index pairs (x, y) with ``powers[y] == targets[x]``."""
    return int(_ACTIVE["count_pairs"](np.require(powers, np.int64, ("C", "W")),
                                      np.require(targets, np.int64, ("C", "W"))))
