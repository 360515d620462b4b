"""Hot kernels: batched Gaussian elimination over F_q and mod-p ranks.

Matrix canonicalization dominates the runtime of basis construction (orbit
tables, cover enumeration and intersection tables all reduce batches of tiny
matrices mod q), so these loops are compiled with numba by default.  Setting
``QJORDAN_BACKEND=numpy`` selects the same source functions uncompiled; both
paths share one implementation, and ``benchmarks/bench_kernels.py`` compares
them.
"""

from __future__ import annotations

import os

import numpy as np

_REQUESTED = os.environ.get("QJORDAN_BACKEND", "numba").strip().lower()
if _REQUESTED not in ("numba", "numpy"):
    raise ValueError(
        f"QJORDAN_BACKEND must be 'numba' or 'numpy', got {_REQUESTED!r}"
    )

_ACTIVE = "numpy"
if _REQUESTED == "numba":
    try:
        from numba import njit as _njit

        _ACTIVE = "numba"
    except ImportError:  # pragma: no cover - numba is a declared dependency
        _ACTIVE = "numpy"


def active_backend() -> str:
    """The backend actually in use ('numba' or 'numpy')."""
    return _ACTIVE


def _jit(fn):
    if _ACTIVE == "numba":
        return _njit(cache=True)(fn)
    fn.py_func = fn  # mirror the numba dispatcher attribute for tests
    return fn


def inverse_table(q: int) -> np.ndarray:
    """inv[x] = multiplicative inverse of x mod q (prime q); inv[0] = 0."""
    inv = np.zeros(q, dtype=np.int64)
    for x in range(1, q):
        inv[x] = pow(x, q - 2, q)
    return inv


@_jit
def rref_batch(mats: np.ndarray, q: int, inv: np.ndarray) -> np.ndarray:
    """Row-reduce every matrix of the (B, r, c) int64 batch mod q, in place.

    Pivots are found scanning rows top-down within columns left to right,
    so the result is the unique reduced row echelon form.  Returns the rank
    of each matrix.
    """
    nb, nr, nc = mats.shape
    ranks = np.empty(nb, dtype=np.int64)
    for b in range(nb):
        m = mats[b]
        row = 0
        for col in range(nc):
            piv = -1
            for i in range(row, nr):
                if m[i, col] != 0:
                    piv = i
                    break
            if piv < 0:
                continue
            if piv != row:
                for j in range(nc):
                    t = m[row, j]
                    m[row, j] = m[piv, j]
                    m[piv, j] = t
            a = inv[m[row, col]]
            if a != 1:
                for j in range(col, nc):
                    m[row, j] = (m[row, j] * a) % q
            for i in range(nr):
                if i != row and m[i, col] != 0:
                    f = m[i, col]
                    for j in range(col, nc):
                        m[i, j] = (m[i, j] - f * m[row, j]) % q
            row += 1
            if row == nr:
                break
        ranks[b] = row
    return ranks


@_jit
def rank_batch(mats: np.ndarray, q: int, inv: np.ndarray) -> np.ndarray:
    """Rank of every matrix of the (B, r, c) int64 batch mod q.

    Forward elimination only; the batch is clobbered.
    """
    nb, nr, nc = mats.shape
    ranks = np.empty(nb, dtype=np.int64)
    for b in range(nb):
        m = mats[b]
        row = 0
        for col in range(nc):
            piv = -1
            for i in range(row, nr):
                if m[i, col] != 0:
                    piv = i
                    break
            if piv < 0:
                continue
            if piv != row:
                for j in range(col, nc):
                    t = m[row, j]
                    m[row, j] = m[piv, j]
                    m[piv, j] = t
            a = inv[m[row, col]]
            for i in range(row + 1, nr):
                if m[i, col] != 0:
                    f = (m[i, col] * a) % q
                    for j in range(col, nc):
                        m[i, j] = (m[i, j] - f * m[row, j]) % q
            row += 1
            if row == nr:
                break
        ranks[b] = row
    return ranks


@_jit
def modp_rank(mat: np.ndarray, p: int) -> int:
    """Rank of an int64 matrix over Z/p for a prime p < 2^31.

    Entries must already be reduced mod p; products of reduced entries fit
    in int64.  The matrix is clobbered.
    """
    nr, nc = mat.shape
    row = 0
    for col in range(nc):
        piv = -1
        for i in range(row, nr):
            if mat[i, col] != 0:
                piv = i
                break
        if piv < 0:
            continue
        if piv != row:
            for j in range(col, nc):
                t = mat[row, j]
                mat[row, j] = mat[piv, j]
                mat[piv, j] = t
        # modular inverse by Fermat, square-and-multiply
        a = mat[row, col]
        inv = 1
        e = p - 2
        base = a % p
        while e > 0:
            if e & 1:
                inv = (inv * base) % p
            base = (base * base) % p
            e >>= 1
        for i in range(row + 1, nr):
            if mat[i, col] != 0:
                f = (mat[i, col] * inv) % p
                for j in range(col, nc):
                    mat[i, j] = (mat[i, j] - f * mat[row, j]) % p
        row += 1
        if row == nr:
            break
    return row
