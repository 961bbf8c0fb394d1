"""Pure-numpy enumeration kernels.

Fallback implementations of the brute-force kernels, selected at import
time by :mod:`sparsebound.kernels` when the compiled extension is absent
(or disabled via ``SPARSEBOUND_PURE_PYTHON=1``). Enumeration is chunked so
memory stays bounded for dimensions near the cap.

All kernels take C-contiguous float64 2-D arrays; caller is responsible
for orientation (enumerated side) and cap checks.
"""

import numpy as np

BACKEND = "python"

_CHUNK_BITS = 14  # sign/mask chunks of at most 2**14 vectors


def _sign_chunk(start, stop, nbits):
    """Columns are sign vectors for codes start..stop-1 (bit set -> -1)."""
    codes = np.arange(start, stop, dtype=np.uint64)
    bits = (codes[None, :] >> np.arange(nbits, dtype=np.uint64)[:, None]) & np.uint64(1)
    return 1.0 - 2.0 * bits.astype(np.float64)


def _mask_chunk(start, stop, nbits):
    """Rows are 0/1 membership vectors for codes start..stop-1."""
    codes = np.arange(start, stop, dtype=np.uint64)
    bits = (codes[:, None] >> np.arange(nbits, dtype=np.uint64)[None, :]) & np.uint64(1)
    return bits.astype(np.float64)


def inf_to_1(B):
    """max over x in {+-1}^n of ||Bx||_1, n = B.shape[1]."""
    m, n = B.shape
    # x and -x give the same value: pin the last coordinate to +1
    last = B[:, n - 1]
    best = -np.inf
    total = 1 << (n - 1)
    step = 1 << _CHUNK_BITS
    for start in range(0, total, step):
        stop = min(start + step, total)
        S = _sign_chunk(start, stop, n - 1) if n > 1 else np.zeros((0, stop - start))
        Y = (B[:, : n - 1] @ S) + last[:, None]
        vals = np.sum(np.abs(Y), axis=0)
        best = max(best, float(vals.max()))
    return best


def inf_to_2(B):
    """max over x in {+-1}^n of ||Bx||_2, n = B.shape[1]."""
    m, n = B.shape
    last = B[:, n - 1]
    best = -np.inf
    total = 1 << (n - 1)
    step = 1 << _CHUNK_BITS
    for start in range(0, total, step):
        stop = min(start + step, total)
        S = _sign_chunk(start, stop, n - 1) if n > 1 else np.zeros((0, stop - start))
        Y = (B[:, : n - 1] @ S) + last[:, None]
        vals = np.sum(Y * Y, axis=0)
        best = max(best, float(vals.max()))
    return float(np.sqrt(best))


def cut_norm_pairs(B):
    """max over S x T of |sum of the S x T submatrix|, S over rows of B."""
    m, n = B.shape
    best = 0.0
    total = 1 << m
    step = 1 << _CHUNK_BITS
    for start in range(0, total, step):
        stop = min(start + step, total)
        U = _mask_chunk(start, stop, m)
        Ssum = U @ B  # row-subset column sums
        pos = np.sum(np.maximum(Ssum, 0.0), axis=1)
        neg = np.sum(np.maximum(-Ssum, 0.0), axis=1)
        best = max(best, float(pos.max()), float(neg.max()))
    return best


def cut_norm_graph(B):
    """max over S of |sum_{j in S, k not in S} B_jk|, B square."""
    v = B.shape[0]
    best = 0.0
    total = 1 << v
    step = 1 << _CHUNK_BITS
    for start in range(0, total, step):
        stop = min(start + step, total)
        U = _mask_chunk(start, stop, v)
        P = U @ B
        vals = np.abs(np.sum(P * (1.0 - U), axis=1))
        best = max(best, float(vals.max()))
    return best
