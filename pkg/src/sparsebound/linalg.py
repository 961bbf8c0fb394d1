"""Exact and iterative matrix norms.

The inf->1 and inf->2 operator norms are NP-hard in general but are
attained at +-1 sign vectors, so for desk-scale matrices they are computed
exactly by enumeration (with duality used to enumerate the smaller side
where available). The spectral norm uses power iteration on the Gram
operator with a deterministic start. Frobenius, column-sum and 2->inf
norms are closed-form.
"""

from __future__ import annotations

import math

import numpy as np

from . import kernels
from .errors import DimensionTooLarge, NonConvergence
from .matrix import DenseMatrix, NormKind

__all__ = [
    "ENUMERATION_CAP", "norm_inf_to_1", "norm_inf_to_2", "norm_spectral",
    "norm_frobenius", "norm_col", "norm_two_to_inf", "cut_norm_brute",
    "matrix_norm",
]

#: Default ceiling on the enumerated dimension (2^cap sign vectors).
ENUMERATION_CAP = 24


def _as_array(A) -> np.ndarray:
    if isinstance(A, DenseMatrix):
        return A.array
    return np.ascontiguousarray(A, dtype=np.float64)


def norm_inf_to_1(A, cap: int = ENUMERATION_CAP) -> float:
    """Exact inf->1 norm: max over sign vectors x of ||Ax||_1.

    Equal to the same norm of the transpose, so enumeration runs over the
    smaller dimension.
    """
    arr = _as_array(A)
    m, n = arr.shape
    if min(m, n) > cap:
        raise DimensionTooLarge(
            f"norm_inf_to_1 needs min(m, n) <= {cap}, got {m}x{n}")
    if n > m:
        arr = np.ascontiguousarray(arr.T)
    return float(kernels.inf_to_1(arr))


def norm_inf_to_2(A, cap: int = ENUMERATION_CAP) -> float:
    """Exact inf->2 norm: max over sign vectors y of ||Ay||_2.

    No transpose reduction exists for this norm, so the column count must
    be within the cap.
    """
    arr = _as_array(A)
    n = arr.shape[1]
    if n > cap:
        raise DimensionTooLarge(
            f"norm_inf_to_2 enumerates columns and needs n <= {cap}, got {n}")
    return float(kernels.inf_to_2(arr))


def norm_spectral(A, tol: float = 1e-10) -> float:
    """Largest singular value via power iteration on the Gram operator.

    Deterministic start: normalized all-ones with a fixed bump on the
    first coordinate (escapes starts orthogonal to the top singular
    space on sign-symmetric matrices). Converges when the Rayleigh
    estimate is stable to relative ``tol``.
    """
    if tol <= 0.0:
        raise ValueError("tol must be positive")
    arr = _as_array(A)
    m, n = arr.shape
    if not np.any(arr):
        return 0.0
    # iterate on the smaller Gram operator
    G = arr @ arr.T if m <= n else arr.T @ arr
    dim = G.shape[0]
    x = np.ones(dim)
    x[0] += 0.5
    x /= np.linalg.norm(x)
    max_iter = max(64, int(math.ceil(10.0 * dim * math.log(1.0 / tol))))
    lam = 0.0
    for _ in range(max_iter):
        y = G @ x
        ynorm = np.linalg.norm(y)
        if ynorm == 0.0:
            # start was exactly in the nullspace; bump a different axis
            x = np.zeros(dim)
            x[int(np.argmax(np.sum(G * G, axis=0)))] = 1.0
            continue
        lam_new = float(x @ y)  # Rayleigh quotient for sigma^2
        x = y / ynorm
        if lam_new > 0.0 and abs(lam_new - lam) <= tol * lam_new:
            return float(math.sqrt(lam_new))
        lam = lam_new
    raise NonConvergence(
        f"power iteration did not stabilize to tol={tol} in {max_iter} steps")


def norm_frobenius(A) -> float:
    arr = _as_array(A)
    return float(np.sqrt(np.sum(arr * arr)))


def norm_col(A) -> float:
    """Sum of the l2 norms of the columns."""
    arr = _as_array(A)
    return float(np.sum(np.sqrt(np.sum(arr * arr, axis=0))))


def norm_two_to_inf(A, weights=None) -> float:
    """Largest l2 norm of a row, optionally of A D^{-1}.

    ``weights`` are the positive diagonal entries d_k of D; column k is
    divided by d_k before row norms are taken.
    """
    arr = _as_array(A)
    if weights is not None:
        w = np.asarray(weights, dtype=np.float64)
        if w.shape != (arr.shape[1],):
            raise ValueError("weights length must equal the column count")
        if np.any(w <= 0.0):
            raise ValueError("weights must be strictly positive")
        arr = arr / w[None, :]
    return float(np.sqrt(np.max(np.sum(arr * arr, axis=1))))


def cut_norm_brute(A, cap: int = ENUMERATION_CAP, graph_variant: bool = False) -> float:
    """Exact cut norm by subset enumeration.

    Default (general-matrix) form maximizes |sum of an S x T submatrix|
    over all row subsets S and column subsets T. With ``graph_variant``
    the single-subset form for adjacency matrices is used instead:
    max over S of |sum over j in S, k not in S|, which requires a square
    matrix.
    """
    arr = _as_array(A)
    m, n = arr.shape
    if graph_variant:
        if m != n:
            raise ValueError("graph-variant cut norm needs a square matrix")
        if m + n > 2 * cap:
            raise DimensionTooLarge(
                f"graph cut norm needs V <= {cap}, got {m}")
        return float(kernels.cut_norm_graph(arr))
    if m + n > cap:
        raise DimensionTooLarge(
            f"cut_norm_brute needs m + n <= {cap}, got {m}+{n}")
    if n < m:
        arr = np.ascontiguousarray(arr.T)
    return float(kernels.cut_norm_pairs(arr))


def matrix_norm(A, kind: NormKind, cap: int = ENUMERATION_CAP,
                tol: float = 1e-10) -> float:
    """Dispatch on a :class:`NormKind` tag."""
    tag = kind.tag
    if tag == "inf_to_1":
        return norm_inf_to_1(A, cap=cap)
    if tag == "inf_to_2":
        return norm_inf_to_2(A, cap=cap)
    if tag == "spectral":
        return norm_spectral(A, tol=tol)
    if tag == "frobenius":
        return norm_frobenius(A)
    if tag == "col":
        return norm_col(A)
    if tag == "two_to_inf":
        return norm_two_to_inf(A)
    if tag == "weighted_two_to_inf":
        return norm_two_to_inf(A, weights=kind.weights)
    raise ValueError(f"unknown norm kind {tag!r}")
