"""Dense matrices, sign vectors, and norm identifiers.

A :class:`DenseMatrix` is an immutable real m-by-n matrix; all norm
computations in :mod:`sparsebound.linalg` operate on it. Entries must be
finite -- NaN/Inf are rejected at construction so downstream kernels never
have to re-check.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

__all__ = ["DenseMatrix", "SignVector", "NormKind", "INF_TO_1", "INF_TO_2",
           "SPECTRAL", "FROBENIUS", "COL_NORM", "TWO_TO_INF"]


class DenseMatrix:
    """Immutable real matrix with validated, finite entries."""

    __slots__ = ("_arr",)

    def __init__(self, entries):
        arr = np.array(entries, dtype=np.float64, order="C")
        if arr.ndim != 2:
            raise ValueError(f"expected a 2-D array, got ndim={arr.ndim}")
        if arr.shape[0] < 1 or arr.shape[1] < 1:
            raise ValueError(f"matrix dimensions must be >= 1, got {arr.shape}")
        if not np.all(np.isfinite(arr)):
            raise ValueError("matrix entries must be finite")
        arr.flags.writeable = False
        self._arr = arr

    @property
    def rows(self) -> int:
        return self._arr.shape[0]

    @property
    def cols(self) -> int:
        return self._arr.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self._arr.shape

    @property
    def array(self) -> np.ndarray:
        """Read-only view of the underlying 2-D array."""
        return self._arr

    @property
    def entries(self) -> np.ndarray:
        """Entries in row-major order (flat, read-only)."""
        return self._arr.reshape(-1)

    def transpose(self) -> "DenseMatrix":
        return DenseMatrix(self._arr.T)

    def max_abs_entry(self) -> float:
        return float(np.max(np.abs(self._arr)))

    @staticmethod
    def zeros(m: int, n: int) -> "DenseMatrix":
        return DenseMatrix(np.zeros((m, n)))

    @staticmethod
    def ones(m: int, n: int) -> "DenseMatrix":
        return DenseMatrix(np.ones((m, n)))

    @staticmethod
    def identity(n: int) -> "DenseMatrix":
        return DenseMatrix(np.eye(n))

    def __eq__(self, other):
        if not isinstance(other, DenseMatrix):
            return NotImplemented
        return self.shape == other.shape and bool(np.all(self._arr == other._arr))

    def __hash__(self):
        return hash((self.shape, self._arr.tobytes()))

    def __repr__(self):
        return f"DenseMatrix({self.rows}x{self.cols})"


class SignVector:
    """Vector whose components are exactly +1 or -1."""

    __slots__ = ("_signs",)

    def __init__(self, signs):
        arr = np.array(signs, dtype=np.float64)
        if arr.ndim != 1 or arr.size < 1:
            raise ValueError("sign vector must be 1-D and nonempty")
        if not np.all(np.abs(arr) == 1.0):
            raise ValueError("every component must be +1 or -1")
        arr.flags.writeable = False
        self._signs = arr

    @property
    def dims(self) -> int:
        return self._signs.size

    @property
    def signs(self) -> np.ndarray:
        return self._signs

    @staticmethod
    def from_bits(bits: int, dims: int) -> "SignVector":
        """Bit i of ``bits`` set means component i is -1."""
        s = np.ones(dims)
        for i in range(dims):
            if (bits >> i) & 1:
                s[i] = -1.0
        return SignVector(s)

    def __repr__(self):
        return f"SignVector({self._signs.astype(int).tolist()})"


@dataclass(frozen=True)
class NormKind:
    """Identifier for one of the norms the library computes.

    ``weights`` is only meaningful for the weighted 2->inf norm: strictly
    positive diagonal entries d_k whose squares sum to one.
    """

    tag: str
    weights: tuple[float, ...] | None = field(default=None)

    _TAGS = ("inf_to_1", "inf_to_2", "spectral", "frobenius", "col",
             "two_to_inf", "weighted_two_to_inf")

    def __post_init__(self):
        if self.tag not in self._TAGS:
            raise ValueError(f"unknown norm tag {self.tag!r}")
        if self.tag == "weighted_two_to_inf":
            if self.weights is None:
                raise ValueError("weighted_two_to_inf requires weights")
            w = np.asarray(self.weights, dtype=np.float64)
            if np.any(w <= 0.0):
                raise ValueError("weights must be strictly positive")
            if abs(float(np.sum(w * w)) - 1.0) > 1e-10:
                raise ValueError("squared weights must sum to 1")
        elif self.weights is not None:
            raise ValueError(f"norm {self.tag!r} takes no weights")

    def __str__(self):
        return self.tag


INF_TO_1 = NormKind("inf_to_1")
INF_TO_2 = NormKind("inf_to_2")
SPECTRAL = NormKind("spectral")
FROBENIUS = NormKind("frobenius")
COL_NORM = NormKind("col")
TWO_TO_INF = NormKind("two_to_inf")
