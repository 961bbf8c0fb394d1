"""Randomized approximation schemes.

A scheme maps each entry a_jk of a target matrix to a finite discrete
distribution whose mean is a_jk (unbiasedness is what every error bound
relies on). Binding a scheme to a matrix produces an explicit per-entry
atom table; moments are then computed exactly from the atoms rather than
from closed-form expressions, and sampling is a pure function of
``(seed, trial)``.

Scheme catalog:

* ``UniformBernoulli(p)``   -- keep each entry with probability p, rescaled by 1/p.
* ``QuantizeAM(b)``         -- round each entry to +-b, biased by the entry.
* ``NonuniformAM(p, b)``    -- keep probabilities proportional to (a_jk/b)^2,
  with the small-entry floor term, clamped to (0, 1].
* ``ModifiedNonuniform(p, b)`` -- keep probability p a^2 / (p a^2 + b^2);
  every nonzero entry then has variance exactly b^2/p.
* ``QuantizeSparsifyAHK(delta)`` -- entries below delta/sqrt(n) are rounded
  to +-delta/sqrt(n) or dropped; larger entries pass through unchanged.
* ``Custom(table)``         -- explicit per-entry distributions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ParameterOutOfRange
from .matrix import DenseMatrix
from .rng import DOMAIN_SAMPLE, philox

__all__ = [
    "EntryDistribution", "UniformBernoulli", "QuantizeAM", "NonuniformAM",
    "ModifiedNonuniform", "QuantizeSparsifyAHK", "Custom", "MomentProfile",
    "BoundScheme", "bind", "moments", "sample", "expected_nnz", "PAPER_SCHEME_KINDS",
]

_PROB_TOL = 1e-12


@dataclass(frozen=True)
class EntryDistribution:
    """Finite discrete distribution of a single matrix entry."""

    atoms: tuple[tuple[float, float], ...]

    def __post_init__(self):
        if not self.atoms:
            raise ValueError("distribution needs at least one atom")
        total = 0.0
        for value, prob in self.atoms:
            if not (0.0 < prob <= 1.0):
                raise ValueError(f"atom probability {prob} outside (0, 1]")
            if not math.isfinite(value):
                raise ValueError("atom values must be finite")
            total += prob
        if abs(total - 1.0) > _PROB_TOL:
            raise ValueError(f"atom probabilities sum to {total}, not 1")

    def mean(self) -> float:
        return sum(v * p for v, p in self.atoms)

    def variance(self) -> float:
        return self.central_moment(2)

    def central_moment(self, order: int) -> float:
        mu = self.mean()
        return sum(p * (v - mu) ** order for v, p in self.atoms)

    def sup_abs(self) -> float:
        return max(abs(v) for v, _ in self.atoms)

    def prob_nonzero(self) -> float:
        return sum(p for v, p in self.atoms if v != 0.0)

    @staticmethod
    def point_mass(value: float) -> "EntryDistribution":
        return EntryDistribution(((value, 1.0),))


def _require(cond: bool, message: str):
    if not cond:
        raise ParameterOutOfRange(message)


@dataclass(frozen=True)
class UniformBernoulli:
    """X = (a/p) Bern(p); zero entries stay point masses at zero."""

    p: float

    name = "uniform_bernoulli"

    def __post_init__(self):
        _require(0.0 < self.p <= 1.0, f"UniformBernoulli needs 0 < p <= 1, got p={self.p}")

    def entry_atoms(self, a: float, A: DenseMatrix):
        if a == 0.0 or self.p == 1.0:
            return [(a, 1.0)]
        return [(a / self.p, self.p), (0.0, 1.0 - self.p)]


@dataclass(frozen=True)
class QuantizeAM:
    """X = +-b with probability 1/2 +- a/(2b). Densifies zero entries."""

    b: float

    name = "quantize_am"

    def __post_init__(self):
        _require(self.b > 0.0, f"QuantizeAM needs b > 0, got b={self.b}")

    def entry_atoms(self, a: float, A: DenseMatrix):
        _require(self.b >= abs(a),
                 f"QuantizeAM needs b >= max|a_jk|; b={self.b} < |{a}|")
        p_plus = 0.5 + a / (2.0 * self.b)
        atoms = []
        if p_plus > 0.0:
            atoms.append((self.b, p_plus))
        if p_plus < 1.0:
            atoms.append((-self.b, 1.0 - p_plus))
        return atoms


@dataclass(frozen=True)
class NonuniformAM:
    """Keep probability max{p (a/b)^2, sqrt(p (a/b)^2 (8 ln n)^4 / n)}, clamped to 1.

    ``n`` defaults to the bound matrix's column count; if given it must match.
    """

    p: float
    b: float
    n: int | None = None

    name = "nonuniform_am"

    def __post_init__(self):
        _require(0.0 < self.p < 1.0, f"NonuniformAM needs 0 < p < 1, got p={self.p}")
        _require(self.b > 0.0, f"NonuniformAM needs b > 0, got b={self.b}")

    def entry_atoms(self, a: float, A: DenseMatrix):
        _require(self.b >= abs(a),
                 f"NonuniformAM needs b >= max|a_jk|; b={self.b} < |{a}|")
        if self.n is not None:
            _require(self.n == A.cols,
                     f"NonuniformAM bound to {A.cols} columns but n={self.n}")
        if a == 0.0:
            return [(0.0, 1.0)]
        n = A.cols
        base = self.p * (a / self.b) ** 2
        floor = math.sqrt(base * (8.0 * math.log(n)) ** 4 / n)
        p_jk = min(1.0, max(base, floor))
        if p_jk >= 1.0:
            return [(a, 1.0)]
        return [(a / p_jk, p_jk), (0.0, 1.0 - p_jk)]


@dataclass(frozen=True)
class ModifiedNonuniform:
    """Keep probability p a^2 / (p a^2 + b^2): variance b^2/p at every kept entry."""

    p: float
    b: float

    name = "modified_nonuniform"

    def __post_init__(self):
        _require(0.0 < self.p < 1.0,
                 f"ModifiedNonuniform needs 0 < p < 1, got p={self.p}")
        _require(self.b > 0.0, f"ModifiedNonuniform needs b > 0, got b={self.b}")

    def entry_atoms(self, a: float, A: DenseMatrix):
        _require(self.b >= abs(a),
                 f"ModifiedNonuniform needs b >= max|a_jk|; b={self.b} < |{a}|")
        if a == 0.0:
            return [(0.0, 1.0)]
        p_jk = self.p * a * a / (self.p * a * a + self.b * self.b)
        return [(a / p_jk, p_jk), (0.0, 1.0 - p_jk)]


@dataclass(frozen=True)
class QuantizeSparsifyAHK:
    """Entries below delta/sqrt(n) quantize to +-delta/sqrt(n) or drop; the
    rest pass through unchanged."""

    delta: float
    n: int | None = None

    name = "quantize_sparsify_ahk"

    def __post_init__(self):
        _require(self.delta > 0.0,
                 f"QuantizeSparsifyAHK needs delta > 0, got delta={self.delta}")

    def entry_atoms(self, a: float, A: DenseMatrix):
        if self.n is not None:
            _require(self.n == A.cols,
                     f"QuantizeSparsifyAHK bound to {A.cols} columns but n={self.n}")
        threshold = self.delta / math.sqrt(A.cols)
        if abs(a) >= threshold:
            return [(a, 1.0)]
        if a == 0.0:
            return [(0.0, 1.0)]
        keep = abs(a) / threshold
        return [(math.copysign(threshold, a), keep), (0.0, 1.0 - keep)]


@dataclass(frozen=True)
class Custom:
    """Explicit per-entry distribution table (row-major nested tuples)."""

    table: tuple[tuple[EntryDistribution, ...], ...]

    name = "custom"

    def entry_atoms(self, a: float, A: DenseMatrix):
        raise NotImplementedError  # bound directly from the table

    @staticmethod
    def from_lists(rows) -> "Custom":
        return Custom(tuple(tuple(r) for r in rows))


PAPER_SCHEME_KINDS = (UniformBernoulli, QuantizeAM, NonuniformAM,
                      ModifiedNonuniform, QuantizeSparsifyAHK)


class MomentProfile:
    """Exact per-entry variance and fourth central moment, plus the uniform
    almost-sure bound D (|X_jk| <= D/2)."""

    def __init__(self, variance: np.ndarray, fourth_central: np.ndarray,
                 sup_bound: float):
        variance = np.asarray(variance, dtype=np.float64)
        fourth = np.asarray(fourth_central, dtype=np.float64)
        if variance.shape != fourth.shape or variance.ndim != 2:
            raise ValueError("variance and fourth moment tables must share a 2-D shape")
        if np.any(variance < -1e-15) or np.any(fourth < -1e-15):
            raise ValueError("moments must be nonnegative")
        # Jensen: E(Y^4) >= (E Y^2)^2 entrywise
        if np.any(fourth + 1e-9 * np.maximum(1.0, variance ** 2) < variance ** 2):
            raise ValueError("fourth central moment below variance squared")
        self.variance = np.maximum(variance, 0.0)
        self.fourth_central = np.maximum(fourth, 0.0)
        self.sup_bound = float(sup_bound)
        self.variance.flags.writeable = False
        self.fourth_central.flags.writeable = False

    @property
    def shape(self):
        return self.variance.shape

    @property
    def row_var_sums(self) -> np.ndarray:
        return self.variance.sum(axis=1)

    @property
    def col_var_sums(self) -> np.ndarray:
        return self.variance.sum(axis=0)

    @property
    def total_variance(self) -> float:
        return float(self.variance.sum())

    @property
    def total_fourth(self) -> float:
        return float(self.fourth_central.sum())


class BoundScheme:
    """A scheme bound to a matrix: explicit atom tables, ready to sample.

    ``values``/``probs`` are (m, n, K) arrays padded on the right with
    zero-probability copies of the last real atom.
    """

    def __init__(self, scheme, target: DenseMatrix, values: np.ndarray,
                 probs: np.ndarray):
        self.scheme = scheme
        self.target = target
        self.values = values
        self.probs = probs
        self._cum = np.cumsum(probs, axis=2)
        for arr in (self.values, self.probs, self._cum):
            arr.flags.writeable = False

    @property
    def shape(self):
        return self.target.shape

    def distribution(self, j: int, k: int) -> EntryDistribution:
        atoms = []
        for v, p in zip(self.values[j, k], self.probs[j, k]):
            if p > 0.0:
                atoms.append((float(v), float(p)))
        return EntryDistribution(tuple(atoms))

    def sample(self, seed: int, trial: int) -> DenseMatrix:
        m, n = self.target.shape
        u = philox(seed, DOMAIN_SAMPLE, trial).random((m, n))
        idx = np.sum(u[:, :, None] >= self._cum, axis=2)
        idx = np.minimum(idx, self.values.shape[2] - 1)
        x = np.take_along_axis(self.values, idx[:, :, None], axis=2)[:, :, 0]
        return DenseMatrix(x)

    def moments(self) -> MomentProfile:
        a = self.target.array[:, :, None]
        centered = self.values - a
        variance = np.sum(self.probs * centered ** 2, axis=2)
        fourth = np.sum(self.probs * centered ** 4, axis=2)
        sup = float(np.max(np.abs(self.values)))
        return MomentProfile(variance, fourth, 2.0 * sup)

    def expected_nnz(self) -> float:
        nz = self.values != 0.0
        return float(np.sum(self.probs * nz))


def bind(scheme, A: DenseMatrix) -> BoundScheme:
    """Attach a scheme to a target matrix, validating parameters and
    unbiasedness entry by entry."""
    m, n = A.shape
    arr = A.array
    if isinstance(scheme, Custom):
        if len(scheme.table) != m or any(len(r) != n for r in scheme.table):
            raise ParameterOutOfRange(
                f"Custom table shape mismatch: target is {m}x{n}")
        atom_lists = [scheme.table[j][k].atoms for j in range(m) for k in range(n)]
    else:
        atom_lists = [scheme.entry_atoms(float(arr[j, k]), A)
                      for j in range(m) for k in range(n)]

    kmax = max(len(atoms) for atoms in atom_lists)
    values = np.zeros((m, n, kmax))
    probs = np.zeros((m, n, kmax))
    for e, atoms in enumerate(atom_lists):
        j, k = divmod(e, n)
        a = arr[j, k]
        mean = 0.0
        total = 0.0
        for i, (v, p) in enumerate(atoms):
            if not 0.0 < p <= 1.0:
                raise ParameterOutOfRange(
                    f"entry ({j},{k}): atom probability {p} outside (0, 1]")
            values[j, k, i] = v
            probs[j, k, i] = p
            mean += v * p
            total += p
        # pad with zero-probability copies of the last atom so a stray
        # inverse-CDF index can never select a fabricated value
        for i in range(len(atoms), kmax):
            values[j, k, i] = atoms[-1][0]
        if abs(total - 1.0) > _PROB_TOL:
            raise ParameterOutOfRange(
                f"entry ({j},{k}): atom probabilities sum to {total}")
        if abs(mean - a) > _PROB_TOL * max(1.0, abs(a)):
            raise ParameterOutOfRange(
                f"entry ({j},{k}): distribution mean {mean} != target {a}")
    return BoundScheme(scheme, A, values, probs)


def moments(bound_scheme: BoundScheme) -> MomentProfile:
    return bound_scheme.moments()


def sample(bound_scheme: BoundScheme, seed: int, trial: int) -> DenseMatrix:
    return bound_scheme.sample(seed, trial)


def expected_nnz(bound_scheme: BoundScheme) -> float:
    return bound_scheme.expected_nnz()
