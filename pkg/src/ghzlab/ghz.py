"""Generalized GHZ states, the concurrency check, and joint measurement statistics."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

import numpy as np

from ._limits import ConstructionError, ParameterError, check_amplitudes, check_dimension, check_parties
from .linalg import apply, commutator_norm, eigen_residual
from .observables import ObservableSet, _validate_settings, build_qft, eigenvector_y

__all__ = [
    "GhzSpec",
    "JointDistribution",
    "ConcurrencyResult",
    "build_ghz",
    "verify_concurrency",
    "measurement_basis",
    "joint_distribution",
    "sample_outcomes",
    "expected_residue",
    "INCOMPATIBILITY_FLOOR",
    "CLAMP_TOL",
]

INCOMPATIBILITY_FLOOR = 1e-6
CLAMP_TOL = 1e-14


@dataclass(frozen=True)
class GhzSpec:
    d: int
    N: int

    def __post_init__(self) -> None:
        check_dimension(self.d)
        check_parties(self.N)
        check_amplitudes(self.d, self.N)

    @property
    def dim(self) -> int:
        return self.d**self.N


def build_ghz(spec: GhzSpec) -> np.ndarray:
    """``(1/sqrt(d)) sum_n |n, n, ..., n>``."""
    d, N = spec.d, spec.N
    psi = np.zeros(spec.dim, dtype=complex)
    # index of |n,...,n> is n * (d^N - 1)/(d - 1)
    stride = (d**N - 1) // (d - 1)
    psi[np.arange(d) * stride] = 1.0 / math.sqrt(d)
    return psi


@dataclass
class ConcurrencyResult:
    labels: list[str]
    eigen_residuals: list[float]
    commutator_norms: dict[tuple[int, int], float]
    tol: float
    passed: bool = field(init=False)

    def __post_init__(self) -> None:
        self.passed = all(r < self.tol for r in self.eigen_residuals) and all(
            c > INCOMPATIBILITY_FLOOR for c in self.commutator_norms.values()
        )


def verify_concurrency(obs: ObservableSet, state: np.ndarray, tol: float = 1e-10) -> ConcurrencyResult:
    """Common-eigenstate residuals for every ``v_i`` and pairwise commutator norms.

    Passes iff every residual is below ``tol`` and every pair fails to
    commute by more than ``INCOMPATIBILITY_FLOOR``.
    """
    residuals = [
        eigen_residual(op, state, lam) for op, lam in zip(obs.observables, obs.expected_eigenvalues)
    ]
    comms = {
        (i, j): commutator_norm(obs.observables[i], obs.observables[j])
        for i, j in itertools.combinations(range(len(obs)), 2)
    }
    return ConcurrencyResult(list(obs.setting_labels), residuals, comms, tol)


def expected_residue(settings: str, d: int) -> int | None:
    """Outcome-sum residue certain for GHZ under ``settings``, when one is predicted.

    All-X gives 0; exactly one X gives ``-1 mod d``; other patterns carry no
    certain prediction and return ``None``.
    """
    settings = settings.upper()
    n_x = settings.count("X")
    if n_x == len(settings):
        return 0
    if n_x == 1:
        return (-1) % d
    return None


@dataclass(frozen=True, eq=False)
class JointDistribution:
    """Born-rule probabilities indexed by outcome exponents ``(n_1, ..., n_N)``."""

    d: int
    settings: str
    probs: np.ndarray  # shape (d,) * N

    @property
    def N(self) -> int:
        return len(self.settings)

    def __getitem__(self, outcome: tuple[int, ...]) -> float:
        return float(self.probs[tuple(outcome)])

    @property
    def probabilities(self) -> dict[tuple[int, ...], float]:
        """Every outcome in ``Z_d^N`` with its probability."""
        return {
            tuple(int(v) for v in idx): float(p) for idx, p in np.ndenumerate(self.probs)
        }

    def support(self, atol: float = 1e-12) -> list[tuple[int, ...]]:
        return [tuple(int(v) for v in row) for row in np.argwhere(self.probs > atol)]

    def outcome_sums(self) -> np.ndarray:
        """``sum_alpha n_alpha mod d`` for every cell of ``probs``."""
        grids = np.indices(self.probs.shape)
        return grids.sum(axis=0) % self.d

    def mass_off_residue(self, residue: int) -> float:
        return float(self.probs[self.outcome_sums() != residue % self.d].sum())


def measurement_basis(d: int, setting: str, N: int) -> np.ndarray:
    """Columns are the eigenvectors ``|n>_x`` or ``|n>_y``."""
    if setting == "X":
        return build_qft(d)
    return np.column_stack([eigenvector_y(d, n, N) for n in range(d)])


def joint_distribution(spec: GhzSpec, settings: str) -> JointDistribution:
    settings = _validate_settings(settings, spec.N)
    d, N = spec.d, spec.N
    amps = build_ghz(spec).reshape((d,) * N)
    bases = {s: measurement_basis(d, s, N).conj().T for s in set(settings)}
    for axis, s in enumerate(settings):
        amps = np.moveaxis(np.tensordot(bases[s], amps, axes=([1], [axis])), 0, axis)
    probs = np.abs(amps) ** 2
    return JointDistribution(d, settings, _clamp_and_normalize(probs))


def _clamp_and_normalize(probs: np.ndarray) -> np.ndarray:
    low = probs.min()
    if low < -CLAMP_TOL:
        raise ConstructionError(f"probability {low:.3e} below clamp threshold {-CLAMP_TOL}")
    probs = np.where(probs < 0, 0.0, probs)
    total = probs.sum()
    if abs(total - 1.0) > 1e-10:
        raise ConstructionError(f"joint distribution sums to {total!r}")
    return probs / total


def sample_outcomes(dist: JointDistribution, shots: int, seed: int) -> dict[tuple[int, ...], int]:
    """Multinomial draw of ``shots`` outcomes; reproducible for a fixed seed."""
    if shots < 0:
        raise ParameterError(f"shots must be non-negative, got {shots}")
    if shots == 0:
        return {}
    rng = np.random.default_rng(seed)
    flat = dist.probs.reshape(-1)
    counts = rng.multinomial(shots, flat / flat.sum())
    shape = dist.probs.shape
    return {
        tuple(int(v) for v in np.unravel_index(k, shape)): int(counts[k])
        for k in np.flatnonzero(counts)
    }


def order_independence_residual(obs: ObservableSet, state: np.ndarray, i: int, j: int) -> float:
    """``||v_j v_i psi - lam_i lam_j psi||``."""
    lam = obs.expected_eigenvalues[i] * obs.expected_eigenvalues[j]
    out = apply(obs.observables[j], apply(obs.observables[i], state))
    return float(np.linalg.norm(out - lam * state))
