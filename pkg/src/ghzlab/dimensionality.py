"""Overlaps between the X and Y eigenbases and the irreducibility certificate.

If X and Y were simultaneously block-diagonal, some ``|n>_x`` and ``|m>_y``
would be orthogonal. Strictly positive overlaps rule that out, and a
one-dimensional commutant of ``{X, Y}`` confirms the pair is irreducible.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ._limits import ParameterError, check_dimension, check_parties
from .linalg import commutant_dimension
from .observables import build_qft, build_x, build_y, eigenvector_y

__all__ = [
    "OverlapMatrix",
    "overlap_matrix",
    "closed_form_overlap",
    "general_closed_form_overlap",
    "closed_form_matrix",
    "GenuinenessReport",
    "genuineness_report",
    "COMPLEMENTARITY_TOL",
]

COMPLEMENTARITY_TOL = 1e-10


@dataclass(frozen=True, eq=False)
class OverlapMatrix:
    """``values[n, m] = |<n|_x |m>_y|^2``."""

    d: int
    N: int
    values: np.ndarray

    def row_sums(self) -> np.ndarray:
        return self.values.sum(axis=1)


def overlap_matrix(d: int, N: int = 3) -> OverlapMatrix:
    check_dimension(d)
    check_parties(N)
    bx = build_qft(d)
    by = np.column_stack([eigenvector_y(d, m, N) for m in range(d)])
    values = np.abs(bx.conj().T @ by) ** 2
    return OverlapMatrix(d, N, values)


def _check_indices(d: int, n: int, m: int) -> None:
    if not (0 <= n < d and 0 <= m < d):
        raise ParameterError(f"indices (n={n}, m={m}) outside [0, {d})")


def closed_form_overlap(d: int, n: int, m: int) -> float:
    """``1 / (d^2 sin^2(pi (m - n + 1/2) / d))``, valid for three parties."""
    check_dimension(d)
    _check_indices(d, n, m)
    return 1.0 / (d * d * math.sin(math.pi * (m - n + 0.5) / d) ** 2)


def general_closed_form_overlap(d: int, n: int, m: int, N: int) -> float:
    """``sin^2(pi c) / (d^2 sin^2(pi (m - n + c) / d))`` with ``c = 1/(N-1)``.

    Geometric-series evaluation of the inner product; reduces to
    :func:`closed_form_overlap` at N = 3. Checked against
    :func:`overlap_matrix` in the test suite, not assumed.
    """
    check_dimension(d)
    check_parties(N)
    _check_indices(d, n, m)
    c = 1.0 / (N - 1)
    return math.sin(math.pi * c) ** 2 / (d * d * math.sin(math.pi * (m - n + c) / d) ** 2)


def closed_form_matrix(d: int, N: int = 3) -> np.ndarray:
    f = closed_form_overlap if N == 3 else (lambda d_, n, m: general_closed_form_overlap(d_, n, m, N))
    return np.array([[f(d, n, m) for m in range(d)] for n in range(d)])


@dataclass(frozen=True)
class GenuinenessReport:
    d: int
    N: int
    min_overlap: float
    max_overlap: float
    closed_form_deviation: float
    row_sum_deviation: float
    commutant_dim: int
    complementary: bool

    @property
    def overlaps_positive(self) -> bool:
        return self.min_overlap > 0.0

    @property
    def irreducible(self) -> bool:
        return self.commutant_dim == 1

    @property
    def passed(self) -> bool:
        return self.overlaps_positive and self.irreducible and self.closed_form_deviation < 1e-10


def genuineness_report(d: int, N: int = 3) -> GenuinenessReport:
    """Positivity, closed-form agreement, commutant dimension and complementarity."""
    check_dimension(d)
    if d > 16:
        raise ParameterError(f"genuineness analysis limited to d <= 16, got {d}")
    ov = overlap_matrix(d, N)
    deviation = float(np.max(np.abs(ov.values - closed_form_matrix(d, N))))
    return GenuinenessReport(
        d=d,
        N=N,
        min_overlap=float(ov.values.min()),
        max_overlap=float(ov.values.max()),
        closed_form_deviation=deviation,
        row_sum_deviation=float(np.max(np.abs(ov.row_sums() - 1.0))),
        commutant_dim=commutant_dimension([build_x(d), build_y(d, N)]),
        complementary=bool(np.all(np.abs(ov.values - 1.0 / d) < COMPLEMENTARITY_TOL)),
    )
