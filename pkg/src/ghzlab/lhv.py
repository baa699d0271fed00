"""Local-realism constraints over Z_d and their satisfiability.

Writing the predetermined values as ``X_alpha = omega**x_alpha`` and
``Y_alpha = omega**y_alpha``, each certain prediction for ``v_i`` (i >= 1)
becomes ``x_i + sum_{alpha != i} y_alpha = -1 (mod d)`` and the prediction for
``v_0`` becomes ``sum_alpha x_alpha = 0 (mod d)``.

:func:`exhaustive_search` enumerates the y-space only: each realism equation
contains exactly one x variable, so y fixes x. :func:`gcd_criterion` decides
the same question from the summed condition ``(N-1) S + N = 0 (mod d)``.
"""

from __future__ import annotations

import enum
import itertools
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Optional

import numpy as np

from ._limits import ConstructionError, DimensionOverflowError, ParameterError, max_search_points
from .phase_arith import ModInt, mod_solve_linear

__all__ = [
    "Satisfiability",
    "Equation",
    "ConstraintSystem",
    "LhvAssignment",
    "LhvVerdict",
    "realism_system",
    "build_constraints",
    "verify_assignment",
    "exhaustive_search",
    "brute_force_search",
    "gcd_criterion",
    "unsat_certificate",
    "decide",
]


class Satisfiability(str, enum.Enum):
    SAT = "SAT"
    UNSAT = "UNSAT"


@dataclass(frozen=True)
class Equation:
    """``x_coeffs . x + y_coeffs . y = rhs (mod d)``."""

    x_coeffs: tuple[int, ...]
    y_coeffs: tuple[int, ...]
    rhs: int

    def holds(self, x, y, d: int) -> bool:
        lhs = sum(c * int(v) for c, v in zip(self.x_coeffs, x)) + sum(
            c * int(v) for c, v in zip(self.y_coeffs, y)
        )
        return (lhs - self.rhs) % d == 0


@dataclass(frozen=True)
class ConstraintSystem:
    d: int
    N: int
    realism_equations: tuple[Equation, ...]
    quantum_equation: Equation


@dataclass(frozen=True)
class LhvAssignment:
    x: tuple[ModInt, ...]
    y: tuple[ModInt, ...]

    @classmethod
    def from_ints(cls, x, y, d: int) -> LhvAssignment:
        return cls(tuple(ModInt(int(v), d) for v in x), tuple(ModInt(int(v), d) for v in y))

    def as_ints(self) -> tuple[list[int], list[int]]:
        return [v.value for v in self.x], [v.value for v in self.y]


def realism_system(d: int, N: int) -> ConstraintSystem:
    """The constraint system without parameter validation (d = 1 allowed)."""
    rhs = (-1) % d
    eqs = []
    for i in range(N):
        xc = tuple(1 if a == i else 0 for a in range(N))
        yc = tuple(0 if a == i else 1 for a in range(N))
        eqs.append(Equation(xc, yc, rhs))
    quantum = Equation((1,) * N, (0,) * N, 0)
    return ConstraintSystem(d, N, tuple(eqs), quantum)


def build_constraints(d: int, N: int) -> ConstraintSystem:
    if not isinstance(d, int) or d < 2:
        raise ParameterError(f"dimension must be an integer >= 2, got {d!r}")
    if not isinstance(N, int) or N < 3 or N % 2 == 0:
        raise ParameterError(f"party count must be odd and >= 3, got {N!r}")
    return realism_system(d, N)


def verify_assignment(cs: ConstraintSystem, a: LhvAssignment) -> bool:
    if len(a.x) != cs.N or len(a.y) != cs.N:
        raise ParameterError(f"assignment lengths ({len(a.x)}, {len(a.y)}) do not match N={cs.N}")
    return all(eq.holds(a.x, a.y, cs.d) for eq in (*cs.realism_equations, cs.quantum_equation))


def _forced_x(cs: ConstraintSystem, y: np.ndarray) -> np.ndarray:
    # y has shape (batch, N); returns the unique x with every realism equation satisfied
    x = np.empty_like(y)
    for eq in cs.realism_equations:
        (i,) = [k for k, c in enumerate(eq.x_coeffs) if c]
        if eq.x_coeffs[i] != 1:
            raise ParameterError("forced-x reduction needs unit x coefficients")
        x[:, i] = (eq.rhs - y @ np.asarray(eq.y_coeffs)) % cs.d
    return x


def _search_range(cs: ConstraintSystem, start: int, stop: int, chunk: int = 1 << 16):
    d, N = cs.d, cs.N
    qx = np.asarray(cs.quantum_equation.x_coeffs)
    qy = np.asarray(cs.quantum_equation.y_coeffs)
    weights = d ** np.arange(N - 1, -1, -1, dtype=np.int64)
    for lo in range(start, stop, chunk):
        idx = np.arange(lo, min(lo + chunk, stop), dtype=np.int64)
        y = (idx[:, None] // weights) % d
        x = _forced_x(cs, y)
        ok = (x @ qx + y @ qy - cs.quantum_equation.rhs) % d == 0
        hits = np.flatnonzero(ok)
        if hits.size:
            k = hits[0]
            return x[k].tolist(), y[k].tolist()
    return None


def _search_worker(args):
    return _search_range(*args)


def exhaustive_search(cs: ConstraintSystem, workers: int = 1) -> Optional[LhvAssignment]:
    """A satisfying assignment, or ``None`` when the system is unsatisfiable.

    Enumerates ``y`` in ``Z_d^N`` and solves each realism equation for its x
    variable. With ``workers > 1`` the y-space is split into disjoint ranges
    searched in separate processes; the returned assignment may then differ
    between runs but the verdict does not.
    """
    total = cs.d**cs.N
    cap = max_search_points()
    if total > cap:
        raise DimensionOverflowError(f"search space d^N = {total} exceeds cap {cap}")
    if workers <= 1 or total < 1 << 16:
        found = _search_range(cs, 0, total)
    else:
        bounds = np.linspace(0, total, workers + 1).astype(np.int64)
        jobs = [(cs, int(lo), int(hi)) for lo, hi in zip(bounds[:-1], bounds[1:])]
        found = None
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for result in pool.map(_search_worker, jobs):
                if result is not None:
                    found = result
                    break
    if found is None:
        return None
    return LhvAssignment.from_ints(*found, cs.d)


def brute_force_search(cs: ConstraintSystem) -> Optional[LhvAssignment]:
    """Enumerate the full ``Z_d^(2N)`` assignment space. Only for tiny systems."""
    total = cs.d ** (2 * cs.N)
    if total > min(max_search_points(), 10**7):
        raise DimensionOverflowError(f"full assignment space {total} too large for brute force")
    for values in itertools.product(range(cs.d), repeat=2 * cs.N):
        a = LhvAssignment.from_ints(values[: cs.N], values[cs.N:], cs.d)
        if verify_assignment(cs, a):
            return a
    return None


def gcd_criterion(d: int, N: int) -> Satisfiability:
    """SAT iff ``(N-1) S = -N (mod d)`` has a solution, i.e. ``gcd(N-1, d) | N``."""
    if mod_solve_linear(N - 1, (-N) % d, d):
        return Satisfiability.SAT
    return Satisfiability.UNSAT


def unsat_certificate(d: int, N: int) -> dict:
    """The summed condition and the divisibility witness behind a verdict."""
    a, b = (N - 1) % d, (-N) % d
    g = math.gcd(a, d)
    return {
        "condition": f"({N}-1)*S + {N} = 0 (mod {d})",
        "coefficient": a,
        "rhs": b,
        "gcd": g,
        "gcd_divides_rhs": b % g == 0,
    }


@dataclass(frozen=True)
class LhvVerdict:
    d: int
    N: int
    status: Satisfiability
    criterion: Satisfiability
    assignment: Optional[LhvAssignment]
    certificate: dict
    points_searched: int

    @property
    def agrees(self) -> bool:
        return self.status == self.criterion


def decide(d: int, N: int, workers: int = 1) -> LhvVerdict:
    """Search and criterion together, with the assignment verified when SAT."""
    cs = build_constraints(d, N)
    found = exhaustive_search(cs, workers=workers)
    if found is not None and not verify_assignment(cs, found):
        raise ConstructionError(f"search returned an invalid assignment {found}")
    status = Satisfiability.SAT if found is not None else Satisfiability.UNSAT
    return LhvVerdict(d, N, status, gcd_criterion(d, N), found, unsat_certificate(d, N), d**N)
