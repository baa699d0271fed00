"""Local observables, symmetry operators and the concurrent observable set.

Every monomial operator here (X, Y, Z and the phase/permutation unitaries)
is assembled from an exact table of :class:`RationalPhase` values and a
permutation, then evaluated to complex entries in one step.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from ._limits import ParameterError, check_amplitudes, check_dimension, check_parties
from .linalg import KronOperator, apply
from .phase_arith import RationalPhase, omega_power, phase_eval, phase_mul

__all__ = [
    "SymmetrySpec",
    "ObservableSet",
    "build_z",
    "build_qft",
    "build_x",
    "build_y",
    "x_phase_table",
    "y_phase_table",
    "eigenvector_x",
    "eigenvector_y",
    "build_local_unitary",
    "check_invariance_condition",
    "symmetry_operator",
    "conjugate_by_symmetry",
    "concurrent_symmetry",
    "concurrent_set",
    "settings_operator",
    "invariance_residual",
    "omega",
]


def _as_phase(d: int, value) -> RationalPhase:
    # RationalPhase is taken as the value of omega**f(n); anything else is the exponent f(n)
    if isinstance(value, RationalPhase):
        return value
    return omega_power(d, Fraction(value))


def _shift(d: int) -> tuple[int, ...]:
    return tuple((n + 1) % d for n in range(d))


def _monomial(phases: Sequence[RationalPhase], perm: Sequence[int]) -> np.ndarray:
    d = len(perm)
    op = np.zeros((d, d), dtype=complex)
    for n, (ph, col) in enumerate(zip(phases, perm)):
        op[n, col] = phase_eval(ph)
    return op


def build_z(d: int) -> np.ndarray:
    """``diag(1, omega, ..., omega**(d-1))``."""
    check_dimension(d)
    return _monomial([omega_power(d, n) for n in range(d)], range(d))


def build_qft(d: int) -> np.ndarray:
    """Fourier matrix ``Q[m, n] = omega**(n*m) / sqrt(d)``; column n is ``|n>_x``."""
    check_dimension(d)
    q = np.empty((d, d), dtype=complex)
    for m in range(d):
        for n in range(d):
            q[m, n] = phase_eval(omega_power(d, (n * m) % d))
    return q / math.sqrt(d)


def x_phase_table(d: int) -> tuple[tuple[RationalPhase, ...], tuple[int, ...]]:
    check_dimension(d)
    return tuple(RationalPhase(0) for _ in range(d)), _shift(d)


def y_phase_table(d: int, N: int) -> tuple[tuple[RationalPhase, ...], tuple[int, ...]]:
    """Row phases and column permutation of Y for N parties.

    Row n < d-1 carries ``omega**(-1/(N-1))`` at column n+1; the wraparound
    row d-1 carries ``omega**(-1/(N-1)) * omega**(d/(N-1))`` at column 0.
    For N = 3 the wraparound factor is ``omega**(d/2) = -1``.
    """
    check_dimension(d)
    check_parties(N)
    prefactor = omega_power(d, Fraction(-1, N - 1))
    wrap = phase_mul(prefactor, omega_power(d, Fraction(d, N - 1)))
    return tuple([prefactor] * (d - 1) + [wrap]), _shift(d)


def build_x(d: int) -> np.ndarray:
    """Periodic shift ``sum_n |n><n+1|``, so ``|0> -> |d-1>``."""
    return _monomial(*x_phase_table(d))


def build_y(d: int, N: int = 3) -> np.ndarray:
    return _monomial(*y_phase_table(d, N))


def eigenvector_x(d: int, n: int) -> np.ndarray:
    check_dimension(d)
    if not 0 <= n < d:
        raise ParameterError(f"eigenvector index {n} outside [0, {d})")
    amps = [phase_eval(omega_power(d, (n * m) % d)) for m in range(d)]
    return np.array(amps, dtype=complex) / math.sqrt(d)


def eigenvector_y(d: int, n: int, N: int = 3) -> np.ndarray:
    """Eigenvector of Y with eigenvalue ``omega**n``: amplitudes ``omega**((n + 1/(N-1)) m) / sqrt(d)``."""
    check_dimension(d)
    check_parties(N)
    if not 0 <= n < d:
        raise ParameterError(f"eigenvector index {n} outside [0, {d})")
    shift = n + Fraction(1, N - 1)
    amps = [phase_eval(omega_power(d, shift * m)) for m in range(d)]
    return np.array(amps, dtype=complex) / math.sqrt(d)


def _check_permutation(g: Sequence[int], d: int) -> tuple[int, ...]:
    g = tuple(int(v) for v in g)
    if len(g) != d or sorted(g) != list(range(d)):
        raise ParameterError(f"g = {g} is not a bijection on {{0, ..., {d - 1}}}")
    return g


def build_local_unitary(d: int, f: Sequence, g: Sequence[int] | None = None) -> np.ndarray:
    """``sum_n omega**f(n) |n><g(n)|``.

    ``f`` entries may be :class:`RationalPhase` values (taken as
    ``omega**f(n)`` itself) or rational exponents ``f(n)``.
    """
    check_dimension(d)
    g = _check_permutation(range(d) if g is None else g, d)
    if len(f) != d:
        raise ParameterError(f"phase function has length {len(f)}, expected {d}")
    return _monomial([_as_phase(d, v) for v in f], g)


@dataclass(frozen=True)
class SymmetrySpec:
    """Per-party phase functions sharing one permutation ``g``.

    ``phase_functions[alpha][n]`` is ``omega**f_alpha(n)`` as a
    :class:`RationalPhase`; plain numbers are accepted as exponents.
    """

    d: int
    permutation: tuple[int, ...]
    phase_functions: tuple[tuple[RationalPhase, ...], ...]

    def __post_init__(self) -> None:
        check_dimension(self.d)
        object.__setattr__(self, "permutation", _check_permutation(self.permutation, self.d))
        funcs = []
        for f in self.phase_functions:
            if len(f) != self.d:
                raise ParameterError(f"phase function has length {len(f)}, expected {self.d}")
            funcs.append(tuple(_as_phase(self.d, v) for v in f))
        if not funcs:
            raise ParameterError("SymmetrySpec needs at least one party")
        object.__setattr__(self, "phase_functions", tuple(funcs))

    @property
    def parties(self) -> int:
        return len(self.phase_functions)

    def local_unitaries(self) -> list[np.ndarray]:
        return [_monomial(f, self.permutation) for f in self.phase_functions]


def check_invariance_condition(spec: SymmetrySpec) -> bool:
    """True iff ``sum_alpha f_alpha(n)`` is a multiple of d for every n.

    In phase form: the product of the parties' phases at each n is exactly 1.
    """
    for n in range(spec.d):
        total = RationalPhase(0)
        for f in spec.phase_functions:
            total = phase_mul(total, f[n])
        if not total.is_identity:
            return False
    return True


def symmetry_operator(spec: SymmetrySpec) -> KronOperator:
    return KronOperator(tuple(spec.local_unitaries()))


def conjugate_by_symmetry(spec: SymmetrySpec, op: KronOperator) -> KronOperator:
    """``V op V^dagger`` for the tensor unitary ``V`` of ``spec``."""
    v = symmetry_operator(spec)
    return v @ op @ v.dagger()


def concurrent_symmetry(d: int, N: int, i: int) -> SymmetrySpec:
    """The symmetry taking ``v_0`` to ``omega * v_i`` (i >= 1).

    Party i gets ``f(n) = (d-1) n``, every other party ``f(n) = n/(N-1)``,
    with ``g`` the identity; the exponents sum to ``d n``.
    """
    check_dimension(d)
    check_parties(N)
    if not 1 <= i <= N:
        raise ParameterError(f"observable index {i} outside [1, {N}]")
    f1 = tuple(omega_power(d, (d - 1) * n) for n in range(d))
    f2 = tuple(omega_power(d, Fraction(n, N - 1)) for n in range(d))
    funcs = tuple(f1 if alpha == i - 1 else f2 for alpha in range(N))
    return SymmetrySpec(d, tuple(range(d)), funcs)


@dataclass(frozen=True, eq=False)
class ObservableSet:
    """``v_0 = X^(x)N`` and ``v_i`` = X at party i, Y elsewhere."""

    d: int
    N: int
    observables: list[KronOperator]
    expected_phases: list[RationalPhase]
    setting_labels: list[str]
    local_x: np.ndarray = field(repr=False)
    local_y: np.ndarray = field(repr=False)

    @property
    def expected_eigenvalues(self) -> list[complex]:
        return [phase_eval(p) for p in self.expected_phases]

    def __len__(self) -> int:
        return len(self.observables)


def _validate_settings(settings: str, N: int) -> str:
    settings = settings.upper()
    if len(settings) != N or set(settings) - {"X", "Y"}:
        raise ParameterError(f"settings {settings!r} must be {N} characters from {{X, Y}}")
    return settings


def settings_operator(d: int, N: int, settings: str) -> KronOperator:
    settings = _validate_settings(settings, N)
    x, y = build_x(d), build_y(d, N)
    return KronOperator(tuple(x if s == "X" else y for s in settings))


def concurrent_set(d: int, N: int) -> ObservableSet:
    """The N+1 concurrent observables with eigenvalues ``(1, omega**-1, ...)``.

    Odd d is allowed; the GHZ contradiction only concerns even d.
    """
    check_dimension(d)
    check_parties(N)
    check_amplitudes(d, N)
    x, y = build_x(d), build_y(d, N)
    labels = ["X" * N] + ["Y" * i + "X" + "Y" * (N - 1 - i) for i in range(N)]
    ops = [KronOperator(tuple(x if s == "X" else y for s in lab)) for lab in labels]
    phases = [RationalPhase(0)] + [omega_power(d, -1)] * N
    return ObservableSet(d, N, ops, phases, labels, x, y)


def invariance_residual(spec: SymmetrySpec, state: np.ndarray) -> float:
    """``||V psi - psi||`` for the tensor unitary of ``spec``."""
    return float(np.linalg.norm(apply(symmetry_operator(spec), state) - state))


def omega(d: int, k: int | Fraction = 1) -> complex:
    """``omega**k`` as a complex number."""
    return phase_eval(omega_power(d, k))
