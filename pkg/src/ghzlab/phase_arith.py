"""Exact roots of unity and residues modulo d.

A :class:`RationalPhase` stores the exponent ``num/den`` of
``exp(2*pi*i*num/den)`` reduced modulo one, so products and powers of phases
are computed without rounding. Complex values appear only in
:func:`phase_eval`.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction

__all__ = [
    "RationalPhase",
    "ModInt",
    "omega_power",
    "phase_mul",
    "phase_pow",
    "phase_inverse",
    "phase_eval",
    "mod_solve_linear",
]

# exp(2*pi*i*k/4) with no rounding error
_QUARTER_TURNS = (1 + 0j, 1j, -1 + 0j, -1j)


@dataclass(frozen=True)
class RationalPhase:
    """The unit complex number ``exp(2*pi*i*num/den)``, canonical ``0 <= num < den``."""

    num: int
    den: int = 1

    def __post_init__(self) -> None:
        if self.den == 0:
            raise ZeroDivisionError("phase denominator is zero")
        frac = Fraction(self.num, self.den) % 1
        object.__setattr__(self, "num", frac.numerator)
        object.__setattr__(self, "den", frac.denominator)

    @classmethod
    def from_turns(cls, turns: Fraction | int) -> RationalPhase:
        turns = Fraction(turns)
        return cls(turns.numerator, turns.denominator)

    @property
    def turns(self) -> Fraction:
        return Fraction(self.num, self.den)

    @property
    def is_identity(self) -> bool:
        return self.num == 0

    def __mul__(self, other: RationalPhase) -> RationalPhase:
        return phase_mul(self, other)

    def __pow__(self, k: int) -> RationalPhase:
        return phase_pow(self, k)

    def __complex__(self) -> complex:
        return phase_eval(self)

    def __repr__(self) -> str:
        return f"RationalPhase({self.num}/{self.den})"


@dataclass(frozen=True)
class ModInt:
    value: int
    modulus: int

    def __post_init__(self) -> None:
        if self.modulus < 1:
            raise ValueError(f"modulus must be positive, got {self.modulus}")
        object.__setattr__(self, "value", self.value % self.modulus)

    def __int__(self) -> int:
        return self.value

    def __add__(self, other: ModInt | int) -> ModInt:
        return ModInt(self.value + _residue(other, self.modulus), self.modulus)

    def __mul__(self, other: ModInt | int) -> ModInt:
        return ModInt(self.value * _residue(other, self.modulus), self.modulus)

    def __neg__(self) -> ModInt:
        return ModInt(-self.value, self.modulus)


def _residue(x: ModInt | int, modulus: int) -> int:
    if isinstance(x, ModInt):
        if x.modulus != modulus:
            raise ValueError(f"moduli differ: {x.modulus} vs {modulus}")
        return x.value
    return int(x)


def omega_power(d: int, exponent: Fraction | int) -> RationalPhase:
    """``omega**exponent`` with ``omega = exp(2*pi*i/d)``; fractional exponents take the principal branch."""
    return RationalPhase.from_turns(Fraction(exponent) / d)


def phase_mul(a: RationalPhase, b: RationalPhase) -> RationalPhase:
    return RationalPhase.from_turns(a.turns + b.turns)


def phase_pow(a: RationalPhase, k: int) -> RationalPhase:
    return RationalPhase.from_turns(a.turns * k)


def phase_inverse(a: RationalPhase) -> RationalPhase:
    return RationalPhase.from_turns(-a.turns)


def phase_eval(a: RationalPhase) -> complex:
    if 4 % a.den == 0:
        return _QUARTER_TURNS[a.num * (4 // a.den)]
    return cmath.exp(2j * math.pi * a.num / a.den)


def mod_solve_linear(a: int, b: int, d: int) -> set[ModInt]:
    """All ``s`` in Z_d with ``a*s = b (mod d)``.

    Empty exactly when ``gcd(a, d)`` does not divide ``b``; otherwise there
    are ``gcd(a, d)`` solutions spaced ``d/gcd`` apart.
    """
    if d < 1:
        raise ValueError(f"modulus must be positive, got {d}")
    a %= d
    b %= d
    g = math.gcd(a, d)  # gcd(0, d) == d
    if b % g:
        return set()
    step = d // g
    if a == 0:
        base = 0
    else:
        base = (b // g) * pow(a // g, -1, step) % step
    return {ModInt(base + k * step, d) for k in range(g)}
