"""Exact half-integer arithmetic, parameter sets and Gamma-factor constants.

Everything here is exact: parameters are ``HalfInt`` values, Gamma values at
half-integers are ``GammaValue`` objects of the form ``r * sqrt(pi)**k`` with
``r`` rational.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering
from typing import Iterable, NamedTuple

from .errors import (
    DeltaUndefined,
    NonIntegralB,
    PoleInFormula,
    SignUndefined,
    ZeroLambda,
)


@total_ordering
class HalfInt:
    """An element of (1/2)Z, stored as the integer ``twice_value``."""

    __slots__ = ("twice_value",)

    def __init__(self, twice_value: int):
        if isinstance(twice_value, bool) or not isinstance(twice_value, int):
            raise TypeError("twice_value must be an int")
        object.__setattr__(self, "twice_value", twice_value)

    def __setattr__(self, name, value):
        raise AttributeError("HalfInt is immutable")

    @classmethod
    def of(cls, value) -> "HalfInt":
        """Coerce an int, Fraction, float or string like "3/2" to a HalfInt."""
        if isinstance(value, HalfInt):
            return value
        if isinstance(value, str):
            value = Fraction(value.strip())
        if isinstance(value, float):
            if not math.isfinite(value) or (2 * value) != int(2 * value):
                raise ValueError(f"{value!r} is not a half-integer")
            return cls(int(2 * value))
        frac = Fraction(value)
        twice = 2 * frac
        if twice.denominator != 1:
            raise ValueError(f"{value!r} is not a half-integer")
        return cls(int(twice))

    @property
    def fraction(self) -> Fraction:
        return Fraction(self.twice_value, 2)

    def is_integer(self) -> bool:
        return self.twice_value % 2 == 0

    def __int__(self) -> int:
        if not self.is_integer():
            raise ValueError(f"{self} is not an integer")
        return self.twice_value // 2

    def __float__(self) -> float:
        return self.twice_value / 2

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return HalfInt(self.twice_value + other.twice_value)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return HalfInt(self.twice_value - other.twice_value)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return HalfInt(other.twice_value - self.twice_value)

    def __neg__(self):
        return HalfInt(-self.twice_value)

    def __mul__(self, other):
        if isinstance(other, int) and not isinstance(other, bool):
            return HalfInt(self.twice_value * other)
        return NotImplemented

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, HalfInt):
            return self.twice_value == other.twice_value
        if isinstance(other, (int, Fraction)):
            return self.fraction == other
        return NotImplemented

    def __lt__(self, other):
        if isinstance(other, HalfInt):
            return self.twice_value < other.twice_value
        if isinstance(other, (int, Fraction, float)):
            return self.fraction < other
        return NotImplemented

    def __hash__(self):
        return hash(self.fraction)

    def __str__(self):
        if self.is_integer():
            return str(self.twice_value // 2)
        return f"{self.twice_value}/2"

    def __repr__(self):
        return f"HalfInt({self})"


def _coerce(value):
    if isinstance(value, HalfInt):
        return value
    if isinstance(value, (int, Fraction)) and not isinstance(value, bool):
        try:
            return HalfInt.of(value)
        except ValueError:
            return NotImplemented
    return NotImplemented


def half(value) -> HalfInt:
    """Shorthand for ``HalfInt.of``."""
    return HalfInt.of(value)


def _in_two_n(x: HalfInt) -> bool:
    # x in 2N = {0, 2, 4, ...}
    return x.twice_value >= 0 and x.twice_value % 4 == 0


@dataclass(frozen=True)
class Signature:
    p: int
    q: int

    def __post_init__(self):
        if self.p < 0 or self.q < 0:
            raise ValueError("signature entries must be nonnegative")

    @property
    def rho(self) -> HalfInt:
        return HalfInt(self.p + self.q - 2)

    def __str__(self):
        return f"({self.p},{self.q})"


@dataclass(frozen=True)
class SignatureSplit:
    """(p', q', p'', q'') with p' + p'' = p and q' + q'' = q."""

    p1: int
    q1: int
    p2: int
    q2: int

    def __post_init__(self):
        if min(self.p1, self.q1, self.p2, self.q2) < 0:
            raise ValueError("split entries must be nonnegative")

    @property
    def parent(self) -> Signature:
        return Signature(self.p1 + self.p2, self.q1 + self.q2)

    @property
    def parts(self) -> tuple[int, int, int, int]:
        return (self.p1, self.q1, self.p2, self.q2)

    @classmethod
    def parse(cls, text: str) -> "SignatureSplit":
        parts = [int(s) for s in text.replace(" ", "").split(",")]
        if len(parts) != 4:
            raise ValueError("split must have four entries p1,q1,p2,q2")
        return cls(*parts)

    def __str__(self):
        return f"({self.p1},{self.q1},{self.p2},{self.q2})"


# ---------------------------------------------------------------------------
# Gamma values at half-integers


@dataclass(frozen=True)
class GammaValue:
    """``rational_part * sqrt(pi)**sqrt_pi_power``, or a pole.

    The exponent is an arbitrary integer: products of half-integer Gammas
    produce whole powers of pi which cannot be folded into a rational.
    """

    rational_part: Fraction
    sqrt_pi_power: int = 0
    is_pole: bool = False

    def __post_init__(self):
        object.__setattr__(self, "rational_part", Fraction(self.rational_part))
        if self.is_pole:
            object.__setattr__(self, "rational_part", Fraction(1))
            object.__setattr__(self, "sqrt_pi_power", 0)
        elif self.rational_part == 0:
            object.__setattr__(self, "sqrt_pi_power", 0)

    @classmethod
    def pole(cls) -> "GammaValue":
        return cls(Fraction(1), 0, True)

    def is_zero(self) -> bool:
        return not self.is_pole and self.rational_part == 0

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            other = GammaValue(Fraction(other))
        if not isinstance(other, GammaValue):
            return NotImplemented
        if self.is_pole or other.is_pole:
            if self.is_zero() or other.is_zero():
                raise PoleInFormula("0 * pole is indeterminate")
            return GammaValue.pole()
        return GammaValue(
            self.rational_part * other.rational_part,
            self.sqrt_pi_power + other.sqrt_pi_power,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            other = GammaValue(Fraction(other))
        if not isinstance(other, GammaValue):
            return NotImplemented
        if other.is_pole:
            if self.is_pole:
                raise PoleInFormula("pole / pole is indeterminate")
            return GammaValue(Fraction(0))
        if self.is_pole:
            return GammaValue.pole()
        if other.rational_part == 0:
            raise ZeroDivisionError("division by an exact zero")
        return GammaValue(
            self.rational_part / other.rational_part,
            self.sqrt_pi_power - other.sqrt_pi_power,
        )

    def __neg__(self):
        if self.is_pole:
            return self
        return GammaValue(-self.rational_part, self.sqrt_pi_power)

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            return NotImplemented
        out = GammaValue(Fraction(1))
        for _ in range(k):
            out = out * self
        return out

    def __float__(self):
        if self.is_pole:
            return math.inf
        return float(self.rational_part) * math.pi ** (self.sqrt_pi_power / 2)

    def __str__(self):
        if self.is_pole:
            return "pole"
        if self.sqrt_pi_power == 0:
            return str(self.rational_part)
        return f"{self.rational_part}*sqrt(pi)^{self.sqrt_pi_power}"

    @classmethod
    def parse(cls, text: str) -> "GammaValue":
        """Inverse of ``str``."""
        text = text.strip()
        if text == "pole":
            return cls.pole()
        if "*sqrt(pi)^" in text:
            r, k = text.split("*sqrt(pi)^")
            return cls(Fraction(r), int(k))
        return cls(Fraction(text))


def gamma_half(x) -> GammaValue:
    """Gamma at a half-integer, exactly."""
    x = HalfInt.of(x)
    if x.is_integer():
        n = int(x)
        if n <= 0:
            return GammaValue.pole()
        return GammaValue(Fraction(math.factorial(n - 1)))
    # x = n + 1/2
    n = (x.twice_value - 1) // 2
    if n >= 0:
        r = Fraction(math.factorial(2 * n), 4**n * math.factorial(n))
    else:
        k = -n
        r = Fraction((-4) ** k * math.factorial(k), math.factorial(2 * k))
    return GammaValue(r, 1)


def _gamma_product(args: Iterable[HalfInt]) -> tuple[GammaValue, int]:
    """Product of finite Gamma factors, and the number of poles among them."""
    value = GammaValue(Fraction(1))
    poles = 0
    for a in args:
        g = gamma_half(a)
        if g.is_pole:
            poles += 1
        else:
            value = value * g
    return value, poles


def _ratio(num_args, den_args, scale: Fraction = Fraction(1)) -> GammaValue:
    num, num_poles = _gamma_product(num_args)
    den, den_poles = _gamma_product(den_args)
    if num_poles and den_poles:
        raise PoleInFormula("poles in both numerator and denominator")
    if num_poles:
        return GammaValue.pole()
    if den_poles:
        return GammaValue(Fraction(0))
    return (num / den) * GammaValue(scale)


# ---------------------------------------------------------------------------
# Parameter sets


def in_a0(lam, sig: Signature) -> bool:
    """Membership in A_0(p, q)."""
    lam = HalfInt.of(lam)
    p, q = sig.p, sig.q
    if p == 0 or (p == 1 and q != 0):
        return False
    if p == 1 and q == 0:
        return lam.twice_value in (-1, 1)
    on_lattice = (lam.twice_value - (p + q)) % 2 == 0
    if not on_lattice:
        return False
    if q != 0:
        return lam.twice_value > -2
    return lam.twice_value >= p - 2


def a0_set(sig: Signature, lambda_max) -> list[HalfInt]:
    """A_0(p, q) truncated at ``lambda_max`` (inclusive), ascending."""
    lambda_max = HalfInt.of(lambda_max)
    p, q = sig.p, sig.q
    if p == 0 or (p == 1 and q != 0):
        return []
    if p == 1 and q == 0:
        cands = [HalfInt(-1), HalfInt(1)]
    else:
        start = -1 if (p + q) % 2 else 0
        if q == 0:
            start = p - 2
        cands = [HalfInt(t) for t in range(start, lambda_max.twice_value + 1, 2)]
    return [lam for lam in cands if lam <= lambda_max]


class AVariantSets(NamedTuple):
    A_plus: list
    A_prime: list


def a_variant_sets(sig: Signature, cutoff) -> AVariantSets:
    base = a0_set(sig, cutoff)
    return AVariantSets(
        [lam for lam in base if lam.twice_value > 0],
        [lam for lam in base if lam.twice_value > 2],
    )


def in_a_plus(lam, sig: Signature) -> bool:
    lam = HalfInt.of(lam)
    return lam.twice_value > 0 and in_a0(lam, sig)


class LambdaPairSets(NamedTuple):
    Lambda_pm: list
    Lambda_pp: list


def lambda_pair_sets(lam, split: SignatureSplit, cutoff) -> LambdaPairSets:
    """Pairs (lambda', lambda'') of the two parity-constrained families."""
    lam = HalfInt.of(lam)
    first = a_variant_sets(Signature(split.p1, split.q1), cutoff).A_plus
    second_pm = a_variant_sets(Signature(split.q2, split.p2), cutoff).A_plus
    second_pp = a_variant_sets(Signature(split.p2, split.q2), cutoff).A_plus
    pm = [(a, b) for a in first for b in second_pm if _in_two_n(a - b - lam - 1)]
    pp = [(a, b) for a in first for b in second_pp if _in_two_n(lam - a - b - 1)]
    return LambdaPairSets(pm, pp)


class BEpsDelta(NamedTuple):
    b: HalfInt
    epsilon: int
    delta: int | None


def delta_sign(sig: Signature) -> int:
    if (sig.p + sig.q) % 2:
        raise DeltaUndefined(f"p+q odd for {sig}")
    return -1 if ((sig.p - sig.q) // 2) % 2 else 1


def b_epsilon_delta(lam, sig: Signature) -> BEpsDelta:
    """b = lambda - p/2 + q/2 + 1, epsilon = (-1)^b, delta = (-1)^((p-q)/2).

    ``delta`` is None when p+q is odd; ``delta_sign`` raises in that case.
    """
    lam = HalfInt.of(lam)
    b = lam - HalfInt(sig.p) + HalfInt(sig.q) + 1
    if not b.is_integer():
        raise NonIntegralB(f"b={b} is not an integer for lambda={lam}, {sig}")
    eps = -1 if int(b) % 2 else 1
    delta = None if (sig.p + sig.q) % 2 else delta_sign(sig)
    return BEpsDelta(b, eps, delta)


# ---------------------------------------------------------------------------
# Closed-form constants


def _halve(x: HalfInt) -> HalfInt:
    if x.twice_value % 2:
        raise SignUndefined(f"{x}/2 is not a half-integer")
    return HalfInt(x.twice_value // 2)


def _abcd(lam_p: HalfInt, lam_pp: HalfInt, lam: HalfInt):
    A = _halve(lam_p - lam_pp + lam + 1)
    B = _halve(lam_p - lam_pp - lam + 1)
    C = _halve(lam_p + lam_pp + lam + 1)
    D = _halve(lam_p + lam_pp - lam + 1)
    return A, B, C, D


def _halve_or_none(x: HalfInt):
    return HalfInt(x.twice_value // 2) if x.twice_value % 2 == 0 else None


def v_constant_exact(kind: str, lam_p, lam_pp, lam) -> GammaValue:
    """Closed forms of the two Jacobi-function integrals.

    kind "pm":  Gamma(l''+1)^2 Gamma(A) Gamma(B) / (2 l Gamma(C) Gamma(D))
    kind "pp":  Gamma(l''+1)^2 Gamma((-l'-l''+l+1)/2) Gamma((l'-l''+l+1)/2)
                / (2 l Gamma((-l'+l''+l+1)/2) Gamma((l'+l''+l+1)/2))
    with A..D = (l' -+ l'' +- l + 1)/2.  Arguments must combine to
    half-integers.
    """
    lam_p, lam_pp, lam = HalfInt.of(lam_p), HalfInt.of(lam_pp), HalfInt.of(lam)
    if lam.twice_value == 0:
        raise ZeroLambda("the constant has a factor 1/(2*lambda)")
    return _v_times_lambda(kind, lam_p, lam_pp, lam) / GammaValue(lam.fraction)


def lambda_v_exact(kind: str, lam_p, lam_pp, lam) -> GammaValue:
    """``lambda * V`` in the cancelled form, valid also for lambda <= 0."""
    lam_p, lam_pp, lam = HalfInt.of(lam_p), HalfInt.of(lam_pp), HalfInt.of(lam)
    return _v_times_lambda(kind, lam_p, lam_pp, lam)


def _v_times_lambda(kind, lam_p, lam_pp, lam) -> GammaValue:
    if kind == "pm":
        s = [lam_p - lam_pp + lam + 1, lam_p - lam_pp - lam + 1,
             lam_p + lam_pp + lam + 1, lam_p + lam_pp - lam + 1]
    elif kind == "pp":
        s = [-lam_p - lam_pp + lam + 1, lam_p - lam_pp + lam + 1,
             -lam_p + lam_pp + lam + 1, lam_p + lam_pp + lam + 1]
    else:
        raise ValueError(f"unknown kind {kind!r}")
    halves = [_halve_or_none(x) for x in s]
    if any(h is None for h in halves):
        raise ValueError("Gamma arguments are not half-integers for these parameters")
    g1 = lam_pp + 1
    return _ratio([g1, g1, halves[0], halves[1]], [halves[2], halves[3]], Fraction(1, 2))


def m_constant_exact(lam, lam_p, lam_pp) -> GammaValue:
    """(-1)^((l'-l''-l-1)/2) Gamma(D) Gamma(l+1) / (Gamma(A) Gamma(l''+1))."""
    lam, lam_p, lam_pp = HalfInt.of(lam), HalfInt.of(lam_p), HalfInt.of(lam_pp)
    e = lam_p - lam_pp - lam - 1
    if e.twice_value % 4:
        raise SignUndefined(f"(l'-l''-l-1)/2 = {e.fraction / 2} is not an integer")
    sign = -1 if (e.twice_value // 4) % 2 else 1
    A, _, _, D = _abcd(lam_p, lam_pp, lam)
    num, num_poles = _gamma_product([D, lam + 1])
    den, den_poles = _gamma_product([A, lam_pp + 1])
    if num_poles or den_poles:
        raise PoleInFormula("Gamma pole in the M constant")
    return (num / den) * GammaValue(Fraction(sign))


def identity_sides(lam, lam_p, lam_pp) -> tuple[GammaValue, GammaValue]:
    """Both sides of  l' * Vpp(l'', l; l') = M^2 * l * Vpm(l', l''; l)."""
    lam, lam_p, lam_pp = HalfInt.of(lam), HalfInt.of(lam_p), HalfInt.of(lam_pp)
    left = lambda_v_exact("pp", lam_pp, lam, lam_p)
    m = m_constant_exact(lam, lam_p, lam_pp)
    right = m * m * lambda_v_exact("pm", lam_p, lam_pp, lam)
    return left, right
