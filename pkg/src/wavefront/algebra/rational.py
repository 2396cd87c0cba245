"""Rational and prime-field scalars."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational as _RationalABC

Scalar = int | Fraction


def normalize(c) -> Scalar:
    """Return ``c`` as an int when integral, otherwise as a reduced Fraction."""
    if isinstance(c, bool):
        return int(c)
    if isinstance(c, int):
        return c
    if isinstance(c, Fraction):
        return c.numerator if c.denominator == 1 else c
    if isinstance(c, _RationalABC):
        return normalize(Fraction(c.numerator, c.denominator))
    if isinstance(c, str):
        return normalize(Fraction(c.strip()))
    raise TypeError(f"not an exact rational: {c!r}")


def parse_rational(text: str) -> Scalar:
    text = text.strip()
    if not text:
        raise ValueError("empty rational")
    return normalize(Fraction(text))


def format_rational(c: Scalar) -> str:
    c = normalize(c)
    if isinstance(c, int):
        return str(c)
    return f"{c.numerator}/{c.denominator}"


def is_probable_small_prime(p: int) -> bool:
    """Trial division, used for moduli below 2**20."""
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


def is_prime(p: int) -> bool:
    """Deterministic Miller-Rabin for 64-bit inputs, trial division for small ones."""
    if p < (1 << 20):
        return is_probable_small_prime(p)
    if p % 2 == 0:
        return False
    d, s = p - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, p)
        if x in (1, p - 1):
            continue
        for _ in range(s - 1):
            x = x * x % p
            if x == p - 1:
                break
        else:
            return False
    return True


def primes_below(bound: int):
    """Yield primes in descending order starting just below ``bound``."""
    q = bound - 1
    while q >= 2:
        if is_prime(q):
            yield q
        q -= 1


@dataclass(frozen=True)
class PrimeField:
    """An element of GF(p)."""

    modulus: int
    value: int

    def __post_init__(self):
        if self.modulus < (1 << 20) and not is_probable_small_prime(self.modulus):
            raise ValueError(f"{self.modulus} is not prime")
        object.__setattr__(self, "value", self.value % self.modulus)

    def _coerce(self, other) -> int:
        if isinstance(other, PrimeField):
            if other.modulus != self.modulus:
                raise ValueError("moduli differ")
            return other.value
        return reduce_mod(other, self.modulus)

    def __add__(self, other):
        return PrimeField(self.modulus, self.value + self._coerce(other))

    __radd__ = __add__

    def __sub__(self, other):
        return PrimeField(self.modulus, self.value - self._coerce(other))

    def __rsub__(self, other):
        return PrimeField(self.modulus, self._coerce(other) - self.value)

    def __mul__(self, other):
        return PrimeField(self.modulus, self.value * self._coerce(other))

    __rmul__ = __mul__

    def __neg__(self):
        return PrimeField(self.modulus, -self.value)

    def inverse(self) -> "PrimeField":
        if self.value == 0:
            raise ZeroDivisionError("inverse of zero in GF(p)")
        return PrimeField(self.modulus, pow(self.value, -1, self.modulus))

    def __truediv__(self, other):
        return self * PrimeField(self.modulus, self._coerce(other)).inverse()

    def __eq__(self, other):
        if isinstance(other, PrimeField):
            return self.modulus == other.modulus and self.value == other.value
        if isinstance(other, (int, Fraction)):
            return self.value == reduce_mod(other, self.modulus)
        return NotImplemented

    def __hash__(self):
        return hash((self.modulus, self.value))

    def __bool__(self):
        return self.value != 0

    def __int__(self):
        return self.value

    def __repr__(self):
        return f"{self.value} mod {self.modulus}"


def reduce_mod(c, p: int) -> int:
    """Image of an exact rational in GF(p); raises if the denominator vanishes."""
    c = normalize(c)
    if isinstance(c, int):
        return c % p
    den = c.denominator % p
    if den == 0:
        raise ZeroDivisionError(f"denominator {c.denominator} vanishes mod {p}")
    return c.numerator * pow(den, -1, p) % p


def symmetric_residue(c: int, m: int) -> int:
    c %= m
    return c - m if c > m // 2 else c
