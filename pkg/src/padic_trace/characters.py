"""Characters of Z_p^x of bounded depth, with values kept as exact roots of unity.

A root of unity exp(2*pi*i*r) is stored as the fraction r in Q/Z.  A character
trivial on 1 + p^{n+1}Z_p is stored as an exponent pair (a mod p-1, b mod p^n)
relative to the smallest primitive root g mod p:

    chi(u) = a * ind_g(u mod p) / (p-1) + b * w(u) / p^n   (mod 1)

where w(u) is the wild unit coordinate from :func:`padic_trace.padic.unit_coords`.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass
from fractions import Fraction

from sympy.ntheory import primitive_root

from .algebra import ModInt, discrete_log
from .padic import PadicUnit, PrecisionError, unit_coords

MAX_ENUMERATION = 10**4


@dataclass(frozen=True, order=True)
class CyclotomicValue:
    """The root of unity exp(2 pi i num/den), with 0 <= num < den and gcd(num, den) = 1."""

    num: int
    den: int

    def __post_init__(self):
        if self.den < 1:
            raise ValueError("denominator must be positive")
        num = self.num % self.den
        g = math.gcd(num, self.den)
        object.__setattr__(self, "num", num // g)
        object.__setattr__(self, "den", self.den // g)

    @classmethod
    def from_fraction(cls, r: Fraction) -> CyclotomicValue:
        r = Fraction(r)
        return cls(r.numerator, r.denominator)

    @classmethod
    def one(cls) -> CyclotomicValue:
        return cls(0, 1)

    @property
    def exponent(self) -> Fraction:
        return Fraction(self.num, self.den)

    @property
    def order(self) -> int:
        return self.den

    def __mul__(self, other: CyclotomicValue) -> CyclotomicValue:
        return CyclotomicValue.from_fraction(self.exponent + other.exponent)

    def __truediv__(self, other: CyclotomicValue) -> CyclotomicValue:
        return CyclotomicValue.from_fraction(self.exponent - other.exponent)

    def __pow__(self, e: int) -> CyclotomicValue:
        return CyclotomicValue.from_fraction(self.exponent * e)

    def inverse(self) -> CyclotomicValue:
        return CyclotomicValue(-self.num, self.den)

    def to_json(self):
        return {"num": self.num, "den": self.den}

    def __str__(self):
        return f"{self.num}/{self.den}"


@functools.cache
def smallest_primitive_root(p: int) -> int:
    return int(primitive_root(p))


@dataclass(frozen=True)
class DepthNCharacter:
    """The character with exponents (a, b) of Z/(p-1) x Z/p^n."""

    p: int
    n: int
    a: ModInt
    b: ModInt
    g: int

    def __post_init__(self):
        if self.a.modulus != self.p - 1 or self.b.modulus != self.p**self.n:
            raise ValueError("exponents must live in Z/(p-1) and Z/p^n")

    @classmethod
    def make(cls, p: int, n: int, a: int, b: int, g: int | None = None) -> DepthNCharacter:
        return cls(p, n, ModInt(a, p - 1), ModInt(b, p**n), g or smallest_primitive_root(p))

    @property
    def context(self):
        return (self.p, self.n, self.g)

    @property
    def order(self) -> int:
        return math.lcm(self.a.order(), self.b.order())

    def on_coords(self, ind: int, w: ModInt | int) -> CyclotomicValue:
        """Value at the group element with tame index ``ind`` (w.r.t. g) and wild part ``w``."""
        r = Fraction(self.a.residue * int(ind), self.p - 1) + Fraction(
            self.b.residue * int(w), self.p**self.n
        )
        return CyclotomicValue.from_fraction(r)

    def __call__(self, u: PadicUnit) -> CyclotomicValue:
        return char_eval(self, u)

    def __mul__(self, other):
        return char_mul(self, other)

    def __repr__(self):
        return f"chi(p={self.p}, n={self.n}, a={self.a.residue}, b={self.b.residue})"


def tame_index(c: int, p: int, g: int | None = None) -> int:
    """ind_g(c) for c in F_p^x."""
    g = g or smallest_primitive_root(p)
    return discrete_log(ModInt(g, p), ModInt(c, p), p - 1)


def char_eval(chi: DepthNCharacter, u: PadicUnit) -> CyclotomicValue:
    if u.p != chi.p:
        raise ValueError(f"unit of Z_{u.p} given to a character of Z_{chi.p}")
    if u.N < chi.n + 1:
        raise PrecisionError(f"need precision >= {chi.n + 1}, have {u.N}")
    c, w = unit_coords(u, chi.n)
    return chi.on_coords(tame_index(c, chi.p, chi.g), w)


def char_depth(chi: DepthNCharacter) -> int:
    """Smallest m with chi trivial on 1 + p^{m+1}Z_p."""
    b = chi.b.residue
    for m in range(chi.n + 1):
        if b % chi.p ** (chi.n - m) == 0:
            return m
    raise AssertionError("unreachable")


def _check_context(c1: DepthNCharacter, c2: DepthNCharacter):
    if c1.context != c2.context:
        raise ValueError(f"characters from different contexts: {c1.context} vs {c2.context}")


def char_mul(c1: DepthNCharacter, c2: DepthNCharacter) -> DepthNCharacter:
    _check_context(c1, c2)
    return DepthNCharacter(c1.p, c1.n, c1.a + c2.a, c1.b + c2.b, c1.g)


def char_inv(chi: DepthNCharacter) -> DepthNCharacter:
    return DepthNCharacter(chi.p, chi.n, -chi.a, -chi.b, chi.g)


def trivial_character(p: int, n: int) -> DepthNCharacter:
    return DepthNCharacter.make(p, n, 0, 0)


def enumerate_chars(p: int, n: int):
    """All (p-1)p^n characters of depth <= n, ordered by a then b."""
    count = (p - 1) * p**n
    if count > MAX_ENUMERATION:
        raise ValueError(f"{count} characters exceeds the enumeration bound {MAX_ENUMERATION}")
    g = smallest_primitive_root(p)
    return [
        DepthNCharacter(p, n, ModInt(a, p - 1), ModInt(b, p**n), g)
        for a in range(p - 1)
        for b in range(p**n)
    ]


@functools.cache
def unit_generator(p: int, n: int) -> int:
    """Smallest generator of the cyclic group (Z/p^{n+1})^x."""
    mod = p ** (n + 1)
    order = (p - 1) * p**n
    for u in range(2, mod):
        if u % p == 0:
            continue
        if all(pow(u, order // q, mod) != 1 for q in _primes_dividing(order)):
            return u
    return 1  # only for the trivial group, p = 2 and n = 0


def _primes_dividing(m: int):
    return [q for q in range(2, m + 1) if m % q == 0 and all(q % d for d in range(2, math.isqrt(q) + 1))]
