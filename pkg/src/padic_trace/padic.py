"""Truncated p-adic unit arithmetic.

A :class:`PadicUnit` is a unit of Z/p^N read as a precision-N truncation of
an element of Z_p^x.  The logarithm and exponential series are summed up to
an index fixed in advance from valuation bounds, at an elevated working
precision so that the divisions by k and k! are exact.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .algebra import ModInt


class PrecisionError(ValueError):
    pass


def valuation(x: int, p: int) -> int:
    if x == 0:
        raise ValueError("valuation of zero")
    v = 0
    while x % p == 0:
        x //= p
        v += 1
    return v


def _check_odd_prime(p: int):
    if p < 3 or any(p % d == 0 for d in range(2, math.isqrt(p) + 1)):
        raise ValueError(f"p must be an odd prime, got {p}")


@dataclass(frozen=True)
class PadicUnit:
    p: int
    N: int
    residue: int

    def __post_init__(self):
        _check_odd_prime(self.p)
        if self.N < 1:
            raise ValueError("precision must be >= 1")
        object.__setattr__(self, "residue", self.residue % self.p**self.N)
        if self.residue % self.p == 0:
            raise ValueError(f"{self.residue} is not a unit mod {self.p}")

    @property
    def modulus(self) -> int:
        return self.p**self.N

    def __mul__(self, other: PadicUnit) -> PadicUnit:
        self._check(other)
        return PadicUnit(self.p, self.N, self.residue * other.residue)

    def __truediv__(self, other: PadicUnit) -> PadicUnit:
        self._check(other)
        return PadicUnit(self.p, self.N, self.residue * pow(other.residue, -1, self.modulus))

    def __pow__(self, e: int) -> PadicUnit:
        return PadicUnit(self.p, self.N, pow(self.residue, e, self.modulus))

    def inverse(self) -> PadicUnit:
        return PadicUnit(self.p, self.N, pow(self.residue, -1, self.modulus))

    def reduce(self, N: int) -> PadicUnit:
        if N > self.N:
            raise PrecisionError(f"cannot raise precision from {self.N} to {N}")
        return PadicUnit(self.p, N, self.residue)

    def _check(self, other):
        if (self.p, self.N) != (other.p, other.N):
            raise ValueError(f"mismatched units: Z/{self.p}^{self.N} vs Z/{other.p}^{other.N}")


def teichmuller_lift(u: PadicUnit) -> PadicUnit:
    """The (p-1)-st root of unity congruent to ``u`` mod p."""
    x = u.residue
    for _ in range(u.N):
        y = pow(x, u.p, u.modulus)
        if y == x:
            break
        x = y
    assert pow(x, u.p - 1, u.modulus) == 1
    return PadicUnit(u.p, u.N, x)


def principal_part(u: PadicUnit) -> PadicUnit:
    """u / teichmuller_lift(u), a unit congruent to 1 mod p."""
    return u / teichmuller_lift(u)


def _log_terms(p: int, v: int, N: int) -> int:
    # smallest k0 with k*v - floor(log_p k) >= N; that bound is nondecreasing in k
    k = 1
    while k * v - (valuation_floor_log(k, p)) < N:
        k += 1
    return k - 1


def valuation_floor_log(k: int, p: int) -> int:
    """floor(log_p k) for k >= 1, computed exactly."""
    e, q = 0, p
    while q <= k:
        q *= p
        e += 1
    return e


def plog(v: PadicUnit) -> ModInt:
    """p-adic logarithm of a principal unit, modulo p^N."""
    p, N = v.p, v.N
    if v.residue % p != 1:
        raise ValueError(f"{v.residue} is not congruent to 1 mod {p}")
    x = v.residue - 1
    if x == 0:
        return ModInt(0, p**N)
    K = _log_terms(p, valuation(x, p), N)
    extra = valuation_floor_log(K, p) if K else 0
    work = p ** (N + extra)
    mod = p**N
    total = 0
    xk = 1
    for k in range(1, K + 1):
        xk = (xk * x) % work
        e = valuation(k, p)
        unit = k // p**e
        # x^k is divisible by p^k, and k >= e, so this division is exact
        term = (xk // p**e) * pow(unit, -1, mod)
        total += term if k % 2 else -term
    return ModInt(total, mod)


def _exp_terms(p: int, N: int) -> int:
    # k - (k-1)/(p-1) >= N for all k beyond the returned index
    k = 0
    while (k + 1) * (p - 1) - k < N * (p - 1):
        k += 1
    return k


def legendre(k: int, p: int) -> int:
    """p-adic valuation of k!."""
    v, q = 0, p
    while q <= k:
        v += k // q
        q *= p
    return v


def pexp(x: ModInt, p: int) -> PadicUnit:
    """p-adic exponential of ``x`` in pZ/p^N (N taken from the modulus of ``x``)."""
    mod = x.modulus
    N = valuation(mod, p)
    if p**N != mod:
        raise ValueError(f"modulus {mod} is not a power of {p}")
    _check_odd_prime(p)
    if x.residue % p:
        raise ValueError(f"{x.residue} is not divisible by {p}")
    K = _exp_terms(p, N)
    extra = legendre(K, p)
    work = p ** (N + extra)
    total = 0
    xk = 1
    fact = 1
    for k in range(K + 1):
        if k:
            xk = (xk * x.residue) % work
            fact *= k
        e = legendre(k, p)
        unit = fact // p**e
        total += (xk // p**e) * pow(unit, -1, mod)
    return PadicUnit(p, N, total)


def unit_coords(u: PadicUnit, n: int) -> tuple[int, ModInt]:
    """Coordinates (c, b) in F_p^x x Z/p^n of u modulo 1 + p^{n+1}Z_p.

    c is u mod p and b is log(u / teichmuller_lift(u)) / p reduced mod p^n.
    """
    if n < 0:
        raise ValueError("depth must be non-negative")
    if u.N < n + 1:
        raise PrecisionError(f"need precision >= {n + 1}, have {u.N}")
    c = u.residue % u.p
    L = plog(principal_part(u))
    return c, ModInt(L.residue // u.p, u.p**n)


def coords_to_unit(c: int, b: ModInt | int, p: int, n: int) -> PadicUnit:
    """Inverse of :func:`unit_coords`, as a unit of Z/p^{n+1}."""
    N = n + 1
    c = int(c) % p
    if c == 0:
        raise ValueError("tame coordinate must be nonzero mod p")
    if isinstance(b, ModInt) and b.modulus != p**n:
        raise ValueError(f"wild coordinate must live in Z/{p**n}")
    w = int(b) % p**n
    omega = teichmuller_lift(PadicUnit(p, N, c))
    return omega * pexp(ModInt(p * w, p**N), p)
