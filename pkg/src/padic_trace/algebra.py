"""Exact modular and finite-field arithmetic.

Residue rings Z/m are modelled by :class:`ModInt`; finite fields F_{p^k} by
:class:`FqField`, whose elements (:class:`FqElem`) are dense coefficient
vectors (c_0, ..., c_{k-1}) with respect to the basis 1, x, ..., x^{k-1}
modulo a fixed monic irreducible polynomial.

Polynomials and field elements are ordered by the integer sum_i c_i p^i,
i.e. lexicographically with c_{k-1} the most significant entry.  Both the
choice of modulus and element enumeration follow this order.
"""

from __future__ import annotations

import functools
import itertools
import math

from sympy import isprime
from sympy.polys.domains import ZZ
from sympy.polys.galoistools import gf_irreducible_p


class ModulusMismatch(ValueError):
    """Arithmetic between residues with different moduli."""


class ModInt:
    """A residue class modulo ``modulus``, always stored reduced."""

    __slots__ = ("residue", "modulus")

    def __init__(self, residue: int, modulus: int):
        if modulus < 1:
            raise ValueError(f"modulus must be positive, got {modulus}")
        self.residue = residue % modulus
        self.modulus = modulus

    def _coerce(self, other):
        if isinstance(other, ModInt):
            if other.modulus != self.modulus:
                raise ModulusMismatch(f"cannot combine Z/{self.modulus} with Z/{other.modulus}")
            return other.residue
        if isinstance(other, int):
            return other
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return ModInt(self.residue + o, self.modulus)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return ModInt(self.residue - o, self.modulus)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return ModInt(o - self.residue, self.modulus)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return ModInt(self.residue * o, self.modulus)

    __rmul__ = __mul__

    def __neg__(self):
        return ModInt(-self.residue, self.modulus)

    def __pow__(self, e: int):
        return ModInt(pow(self.residue, e, self.modulus), self.modulus)

    def inverse(self) -> ModInt:
        try:
            return ModInt(pow(self.residue, -1, self.modulus), self.modulus)
        except ValueError:
            raise ZeroDivisionError(f"{self.residue} is not invertible mod {self.modulus}") from None

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * ModInt(o, self.modulus).inverse()

    def __eq__(self, other):
        if isinstance(other, ModInt):
            return self.residue == other.residue and self.modulus == other.modulus
        if isinstance(other, int):
            return self.residue == other % self.modulus
        return NotImplemented

    def __hash__(self):
        return hash((self.residue, self.modulus))

    def __int__(self):
        return self.residue

    def __repr__(self):
        return f"ModInt({self.residue}, {self.modulus})"

    def order(self) -> int:
        """Additive order of the residue."""
        return self.modulus // math.gcd(self.residue, self.modulus)

    def is_unit(self) -> bool:
        return math.gcd(self.residue, self.modulus) == 1


def crt(pairs) -> ModInt:
    """Combine ``(residue, modulus)`` pairs with pairwise coprime moduli."""
    pairs = [(int(r), int(m)) for r, m in pairs]
    for (_, m1), (_, m2) in itertools.combinations(pairs, 2):
        if math.gcd(m1, m2) != 1:
            raise ValueError(f"moduli {m1} and {m2} are not coprime")
    x, M = 0, 1
    for r, m in pairs:
        # x + M*t = r (mod m)
        t = ((r - x) * pow(M, -1, m)) % m if m > 1 else 0
        x += M * t
        M *= m
    return ModInt(x, M)


def _poly_mulmod(a, b, modulus, p):
    """Multiply coefficient tuples (low degree first) modulo a monic polynomial."""
    k = len(modulus)
    prod = [0] * (2 * k - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                if bj:
                    prod[i + j] += ai * bj
    # x^k = -(c_0 + c_1 x + ... + c_{k-1} x^{k-1})
    for d in range(2 * k - 2, k - 1, -1):
        c = prod[d] % p
        if c:
            for j, mj in enumerate(modulus):
                prod[d - k + j] -= c * mj
        prod[d] = 0
    return tuple(c % p for c in prod[:k])


def is_irreducible(coeffs, p: int) -> bool:
    """Irreducibility over F_p of the monic polynomial with low coefficients ``coeffs``."""
    dense = [1] + [c % p for c in reversed(coeffs)]
    return bool(gf_irreducible_p([ZZ(c) for c in dense], p, ZZ))


class FqField:
    """The finite field F_{p^k} = F_p[x]/(modulus).

    ``modulus`` holds the low coefficients (c_0, ..., c_{k-1}) of the monic
    polynomial x^k + c_{k-1} x^{k-1} + ... + c_0.  Use :func:`make_field` to
    get the canonical field for given (p, k).
    """

    def __init__(self, p: int, k: int, modulus):
        if not isprime(p):
            raise ValueError(f"{p} is not prime")
        if k < 1:
            raise ValueError(f"extension degree must be >= 1, got {k}")
        modulus = tuple(int(c) % p for c in modulus)
        if len(modulus) != k:
            raise ValueError(f"modulus must have {k} low coefficients")
        if not is_irreducible(modulus, p):
            raise ValueError(f"modulus {modulus} is reducible over F_{p}")
        self.p = p
        self.k = k
        self.modulus = modulus
        self.order = p**k
        self.characteristic = p
        self.zero = FqElem(self, (0,) * k)
        self.one = FqElem(self, (1,) + (0,) * (k - 1))

    def __repr__(self):
        return f"FqField(p={self.p}, k={self.k}, modulus={self.modulus})"

    def __eq__(self, other):
        return isinstance(other, FqField) and (self.p, self.modulus) == (other.p, other.modulus)

    def __hash__(self):
        return hash((self.p, self.modulus))

    def __call__(self, value) -> FqElem:
        if isinstance(value, FqElem):
            if value.field != self:
                raise ValueError("element belongs to a different field")
            return value
        if isinstance(value, ModInt):
            if value.modulus != self.p:
                raise ModulusMismatch(f"cannot embed Z/{value.modulus} in F_{self.order}")
            value = value.residue
        if isinstance(value, int):
            return FqElem(self, (value % self.p,) + (0,) * (self.k - 1))
        coeffs = tuple(int(c) % self.p for c in value)
        if len(coeffs) != self.k:
            raise ValueError(f"expected {self.k} coefficients")
        return FqElem(self, coeffs)

    def gen(self) -> FqElem:
        """The class of x (a generator of the field over F_p, not necessarily primitive)."""
        if self.k == 1:
            return self(-self.modulus[0])
        return self((0, 1) + (0,) * (self.k - 2))

    def elements(self):
        """All p^k elements, ordered by sum_i c_i p^i."""
        for v in range(self.order):
            yield FqElem(self, _digits(v, self.p, self.k))

    def units(self):
        for x in self.elements():
            if x:
                yield x

    @functools.cached_property
    def primitive_element(self) -> FqElem:
        """First element in enumeration order that generates the multiplicative group."""
        n = self.order - 1
        factors = _prime_factors(n)
        for x in self.units():
            if all(x ** (n // q) != self.one for q in factors):
                return x
        raise AssertionError("no primitive element found")


class FqElem:
    """An element of a :class:`FqField`."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: FqField, coeffs):
        self.field = field
        self.coeffs = coeffs

    def _coerce(self, other):
        if isinstance(other, FqElem):
            if other.field is not self.field and other.field != self.field:
                raise ValueError("elements of different fields")
            return other.coeffs
        if isinstance(other, (int, ModInt)):
            return self.field(other).coeffs
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        p = self.field.p
        return FqElem(self.field, tuple((a + b) % p for a, b in zip(self.coeffs, o)))

    __radd__ = __add__

    def __neg__(self):
        p = self.field.p
        return FqElem(self.field, tuple(-a % p for a in self.coeffs))

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        p = self.field.p
        return FqElem(self.field, tuple((a - b) % p for a, b in zip(self.coeffs, o)))

    def __rsub__(self, other):
        return -self + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        F = self.field
        if F.k == 1:
            return FqElem(F, ((self.coeffs[0] * o[0]) % F.p,))
        return FqElem(F, _poly_mulmod(self.coeffs, o, F.modulus, F.p))

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        result = self.field.one
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def inverse(self) -> FqElem:
        if not self:
            raise ZeroDivisionError("zero is not invertible")
        return self ** (self.field.order - 2)

    def __truediv__(self, other):
        if isinstance(other, (int, ModInt)):
            other = self.field(other)
        return self * other.inverse()

    def __bool__(self):
        return any(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, FqElem):
            return self.field == other.field and self.coeffs == other.coeffs
        if isinstance(other, (int, ModInt)):
            return self.coeffs == self.field(other).coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        if self.field.k == 1:
            return f"F{self.field.p}({self.coeffs[0]})"
        return f"F{self.field.order}{self.coeffs}"

    def is_prime_field(self) -> bool:
        return not any(self.coeffs[1:])

    def to_int(self) -> int:
        """Residue of an element of the prime subfield."""
        if not self.is_prime_field():
            raise ValueError(f"{self!r} is not in the prime field")
        return self.coeffs[0]


def frobenius(x: FqElem) -> FqElem:
    return x ** x.field.p


def conjugates(x: FqElem):
    out = [x]
    for _ in range(x.field.k - 1):
        out.append(frobenius(out[-1]))
    return out


def norm(x: FqElem) -> FqElem:
    """Product of the Galois conjugates of ``x``, as an element of the same field."""
    result = x.field.one
    for c in conjugates(x):
        result = result * c
    assert result.is_prime_field()
    return result


def trace(x: FqElem) -> FqElem:
    """Sum of the Galois conjugates of ``x``, as an element of the same field."""
    result = x.field.zero
    for c in conjugates(x):
        result = result + c
    assert result.is_prime_field()
    return result


@functools.cache
def make_field(p: int, k: int = 1) -> FqField:
    """F_{p^k} whose modulus is the first monic irreducible polynomial in the
    order of sum_i c_i p^i over its low coefficients."""
    if not isprime(p):
        raise ValueError(f"{p} is not prime")
    if k < 1:
        raise ValueError(f"extension degree must be >= 1, got {k}")
    for v in range(p**k):
        coeffs = _digits(v, p, k)
        if is_irreducible(coeffs, p):
            return FqField(p, k, coeffs)
    raise AssertionError(f"no irreducible polynomial of degree {k} over F_{p}")


def prime_field(p: int) -> FqField:
    return make_field(p, 1)


def embedding(small: FqField, big: FqField):
    """A field embedding small -> big, returned as a function on elements.

    The image of the generator of ``small`` is the first root (in enumeration
    order) of its modulus inside ``big``.
    """
    if small.p != big.p or big.k % small.k:
        raise ValueError(f"F_{small.order} does not embed in F_{big.order}")
    if small.k == 1:
        return lambda x: big(x.coeffs[0])
    for r in big.elements():
        val = r ** small.k + sum((r**j * c for j, c in enumerate(small.modulus)), big.zero)
        if not val:
            break
    else:
        raise AssertionError("modulus has no root in the larger field")
    powers = [r**j for j in range(small.k)]

    def embed(x: FqElem) -> FqElem:
        return sum((pw * c for pw, c in zip(powers, x.coeffs)), big.zero)

    return embed


def _digits(v: int, p: int, k: int):
    out = []
    for _ in range(k):
        v, r = divmod(v, p)
        out.append(r)
    return tuple(out)


def _prime_factors(n: int):
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def multiplicative_order(x, one=None) -> int:
    """Order of a unit ``x`` (ModInt or FqElem) by repeated multiplication."""
    one = x ** 0 if one is None else one
    y, t = x, 1
    while y != one:
        y = y * x
        t += 1
    return t


def discrete_log(g, x, N: int) -> int:
    """Return t in [0, N) with g^t = x, where g has multiplicative order N.

    Baby-step giant-step; works for :class:`ModInt` and :class:`FqElem`.
    """
    if not x:
        raise ValueError("discrete log of zero")
    m = math.isqrt(N - 1) + 1 if N > 1 else 1
    table = {}
    e = g**0
    for j in range(m):
        table.setdefault(e, j)
        e = e * g
    step = (g**m).inverse()
    y = x
    for i in range(m + 1):
        j = table.get(y)
        if j is not None:
            t = (i * m + j) % N
            if g**t == x:
                return t
        y = y * step
    raise ValueError(f"{x!r} is not in the subgroup generated by {g!r}")


def units_mod(m: int):
    """Units of Z/m in increasing order."""
    return [ModInt(r, m) for r in range(m) if math.gcd(r, m) == 1]
