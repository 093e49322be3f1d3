"""Witt vectors of finite length.

The universal addition and multiplication polynomials S_i, P_i are produced
by the ghost recursion

    S_i = (Phi_i(X) + Phi_i(Y) - sum_{j<i} p^j S_j^{p^(i-j)}) / p^i

(and the same with a product for P_i), where
Phi_i(T) = sum_{j<=i} p^j T_j^{p^(i-j)}.  The expansion is done with FLINT
multivariate integer polynomials; the division by p^i is checked for
exactness before it is performed.  Polynomials are then held as plain dicts
mapping exponent tuples (X_0..X_i, Y_0..Y_i) to integer coefficients, which
is also what the on-disk cache stores.

Coefficient rings are the Python integers (:data:`INTEGERS`) or any
:class:`~padic_trace.algebra.FqField`.
"""

from __future__ import annotations

import functools
import itertools
import os
from pathlib import Path

import flint

from .algebra import FqElem, FqField, ModInt, make_field
from .padic import PadicUnit, coords_to_unit, unit_coords


class WittIntegralityError(ArithmeticError):
    """A ghost-recursion division was not exact (this is a bug, not bad input)."""


class IntegerRing:
    """The ring Z, as a coefficient ring for Witt vectors."""

    characteristic = 0
    zero = 0
    one = 1

    def __call__(self, value):
        return int(value)

    def __repr__(self):
        return "ZZ"


INTEGERS = IntegerRing()


def _ghost_poly(T, i, p, zero):
    return sum((p**j * T[j] ** (p ** (i - j)) for j in range(i + 1)), zero)


def _compute_polynomials(p: int, max_i: int):
    names = tuple(f"X{j}" for j in range(max_i + 1)) + tuple(f"Y{j}" for j in range(max_i + 1))
    ctx = flint.fmpz_mpoly_ctx.get(names, "lex")
    gens = ctx.gens()
    X, Y = gens[: max_i + 1], gens[max_i + 1 :]
    zero = ctx.from_dict({})
    S, P = [], []
    for i in range(max_i + 1):
        for polys, combine in ((S, lambda a, b: a + b), (P, lambda a, b: a * b)):
            num = combine(_ghost_poly(X, i, p, zero), _ghost_poly(Y, i, p, zero))
            num -= sum((p**j * polys[j] ** (p ** (i - j)) for j in range(i)), zero)
            if not num.is_zero() and int(num.content()) % p**i:
                raise WittIntegralityError(f"non-integral division at p={p}, i={i}")
            polys.append(num / p**i)
    width = max_i + 1

    def restrict(poly, i):
        # keep only the variables X_0..X_i, Y_0..Y_i
        out = {}
        for exps, c in poly.to_dict().items():
            key = tuple(exps[: i + 1]) + tuple(exps[width : width + i + 1])
            out[key] = int(c)
        return dict(sorted(out.items()))

    return [restrict(s, i) for i, s in enumerate(S)], [restrict(q, i) for i, q in enumerate(P)]


class WittPolyCache:
    """Addition and multiplication polynomials S_0..S_max_i, P_0..P_max_i for one prime."""

    HEADER = "wittpoly v1 p={p}"

    def __init__(self, p: int, S, P):
        if len(S) != len(P):
            raise ValueError("S and P must have the same length")
        self.p = p
        self.S = S
        self.P = P
        self._compiled = {}

    @property
    def max_i(self) -> int:
        return len(self.S) - 1

    @classmethod
    def build(cls, p: int, max_i: int) -> WittPolyCache:
        S, P = _compute_polynomials(p, max_i)
        return cls(p, S, P)

    def polynomials(self, i: int):
        return self.S[i], self.P[i]

    # -- file format -----------------------------------------------------

    def dumps(self) -> str:
        lines = [self.HEADER.format(p=self.p)]
        for i in range(self.max_i + 1):
            for tag, poly in (("S", self.S[i]), ("P", self.P[i])):
                terms = []
                for exps, c in sorted(poly.items()):
                    e = ",".join(map(str, exps[: i + 1]))
                    f = ",".join(map(str, exps[i + 1 :]))
                    terms.append(f"{e};{f}:{c}")
                lines.append(" ".join([tag, str(i)] + terms))
        return "\n".join(lines) + "\n"

    @classmethod
    def loads(cls, text: str) -> WittPolyCache:
        lines = text.splitlines()
        if not lines or not lines[0].startswith("wittpoly v1 p="):
            raise ValueError("not a wittpoly v1 file")
        p = int(lines[0].split("p=", 1)[1])
        S, P = {}, {}
        for line in lines[1:]:
            if not line.strip():
                continue
            tag, i, *terms = line.split(" ")
            i = int(i)
            poly = {}
            for term in terms:
                exps, c = term.split(":")
                e, f = exps.split(";")
                key = tuple(map(int, e.split(","))) + tuple(map(int, f.split(",")))
                if len(key) != 2 * (i + 1):
                    raise ValueError(f"bad exponent tuple in {tag} {i}")
                poly[key] = int(c)
            {"S": S, "P": P}[tag][i] = poly
        n = len(S)
        if sorted(S) != list(range(n)) or sorted(P) != list(range(n)):
            raise ValueError("incomplete wittpoly file")
        return cls(p, [S[i] for i in range(n)], [P[i] for i in range(n)])

    @staticmethod
    def path_for(cache_dir, p: int) -> Path:
        return Path(cache_dir) / f"wittpoly_p{p}.txt"

    def save(self, cache_dir) -> Path:
        path = self.path_for(cache_dir, self.p)
        path.parent.mkdir(parents=True, exist_ok=True)
        tmp = path.with_suffix(".tmp")
        tmp.write_text(self.dumps())
        os.replace(tmp, path)
        return path

    @classmethod
    def load(cls, cache_dir, p: int) -> WittPolyCache:
        return cls.loads(cls.path_for(cache_dir, p).read_text())

    # -- evaluation ------------------------------------------------------

    def _compile(self, tag, i):
        key = (tag, i)
        if key not in self._compiled:
            poly = (self.S if tag == "S" else self.P)[i]
            self._compiled[key] = [
                (c, tuple((v, e) for v, e in enumerate(exps) if e)) for exps, c in poly.items()
            ]
        return self._compiled[key]

    def evaluate(self, tag: str, i: int, xs, ys, zero):
        """Evaluate S_i or P_i at X = xs[:i+1], Y = ys[:i+1]."""
        args = list(xs[: i + 1]) + list(ys[: i + 1])
        powers = {}
        total = zero
        for c, factors in self._compile(tag, i):
            term = c
            for v, e in factors:
                pw = powers.get((v, e))
                if pw is None:
                    pw = powers[(v, e)] = args[v] ** e
                term = pw * term
            total = total + term
        return total


def witt_polynomials(p: int, i: int):
    """Return (S_i, P_i) as dicts of exponent tuples to integer coefficients."""
    return _default_cache(p, i).polynomials(i)


_caches: dict[int, WittPolyCache] = {}


def _default_cache(p: int, max_i: int) -> WittPolyCache:
    cache = _caches.get(p)
    if cache is None or cache.max_i < max_i:
        cache = _caches[p] = WittPolyCache.build(p, max_i)
    return cache


def load_or_build(p: int, max_i: int, cache_dir=None) -> WittPolyCache:
    """Polynomial cache from ``cache_dir`` if it holds enough indices, else built (and saved)."""
    if cache_dir is not None:
        path = WittPolyCache.path_for(cache_dir, p)
        if path.exists():
            cache = WittPolyCache.load(cache_dir, p)
            if cache.max_i >= max_i:
                _caches.setdefault(p, cache)
                return cache
    cache = _default_cache(p, max_i)
    if cache_dir is not None:
        cache.save(cache_dir)
    return cache


class WittRing:
    """W_n(A) for a coefficient ring A (the integers or a finite field)."""

    def __init__(self, p: int, n: int, base=INTEGERS, cache: WittPolyCache | None = None):
        if n < 0:
            raise ValueError("length must be non-negative")
        if isinstance(base, FqField) and base.p != p:
            raise ValueError(f"W over F_{base.order} needs p = {base.p}")
        self.p = p
        self.n = n
        self.base = base
        if cache is None and n > 0:
            cache = _default_cache(p, n - 1)
        if cache is not None and n > 0 and cache.max_i < n - 1:
            raise ValueError(f"polynomial cache only reaches index {cache.max_i}")
        self.cache = cache

    def __eq__(self, other):
        return isinstance(other, WittRing) and (self.p, self.n, self.base) == (other.p, other.n, other.base)

    def __hash__(self):
        return hash((self.p, self.n, self.base))

    def __repr__(self):
        return f"W_{self.n}({self.base!r})"

    def __call__(self, coeffs) -> WittVector:
        coeffs = tuple(self.base(c) for c in coeffs)
        if len(coeffs) != self.n:
            raise ValueError(f"expected {self.n} coordinates, got {len(coeffs)}")
        return WittVector(self, coeffs)

    @property
    def zero(self) -> WittVector:
        return self([self.base.zero] * self.n)

    @property
    def one(self) -> WittVector:
        return teichmuller_witt(self, self.base.one)

    def elements(self):
        """All vectors over a finite field, lexicographic in the coordinates."""
        if not isinstance(self.base, FqField):
            raise TypeError("only Witt vectors over finite fields can be enumerated")
        elems = list(self.base.elements())
        for coeffs in itertools.product(elems, repeat=self.n):
            yield WittVector(self, coeffs)


class WittVector:
    __slots__ = ("ring", "coeffs")

    def __init__(self, ring: WittRing, coeffs):
        self.ring = ring
        self.coeffs = tuple(coeffs)

    def _check(self, other):
        if not isinstance(other, WittVector):
            raise TypeError(f"expected a Witt vector, got {type(other).__name__}")
        if other.ring != self.ring:
            raise ValueError(f"mismatched Witt rings {self.ring!r} and {other.ring!r}")

    def _apply(self, tag, other):
        self._check(other)
        R = self.ring
        return WittVector(
            R,
            (R.cache.evaluate(tag, i, self.coeffs, other.coeffs, R.base.zero) for i in range(R.n)),
        )

    def __add__(self, other):
        return self._apply("S", other)

    def __mul__(self, other):
        return self._apply("P", other)

    def __neg__(self):
        # [-1] is the Witt vector -1 for odd p
        return teichmuller_witt(self.ring, -self.ring.base.one) * self

    def __sub__(self, other):
        return self + (-other)

    def __eq__(self, other):
        return isinstance(other, WittVector) and self.ring == other.ring and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"W{list(self.coeffs)}"

    def __iter__(self):
        return iter(self.coeffs)

    def __len__(self):
        return len(self.coeffs)


def witt_add(u: WittVector, v: WittVector) -> WittVector:
    return u + v


def witt_mul(u: WittVector, v: WittVector) -> WittVector:
    return u * v


def witt_neg(u: WittVector) -> WittVector:
    return -u


def witt_scalar(m: int, w: WittVector) -> WittVector:
    """The m-fold Witt sum of ``w`` (m >= 0)."""
    result = w.ring.zero
    for _ in range(m):
        result = result + w
    return result


def ghost(w: WittVector):
    """Ghost components (Phi_0(w), ..., Phi_{n-1}(w)) over the integers."""
    if w.ring.base is not INTEGERS:
        raise TypeError("ghost components need a torsion-free coefficient ring")
    p = w.ring.p
    return tuple(
        sum(p**j * w.coeffs[j] ** (p ** (i - j)) for j in range(i + 1)) for i in range(w.ring.n)
    )


def teichmuller_witt(ring: WittRing, a) -> WittVector:
    a = ring.base(a)
    return ring([a] + [ring.base.zero] * (ring.n - 1)) if ring.n else ring([])


def frobenius_W(w: WittVector) -> WittVector:
    """Coefficientwise p-th power; only defined in characteristic p."""
    R = w.ring
    if R.base.characteristic != R.p:
        raise TypeError("Witt Frobenius as coordinatewise p-th power needs characteristic p")
    return WittVector(R, (c**R.p for c in w.coeffs))


def verschiebung(w: WittVector) -> WittVector:
    """Shift right by one, dropping the last coordinate (length is kept)."""
    R = w.ring
    if R.n == 0:
        return w
    return WittVector(R, (R.base.zero,) + w.coeffs[:-1])


def _require_prime_field(w: WittVector):
    F = w.ring.base
    if not isinstance(F, FqField):
        raise TypeError("expected Witt vectors over a finite field")
    if F.k != 1 and not all(c.is_prime_field() for c in w.coeffs):
        raise ValueError("coordinates are not in the prime field")


def wittFp_to_zpn(w: WittVector) -> ModInt:
    """The ring isomorphism W_n(F_p) -> Z/p^n, sum_i p^i * teichmuller(w_i)."""
    _require_prime_field(w)
    p, n = w.ring.p, w.ring.n
    mod = p**n
    total = 0
    for i, c in enumerate(w.coeffs):
        total += p**i * _teich_int(c.to_int(), p, n)
    return ModInt(total, mod)


def _teich_int(c: int, p: int, n: int) -> int:
    if n == 0 or c % p == 0:
        return 0
    x = c % p**n
    for _ in range(n):
        x = pow(x, p, p**n)
    return x


def zpn_to_wittFp(x: ModInt | int, p: int, n: int, field: FqField | None = None) -> WittVector:
    """Inverse of :func:`wittFp_to_zpn` by successive Teichmuller digit extraction."""
    mod = p**n
    if isinstance(x, ModInt):
        if x.modulus != mod:
            raise ValueError(f"expected a residue mod {mod}")
        x = x.residue
    field = field or make_field(p, 1)
    r = x % mod
    digits = []
    for i in range(n):
        # r is divisible by p^i
        d = (r // p**i) % p
        digits.append(d)
        r = (r - p**i * _teich_int(d, p, n)) % mod
    assert r == 0
    return WittRing(p, n, field)(digits)


def witt_trace(w: WittVector) -> WittVector:
    """Witt sum of the Frobenius conjugates of ``w``, as a vector over F_p."""
    R = w.ring
    F = R.base
    if not isinstance(F, FqField):
        raise TypeError("witt_trace needs Witt vectors over a finite field")
    total = R.zero
    conj = w
    for _ in range(F.k):
        total = total + conj
        conj = frobenius_W(conj)
    if not all(c.is_prime_field() for c in total.coeffs):
        raise AssertionError(f"witt_trace left the prime field: {total!r}")
    Fp = make_field(R.p, 1)
    return WittRing(R.p, R.n, Fp, R.cache)([c.to_int() for c in total.coeffs])


def greenberg_split(u: PadicUnit | int, p: int | None = None, n: int | None = None):
    """Split a unit of Z/p^{n+1} as (c, w) in F_p^x x Z/p^n.

    c = u mod p and w = log(u / teichmuller(u)) / p mod p^n; the inverse is
    :func:`greenberg_join`.
    """
    if not isinstance(u, PadicUnit):
        u = PadicUnit(p, n + 1, u)
    elif n is None:
        n = u.N - 1
    c, w = unit_coords(u.reduce(n + 1), n)
    return make_field(u.p, 1)(c), w


def greenberg_join(c, w, p: int, n: int) -> PadicUnit:
    c = c.to_int() if isinstance(c, FqElem) else int(c)
    return coords_to_unit(c, w, p, n)


@functools.cache
def witt_ring(p: int, n: int, k: int = 1) -> WittRing:
    """W_n(F_{p^k}) over the canonical field."""
    return WittRing(p, n, make_field(p, k))
