"""The Lang isogeny on G = G_m x W_n over finite fields.

Points of G over F_{p^k} are pairs (x, w) with x a unit of F_{p^k} and w a
Witt vector of length n over F_{p^k}; the group law is (multiply, Witt add).
Lang(y) = Fr(y) - y, written multiplicatively on G_m (x -> x^(p-1)) and
additively on W_n (w -> F(w) - w).

Fibers are found by exhaustive enumeration.  Since Lang acts coordinatewise,
the fiber over a = (a_x, a_w) is the product of the G_m fiber over a_x and the
W_n fiber over a_w, and each factor is enumerated on its own.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

from .algebra import FqElem, FqField, discrete_log, embedding, make_field, multiplicative_order, norm
from .characters import CyclotomicValue, DepthNCharacter
from .witt import WittRing, WittVector, frobenius_W, witt_ring, witt_trace, wittFp_to_zpn

DEFAULT_K_MAX = 6


class FiberError(RuntimeError):
    """The fiber did not become fully rational over F_{p^k} for any k <= k_max."""

    def __init__(self, msg, k_attempted):
        super().__init__(msg)
        self.k_attempted = k_attempted


@dataclass(frozen=True)
class LangPoint:
    x: FqElem
    w: WittVector

    def __post_init__(self):
        if not self.x:
            raise ValueError("G_m coordinate must be nonzero")
        if self.w.ring.base != self.x.field:
            raise ValueError("coordinates over different fields")

    @property
    def field(self) -> FqField:
        return self.x.field

    @property
    def p(self) -> int:
        return self.x.field.p

    @property
    def n(self) -> int:
        return self.w.ring.n

    def __add__(self, other: LangPoint) -> LangPoint:
        return LangPoint(self.x * other.x, self.w + other.w)

    def __neg__(self) -> LangPoint:
        return LangPoint(self.x.inverse(), -self.w)

    def __sub__(self, other: LangPoint) -> LangPoint:
        return self + (-other)

    def is_prime_field(self) -> bool:
        return self.x.is_prime_field() and all(c.is_prime_field() for c in self.w.coeffs)

    def __repr__(self):
        return f"LangPoint({self.x!r}, {self.w!r})"


def identity(p: int, n: int, k: int = 1) -> LangPoint:
    R = witt_ring(p, n, k)
    return LangPoint(R.base.one, R.zero)


def point(x, w, p: int, n: int, k: int = 1) -> LangPoint:
    R = witt_ring(p, n, k)
    return LangPoint(R.base(x), R(w))


def points(p: int, n: int, k: int = 1):
    """All points of G(F_{p^k}): x in enumeration order, then w."""
    R = witt_ring(p, n, k)
    ws = list(R.elements())
    for x in R.base.units():
        for w in ws:
            yield LangPoint(x, w)


def frobenius_point(y: LangPoint, times: int = 1) -> LangPoint:
    """Arithmetic Frobenius (coordinatewise p-th power), iterated ``times`` times.

    This is the single place the Frobenius convention is fixed.
    """
    x, w = y.x, y.w
    for _ in range(times):
        x = x ** y.p
        w = frobenius_W(w)
    return LangPoint(x, w)


def lang_map(y: LangPoint) -> LangPoint:
    fy = frobenius_point(y)
    return LangPoint(fy.x / y.x, fy.w - y.w)


def embed_point(a: LangPoint, field: FqField) -> LangPoint:
    """Carry a point into a larger field of the same characteristic."""
    if a.field == field:
        return a
    if a.field.k == 1:
        emb = lambda c: field(c.to_int())
    else:
        emb = embedding(a.field, field)
    R = WittRing(a.p, a.n, field, a.w.ring.cache)
    return LangPoint(emb(a.x), R([emb(c) for c in a.w.coeffs]))


def to_prime_field(y: LangPoint) -> LangPoint:
    if not y.is_prime_field():
        raise ValueError(f"{y!r} is not an F_p-point")
    R = witt_ring(y.p, y.n, 1)
    return LangPoint(R.base(y.x.to_int()), R([c.to_int() for c in y.w.coeffs]))


def _fiber_in(a: LangPoint, F: FqField):
    a = embed_point(a, F)
    p = F.p
    xs = [x for x in F.units() if x ** (p - 1) == a.x]
    R = WittRing(p, a.n, F, a.w.ring.cache)
    ws = [w for w in R.elements() if frobenius_W(w) - w == a.w]
    return [LangPoint(x, w) for x, w in itertools.product(xs, ws)]


def lang_fiber(a: LangPoint, k_max: int = DEFAULT_K_MAX):
    """Return (k, fiber) for the smallest k <= k_max over which Lang^{-1}(a) is fully rational.

    The full fiber has (p-1)p^n points.
    """
    if not a.is_prime_field():
        raise ValueError("lang_fiber expects a point with prime-field coordinates")
    p, n = a.p, a.n
    expected = (p - 1) * p**n
    for k in range(1, k_max + 1):
        fiber = _fiber_in(a, make_field(p, k))
        if len(fiber) == expected:
            return k, fiber
        if len(fiber) > expected:
            raise AssertionError(f"fiber over {a!r} has {len(fiber)} > {expected} points")
    raise FiberError(f"fiber over {a!r} not rational over F_{p}^k for k <= {k_max}", k_max)


def fiber_field_degree(a: LangPoint) -> int:
    """Degree of the smallest field containing the fiber over a prime-field point.

    Frobenius translates the fiber by a, so Fr^j fixes it exactly when j*a = 0.
    """
    a = to_prime_field(a)
    ox = multiplicative_order(a.x)
    ow = wittFp_to_zpn(a.w).order() if a.n else 1
    return math.lcm(ox, ow)


@dataclass(frozen=True)
class DeckCertificate:
    point: LangPoint
    k: int
    fiber_size: int
    frobenius_is_translation: bool
    torsor: bool

    @property
    def ok(self) -> bool:
        return self.frobenius_is_translation and self.torsor


def deck_translation(a: LangPoint, k_max: int = DEFAULT_K_MAX, fiber=None) -> DeckCertificate:
    """Check that Frobenius acts on Lang^{-1}(a) as translation by a, and that
    the fiber is a G(F_p)-torsor."""
    if fiber is None:
        k, fiber = lang_fiber(a, k_max)
    else:
        k, fiber = fiber
    F = fiber[0].field
    a_big = embed_point(a, F)
    translation = all(frobenius_point(y) == y + a_big for y in fiber)
    y0 = fiber[0]
    diffs = {y - y0 for y in fiber}
    kernel = {embed_point(z, F) for z in points(a.p, a.n, 1)}
    return DeckCertificate(a, k, len(fiber), translation, diffs == kernel)


def deck_element(a: LangPoint, k_max: int = DEFAULT_K_MAX, fiber=None) -> LangPoint:
    """The element d of G(F_p) with Fr(y) = y + d on the fiber over a."""
    if fiber is None:
        _, fiber = lang_fiber(a, k_max)
    else:
        _, fiber = fiber
    y = fiber[0]
    d = frobenius_point(y) - y
    assert all(frobenius_point(z) - z == d for z in fiber)
    return to_prime_field(d)


def character_on_point(psi: DepthNCharacter, d: LangPoint) -> CyclotomicValue:
    """psi on G(F_p) = F_p^x x W_n(F_p) via ind_g and W_n(F_p) = Z/p^n."""
    if (d.p, d.n) != (psi.p, psi.n):
        raise ValueError("character and point have different (p, n)")
    d = to_prime_field(d)
    Fp = d.field
    ind = discrete_log(Fp(psi.g), d.x, psi.p - 1)
    return psi.on_coords(ind, wittFp_to_zpn(d.w) if d.n else 0)


def trace_function(psi: DepthNCharacter, a: LangPoint, k_max: int = DEFAULT_K_MAX, fiber=None):
    """Trace of Frobenius of the Lang local system attached to psi, at the point a.

    Over F_p the value is psi of the deck element by which Frobenius translates
    the fiber over a.  Over F_{p^k}, k > 1, it is psi(norm(x), witt_trace(w)).
    """
    if a.field.k == 1:
        return character_on_point(psi, deck_element(a, k_max, fiber))
    R = witt_ring(a.p, a.n, 1)
    d = LangPoint(R.base(norm(a.x).to_int()), witt_trace(a.w) if a.n else R.zero)
    return character_on_point(psi, d)


def twisted_deck_element(a: LangPoint, big: FqField) -> LangPoint:
    """For a over F_{p^k}: the element d with Fr^k(y) = y + d on Lang^{-1}(a), found inside ``big``.

    Returned as an F_p-point.  Only implemented for n = 0 (the G_m factor).
    """
    if a.n != 0:
        raise NotImplementedError("twisted fibers are only enumerated on G_m")
    k = a.field.k
    emb = embedding(a.field, big)
    ax = emb(a.x)
    ys = [y for y in big.units() if y ** (big.p - 1) == ax]
    if len(ys) != big.p - 1:
        raise FiberError(f"fiber over {a!r} not rational over F_{big.order}", big.k)
    ratios = {(y ** (big.p**k)) / y for y in ys}
    if len(ratios) != 1:
        raise AssertionError("Fr^k does not act by a single translation")
    (d,) = ratios
    R = witt_ring(big.p, 0, 1)
    return LangPoint(R.base(d.to_int()), R.zero)


def lang_kernel(p: int, n: int, k: int):
    """Points of G(F_{p^k}) killed by Lang, found by exhaustive search."""
    e = identity(p, n, k)
    return [y for y in points(p, n, k) if lang_map(y) == e]
