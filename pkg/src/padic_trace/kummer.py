"""Monomial maps of split tori and the Kummer side of the correspondence.

A :class:`MonomialMap` with integer matrix E sends (x_0, ..., x_c) to the
tuple whose r-th entry is prod_j x_j^E[r][j]; composition is the matrix
product.  :func:`build_context` sets up the four maps of the diagram

    G_m   <--m--   G_m^{n+1}
     |theta          |gamma
    G_m   <--alpha-- G_m^{n+1}

with theta(x) = x^{(p-1)p^n}, m the product of the coordinates,
alpha(x) = (x_0...x_n)^{p^n} / (x_1 x_2^p ... x_n^{p^{n-1}}) and
gamma(x) = (x_0^{p-1}, x_1^p, x_2^p/x_1, ..., x_n^p/x_{n-1}).

Kummer local systems in the image of theta are indexed by k mod (p-1)p^n
(the character xi -> xi^k of the deck group).  :func:`padic_trace` carries
k to the character of Z_p^x with exponents (k mod p-1, k*e mod p^n),
e = (p^n - 1)/(p - 1), and :func:`geometrize` inverts it.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass

from sympy import Matrix, isprime, nextprime
from sympy.matrices.normalforms import invariant_factors

from .algebra import ModInt, crt
from .characters import (
    DepthNCharacter,
    char_depth,
    char_eval,
    smallest_primitive_root,
    unit_generator,
)
from .padic import PadicUnit


@dataclass(frozen=True)
class MonomialMap:
    matrix: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(int(e) for e in row) for row in self.matrix)
        if len({len(r) for r in rows}) > 1:
            raise ValueError("ragged exponent matrix")
        object.__setattr__(self, "matrix", rows)

    @property
    def shape(self):
        return len(self.matrix), len(self.matrix[0]) if self.matrix else 0

    def compose(self, other: MonomialMap) -> MonomialMap:
        """self after other: E_{self o other} = E_self * E_other."""
        rows, inner = self.shape
        if inner != other.shape[0]:
            raise ValueError(f"cannot compose {self.shape} after {other.shape}")
        cols = other.shape[1]
        return MonomialMap(
            tuple(
                tuple(sum(self.matrix[r][t] * other.matrix[t][c] for t in range(inner)) for c in range(cols))
                for r in range(rows)
            )
        )

    def __matmul__(self, other: MonomialMap) -> MonomialMap:
        return self.compose(other)

    def __call__(self, xs):
        """Evaluate on units of a field or residue ring (anything with ** and inverse)."""
        xs = list(xs)
        if len(xs) != self.shape[1]:
            raise ValueError(f"expected {self.shape[1]} coordinates")
        out = []
        for row in self.matrix:
            acc = xs[0] ** 0
            for x, e in zip(xs, row):
                if e:
                    acc = acc * (x**e if e > 0 else x.inverse() ** (-e))
            out.append(acc)
        return tuple(out)

    def determinant(self) -> int:
        return int(Matrix(self.matrix).det())


def kernel_structure(f: MonomialMap):
    """Invariant factors d_1 | d_2 | ... of a square nonsingular exponent matrix.

    Over an algebraically closed field of good characteristic the kernel of
    the torus map is the sum of the Z/d_i.
    """
    r, c = f.shape
    if r != c:
        raise ValueError("kernel_structure needs a square matrix")
    if f.determinant() == 0:
        raise ValueError("singular exponent matrix")
    return tuple(abs(int(d)) for d in invariant_factors(Matrix(f.matrix)))


@dataclass(frozen=True)
class KummerContext:
    p: int
    n: int
    g: int
    theta: MonomialMap
    m: MonomialMap
    alpha: MonomialMap
    gamma: MonomialMap

    @property
    def M(self) -> int:
        return (self.p - 1) * self.p**self.n

    @property
    def e(self) -> ModInt:
        return ModInt((self.p**self.n - 1) // (self.p - 1), self.p**self.n)


def gamma_matrix(p: int, n: int):
    rows = []
    for j in range(n + 1):
        row = [0] * (n + 1)
        row[j] = p - 1 if j == 0 else p
        if j >= 2:
            row[j - 1] = -1
        rows.append(tuple(row))
    return tuple(rows)


def build_context(p: int, n: int) -> KummerContext:
    if p < 3 or not isprime(p):
        raise ValueError(f"p must be an odd prime, got {p}")
    if n < 0:
        raise ValueError("n must be non-negative")
    M = (p - 1) * p**n
    ctx = KummerContext(
        p=p,
        n=n,
        g=smallest_primitive_root(p),
        theta=MonomialMap(((M,),)),
        m=MonomialMap(((1,) * (n + 1),)),
        alpha=MonomialMap(((p**n,) + tuple(p**n - p ** (j - 1) for j in range(1, n + 1)),)),
        gamma=MonomialMap(gamma_matrix(p, n)),
    )
    if ctx.alpha @ ctx.gamma != ctx.theta @ ctx.m:
        raise AssertionError(f"alpha o gamma != theta o m for p={p}, n={n}")
    return ctx


def kummer_prime(M: int, avoid: int = 0) -> int:
    """Smallest prime l' = 1 mod M, skipping ``avoid``."""
    q = 1
    while True:
        q += M
        if q != avoid and isprime(q):
            return q


def _check_lprime(ctx: KummerContext, lprime: int):
    if not isprime(lprime) or (lprime - 1) % ctx.M:
        raise ValueError(f"l' = {lprime} is not a prime congruent to 1 mod {ctx.M}")


@dataclass(frozen=True)
class CommuteCertificate:
    matrix_identity: bool
    lprime: int
    points: int
    agreements: int

    @property
    def ok(self) -> bool:
        return self.matrix_identity and self.agreements == self.points


def verify_commutes(ctx: KummerContext, lprime: int | None = None, samples: int = 100, seed: int = 0):
    """alpha o gamma = theta o m, as exponent matrices and on random points of (F_l'^x)^{n+1}."""
    M = ctx.M
    row = ctx.alpha.compose(ctx.gamma).matrix
    identity = row == ((M,) * (ctx.n + 1),) and ctx.theta.compose(ctx.m).matrix == row
    lprime = lprime or kummer_prime(M, ctx.p)
    _check_lprime(ctx, lprime)
    rng = random.Random(seed)
    agree = 0
    for _ in range(samples):
        xs = [ModInt(rng.randrange(1, lprime), lprime) for _ in range(ctx.n + 1)]
        if ctx.alpha(ctx.gamma(xs)) == ctx.theta(ctx.m(xs)):
            agree += 1
    return CommuteCertificate(identity, lprime, samples, agree)


@dataclass(frozen=True)
class CartesianCertificate:
    lprime: int
    source_size: int
    image_size: int
    fiber_product_size: int
    image_in_fiber_product: bool
    bijective: bool

    @property
    def ok(self) -> bool:
        return self.image_in_fiber_product and self.bijective


def cartesian_check(ctx: KummerContext, lprime: int | None = None) -> CartesianCertificate:
    """Check that x -> (m(x), gamma(x)) maps (F_l'^x)^{n+1} bijectively onto
    {(x, y) : theta(x) = alpha(y)}, by enumerating both sides."""
    lprime = lprime or kummer_prime(ctx.M, ctx.p)
    _check_lprime(ctx, lprime)
    q = lprime
    units = range(1, q)
    inv = [0] + [pow(x, -1, q) for x in range(1, q)]

    def ev(f, xs):
        out = []
        for row in f.matrix:
            acc = 1
            for x, e in zip(xs, row):
                acc = acc * pow(x if e >= 0 else inv[x], abs(e), q) % q
            out.append(acc)
        return tuple(out)

    source = list(itertools.product(units, repeat=ctx.n + 1))
    image = set()
    inside = True
    for xs in source:
        x = ev(ctx.m, xs)
        y = ev(ctx.gamma, xs)
        if ev(ctx.theta, x) != ev(ctx.alpha, y):
            inside = False
        image.add((x, y))
    theta_fibers = {}
    for x in units:
        theta_fibers.setdefault(pow(x, ctx.M, q), []).append(x)
    fiber_product = set()
    for y in source:
        (t,) = ev(ctx.alpha, y)
        for x in theta_fibers.get(t, ()):
            fiber_product.add(((x,), y))
    return CartesianCertificate(
        lprime=q,
        source_size=len(source),
        image_size=len(image),
        fiber_product_size=len(fiber_product),
        image_in_fiber_product=inside and image <= fiber_product,
        bijective=len(image) == len(source) and image == fiber_product,
    )


def kummer_index(ctx: KummerContext, k: int) -> ModInt:
    return ModInt(k, ctx.M)


def deck_transport(ctx: KummerContext, k: ModInt | int):
    """Exponents (a, b) of the pullback along m of xi -> xi^k on ker(theta)."""
    k = int(k) % ctx.M
    return ModInt(k, ctx.p - 1), ModInt(k, ctx.p**ctx.n) * ctx.e


def padic_trace(ctx: KummerContext, k: ModInt | int) -> DepthNCharacter:
    a, b = deck_transport(ctx, k)
    return DepthNCharacter(ctx.p, ctx.n, a, b, ctx.g)


def geometrize(ctx: KummerContext, chi: DepthNCharacter) -> ModInt:
    """The index k with padic_trace(ctx, k) == chi."""
    if (chi.p, chi.n, chi.g) != (ctx.p, ctx.n, ctx.g):
        raise ValueError("character from a different context")
    b = chi.b * ctx.e.inverse() if ctx.n else chi.b
    return crt([(chi.a.residue, ctx.p - 1), (b.residue, ctx.p**ctx.n)])


@dataclass(frozen=True)
class TableRow:
    k: int
    order: int
    a: int
    b: int
    depth: int
    sample_values: tuple

    def to_json(self):
        return {
            "k": self.k,
            "order": self.order,
            "a": self.a,
            "b": self.b,
            "depth": self.depth,
            "sample_values": [v.to_json() for v in self.sample_values],
        }


def correspondence_table(ctx: KummerContext):
    """One row per Kummer index k, with the character it is sent to."""
    M = ctx.M
    u0 = PadicUnit(ctx.p, ctx.n + 1, unit_generator(ctx.p, ctx.n))
    rows = []
    for k in range(M):
        chi = padic_trace(ctx, k)
        rows.append(
            TableRow(
                k=k,
                order=M // math.gcd(k, M),
                a=chi.a.residue,
                b=chi.b.residue,
                depth=char_depth(chi),
                sample_values=(char_eval(chi, u0),),
            )
        )
    return rows


def kernel_parametrization(ctx: KummerContext, lprime: int, zeta_M: int):
    """Points of ker(gamma) over F_l' indexed by (s, t) in Z/(p-1) x Z/p^n.

    zeta_M must have order (p-1)p^n in F_l'^x; the roots of unity used are
    zeta_{p-1} = zeta_M^{p^n} and zeta = zeta_M^{p-1}.
    """
    p, n, q = ctx.p, ctx.n, lprime
    z_tame = pow(zeta_M, p**n, q)
    z_wild = pow(zeta_M, p - 1, q)
    out = {}
    for s in range(p - 1):
        for t in range(p**n):
            xs = (pow(z_tame, s, q),) + tuple(pow(z_wild, t * p ** (n - j), q) for j in range(1, n + 1))
            out[(s, t)] = xs
    return out
