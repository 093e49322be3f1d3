"""Verification suites run by ``padic-trace verify``.

Each suite returns a list of :class:`Check` records.  Checks are exhaustive
unless their name says otherwise; randomized checks draw from a
``random.Random(seed)``.
"""

from __future__ import annotations

import itertools
import math
import random
import time
from dataclasses import dataclass, field

from sympy import isprime

from . import kummer, lang
from .algebra import ModInt, make_field, units_mod
from .characters import char_depth, char_eval, enumerate_chars, trivial_character, unit_generator
from .padic import PadicUnit, coords_to_unit, pexp, plog, teichmuller_lift, unit_coords
from .witt import (
    INTEGERS,
    WittRing,
    ghost,
    greenberg_join,
    greenberg_split,
    load_or_build,
    wittFp_to_zpn,
    zpn_to_wittFp,
)

SUITES = ("commute", "kernel", "cartesian", "lang", "unit-iso", "witt", "roundtrip")
LANG_FIELD_LIMIT = 10**4
CARTESIAN_LIMIT = 2 * 10**5
PAIRWISE_LIMIT = 200
LANG_CHECKS = (
    "fibers and deck translation",
    "trace of Frobenius is an isomorphism",
    "lang trace agrees with unit evaluation",
)


@dataclass
class Check:
    suite: str
    name: str
    passed: bool | None
    counts: dict = field(default_factory=dict)
    note: str = ""
    elapsed: float = 0.0

    @property
    def skipped(self) -> bool:
        return self.passed is None

    def to_json(self, timing: bool = False):
        out = {
            "suite": self.suite,
            "check": self.name,
            "status": "skipped" if self.skipped else ("pass" if self.passed else "fail"),
            "counts": self.counts,
        }
        if self.note:
            out["note"] = self.note
        if timing:
            out["elapsed_ms"] = round(self.elapsed * 1000, 3)
        return out


@dataclass(frozen=True)
class Config:
    p: int
    n: int
    prec: int | None = None
    lprime: int | None = None
    seed: int = 0
    cache_dir: str | None = None

    def __post_init__(self):
        if self.p < 3 or not isprime(self.p):
            raise ValueError(f"p must be an odd prime, got {self.p}")
        if self.n < 0:
            raise ValueError("n must be non-negative")
        if self.N < self.n + 1:
            raise ValueError(f"precision must be >= n+1 = {self.n + 1}")
        if self.lprime is not None:
            M = (self.p - 1) * self.p**self.n
            if not isprime(self.lprime) or (self.lprime - 1) % M:
                raise ValueError(f"l' must be a prime congruent to 1 mod {M}")

    @property
    def N(self) -> int:
        return self.prec if self.prec is not None else self.n + 2

    def params(self):
        return {
            "p": self.p,
            "n": self.n,
            "prec": self.N,
            "lprime": self.lprime,
            "seed": self.seed,
        }


def _pairs(elems, generator):
    """Pairs on which to test a homomorphism of cyclic groups.

    Small groups get every pair; larger ones get (x, generator) for every x,
    which together with f(identity) = identity implies the property by induction.
    """
    if len(elems) <= PAIRWISE_LIMIT:
        return itertools.product(elems, repeat=2)
    return ((x, generator) for x in elems)


class _Suite:
    def __init__(self, name):
        self.name = name
        self.checks = []

    def check(self, name, fn):
        t = time.perf_counter()
        passed, counts, *note = fn()
        self.checks.append(
            Check(self.name, name, passed, counts, note[0] if note else "", time.perf_counter() - t)
        )


def suite_commute(cfg: Config):
    s = _Suite("commute")
    ctx = kummer.build_context(cfg.p, cfg.n)

    def run():
        cert = kummer.verify_commutes(ctx, cfg.lprime, 100, cfg.seed)
        return cert.ok, {"lprime": cert.lprime, "points": cert.points, "agreements": cert.agreements}

    s.check("alpha.gamma == theta.m", run)
    return s.checks


def suite_kernel(cfg: Config):
    s = _Suite("kernel")
    ctx = kummer.build_context(cfg.p, cfg.n)
    M = ctx.M

    def snf():
        factors = kummer.kernel_structure(ctx.gamma)
        return factors == (1,) * cfg.n + (M,), {"invariant_factors": list(factors)}

    def transport():
        images = [kummer.deck_transport(ctx, k) for k in range(M)]
        bijective = len({(a.residue, b.residue) for a, b in images}) == M
        hom = images[0] == (0, 0) and all(
            images[(k1 + k2) % M] == (images[k1][0] + images[k2][0], images[k1][1] + images[k2][1])
            for k1, k2 in _pairs(range(M), 1)
        )
        return bijective and hom, {"indices": M}

    s.check("gamma invariant factors", snf)
    s.check("deck transport is an isomorphism", transport)
    return s.checks


def suite_cartesian(cfg: Config):
    s = _Suite("cartesian")
    ctx = kummer.build_context(cfg.p, cfg.n)

    lprime = cfg.lprime or kummer.kummer_prime(ctx.M, cfg.p)
    size = (lprime - 1) ** (cfg.n + 1)
    if size > CARTESIAN_LIMIT:
        note = f"{size} points over F_{lprime} exceeds the enumeration limit {CARTESIAN_LIMIT}"
        s.check("left square is cartesian", lambda: (None, {"lprime": lprime}, note))
        return s.checks

    def run():
        cert = kummer.cartesian_check(ctx, lprime)
        return cert.ok, {
            "lprime": cert.lprime,
            "points": cert.source_size,
            "fiber_product": cert.fiber_product_size,
        }

    s.check("left square is cartesian", run)
    return s.checks


def lang_feasible(p: int, n: int) -> bool:
    return p ** math.lcm(p - 1, p**n) <= LANG_FIELD_LIMIT


def suite_lang(cfg: Config):
    s = _Suite("lang")
    p, n = cfg.p, cfg.n
    if not lang_feasible(p, n):
        note = f"fibers need F_{p}^{math.lcm(p - 1, p**n)}, beyond the enumeration limit"
        for name in LANG_CHECKS:
            s.check(name, lambda: (None, {}, note))
        return s.checks
    k_max = math.lcm(p - 1, p**n)
    G = list(lang.points(p, n, 1))
    fibers = {}

    def deck():
        ok = True
        for a in G:
            fibers[a] = lang.lang_fiber(a, k_max)
            cert = lang.deck_translation(a, fiber=fibers[a])
            ok &= cert.ok and cert.fiber_size == len(G)
        return ok, {"points": len(G), "fiber_size": len(G)}

    def iso():
        chars = enumerate_chars(p, n)
        deck_elems = {a: lang.deck_element(a, fiber=fibers[a]) for a in G}
        tables = {}
        for psi in chars:
            tables[psi] = tuple(lang.character_on_point(psi, deck_elems[a]) for a in G)
        injective = len(set(tables.values())) == len(chars) == len(G)
        # each table is a homomorphism G(F_p) -> mu
        index = {a: i for i, a in enumerate(G)}
        hom = all(
            t[index[a + b]] == t[index[a]] * t[index[b]]
            for t in tables.values()
            for a, b in itertools.product(G, repeat=2)
        )
        mult = all(
            tables[psi1 * psi2] == tuple(x * y for x, y in zip(tables[psi1], tables[psi2]))
            for psi1, psi2 in itertools.product(chars, repeat=2)
        )
        return injective and hom and mult, {"characters": len(chars), "points": len(G)}

    def composite():
        # trace of Frobenius on G(F_p), read through Z_p^x / (1 + p^{n+1}), is char_eval
        ctx = kummer.build_context(p, n)
        ok = True
        for k in range(ctx.M):
            chi = kummer.padic_trace(ctx, k)
            for a in G:
                u = greenberg_join(a.x, wittFp_to_zpn(a.w) if n else 0, p, n)
                ok &= lang.trace_function(chi, a, fiber=fibers[a]) == char_eval(chi, u)
        return ok, {"indices": ctx.M, "points": len(G)}

    for name, fn in zip(LANG_CHECKS, (deck, iso, composite)):
        s.check(name, fn)
    return s.checks


def suite_unit_iso(cfg: Config):
    s = _Suite("unit-iso")
    p, n, N = cfg.p, cfg.n, cfg.N
    mod = p ** (n + 1)
    units = [u.residue for u in units_mod(mod)]
    gen = unit_generator(p, n)

    def coords():
        table = {u: unit_coords(PadicUnit(p, N, u), n) for u in units}
        hom = all(
            table[(u * v) % mod] == ((table[u][0] * table[v][0]) % p, table[u][1] + table[v][1])
            for u, v in _pairs(units, gen)
        )
        kernel = [u for u in units if table[u] == (1, ModInt(0, p**n))]
        bij = len(set(table.values())) == len(units) == (p - 1) * p**n
        # only u mod p^{n+1} matters
        lifts = all(unit_coords(PadicUnit(p, N, u + mod * j), n) == table[u] for u in units for j in range(1, 3))
        inverse = all(coords_to_unit(*table[u], p, n).residue == u for u in units) and all(
            unit_coords(PadicUnit(p, N, coords_to_unit(c, b, p, n).residue), n) == (c, ModInt(b, p**n))
            for c in range(1, p)
            for b in range(p**n)
        )
        ok = hom and kernel == [1] and bij and lifts and inverse
        return ok, {"units": len(units)}

    def greenberg():
        table = {u: greenberg_split(u, p, n) for u in units}
        hom = all(
            table[(u * v) % mod] == (table[u][0] * table[v][0], table[u][1] + table[v][1])
            for u, v in _pairs(units, gen)
        )
        hom &= table[1] == (1, ModInt(0, p**n))
        inverse = all(greenberg_join(*table[u], p, n).residue == u for u in units)
        return hom and inverse and len(set(table.values())) == len(units), {"units": len(units)}

    def series():
        Nmax = N
        ok = True
        count = 0
        for r in range(1, p**Nmax, p):
            v = PadicUnit(p, Nmax, r)
            ok &= pexp(plog(v), p) == v
            count += 1
        for x in range(0, p**Nmax, p):
            ok &= plog(pexp(ModInt(x, p**Nmax), p)) == ModInt(x, p**Nmax)
        for u in range(1, p**Nmax):
            if u % p:
                t = teichmuller_lift(PadicUnit(p, Nmax, u))
                ok &= (t ** (p - 1)).residue == 1 and t.residue % p == u % p
        return ok, {"principal_units": count, "precision": Nmax}

    s.check("unit coordinates are an isomorphism", coords)
    s.check("greenberg splitting is an isomorphism", greenberg)
    s.check("exp and log are inverse", series)
    return s.checks


def suite_witt(cfg: Config):
    s = _Suite("witt")
    p = cfg.p
    L = max(cfg.n, 2)
    rng = random.Random(cfg.seed)
    cache = None

    def integrality():
        nonlocal cache
        cache = load_or_build(p, L - 1, cfg.cache_dir)
        return True, {"max_index": cache.max_i, "terms": sum(len(a) + len(b) for a, b in zip(cache.S, cache.P))}

    def ring_iso():
        Fp = make_field(p, 1)
        R = WittRing(p, L, Fp, cache)
        mod = p**L
        if mod <= 125:
            pairs = itertools.product(range(mod), repeat=2)
        else:
            pairs = [(rng.randrange(mod), rng.randrange(mod)) for _ in range(300)]
        vec = {x: zpn_to_wittFp(x, p, L) for x in range(mod)} if mod <= 125 else None
        ok = True
        count = 0
        for x, y in pairs:
            u = vec[x] if vec else zpn_to_wittFp(x, p, L)
            v = vec[y] if vec else zpn_to_wittFp(y, p, L)
            u, v = R(u.coeffs), R(v.coeffs)
            ok &= wittFp_to_zpn(u + v) == ModInt(x + y, mod)
            ok &= wittFp_to_zpn(u * v) == ModInt(x * y, mod)
            count += 1
        return ok, {"pairs": count}

    def ghost_hom():
        R = WittRing(p, L, INTEGERS, cache)
        ok = True
        trials = 200
        for _ in range(trials):
            u = R([rng.randrange(-50, 50) for _ in range(L)])
            v = R([rng.randrange(-50, 50) for _ in range(L)])
            gu, gv = ghost(u), ghost(v)
            ok &= ghost(u + v) == tuple(a + b for a, b in zip(gu, gv))
            ok &= ghost(u * v) == tuple(a * b for a, b in zip(gu, gv))
        return ok, {"random_pairs": trials}

    s.check("witt polynomials are integral", integrality)
    s.check("W_n(F_p) is Z/p^n as rings", ring_iso)
    s.check("ghost map is a ring homomorphism (randomized)", ghost_hom)
    return s.checks


def suite_roundtrip(cfg: Config):
    s = _Suite("roundtrip")
    ctx = kummer.build_context(cfg.p, cfg.n)
    M = ctx.M

    def inverse():
        chars = enumerate_chars(cfg.p, cfg.n)
        ok = all(int(kummer.geometrize(ctx, kummer.padic_trace(ctx, k))) == k for k in range(M))
        ok &= all(kummer.padic_trace(ctx, kummer.geometrize(ctx, chi)) == chi for chi in chars)
        return ok, {"indices": M}

    def homomorphism():
        chars = [kummer.padic_trace(ctx, k) for k in range(M)]
        pairs = list(_pairs(range(M), 1))
        ok = chars[0] == trivial_character(cfg.p, cfg.n) and all(
            chars[(k1 + k2) % M] == chars[k1] * chars[k2] for k1, k2 in pairs
        )
        return ok, {"pairs": len(pairs)}

    def orders():
        u0 = PadicUnit(cfg.p, cfg.n + 1, unit_generator(cfg.p, cfg.n))
        ok = True
        for k in range(M):
            chi = kummer.padic_trace(ctx, k)
            order = M // math.gcd(k, M)
            ok &= chi.order == order == char_eval(chi, u0).den
        return ok, {"indices": M}

    def depths():
        chars = enumerate_chars(cfg.p, cfg.n)
        counts = [sum(char_depth(c) <= m for c in chars) for m in range(cfg.n + 1)]
        ok = counts == [(cfg.p - 1) * cfg.p**m for m in range(cfg.n + 1)]
        return ok, {"depth_at_most": counts}

    s.check("geometrize inverts padic_trace", inverse)
    s.check("padic_trace is a homomorphism", homomorphism)
    s.check("orders correspond", orders)
    s.check("depth stratification", depths)
    return s.checks


RUNNERS = {
    "commute": suite_commute,
    "kernel": suite_kernel,
    "cartesian": suite_cartesian,
    "lang": suite_lang,
    "unit-iso": suite_unit_iso,
    "witt": suite_witt,
    "roundtrip": suite_roundtrip,
}


def run_suite(cfg: Config, suite: str):
    if suite == "all":
        return [c for name in SUITES for c in RUNNERS[name](cfg)]
    if suite not in RUNNERS:
        raise ValueError(f"unknown suite {suite!r}")
    return RUNNERS[suite](cfg)
