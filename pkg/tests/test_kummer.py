import itertools
import math
from fractions import Fraction

import pytest
from sympy import isprime

from padic_trace.algebra import ModInt
from padic_trace.characters import CyclotomicValue, DepthNCharacter, char_depth, char_eval, enumerate_chars
from padic_trace.kummer import (
    MonomialMap,
    build_context,
    cartesian_check,
    correspondence_table,
    deck_transport,
    geometrize,
    kernel_parametrization,
    kernel_structure,
    kummer_prime,
    padic_trace,
    verify_commutes,
)
from padic_trace.padic import PadicUnit

from oracles import element_order_mod, invariant_factors_from_minors

GRID = [(p, n) for p in (3, 5, 7) for n in (1, 2, 3)]
SMALL = [(3, 0), (3, 1), (3, 2), (5, 0), (5, 1), (5, 2)]


def test_context_examples():
    c = build_context(3, 1)
    assert c.gamma.matrix == ((2, 0), (0, 3))
    assert c.alpha.matrix == ((3, 2),)
    assert c.theta.matrix == ((6,),)
    c = build_context(3, 2)
    assert c.gamma.matrix == ((2, 0, 0), (0, 3, 0), (0, -1, 3))
    assert c.alpha.matrix == ((9, 8, 6),)
    assert (c.alpha @ c.gamma).matrix == ((18, 18, 18),)
    c = build_context(5, 1)
    assert (c.theta.matrix, c.alpha.matrix, c.gamma.matrix) == (((20,),), ((5, 4),), ((4, 0), (0, 5)))
    assert c.e == ModInt(1, 5)
    assert build_context(3, 2).e == ModInt(4, 9)


def test_context_rejects_bad_input():
    for p, n in [(2, 1), (9, 1), (3, -1)]:
        with pytest.raises(ValueError):
            build_context(p, n)


def test_monomial_map_composition_and_evaluation():
    f = MonomialMap(((1, 2), (0, -1)))
    g = MonomialMap(((3, 0), (1, 1)))
    q = 11
    xs = [ModInt(2, q), ModInt(7, q)]
    assert (f @ g)(xs) == f(g(xs))
    assert f.determinant() == -1
    with pytest.raises(ValueError):
        MonomialMap(((1, 2), (3,)))
    with pytest.raises(ValueError):
        f @ MonomialMap(((1,),))


@pytest.mark.parametrize("p, n", GRID)
def test_diagram_commutes(p, n):
    ctx = build_context(p, n)
    M = ctx.M
    assert (ctx.alpha @ ctx.gamma).matrix == ((M,) * (n + 1),)
    cert = verify_commutes(ctx, samples=100, seed=p * 10 + n)
    assert cert.ok and cert.points == 100
    assert isprime(cert.lprime) and (cert.lprime - 1) % M == 0


def test_wrong_gamma_is_detected():
    ctx = build_context(3, 2)
    bad = MonomialMap(((2, 0, 0), (0, 3, 0), (0, 0, 3)))
    assert (ctx.alpha @ bad).matrix != (ctx.theta @ ctx.m).matrix


@pytest.mark.parametrize("M, lp", [(6, 7), (18, 19), (20, 41), (2, 3)])
def test_kummer_prime(M, lp):
    assert kummer_prime(M) == lp
    assert kummer_prime(2, avoid=3) == 5


@pytest.mark.parametrize("p, n", GRID)
def test_kernel_structure_of_gamma(p, n):
    gamma = build_context(p, n).gamma
    expected = (1,) * n + ((p - 1) * p**n,)
    assert kernel_structure(gamma) == expected
    if n <= 2:
        assert invariant_factors_from_minors(gamma.matrix) == expected


def test_kernel_structure_examples():
    assert kernel_structure(MonomialMap(((1, 0, 0), (0, 1, 0), (0, 0, 1)))) == (1, 1, 1)
    assert kernel_structure(MonomialMap(((2, 0), (0, 4)))) == (2, 4)
    with pytest.raises(ValueError):
        kernel_structure(MonomialMap(((1, 2), (2, 4))))
    with pytest.raises(ValueError):
        kernel_structure(MonomialMap(((1, 2),)))


@pytest.mark.parametrize("p, n, lp, size", [(3, 1, 7, 36), (3, 2, 19, 18**3), (5, 1, 41, 1600)])
def test_cartesian(p, n, lp, size):
    cert = cartesian_check(build_context(p, n), lp)
    assert cert.ok
    assert cert.source_size == cert.image_size == cert.fiber_product_size == size


def test_cartesian_rejects_bad_prime():
    with pytest.raises(ValueError):
        cartesian_check(build_context(3, 1), 11)


@pytest.mark.parametrize("p, n, k, ab", [(3, 1, 0, (0, 0)), (3, 1, 5, (1, 2)), (3, 2, 1, (1, 4))])
def test_deck_transport_examples(p, n, k, ab):
    a, b = deck_transport(build_context(p, n), k)
    assert (a.residue, b.residue) == ab


@pytest.mark.parametrize("p, n", [(3, 1), (3, 2), (5, 1)])
def test_deck_transport_matches_kernel_pullback(p, n):
    """Pull xi -> xi^k back along m on ker(gamma) over F_l' and read off exponents."""
    ctx = build_context(p, n)
    q = kummer_prime(ctx.M, p)
    powers = (pow(z, (q - 1) // ctx.M, q) for z in range(2, q))
    zeta_M = next(z for z in powers if element_order_mod(z, q) == ctx.M)
    param = kernel_parametrization(ctx, q, zeta_M)
    for (s, t), xs in param.items():
        assert ctx.gamma([ModInt(x, q) for x in xs]) == (ModInt(1, q),) * (n + 1)
    assert len(set(param.values())) == ctx.M
    logs = {pow(zeta_M, j, q): j for j in range(ctx.M)}
    for k in range(ctx.M):
        a, b = deck_transport(ctx, k)
        for (s, t), xs in param.items():
            (mx,) = ctx.m([ModInt(x, q) for x in xs])
            lhs = CyclotomicValue(k * logs[mx.residue], ctx.M)
            rhs = CyclotomicValue.from_fraction(Fraction(a.residue * s, p - 1) + Fraction(b.residue * t, p**n))
            assert lhs == rhs


@pytest.mark.parametrize("p, n", SMALL)
def test_padic_trace_is_isomorphism(p, n):
    ctx = build_context(p, n)
    M = ctx.M
    chis = [padic_trace(ctx, k) for k in range(M)]
    assert set(chis) == set(enumerate_chars(p, n))
    for k, chi in enumerate(chis):
        assert geometrize(ctx, chi) == ModInt(k, M)
        assert chi.order == M // math.gcd(k, M)
    for k, j in itertools.product(range(M), repeat=2):
        assert chis[(k + j) % M] == chis[k] * chis[j]
    for chi in enumerate_chars(p, n):
        assert padic_trace(ctx, geometrize(ctx, chi)) == chi


def test_padic_trace_examples():
    ctx = build_context(3, 1)
    assert padic_trace(ctx, 0) == DepthNCharacter.make(3, 1, 0, 0)
    chi = padic_trace(ctx, 1)
    assert (chi.a.residue, chi.b.residue) == (1, 1)
    assert char_eval(chi, PadicUnit(3, 2, 2)) == CyclotomicValue(1, 6)
    chi = padic_trace(ctx, 3)
    assert (chi.a.residue, chi.b.residue) == (1, 0) and char_depth(chi) == 0


def test_geometrize_examples():
    assert geometrize(build_context(3, 1), DepthNCharacter.make(3, 1, 0, 0)) == ModInt(0, 6)
    assert geometrize(build_context(3, 1), DepthNCharacter.make(3, 1, 1, 2)) == ModInt(5, 6)
    assert geometrize(build_context(3, 2), DepthNCharacter.make(3, 2, 1, 4)) == ModInt(1, 18)
    with pytest.raises(ValueError):
        geometrize(build_context(3, 2), DepthNCharacter.make(3, 1, 1, 1))


@pytest.mark.parametrize("p, n, rows, deep", [(3, 1, 6, 4), (5, 1, 20, 16), (3, 2, 18, 12)])
def test_table_counts(p, n, rows, deep):
    table = correspondence_table(build_context(p, n))
    assert len(table) == rows
    assert sum(r.depth == n for r in table) == deep
    r0 = table[0]
    assert (r0.order, r0.depth, r0.sample_values) == (1, 0, (CyclotomicValue.one(),))
    for r in table:
        assert r.order == r.sample_values[0].den


def test_table_p3_n1_values():
    table = correspondence_table(build_context(3, 1))
    got = [(r.k, r.a, r.b, r.depth, str(r.sample_values[0])) for r in table]
    assert got == [
        (0, 0, 0, 0, "0/1"),
        (1, 1, 1, 1, "1/6"),
        (2, 0, 2, 1, "1/3"),
        (3, 1, 0, 0, "1/2"),
        (4, 0, 1, 1, "2/3"),
        (5, 1, 2, 1, "5/6"),
    ]
    assert sum(r.depth == 0 for r in table) == 2
