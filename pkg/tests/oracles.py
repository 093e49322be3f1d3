"""Brute-force reference computations, independent of the package internals."""

import itertools
import math
from fractions import Fraction

import sympy


def poly_divides(d, f, p):
    """Whether monic d divides monic f over F_p (both as high-to-low coefficient lists)."""
    f = list(f)
    while len(f) >= len(d):
        c = f[0] % p
        for i, di in enumerate(d):
            f[i] = (f[i] - c * di) % p
        f.pop(0)
    return not any(x % p for x in f)


def is_irreducible_bruteforce(low_coeffs, p):
    """Trial division by every monic polynomial of degree 1..k//2."""
    k = len(low_coeffs)
    f = [1] + list(reversed(low_coeffs))
    for deg in range(1, k // 2 + 1):
        for tail in itertools.product(range(p), repeat=deg):
            if poly_divides([1] + list(tail), f, p):
                return False
    return True


def smallest_irreducible(p, k):
    """First monic irreducible when low coefficients are read as base-p digits of 0, 1, 2, ..."""
    for v in range(p**k):
        coeffs = tuple((v // p**i) % p for i in range(k))
        if is_irreducible_bruteforce(coeffs, p):
            return coeffs


def dlog_scan(g, x, m):
    """Discrete log of x to base g in (Z/m)^x by exhaustive powering."""
    y = 1
    for t in range(m):
        if y == x % m:
            return t
        y = y * g % m
    return None


def crt_scan(pairs):
    M = math.prod(m for _, m in pairs)
    return [x for x in range(M) if all(x % m == r % m for r, m in pairs)]


def witt_sum_poly(p, i):
    """S_i by symbolic ghost recursion with sympy rationals."""
    X = sympy.symbols(f"X0:{i + 1}")
    Y = sympy.symbols(f"Y0:{i + 1}")
    S = []
    for j in range(i + 1):
        ghost = lambda T: sum(p**t * T[t] ** (p ** (j - t)) for t in range(j + 1))
        rest = sum(p**t * S[t] ** (p ** (j - t)) for t in range(j))
        S.append(sympy.expand((ghost(X) + ghost(Y) - rest) / p**j))
    return S[i], X, Y


def teich_mod(c, p, N):
    """Teichmuller representative of c mod p^N by brute-force search for the (p-1)-st root of unity."""
    mod = p**N
    for x in range(c % p, mod, p):
        if pow(x, p - 1, mod) == 1:
            return x
    return None


def rational_to_mod(r, mod):
    r = Fraction(r)
    return r.numerator * pow(r.denominator, -1, mod) % mod


def log_series(v, p, N, terms=80):
    """log(v) mod p^N summed with exact rationals far past the needed index."""
    x = Fraction(v - 1)
    total = sum(Fraction((-1) ** (k + 1)) * x**k / k for k in range(1, terms))
    return rational_to_mod(total, p**N)


def exp_series(x, p, N, terms=80):
    total = sum(Fraction(x) ** k / math.factorial(k) for k in range(terms))
    return rational_to_mod(total, p**N)


def determinantal_divisors(rows):
    """gcd of all i x i minors, for i = 1..n."""
    M = sympy.Matrix(rows)
    n = M.rows
    out = []
    for i in range(1, n + 1):
        g = 0
        for r in itertools.combinations(range(n), i):
            for c in itertools.combinations(range(M.cols), i):
                g = math.gcd(g, int(M.extract(list(r), list(c)).det()))
        out.append(g)
    return out


def invariant_factors_from_minors(rows):
    d = determinantal_divisors(rows)
    prev = 1
    out = []
    for x in d:
        out.append(x // prev)
        prev = x
    return tuple(out)


def element_order_mod(u, m):
    y, t = u % m, 1
    while y != 1:
        y = y * u % m
        t += 1
    return t
