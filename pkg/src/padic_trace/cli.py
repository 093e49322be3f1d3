"""Command-line front end.

JSON goes to stdout with the layout {"params": ..., "results": [...], "version": "1"};
diagnostics go to stderr.  Exit status is 0 on success, 1 when a verification
check fails, and 2 for usage errors.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

from sympy import isprime

from . import kummer
from .characters import DepthNCharacter, char_depth, char_eval, unit_generator
from .padic import PadicUnit
from .verify import SUITES, Config, run_suite
from .witt import WittPolyCache

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2
VERSION = "1"
TABLE_LIMIT = 10**4
DEFAULT_CACHE_DIR = "wittpoly-cache"


class UsageError(Exception):
    pass


def _emit(args, params, results, text_lines):
    if args.format == "json":
        doc = {"params": params, "results": results, "version": VERSION}
        sys.stdout.write(json.dumps(doc, indent=2) + "\n")
    else:
        sys.stdout.write("\n".join(text_lines) + "\n")


def _config(args) -> Config:
    try:
        return Config(p=args.p, n=args.n, prec=args.prec, lprime=args.lprime, seed=args.seed, cache_dir=args.cache_dir)
    except ValueError as e:
        raise UsageError(str(e)) from None


def _character_json(chi: DepthNCharacter):
    u0 = PadicUnit(chi.p, chi.n + 1, unit_generator(chi.p, chi.n))
    return {
        "a": chi.a.residue,
        "b": chi.b.residue,
        "depth": char_depth(chi),
        "order": chi.order,
        "g": chi.g,
        "sample_unit": u0.residue,
        "sample_values": [char_eval(chi, u0).to_json()],
    }


def cmd_verify(args):
    cfg = _config(args)
    if args.suite not in SUITES + ("all",):
        raise UsageError(f"unknown suite {args.suite!r}")
    t = time.perf_counter()
    checks = run_suite(cfg, args.suite)
    failed = [c for c in checks if c.passed is False]
    for c in checks:
        status = "skip" if c.skipped else ("ok" if c.passed else "FAIL")
        print(f"[{status}] {c.suite}: {c.name} ({c.elapsed * 1000:.1f} ms)", file=sys.stderr)
    print(f"{len(checks)} checks, {len(failed)} failed, {time.perf_counter() - t:.2f} s", file=sys.stderr)
    params = dict(cfg.params(), suite=args.suite)
    results = [c.to_json(timing=args.timing) for c in checks]
    lines = [f"{r['status']:7} {r['suite']}: {r['check']} {json.dumps(r['counts'])}" for r in results]
    _emit(args, params, results, lines)
    return EXIT_CHECK_FAILED if failed else EXIT_OK


def cmd_trace(args):
    cfg = _config(args)
    ctx = kummer.build_context(cfg.p, cfg.n)
    if args.k is None or not 0 <= args.k < ctx.M:
        raise UsageError(f"--k must be in [0, {ctx.M})")
    chi = kummer.padic_trace(ctx, args.k)
    row = dict(k=args.k, **_character_json(chi))
    vals = ", ".join(f"{v['num']}/{v['den']}" for v in row["sample_values"])
    lines = [f"k={args.k} -> a={row['a']} b={row['b']} depth={row['depth']} g={row['g']} chi({row['sample_unit']})={vals}"]
    _emit(args, dict(cfg.params(), g=ctx.g), [row], lines)
    return EXIT_OK


def cmd_geometrize(args):
    cfg = _config(args)
    ctx = kummer.build_context(cfg.p, cfg.n)
    if args.a is None or not 0 <= args.a < cfg.p - 1:
        raise UsageError(f"--a must be in [0, {cfg.p - 1})")
    if args.b is None or not 0 <= args.b < cfg.p**cfg.n:
        raise UsageError(f"--b must be in [0, {cfg.p**cfg.n})")
    chi = DepthNCharacter.make(cfg.p, cfg.n, args.a, args.b)
    k = kummer.geometrize(ctx, chi).residue
    row = {"a": args.a, "b": args.b, "k": k}
    _emit(args, dict(cfg.params(), g=ctx.g), [row], [f"a={args.a} b={args.b} -> k={k}"])
    return EXIT_OK


def cmd_table(args):
    cfg = _config(args)
    M = (cfg.p - 1) * cfg.p**cfg.n
    if M > TABLE_LIMIT:
        raise UsageError(f"table has {M} rows, above the limit {TABLE_LIMIT}")
    ctx = kummer.build_context(cfg.p, cfg.n)
    rows = [r.to_json() for r in kummer.correspondence_table(ctx)]
    params = dict(cfg.params(), g=ctx.g, sample_unit=unit_generator(cfg.p, cfg.n))
    lines = [
        f"k={r['k']:<5} order={r['order']:<5} a={r['a']:<4} b={r['b']:<6} depth={r['depth']} "
        + " ".join(f"{v['num']}/{v['den']}" for v in r["sample_values"])
        for r in rows
    ]
    _emit(args, params, rows, lines)
    return EXIT_OK


def cmd_cache(args):
    cache_dir = args.cache_dir or DEFAULT_CACHE_DIR
    if args.p < 3 or not isprime(args.p):
        raise UsageError(f"p must be an odd prime, got {args.p}")
    if args.max_i < 0:
        raise UsageError("--max-i must be non-negative")
    params = {"p": args.p, "max_i": args.max_i, "cache_dir": cache_dir}
    if args.action == "build":
        cache = WittPolyCache.build(args.p, args.max_i)
        path = cache.save(cache_dir)
        print(f"wrote {path}", file=sys.stderr)
    else:
        path = WittPolyCache.path_for(cache_dir, args.p)
        try:
            cache = WittPolyCache.load(cache_dir, args.p)
        except (OSError, ValueError) as e:
            raise UsageError(f"cannot read cache {path}: {e}") from None
    results = [
        {"poly": tag, "i": i, "terms": len(poly), "max_abs_coeff": max(abs(c) for c in poly.values())}
        for i in range(cache.max_i + 1)
        for tag, poly in (("S", cache.S[i]), ("P", cache.P[i]))
    ]
    params["file"] = str(Path(path))
    lines = [f"{r['poly']}_{r['i']}: {r['terms']} terms, max |coeff| {r['max_abs_coeff']}" for r in results]
    _emit(args, params, results, lines)
    return EXIT_OK


def _common(parser, needs_n=True):
    parser.add_argument("--p", type=int, required=True)
    if needs_n:
        parser.add_argument("--n", type=int, required=True)
        parser.add_argument("--prec", type=int, default=None, help="working precision N (default n+2)")
        parser.add_argument("--lprime", type=int, default=None)
        parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--cache-dir", default=None)
    parser.add_argument("--format", choices=("json", "text"), default="json")


def build_parser():
    parser = argparse.ArgumentParser(prog="padic-trace", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="run verification suites")
    _common(p)
    p.add_argument("--suite", default="all", help="one of: " + ", ".join(SUITES + ("all",)))
    p.add_argument("--timing", action="store_true", help="include elapsed times in the JSON report")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("trace", help="character attached to a Kummer index")
    _common(p)
    p.add_argument("--k", type=int)
    p.set_defaults(func=cmd_trace)

    p = sub.add_parser("geometrize", help="Kummer index attached to a character")
    _common(p)
    p.add_argument("--a", type=int)
    p.add_argument("--b", type=int)
    p.set_defaults(func=cmd_geometrize)

    p = sub.add_parser("table", help="full correspondence table")
    _common(p)
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("cache", help="build or inspect the Witt polynomial cache")
    p.add_argument("action", choices=("build", "inspect"))
    _common(p, needs_n=False)
    p.add_argument("--max-i", type=int, default=2)
    p.set_defaults(func=cmd_cache)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK
    try:
        return args.func(args)
    except UsageError as e:
        print(f"padic-trace {args.command}: error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
