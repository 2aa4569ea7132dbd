"""Command-line front end.

Subcommands: compare, lts, axioms, interpret, selftest. Exit codes follow
one convention everywhere: 0 the property holds / run succeeded, 1 the
property fails, 2 usage, parse or resource errors.
"""

from __future__ import annotations

import argparse
import json
import random as _random
import sys
import time

from . import axioms, relations, trees
from ._kernel import IMPLEMENTATION as KERNEL_IMPLEMENTATION
from .semantics import StateSpaceExceeded, explore
from .syntax import GenConfig, ParseError, Sum, draw, letters, parse

EXIT_HOLDS = 0
EXIT_FAILS = 1
EXIT_ERROR = 2


def _build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="simrex",
        description="Process semantics of regular expressions: equivalence "
        "deciders, axiom soundness suites, tree-language interpretations.",
    )
    sub = top.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compare", help="decide a relation between two expressions")
    p.add_argument("relation", choices=relations.RELATIONS,
                   help="sim: right simulates left; simeq/bisim/trace: equivalences")
    p.add_argument("left")
    p.add_argument("right")
    p.add_argument("--cap", type=int, default=10000, help="state-space cap (default 10000)")
    p.add_argument("--format", choices=("text", "json"), default="text")

    p = sub.add_parser("lts", help="explore an expression into a transition system")
    p.add_argument("expr")
    p.add_argument("--cap", type=int, default=10000)
    p.add_argument("--format", choices=("dot", "json"), default="dot")

    p = sub.add_parser("axioms", help="run the randomized axiom soundness suite")
    p.add_argument("--seed", type=int, default=None, help="default: fresh entropy")
    p.add_argument("--instances", type=int, default=1000, help="instances per schema")
    p.add_argument("--max-size", type=int, default=12)
    p.add_argument("--alphabet", default="abc")
    p.add_argument("--star-probability", type=float, default=0.25)
    p.add_argument("--cap", type=int, default=10000)
    p.add_argument("--only", action="append", metavar="SCHEMA",
                   help="restrict to named schemas (repeatable)")
    p.add_argument("--format", choices=("text", "json"), default="text")

    p = sub.add_parser("interpret", help="bounded tree-language interpretation")
    p.add_argument("expr")
    which = p.add_mutually_exclusive_group(required=True)
    which.add_argument("--std", action="store_true",
                       help="standard interpretation: each letter a maps to {a(*)}")
    which.add_argument("--file", help="interpretation file (see README for the format)")
    p.add_argument("--bound", type=int, default=6, help="tree size bound (default 6)")

    p = sub.add_parser("selftest", help="run the property battery")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--instances", type=int, default=100,
                   help="per axiom schema; other sample counts scale with it")
    p.add_argument("--cap", type=int, default=10000)

    return top


def _parse_operand(text: str):
    try:
        return parse(text)
    except ParseError as e:
        print(f"error: cannot parse {text!r}: {e}", file=sys.stderr)
        raise SystemExit(EXIT_ERROR) from None


def _cmd_compare(args: argparse.Namespace) -> int:
    x = _parse_operand(args.left)
    y = _parse_operand(args.right)
    try:
        report = relations.compare(x, y, args.relation, cap=args.cap)
    except StateSpaceExceeded as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_ERROR
    if args.format == "json":
        print(json.dumps(report.to_json_dict(), indent=2, sort_keys=True))
    else:
        word = "holds" if report.verdict else "fails"
        print(f"{args.relation}({report.left}, {report.right}): {word}")
        if report.detail:
            print(f"  {report.detail}")
        if report.witness is not None:
            print(f"  witness: {report.witness.describe()}")
    return EXIT_HOLDS if report.verdict else EXIT_FAILS


def _cmd_lts(args: argparse.Namespace) -> int:
    x = _parse_operand(args.expr)
    try:
        lts = explore(x, cap=args.cap)
    except StateSpaceExceeded as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_ERROR
    sys.stdout.write(lts.to_dot() if args.format == "dot" else lts.to_json())
    return EXIT_HOLDS


def _cmd_axioms(args: argparse.Namespace) -> int:
    seed = args.seed if args.seed is not None else _random.SystemRandom().getrandbits(62)
    try:
        config = GenConfig(
            max_size=args.max_size,
            alphabet=tuple(args.alphabet),
            star_probability=args.star_probability,
            seed=seed,
        )
        only = tuple(args.only) if args.only else None
        if only:
            known = {s.name for s in axioms.schemas()}
            bad = [n for n in only if n not in known]
            if bad:
                raise ValueError(f"unknown schema(s) {bad}; known: {sorted(known)}")
        if args.instances < 1:
            raise ValueError("--instances must be at least 1")
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_ERROR
    report = axioms.run_suite(config, args.instances, cap=args.cap, only=only)
    if args.format == "json":
        print(json.dumps(report.to_json_dict(), indent=2, sort_keys=True))
    else:
        print(f"seed: {seed}  kernel: {KERNEL_IMPLEMENTATION}")
        print("\n".join(report.summary_lines()))
        for rep in report.reports:
            for failure in rep.failures:
                print(f"FAIL {failure['schema']}: {failure['conclusion']}")
    return EXIT_HOLDS if report.passed else EXIT_FAILS


def _cmd_interpret(args: argparse.Namespace) -> int:
    x = _parse_operand(args.expr)
    if args.bound < 1:
        print("error: --bound must be at least 1", file=sys.stderr)
        return EXIT_ERROR
    if args.std:
        interp = trees.standard_interpretation(sorted(letters(x)))
    else:
        try:
            with open(args.file, encoding="utf-8") as fh:
                interp = trees.load_interpretation(fh.read())
        except OSError as e:
            print(f"error: cannot read {args.file}: {e}", file=sys.stderr)
            return EXIT_ERROR
        except ValueError as e:
            print(f"error: malformed interpretation file: {e}", file=sys.stderr)
            return EXIT_ERROR
        missing = sorted(letters(x) - set(interp.alphabet))
        if missing:
            print(f"error: interpretation does not cover letters {missing}", file=sys.stderr)
            return EXIT_ERROR
    lang = trees.interpret(interp, x, args.bound)
    if lang:
        print(trees.render_lang(lang))
    return EXIT_HOLDS


def _cmd_selftest(args: argparse.Namespace) -> int:
    n = args.instances
    ok = True

    def report(name: str, passed: bool, info: str = "") -> None:
        nonlocal ok
        ok = ok and passed
        tag = "ok  " if passed else "FAIL"
        suffix = f"  ({info})" if info else ""
        print(f"[{tag}] {name}{suffix}")

    t0 = time.perf_counter()
    print(f"kernel: {KERNEL_IMPLEMENTATION}")

    p, q = parse("ab + a(b+c)"), parse("a(b+c)")
    report(
        "fixture: sum of prefixed branches is simulation- but not bisimulation-equivalent",
        relations.sim_equiv(p, q) and not relations.bisim_equiv(p, q),
    )
    r, s = parse("ab + ac"), parse("a(b+c)")
    report(
        "fixture: distributed sum is trace- but not simulation-equivalent",
        relations.trace_equiv(r, s) and not relations.sim_equiv(r, s),
    )

    config = GenConfig(seed=args.seed)
    suite = axioms.run_suite(config, n, cap=args.cap)
    report(
        f"axiom suite: {len(axioms.schemas())} schemas x {n} instances",
        suite.passed,
        f"failures {suite.failure_count}, skip rate {suite.skip_rate:.2%}",
    )

    rng = _random.Random(f"selftest:{args.seed}")
    agree = 0
    pairs = 4 * n
    for _ in range(pairs):
        x, y = draw(rng, config), draw(rng, config)
        try:
            lts = explore(x, y, cap=args.cap)
        except StateSpaceExceeded:
            continue
        if len(lts) <= 64:
            if relations.max_simulation(lts).pairs == relations.brute_force_sim(lts).pairs:
                agree += 1
            else:
                agree = -(10 ** 9)
    report("kernel vs brute-force oracle on joint spaces", agree > 0, f"{agree} compared")

    violations = 0
    checked = 0
    for _ in range(4 * n):
        x, y = draw(rng, config), draw(rng, config)
        try:
            b = relations.bisim_equiv(x, y, cap=args.cap)
            se = relations.sim_equiv(x, y, cap=args.cap)
            te = relations.trace_equiv(x, y, cap=args.cap)
        except StateSpaceExceeded:
            continue
        checked += 1
        if (b and not se) or (se and not te):
            violations += 1
    report("hierarchy: bisim implies simeq implies trace", violations == 0,
           f"{checked} pairs")

    bad = 0
    for i in range(max(1, n // 2)):
        interp = trees.random_interpretation("abc", seed=args.seed * 7919 + i)
        x = draw(rng, GenConfig(max_size=10, seed=0))
        if not trees.int_normal_check(interp, x, 6):
            bad += 1
    report("bounded head-normal form of interpretations", bad == 0)

    bad = 0
    for i in range(n):
        interp = trees.random_interpretation("abc", seed=args.seed * 104729 + i)
        x, z = draw(rng, config), draw(rng, config)
        if not trees.respects_simulation_check(x, Sum(x, z), interp, 5, cap=args.cap):
            bad += 1
    report("interpretation respects the simulation preorder", bad == 0)

    hits = 0
    for _ in range(10 * n):
        x = draw(rng, GenConfig(max_size=30, seed=0))
        try:
            explore(x, cap=10000)
        except StateSpaceExceeded:
            hits += 1
    report("exploration terminates under the default cap", hits == 0,
           f"{10 * n} expressions")

    print(f"total time: {time.perf_counter() - t0:.1f}s")
    return EXIT_HOLDS if ok else EXIT_FAILS


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    handlers = {
        "compare": _cmd_compare,
        "lts": _cmd_lts,
        "axioms": _cmd_axioms,
        "interpret": _cmd_interpret,
        "selftest": _cmd_selftest,
    }
    return handlers[args.command](args)


if __name__ == "__main__":
    sys.exit(main())
