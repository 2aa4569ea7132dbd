#!/usr/bin/env python3
"""Benchmark the compiled fixpoint kernel against the pure-Python twin.

Runs the same (bi)simulation refinements through both backends over
synthetic LTSs and regex-derived joint spaces, checks the results match,
and prints a timing table.

    python benchmarks/bench_kernels.py [--repeat N]
"""

import argparse
import random
import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from simrex import _simcore_py  # noqa: E402
from simrex.relations import _csr, brute_force_sim  # noqa: E402
from simrex.semantics import Lts, explore  # noqa: E402
from simrex.syntax import GenConfig, draw  # noqa: E402

try:
    from simrex import _simcore
except ImportError:
    _simcore = None


def synthetic_lts(rng: random.Random, n: int, m: int, density: int) -> Lts:
    alphabet = tuple("abcdef"[:m])
    accepting = tuple(rng.random() < 0.4 for _ in range(n))
    succ = tuple(
        tuple(
            tuple(sorted(rng.sample(range(n), rng.randint(0, density))))
            for _ in range(m)
        )
        for _ in range(n)
    )
    return Lts(alphabet, accepting, succ, (0, n - 1 if n > 1 else 0))


def joint_regex_lts(rng: random.Random, max_size: int) -> Lts:
    config = GenConfig(max_size=max_size, seed=0)
    while True:
        lts = explore(draw(rng, config), draw(rng, config), cap=100000)
        if len(lts) >= 4:
            return lts


def run(backend, lts: Lts, symmetric: bool) -> bytes:
    offsets, targets = _csr(lts)
    acc = [1 if b else 0 for b in lts.accepting]
    return bytes(
        backend.simulation_fixpoint(
            len(lts), len(lts.alphabet), acc, offsets, targets, symmetric
        )
    )


def timed(backend, cases, symmetric: bool, repeat: int) -> tuple[float, list[bytes]]:
    best = float("inf")
    results: list[bytes] = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        results = [run(backend, lts, symmetric) for lts in cases]
        best = min(best, time.perf_counter() - t0)
    return best, results


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeat", type=int, default=3, help="timing repetitions (best of)")
    args = parser.parse_args()

    if _simcore is None:
        print("compiled kernel not built; showing pure-Python timings only")

    rng = random.Random(20260810)
    suites = [
        ("synthetic n=20", [synthetic_lts(rng, 20, 3, 3) for _ in range(200)]),
        ("synthetic n=100", [synthetic_lts(rng, 100, 3, 4) for _ in range(20)]),
        ("synthetic n=300", [synthetic_lts(rng, 300, 3, 4) for _ in range(4)]),
        ("regex joint size<=12", [joint_regex_lts(rng, 12) for _ in range(200)]),
        ("regex joint size<=25", [joint_regex_lts(rng, 25) for _ in range(40)]),
    ]

    header = f"{'suite':<24}{'mode':<7}{'python':>10}{'cython':>10}{'speedup':>9}"
    print(header)
    print("-" * len(header))
    for name, cases in suites:
        for symmetric, mode in ((False, "sim"), (True, "bisim")):
            py_t, py_r = timed(_simcore_py, cases, symmetric, args.repeat)
            if _simcore is not None:
                cy_t, cy_r = timed(_simcore, cases, symmetric, args.repeat)
                if py_r != cy_r:
                    print(f"MISMATCH in {name} ({mode})")
                    return 1
                print(f"{name:<24}{mode:<7}{py_t:>9.3f}s{cy_t:>9.3f}s{py_t / cy_t:>8.1f}x")
            else:
                print(f"{name:<24}{mode:<7}{py_t:>9.3f}s{'-':>10}{'-':>9}")

    # sanity anchor: both backends against the naive oracle on small cases
    small = [synthetic_lts(rng, 12, 2, 3) for _ in range(50)]
    for lts in small:
        expected = brute_force_sim(lts).pairs
        n = len(lts)
        got = run(_simcore_py, lts, False)
        pairs = frozenset((u, v) for u in range(n) for v in range(n) if got[u * n + v])
        if pairs != expected:
            print("MISMATCH against brute-force oracle")
            return 1
    print("oracle agreement on 50 small cases: ok")
    return 0


if __name__ == "__main__":
    sys.exit(main())
