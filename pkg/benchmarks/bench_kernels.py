"""Compare the compiled and pure-Python search kernels.

Usage: python benchmarks/bench_kernels.py [--repeat N] [--seed S]

Every instance is solved by both backends; the script stops with an error
if their values or witnesses disagree.
"""

import argparse
import random
import statistics
import time
from fractions import Fraction

from ghpaths import gen_distinct_random, gen_wellorder_graph
from ghpaths import kernels
from ghpaths.correspondences import gh_exact
from ghpaths.metric import min_self_distortion

CASES = [
    ("exhaustive 3x5", "exhaustive", 3, 5),
    ("exhaustive 4x5", "exhaustive", 4, 5),
    ("bnb 6x6", "bnb", 6, 6),
    ("bnb 7x7", "bnb", 7, 7),
]


def _time(fn, repeat):
    times = []
    for _ in range(repeat):
        start = time.perf_counter()
        result = fn()
        times.append(time.perf_counter() - start)
    return statistics.median(times), result


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=7)
    args = ap.parse_args()
    if kernels.compiled is None:
        raise SystemExit("compiled kernels are not built; run `pip install -e .` first")

    print(f"{'case':<24}{'python [s]':>12}{'compiled [s]':>14}{'speedup':>10}")
    rng = random.Random(args.seed)
    for name, mode, m, n in CASES:
        X = gen_distinct_random(m, rng.randrange(10**6), Fraction(1, 7))
        Y = gen_distinct_random(n, rng.randrange(10**6), Fraction(1, 3))
        tp, rp = _time(lambda: gh_exact(X, Y, mode=mode, backend="python"), args.repeat)
        tc, rc = _time(lambda: gh_exact(X, Y, mode=mode, backend="compiled"), args.repeat)
        if (rp.value, rp.witness) != (rc.value, rc.witness):
            raise SystemExit(f"{name}: backends disagree")
        print(f"{name:<24}{tp:>12.4f}{tc:>14.5f}{tp / tc:>10.1f}", flush=True)

    X = gen_wellorder_graph(3, Fraction(1, 10))
    tp, ep = _time(lambda: min_self_distortion(X, budget=len(X), backend="python"), args.repeat)
    tc, ec = _time(lambda: min_self_distortion(X, budget=len(X), backend="compiled"), args.repeat)
    if ep != ec:
        raise SystemExit("self-distortion: backends disagree")
    print(f"{'self-distortion 12pt':<24}{tp:>12.4f}{tc:>14.5f}{tp / tc:>10.1f}")


if __name__ == "__main__":
    main()
