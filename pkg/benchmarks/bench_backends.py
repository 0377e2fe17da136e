"""Time the compiled kernels against the pure-Python fallback.

Runs the same workloads through colorfiber._fastcore and
colorfiber._purecore directly, so the comparison does not depend on
which backend the package itself picked at import time. Timings are
best-of-N wall clock.

    python3 benchmarks/bench_backends.py
    python3 benchmarks/bench_backends.py --repeat 5 --chain-steps 500000
"""

import argparse
import time

import numpy as np

from colorfiber import (
    CDegSequence,
    ColorAssignment,
    enumerate_quadratic_moves,
    pair_count,
    realize,
    weight_table,
)
from colorfiber import _purecore
from colorfiber.fibers import _backtrack_arrays
from colorfiber.graphs import _pair_endpoints
from colorfiber.reduction import _pidx_table

try:
    from colorfiber import _fastcore
except ImportError:
    _fastcore = None


def best_of(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3, help="best-of repetitions")
    ap.add_argument("--chain-steps", type=int, default=200_000)
    ap.add_argument("--monomials", type=int, default=20_000,
                    help="random degree-5 monomials for the rewrite kernels")
    ap.add_argument("--rng-words", type=int, default=2_000_000)
    args = ap.parse_args()

    if _fastcore is None:
        print("compiled backend not built; showing pure-Python times only")
    backends = [("pure", _purecore)]
    if _fastcore is not None:
        backends.insert(0, ("compiled", _fastcore))

    # shared fixtures: the 8-vertex two-color example
    n = 8
    z = ColorAssignment.from_sequence((1, 1, 2, 2, 1, 1, 2, 2))
    label = CDegSequence(degrees=(1, 6, 1, 6, 4, 3, 4, 3), cells=(3, 8, 3), k=2)
    start = realize(label, z)
    moves = enumerate_quadratic_moves(n, z)
    midx, mval, mlen = moves.packed()

    zs = ColorAssignment.from_sequence((1, 1, 1, 1, 2, 2, 2, 2))
    us, vs = _pair_endpoints(n)
    colors = np.array(zs.colors, dtype=np.int64)
    weights = weight_table(n)
    pidx = _pidx_table(n)
    rng = np.random.default_rng(8128)
    P = pair_count(n)
    monos = np.zeros((args.monomials, P), dtype=np.int64)
    for row, picks in enumerate(rng.integers(0, P, size=(args.monomials, 5))):
        for t in picks:
            monos[row, t] += 1

    bt_args = _backtrack_arrays(label, z)

    jobs = [
        (
            f"splitmix64_sequence ({args.rng_words} words)",
            lambda core: core.splitmix64_sequence(20240817, args.rng_words),
        ),
        (
            f"chain_run ({args.chain_steps} steps, {len(moves)} moves)",
            lambda core: core.chain_run(
                start.entries, midx, mval, mlen,
                args.chain_steps, 1000, 10, 42, False, False,
            ),
        ),
        (
            f"reduce_batch ({args.monomials} degree-5 monomials)",
            lambda core: core.reduce_batch(
                monos.copy(), us, vs, colors, weights, pidx,
            ),
        ),
        (
            f"side_witness_flags ({args.monomials} monomials)",
            lambda core: core.side_witness_flags(monos, us, vs, colors),
        ),
        (
            "fiber_backtrack (16847-element fiber)",
            lambda core: core.fiber_backtrack(*bt_args, False, False),
        ),
    ]

    width = max(len(name) for name, _ in jobs)
    header = f"{'kernel':<{width}}  " + "".join(f"{name:>12}" for name, _ in backends)
    if len(backends) == 2:
        header += f"{'speedup':>10}"
    print(header)
    print("-" * len(header))
    for name, job in jobs:
        times = [best_of(lambda c=core: job(c), args.repeat) for _, core in backends]
        row = f"{name:<{width}}  " + "".join(f"{t:>11.4f}s" for t in times)
        if len(times) == 2 and times[0] > 0:
            row += f"{times[1] / times[0]:>9.1f}x"
        print(row)


if __name__ == "__main__":
    main()
