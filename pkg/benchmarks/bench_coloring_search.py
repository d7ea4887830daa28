#!/usr/bin/env python3
"""Benchmark the coloring-search kernel: numba @njit vs pure Python.

The kernel is the hot loop behind every arrow verdict and HJ search.  This
script runs identical workloads through both backends by re-importing the
package in a subprocess with STEINER_RAMSEY_PURE_PYTHON toggled, and prints
a small comparison table.

Usage: python3 benchmarks/bench_coloring_search.py [--repeat N]
"""

import argparse
import json
import os
import subprocess
import sys
import textwrap

WORKLOADS = ["k6_arrow", "k7_arrow", "hj_2_2", "fano_3col",
             "pigeonhole_unsat"]

_WORKER = textwrap.dedent(
    """
    import json, random, sys, time
    from steiner_ramsey import fixtures, halesjewett, oracle
    from steiner_ramsey._kernel import backend_name, find_counterexample

    def k_arrow(n):
        return lambda: oracle.arrows(
            fixtures.clique(n), fixtures.clique(3), fixtures.edge(2), 2,
            max_copies=24,
        )

    def hj_2_2():
        return lambda: halesjewett.hj_number(2, 2, 3)

    def fano_3col():
        family = [frozenset({i}) for i in range(7)]
        targets = [
            [frozenset({v}) for v in line] for line in fixtures.FANO_LINES
        ]
        return lambda: oracle.arrows_system(family, targets, 3)

    def pigeonhole_unsat():
        # every 2-coloring of 17 items makes some 9-subset monochromatic,
        # so the search must exhaust the whole pruned tree: the honest
        # worst case for an arrow that holds
        import itertools
        targets = list(itertools.combinations(range(17), 9))
        return lambda: find_counterexample(2, 17, targets)

    RUNNERS = {
        "k6_arrow": k_arrow(6),
        "k7_arrow": k_arrow(7),
        "hj_2_2": hj_2_2(),
        "fano_3col": fano_3col(),
        "pigeonhole_unsat": pigeonhole_unsat(),
    }

    name, repeat = sys.argv[1], int(sys.argv[2])
    fn = RUNNERS[name]
    fn()  # warm up (numba compilation is cached but not free)
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    print(json.dumps({"backend": backend_name(), "seconds": best}))
    """
)


def run_backend(pure, workload, repeat):
    env = dict(os.environ)
    env["STEINER_RAMSEY_PURE_PYTHON"] = "1" if pure else "0"
    out = subprocess.run(
        [sys.executable, "-c", _WORKER, workload, str(repeat)],
        capture_output=True, text=True, env=env, check=True,
    )
    return json.loads(out.stdout.strip().splitlines()[-1])


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeat", type=int, default=3)
    parser.add_argument("--workloads", nargs="*", default=WORKLOADS)
    args = parser.parse_args()
    print(f"{'workload':<12} {'numba':>12} {'pure-python':>14} {'speedup':>9}")
    for workload in args.workloads:
        jit = run_backend(False, workload, args.repeat)
        pure = run_backend(True, workload, args.repeat)
        ratio = pure["seconds"] / jit["seconds"] if jit["seconds"] else 0.0
        print(
            f"{workload:<12} {jit['seconds']:>11.4f}s "
            f"{pure['seconds']:>13.4f}s {ratio:>8.1f}x"
        )


if __name__ == "__main__":
    main()
