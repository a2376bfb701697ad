#!/usr/bin/env python3
"""Compare the compiled bitmask kernels against the pure-Python fallback.

Micro-benchmarks call both kernel modules directly; the end-to-end figure
times a classify+report pass over a batch of random graphs in fresh
subprocesses, once per kernel (selection happens at import time via the
LEAVITTPATH_PURE environment variable).

Usage: python benchmarks/bench_kernels.py [--sizes 16,32,64] [--reps 200]
"""

import argparse
import os
import random
import subprocess
import sys
import time

from leavittpath import _kernel_py

try:
    from leavittpath import _speedups
except ImportError:
    _speedups = None


def random_adjacency(rng, n, p=0.15):
    return [
        sum(1 << j for j in range(n) if rng.random() < p) for _ in range(n)
    ]


def to_csr(adj, n):
    indptr, indices = [0], []
    for mask in adj:
        indices.extend(j for j in range(n) if mask >> j & 1)
        indptr.append(len(indices))
    return indptr, indices


def bench(fn, args_list, reps):
    best = float("inf")
    for _ in range(3):
        t0 = time.perf_counter()
        for args in args_list:
            for _ in range(reps):
                fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def micro(sizes, reps):
    rng = random.Random(1)
    rows = []
    for n in sizes:
        cases = [random_adjacency(rng, n) for _ in range(10)]
        csr = [to_csr(adj, n) for adj in cases]
        sat = [
            (
                sum(1 << i for i in range(n) if rng.random() < 0.2),
                list(range(0, n, 2)),
                [cases[k][i] for i in range(0, n, 2)],
            )
            for k in range(10)
        ]
        jobs = {
            "reach_masks": (
                [(n, adj) for adj in cases],
                lambda m: m.reach_masks,
            ),
            "scc_labels": (
                [(n, ip, ix) for ip, ix in csr],
                lambda m: m.scc_labels,
            ),
            "saturation": (
                [(n, m0, rv, rt) for m0, rv, rt in sat],
                lambda m: m.saturation_fixpoint,
            ),
        }
        for name, (args_list, pick) in jobs.items():
            pure = bench(pick(_kernel_py), args_list, reps)
            if _speedups is not None:
                fast = bench(pick(_speedups), args_list, reps)
                rows.append((name, n, pure, fast, pure / fast))
            else:
                rows.append((name, n, pure, None, None))
    return rows


END_TO_END = r"""
import time
from leavittpath.random_graphs import random_graphs
from leavittpath.ideals import largest_ideals_report
from leavittpath._kernel import IMPLEMENTATION
t0 = time.perf_counter()
for g in random_graphs(600, seed=13, max_vertices=10):
    largest_ideals_report(g)
print(f"{IMPLEMENTATION} {time.perf_counter() - t0:.3f}")
"""


def end_to_end():
    out = []
    for pure in (False, True):
        env = dict(os.environ)
        env.pop("LEAVITTPATH_PURE", None)
        if pure:
            env["LEAVITTPATH_PURE"] = "1"
        r = subprocess.run(
            [sys.executable, "-c", END_TO_END],
            capture_output=True,
            text=True,
            env=env,
        )
        if r.returncode != 0:
            sys.stderr.write(r.stderr)
            raise SystemExit(1)
        impl, secs = r.stdout.split()
        out.append((impl, float(secs)))
    return out


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--sizes", default="16,32,64")
    ap.add_argument("--reps", type=int, default=200)
    args = ap.parse_args()
    sizes = [int(s) for s in args.sizes.split(",")]

    if _speedups is None:
        print("compiled kernels not available; timing pure Python only\n")

    print(f"{'kernel':<14} {'n':>4} {'pure (s)':>10} {'compiled (s)':>13} {'speedup':>8}")
    for name, n, pure, fast, ratio in micro(sizes, args.reps):
        if fast is None:
            print(f"{name:<14} {n:>4} {pure:>10.4f} {'-':>13} {'-':>8}")
        else:
            print(f"{name:<14} {n:>4} {pure:>10.4f} {fast:>13.4f} {ratio:>7.1f}x")

    print("\nend-to-end: largest_ideals_report over 600 random graphs (<=10 vertices)")
    for impl, secs in end_to_end():
        print(f"  {impl:<9} {secs:.3f}s")


if __name__ == "__main__":
    main()
