"""Benchmark the compiled trial kernel against the NumPy fallback.

Usage: python benchmarks/bench_kernel.py [--trials N] [--nodes N] [--repeat N]
"""

from __future__ import annotations

import argparse
import json
import time

import numpy as np

from localdec._kernel import available_backends


def time_backend(mod, trials: int, node_ids, thresholds, repeat: int) -> tuple[float, int]:
    best = float("inf")
    count = -1
    for _ in range(repeat):
        start = time.perf_counter()
        count = mod.count_all_yes(12345, 0, trials, node_ids, thresholds)
        best = min(best, time.perf_counter() - start)
    return best, count


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--trials", type=int, default=1_000_000)
    parser.add_argument("--nodes", type=int, default=8)
    parser.add_argument("--repeat", type=int, default=3)
    parser.add_argument("--json", action="store_true", help="emit machine-readable results")
    args = parser.parse_args()

    rng = np.random.default_rng(0)
    node_ids = np.arange(1, args.nodes + 1, dtype=np.uint64)
    thresholds = rng.uniform(0.5, 1.0, size=args.nodes)

    backends = available_backends()
    rows = []
    counts = set()
    for name, mod in sorted(backends.items()):
        secs, count = time_backend(mod, args.trials, node_ids, thresholds, args.repeat)
        counts.add(count)
        rows.append(
            {
                "backend": name,
                "seconds": secs,
                "trials_per_second": args.trials / secs,
                "count": count,
            }
        )
    assert len(counts) == 1, f"backends disagree: {counts}"

    if args.json:
        print(json.dumps({"trials": args.trials, "nodes": args.nodes, "results": rows}, indent=2))
        return
    print(f"count_all_yes: {args.trials:,} trials x {args.nodes} nodes (best of {args.repeat})")
    base = None
    for row in rows:
        line = f"  {row['backend']:>7}: {row['seconds']*1e3:9.2f} ms  ({row['trials_per_second']:,.0f} trials/s)"
        if row["backend"] == "python":
            base = row["seconds"]
        print(line)
    if base is not None and len(rows) == 2:
        fast = min(rows, key=lambda r: r["seconds"])
        if fast["backend"] != "python":
            print(f"  speedup: {base / fast['seconds']:.1f}x over the NumPy fallback")


if __name__ == "__main__":
    main()
