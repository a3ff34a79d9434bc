"""Empirical competitive ratios of every algorithm on seeded random traces.

    python scripts/random_campaign.py --count 20000 --seed 1 --workers 4

Prints, per mode and algorithm, the worst oracle/algorithm ratio seen and the
seed index of the trace that produced it.
"""

import argparse
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

from bounded_buffer.generators import random_campaign
from bounded_buffer.harness import competitive_ratio, run_algorithm
from bounded_buffer.model import SemanticsMode
from bounded_buffer.offline import brute_force_opt

ALGOS = ("grq", "naive-greedy", "edf-unit", "offline-greedy")


def worst_ratios(job):
    seed, start, stop = job
    worst = {}
    for index, trace in enumerate(random_campaign(stop, seed)):
        if index < start:
            continue
        for mode in SemanticsMode:
            opt = brute_force_opt(trace, mode).total_micro
            for name in ALGOS:
                ratio = competitive_ratio(opt, run_algorithm(name, trace, mode).total_micro)
                key = (mode.value, name)
                ratio = Fraction(10**9) if ratio is None else ratio
                if key not in worst or ratio > worst[key][0]:
                    worst[key] = (ratio, index)
    return worst


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--count", type=int, default=5000)
    ap.add_argument("--seed", type=int, default=1)
    ap.add_argument("--workers", type=int, default=1)
    args = ap.parse_args()
    chunk = -(-args.count // args.workers)
    jobs = [(args.seed, lo, min(lo + chunk, args.count)) for lo in range(0, args.count, chunk)]
    merged = {}
    with ProcessPoolExecutor(args.workers) as pool:
        for part in pool.map(worst_ratios, jobs):
            for key, (ratio, index) in part.items():
                if key not in merged or (ratio, -index) > (merged[key][0], -merged[key][1]):
                    merged[key] = (ratio, index)
    for (mode, name), (ratio, index) in sorted(merged.items()):
        print(f"{mode:14s} {name:15s} worst={float(ratio):.6f} ({ratio}) trace={index}")


if __name__ == "__main__":
    main()
