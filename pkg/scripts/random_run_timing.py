"""Time universal-seed mutation on random runs, bucketed by rank.

Reports how the cost grows with the depth of the mutation sequence, and how
often the entry-bound filter of the random generator rejects a draw.
"""
import argparse
import random
import time
from collections import defaultdict

from tropclust.sampling import RandomRunConfig, entries_bounded, random_exchange_matrix, random_sequence
from tropclust.tropical import run_sequence


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--runs", type=int, default=40)
    p.add_argument("--depth", type=int, default=8)
    p.add_argument("--seed", type=int, default=0)
    args = p.parse_args()
    cfg = RandomRunConfig(depth=args.depth)
    rng = random.Random(args.seed)
    times = defaultdict(list)
    draws = rejected = 0
    while sum(len(v) for v in times.values()) < args.runs:
        n = rng.randint(cfg.n_min, cfg.n_max)
        B = random_exchange_matrix(rng, n, cfg)
        seq = random_sequence(rng, n, cfg.depth)
        draws += 1
        if not entries_bounded(B, seq, cfg.entry_bound):
            rejected += 1
            continue
        t0 = time.perf_counter()
        run_sequence(B, seq, universal=True, principal=True)
        times[n].append(time.perf_counter() - t0)
    print(f"draws={draws} rejected by entry bound={rejected} ({rejected / draws:.0%})")
    for n in sorted(times):
        ts = sorted(times[n])
        print(f"rank {n}: runs={len(ts):3d} median={ts[len(ts) // 2]:.3f}s max={ts[-1]:.3f}s")


if __name__ == "__main__":
    main()
