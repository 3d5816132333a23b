"""Quick benchmark of labeling, ERM and one seeded trial."""

import platform
import sys
import time
from pathlib import Path
from statistics import mean

import numpy as np

sys.path.insert(0, str(Path(__file__).parent.parent))

from consensusmine.distributions import DistributionSpec, sample
from consensusmine.experiments import get_preset, run_trial
from consensusmine.query import label_binary_search
from consensusmine.scoring import erm_interval, score_naive, score_sweepline
from consensusmine.synthesis import VoterGenSpec, generate_voters


def _timed(fn, repeats=3):
    times = []
    result = None
    for _ in range(repeats):
        start = time.time()
        result = fn()
        times.append(time.time() - start)
    return result, mean(times)


def main():
    rng = np.random.default_rng(0)
    n, m = 100, 100_000
    voters = generate_voters(VoterGenSpec(n=n), rng)
    xs = np.sort(sample(DistributionSpec.uniform(), rng, m))

    print("=" * 60)
    print("consensusmine Quick Benchmark")
    print("=" * 60)
    print(f"Voters: {n}, samples: {m}")
    print(f"System: {platform.system()} {platform.release()} ({platform.machine()})")
    print(f"Python: {sys.version.split()[0]}")
    print()

    print("1. Labeling...")
    naive, naive_time = _timed(lambda: score_naive(voters, xs))
    sweep, sweep_time = _timed(lambda: score_sweepline(voters, xs))
    print(f"   Naive:     {naive_time * 1000:.1f}ms")
    print(f"   Sweepline: {sweep_time * 1000:.1f}ms")
    print(f"   Identical: {naive.equals(sweep)}")
    print()

    print("2. ERM...")
    interval, erm_time = _timed(lambda: erm_interval(sweep))
    print(f"   Time: {erm_time * 1000:.1f}ms")
    print(f"   Interval: [{interval.lo:.4f}, {interval.hi:.4f}], score {interval.empirical_score}")
    print()

    print("3. Binary-search labeling...")
    (binary, ledger), binary_time = _timed(lambda: label_binary_search(voters, xs), repeats=1)
    print(f"   Time: {binary_time:.2f}s")
    print(f"   Queries per voter: {ledger.mean_per_voter:.1f} (full labeling: {m})")
    print(f"   Identical: {binary.equals(sweep)}")
    print()

    print("4. One figure4 trial...")
    config = get_preset("figure4", trials=1)
    _, trial_time = _timed(lambda: run_trial(config, 0), repeats=1)
    print(f"   Time: {trial_time:.2f}s")

    print()
    print("=" * 60)
    print("Summary:")
    print(f"  Sweepline labeling: {naive_time / sweep_time:.1f}x faster than naive")
    print(f"  Binary search: {m / ledger.mean_per_voter:.0f}x fewer queries than full labeling")
    print("=" * 60)


if __name__ == "__main__":
    main()
