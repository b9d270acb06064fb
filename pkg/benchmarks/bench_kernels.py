#!/usr/bin/env python3
"""Compare the compiled citation kernels against the numpy fallback.

Builds a synthetic corpus (default 100k publications, ~1M edges) and times
the three hot kernels on identical inputs. Run from the repository root:

    python benchmarks/bench_kernels.py [--n-pubs N] [--seed S] [--repeat R]
"""

import argparse
import time

import numpy as np

from scholimetric import MetricOptions, SynthSpec, synthesize_corpus
from scholimetric._kernels import _fallback

try:
    from scholimetric._kernels import _speedups
except ImportError:
    _speedups = None


def best_of(fn, repeat):
    times = []
    result = None
    for _ in range(repeat):
        start = time.perf_counter()
        result = fn()
        times.append(time.perf_counter() - start)
    return min(times), result


def bench(corpus, backend, repeat, year_cap):
    args = (corpus._in_indptr, corpus._in_indices)
    t_mask, mask = best_of(
        lambda: backend.self_citation_mask(*args, corpus._inst_indptr,
                                           corpus._inst_codes), repeat)
    t_counts, counts = best_of(
        lambda: backend.tier1_counts(*args, corpus._years, mask, year_cap), repeat)
    t_sph, sph = best_of(
        lambda: backend.tier2_h(*args, corpus._years, mask, year_cap, counts), repeat)
    return {"self_citation_mask": t_mask, "tier1_counts": t_counts,
            "tier2_h": t_sph}, (mask, counts, sph)


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--n-pubs", type=int, default=100_000)
    parser.add_argument("--seed", type=int, default=2024)
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()

    corpus = synthesize_corpus(SynthSpec(
        n_pubs=args.n_pubs, seed=args.seed, skew_mu=1.6, skew_sigma=1.3))
    options = MetricOptions(citing_year_max=2010)
    print(f"corpus: {corpus.n_pubs} publications, {corpus.n_edges} edges "
          f"(seed {args.seed})")

    fb_times, fb_out = bench(corpus, _fallback, args.repeat, options.citing_year_max)
    rows = [("fallback", fb_times)]
    if _speedups is not None:
        sp_times, sp_out = bench(corpus, _speedups, args.repeat,
                                 options.citing_year_max)
        rows.append(("compiled", sp_times))
        for a, b in zip(fb_out, sp_out):
            np.testing.assert_array_equal(a, b)
        print("backends agree on all outputs")
    else:
        print("compiled extension not built; timing fallback only")

    kernels = list(fb_times)
    width = max(len(k) for k in kernels)
    header = "kernel".ljust(width) + "".join(f"{name:>12}" for name, _ in rows)
    if len(rows) == 2:
        header += f"{'speedup':>10}"
    print(header)
    for k in kernels:
        line = k.ljust(width) + "".join(f"{times[k] * 1e3:>10.1f}ms" for _, times in rows)
        if len(rows) == 2:
            line += f"{rows[0][1][k] / rows[1][1][k]:>9.1f}x"
        print(line)


if __name__ == "__main__":
    main()
