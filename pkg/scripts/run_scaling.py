"""Run the scaling suites and print per-size timings and log-log slopes.

    python3 scripts/run_scaling.py                      # all convolution suites
    python3 scripts/run_scaling.py --suite conv-poly --max-exp 16 --csv out.csv
"""
import argparse
import time

from minplus.bench import CSV_HEADER, BenchConfig, best_times, loglog_slope, run_bench

DEFAULT_SUITES = ("conv-linear", "conv-concave", "conv-poly", "conv-pwl")


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--suite", action="append", help="repeatable; default is every convolution suite")
    p.add_argument("--min-exp", type=int, default=12)
    p.add_argument("--max-exp", type=int, default=17)
    p.add_argument("--trials", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--csv", help="also write every row to this file")
    args = p.parse_args()

    sizes = tuple(2 ** k for k in range(args.min_exp, args.max_exp + 1))
    sink = open(args.csv, "w") if args.csv else None
    if sink:
        print(CSV_HEADER, file=sink)
    for suite in args.suite or DEFAULT_SUITES:
        t0 = time.perf_counter()
        rows = []
        for row in run_bench(BenchConfig(suite, sizes, args.seed, args.trials)):
            rows.append(row)
            if sink:
                print(row.csv(), file=sink, flush=True)
            print(f"  {suite:13s} n={row.n:<8d} trial={row.trial} "
                  f"{row.wall_ns / 1e9:8.3f}s ops={row.op_count}", flush=True)
        times = best_times(rows)
        ratios = " ".join(f"{b / a:.2f}" for (_, a), (_, b) in zip(times, times[1:]))
        print(f"{suite}: slope {loglog_slope(times):.3f}, doubling ratios {ratios}, "
              f"{time.perf_counter() - t0:.1f}s total")
    if sink:
        sink.close()


if __name__ == "__main__":
    main()
