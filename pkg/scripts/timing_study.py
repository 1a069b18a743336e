"""Wall-clock scaling of the solve at n = 64, kappa = 1024, beta = 16.

Fits time ~ M^p on the DHT nodes and time ~ (NP)^q per M on Chebyshev
blocks.  Only the transform and the evaluation are timed.

    python3 scripts/timing_study.py --out results/timing.csv
"""

import argparse

import numpy as np

from hankelsolve import harness


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", default="timing.csv")
    ap.add_argument("--min-time", type=float, default=0.25, help="seconds spent per case")
    args = ap.parse_args()

    cfg = harness.TimingConfig(min_time=args.min_time)
    res = harness.run_timing(cfg)
    harness.write_csv(args.out, res)

    d = [r for r in res if r.mode == "dht-direct"]
    for r in d:
        print(f"dht-direct M={r.M:<5d} {r.wall_time_s * 1e3:9.3f} ms")
    p, _ = harness.fit_power_law([r.M for r in d], [r.wall_time_s for r in d])
    print(f"fit: time ~ M^{p:.3f}")
    for M in cfg.cheb_sizes:
        rows = [r for r in res if r.mode == "chebyshev" and r.M == M]
        x = np.array([r.N * r.P for r in rows], dtype=float)
        t = np.array([r.wall_time_s for r in rows])
        q, _ = harness.fit_power_law(x, t)
        per = np.exp(np.mean(np.log(t / x)))
        print(f"chebyshev M={M:<4d} time ~ NP^{q:.3f}, {per * 1e9:.0f} ns per node ({per * 1e9 / M:.2f} per node per M)")


if __name__ == "__main__":
    main()
