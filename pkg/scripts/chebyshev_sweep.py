"""Error against block count for inputs interpolated from Chebyshev blocks.

kappa = 1024, P = 16, M in {128, 256}; N is swept so NP grows.

    python3 scripts/chebyshev_sweep.py --out results/chebyshev_sweep.csv
"""

import argparse
import time
from collections import defaultdict

from hankelsolve import harness


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", default="chebyshev_sweep.csv")
    args = ap.parse_args()

    cfg = harness.SweepConfig.chebyshev()
    t0 = time.perf_counter()
    res = harness.run_sweep(cfg)
    harness.write_csv(args.out, res)
    print(f"{len(res)} cases in {time.perf_counter() - t0:.1f} s -> {args.out}")

    rows = defaultdict(dict)
    for r in res:
        rows[(r.n, r.M, r.beta)][r.N * r.P] = r.epsilon
    nps = [N * cfg.points_per_block for N in cfg.blocks]
    print("n     M     beta  " + " ".join(f"{np_:>8d}" for np_ in nps))
    for (n, M, beta), eps in sorted(rows.items()):
        print(f"{n:<5d} {M:<5d} {beta:<5g} " + " ".join(f"{eps[v]:8.1e}" for v in nps))


if __name__ == "__main__":
    main()
