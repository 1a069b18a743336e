"""Error against DHT size for inputs sampled directly on the DHT nodes.

Writes one CSV row per (n, kappa, beta, M) and prints an epsilon table.

    python3 scripts/dht_sweep.py --out results/dht_sweep.csv
"""

import argparse
import time
from collections import defaultdict

from hankelsolve import harness


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", default="dht_sweep.csv")
    args = ap.parse_args()

    cfg = harness.SweepConfig()
    t0 = time.perf_counter()
    res = harness.run_sweep(cfg)
    harness.write_csv(args.out, res)
    print(f"{len(res)} cases in {time.perf_counter() - t0:.1f} s -> {args.out}")

    rows = defaultdict(dict)
    for r in res:
        rows[(r.n, r.kappa, r.beta)][r.M] = r.epsilon
    print("n     kappa  beta  " + " ".join(f"{M:>8d}" for M in cfg.sizes))
    for (n, kappa, beta), eps in sorted(rows.items()):
        print(f"{n:<5d} {kappa:<6g} {beta:<5g} " + " ".join(f"{eps[M]:8.1e}" for M in cfg.sizes))


if __name__ == "__main__":
    main()
