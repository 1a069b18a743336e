"""Command-line interface to the solver and its benchmark harness.

Exit codes: 0 success, 2 invalid arguments or input, 3 NaN/Inf in the output.

Field files (``CYLF``) are little-endian: the 4-byte magic ``CYLF``, three
uint32 dimensions ``(radial, theta, z)``, then float64 values with the
radial index varying fastest.
"""

from __future__ import annotations

import argparse
import csv
import struct
import sys

import numpy as np

from . import harness
from .dht import PlanCache, dht_apply
from .greens import solve_mode
from .interp import block_grid, interpolate
from .poisson import cyl_grid, single_mode_field, solve_poisson
from .specfun import DomainError

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_NUMERIC = 3

MAGIC = b"CYLF"
_HEADER = struct.Struct("<4s3I")


class FieldFormatError(ValueError):
    pass


def write_field(path, field) -> None:
    a = np.asarray(field, dtype="<f8")
    if a.ndim != 3:
        raise ValueError("field must be 3-d (radial, theta, z)")
    with open(path, "wb") as fh:
        fh.write(_HEADER.pack(MAGIC, *a.shape))
        fh.write(a.tobytes(order="F"))


def read_field(path) -> np.ndarray:
    with open(path, "rb") as fh:
        head = fh.read(_HEADER.size)
        if len(head) != _HEADER.size:
            raise FieldFormatError("truncated header")
        magic, nr, nt, nz = _HEADER.unpack(head)
        if magic != MAGIC:
            raise FieldFormatError(f"bad magic {magic!r}")
        body = fh.read()
    count = nr * nt * nz
    if len(body) != 8 * count:
        raise FieldFormatError(f"expected {8 * count} data bytes, found {len(body)}")
    return np.frombuffer(body, dtype="<f8").reshape((nr, nt, nz), order="F").astype(float)


def _floats(text):
    return [float(v) for v in text.split(",") if v]


def _ints(text):
    return [int(v) for v in text.split(",") if v]


def _check_finite(values) -> int:
    return EXIT_OK if np.all(np.isfinite(values)) else EXIT_NUMERIC


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def cmd_solve(args) -> int:
    tc = harness.TestCase(alpha=args.alpha, beta=args.beta, m=max(args.order, 2),
                          n=args.order, kappa=args.kappa)
    plan = PlanCache().plan(args.order, args.dht_size, args.radius)
    if args.blocks > 0:
        grid = block_grid(args.blocks, args.points_per_block, args.radius)
        points = grid.nodes
    else:
        grid = None
        points = plan.nodes
    if args.input == "builtin":
        samples = harness.test_forcing(tc, points)
        exact = harness.test_solution(tc, points)
    else:
        field = read_field(args.input)
        if field.shape != (points.size, 1, 1):
            raise FieldFormatError(f"field shape {field.shape}, expected ({points.size}, 1, 1)")
        samples = field[:, 0, 0]
        exact = None
    on_plan = interpolate(grid, samples, plan.nodes) if grid is not None else samples
    sol = solve_mode(args.order, args.kappa, plan, dht_apply(plan, on_plan), points)
    header = ["r", "u"] + (["u_exact"] if exact is not None else [])
    with _open_out(args.output) as fh:
        w = csv.writer(fh)
        w.writerow(header)
        for i, r in enumerate(points):
            row = [repr(float(r)), repr(float(sol.values[i]))]
            if exact is not None:
                row.append(repr(float(exact[i])))
            w.writerow(row)
    if exact is not None:
        print(f"epsilon {harness.linf_error(sol.values, exact):.3e}", file=sys.stderr)
    return _check_finite(sol.values)


def cmd_sweep(args, mode) -> int:
    base = harness.SweepConfig() if mode == "dht-direct" else harness.SweepConfig.chebyshev()
    config = harness.SweepConfig(
        mode=mode,
        orders=_ints(args.orders) if args.orders else base.orders,
        kappas=_floats(args.kappas) if args.kappas else base.kappas,
        betas=_floats(args.betas) if args.betas else base.betas,
        sizes=_ints(args.sizes) if args.sizes else base.sizes,
        blocks=(_ints(args.blocks) if args.blocks else base.blocks) if mode == "chebyshev" else (0,),
        points_per_block=args.points_per_block,
        radius=args.radius,
        alpha=args.alpha,
    )
    results = harness.run_sweep(config)
    _write_results(args.output, results)
    return _check_finite([r.epsilon for r in results])


def cmd_timing(args) -> int:
    base = harness.TimingConfig()
    config = harness.TimingConfig(
        n=args.order, kappa=args.kappa, beta=args.beta,
        dht_sizes=_ints(args.dht_sizes) if args.dht_sizes else base.dht_sizes,
        cheb_sizes=_ints(args.cheb_sizes) if args.cheb_sizes else base.cheb_sizes,
        blocks=_ints(args.blocks) if args.blocks else base.blocks,
        points_per_block=args.points_per_block, radius=args.radius, repeats=args.repeats,
    )
    results = harness.run_timing(config)
    _write_results(args.output, results)
    dht = [r for r in results if r.mode == "dht-direct"]
    if len(dht) >= 2:
        p, _ = harness.fit_power_law([r.M for r in dht], [r.wall_time_s for r in dht])
        print(f"dht-direct: time ~ M^{p:.2f}", file=sys.stderr)
    for M in config.cheb_sizes:
        rows = [r for r in results if r.mode == "chebyshev" and r.M == M]
        if len(rows) >= 2:
            p, _ = harness.fit_power_law([r.N * r.P for r in rows], [r.wall_time_s for r in rows])
            print(f"chebyshev M={M}: time ~ NP^{p:.2f}", file=sys.stderr)
    return _check_finite([r.wall_time_s for r in results])


def cmd_poisson(args) -> int:
    grid = cyl_grid(args.blocks, args.points_per_block, args.radius,
                    args.n_theta, args.n_z, args.length_z)
    if args.input == "builtin":
        kappa = 2.0 * np.pi * args.axial_index / args.length_z
        tc = harness.TestCase(alpha=args.alpha, beta=args.beta, m=max(args.order, 2),
                              n=args.order, kappa=kappa)
        f = single_mode_field(grid, lambda r: harness.test_forcing(tc, r), args.order, args.axial_index)
        exact = single_mode_field(grid, lambda r: harness.test_solution(tc, r), args.order, args.axial_index)
    else:
        f = read_field(args.input)
        exact = None
        if f.shape != grid.shape:
            raise FieldFormatError(f"field shape {f.shape} does not match grid {grid.shape}")
    u = solve_poisson(grid, f, dht_size=args.dht_size)
    if args.output:
        write_field(args.output, u)
    if exact is not None:
        print(f"epsilon {harness.linf_error(u, exact):.3e}", file=sys.stderr)
    return _check_finite(u)


# ---------------------------------------------------------------------------
# plumbing
# ---------------------------------------------------------------------------


class _open_out:
    def __init__(self, path):
        self.path = path

    def __enter__(self):
        self.fh = sys.stdout if self.path in (None, "-") else open(self.path, "w", newline="")
        return self.fh

    def __exit__(self, *exc):
        if self.fh is not sys.stdout:
            self.fh.close()
        return False


def _write_results(path, results) -> None:
    with _open_out(path) as fh:
        w = csv.writer(fh)
        w.writerow(harness.CSV_HEADER)
        for r in results:
            w.writerow(r.row())


def _common(p):
    p.add_argument("--radius", type=float, default=16.0)
    p.add_argument("--points-per-block", type=int, default=16)
    p.add_argument("--alpha", type=float, default=1.0)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hankelsolve", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="solve one (n, kappa) mode")
    p.add_argument("--order", type=int, required=True)
    p.add_argument("--kappa", type=float, required=True)
    p.add_argument("--dht-size", type=int, default=128)
    p.add_argument("--blocks", type=int, default=0, help="0 samples on the DHT nodes")
    p.add_argument("--beta", type=float, default=0.0)
    p.add_argument("--input", default="builtin", help="'builtin' or a CYLF file of shape (points, 1, 1)")
    p.add_argument("--output", default="-")
    _common(p)
    p.set_defaults(func=cmd_solve)

    for name, mode in (("sweep-dht", "dht-direct"), ("sweep-cheb", "chebyshev")):
        p = sub.add_parser(name, help=f"error sweep in {mode} mode")
        p.add_argument("--orders", help="comma-separated n values")
        p.add_argument("--kappas")
        p.add_argument("--betas")
        p.add_argument("--sizes", help="comma-separated DHT sizes M")
        if mode == "chebyshev":
            p.add_argument("--blocks", help="comma-separated block counts N")
        else:
            p.set_defaults(blocks=None)
        p.add_argument("--output", default="-")
        _common(p)
        p.set_defaults(func=lambda a, mode=mode: cmd_sweep(a, mode))

    p = sub.add_parser("timing", help="wall-clock scaling study")
    p.add_argument("--order", type=int, default=64)
    p.add_argument("--kappa", type=float, default=1024.0)
    p.add_argument("--beta", type=float, default=16.0)
    p.add_argument("--dht-sizes")
    p.add_argument("--cheb-sizes")
    p.add_argument("--blocks")
    p.add_argument("--repeats", type=int, default=3)
    p.add_argument("--output", default="-")
    _common(p)
    p.set_defaults(func=cmd_timing)

    p = sub.add_parser("poisson", help="3-d cylindrical Poisson solve")
    p.add_argument("--n-theta", type=int, required=True)
    p.add_argument("--n-z", type=int, required=True)
    p.add_argument("--length-z", type=float, required=True)
    p.add_argument("--blocks", type=int, default=32)
    p.add_argument("--dht-size", type=int, default=128)
    p.add_argument("--input", default="builtin", help="'builtin' or a CYLF field file")
    p.add_argument("--output", help="CYLF file for the solution")
    p.add_argument("--order", type=int, default=2, help="builtin input: azimuthal order")
    p.add_argument("--axial-index", type=int, default=1, help="builtin input: axial index k")
    p.add_argument("--beta", type=float, default=0.0)
    _common(p)
    p.set_defaults(func=cmd_poisson)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (DomainError, FieldFormatError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ArithmeticError, RuntimeError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
