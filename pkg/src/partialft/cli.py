"""Command-line benchmark and diagnostics front-end (``pft-bench``).

Subcommands:
  bench1d    time the exact 1D transform against direct evaluation and FFT
  bench2d    time the approximate 2D transform and report sampled errors
  decompose  dump a domain decomposition as text (one box per line)
  check      run a quick invariant battery (exit 2 on failure)

Exit codes: 0 success, 1 usage error, 2 internal invariant failure.

Heavy imports happen inside the handlers so that --threads can pin the
BLAS/FFT worker count through the environment before numpy loads.
"""
import argparse
import os
import sys


class _Parser(argparse.ArgumentParser):
    # usage problems exit 1 per the CLI contract (argparse default is 2)
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _pin_threads(threads: int) -> None:
    for var in ("OMP_NUM_THREADS", "OPENBLAS_NUM_THREADS", "MKL_NUM_THREADS",
                "NUMEXPR_NUM_THREADS", "VECLIB_MAXIMUM_THREADS"):
        os.environ[var] = str(threads)


def _int_list(text: str):
    try:
        return [int(v) for v in text.split(",") if v]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated integer list: {text!r}")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="pft-bench",
                     description="Partial Fourier transform benchmarks")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, two_d=False):
        p.add_argument("--profile", default="sine" if not two_d else "gaussian",
                       help="built-in profile name, name:params, or a velocity file path")
        p.add_argument("--n", type=_int_list, required=True,
                       help="comma-separated list of sizes (powers of two)")
        p.add_argument("--reps", type=int, default=3, help="timing repetitions")
        p.add_argument("--seed", type=int, default=0, help="seed for inputs and error sampling")
        p.add_argument("--format", choices=("text", "csv"), default="text")
        p.add_argument("--out", default=None, help="output path (default stdout)")
        p.add_argument("--direct-max", type=int, default=None,
                       help="largest N timed by direct evaluation; above it the "
                            "ratio is extrapolated and flagged")
        p.add_argument("--omega", type=float, default=1.0,
                       help="angular frequency for velocity-file profiles")
        p.add_argument("--kappa", type=float, default=1.0,
                       help="wavenumber normalization for velocity-file profiles")
        p.add_argument("--threads", type=int, default=1,
                       help="worker threads to pin for reproducible timings")

    b1 = sub.add_parser("bench1d", help="benchmark the exact 1D transform")
    common(b1)
    b2 = sub.add_parser("bench2d", help="benchmark the approximate 2D transform")
    common(b2, two_d=True)
    b2.add_argument("--p", type=_int_list, default=[5, 9],
                    help="comma-separated grid sizes per dimension")

    dec = sub.add_parser("decompose", help="dump a decomposition as text")
    dec.add_argument("--dim", type=int, choices=(1, 2), default=1)
    dec.add_argument("--profile", default=None,
                     help="built-in name, name:params, or velocity file "
                          "(default: sine in 1D, gaussian in 2D)")
    dec.add_argument("--n", type=int, required=True)
    dec.add_argument("--out", default=None)
    dec.add_argument("--omega", type=float, default=1.0)
    dec.add_argument("--kappa", type=float, default=1.0)

    chk = sub.add_parser("check", help="run the quick invariant battery")
    chk.add_argument("--seed", type=int, default=0)
    return parser


def parse_profile(spec: str, dimension: int, omega: float, kappa: float):
    """Resolve a profile: built-in name, name:comma-params, or velocity file."""
    from . import cutoffs
    from .errors import InvalidArgumentError

    if os.path.exists(spec):
        v = cutoffs.read_velocity_file(spec)
        if (v.ndim == 1) != (dimension == 1):
            raise InvalidArgumentError(
                f"velocity file {spec} is {v.ndim}D but the benchmark is {dimension}D")
        return cutoffs.cutoff_from_velocity(v, omega=omega, kappa=kappa)
    name, _, params = spec.partition(":")
    args = [float(v) for v in params.split(",")] if params else []
    if dimension == 1:
        table = {
            "constant": lambda a: cutoffs.ConstantProfile(a),
            "linear": lambda a, b: cutoffs.LinearProfile(a, b),
            "sine": lambda m, a, q: cutoffs.SineProfile(m, a, q),
        }
    else:
        table = {
            "constant": lambda a: cutoffs.ConstantProfile2D(a),
            "gaussian": lambda cx, cy, w, lo, hi: cutoffs.GaussianProfile(
                center=(cx, cy), width=w, floor=lo, peak=hi),
            "sine": lambda m, a, p1, p2: cutoffs.SeparableSineProfile(m, a, p1, p2),
        }
    if name not in table:
        raise InvalidArgumentError(
            f"unknown {dimension}D profile {name!r}; choose from {sorted(table)}")
    if not args:
        return cutoffs.builtin_profile(name, dimension)
    return table[name](*args)


def _write(data: bytes, out_path):
    if out_path:
        with open(out_path, "wb") as fh:
            fh.write(data)
    else:
        sys.stdout.write(data.decode())


def _cmd_bench(args, dimension: int) -> int:
    from .bench import BenchConfig, emit_table, run_bench_1d, run_bench_2d
    profile = parse_profile(args.profile, dimension, args.omega, args.kappa)
    cfg = BenchConfig(
        dimension=dimension, profile=profile, n_values=args.n,
        p_values=getattr(args, "p", [5, 9]), repetitions=args.reps,
        seed=args.seed, direct_max=args.direct_max, profile_name=args.profile)
    rows = run_bench_1d(cfg) if dimension == 1 else run_bench_2d(cfg)
    _write(emit_table(rows, args.format), args.out)
    return 0


def _cmd_decompose(args) -> int:
    from .cutoffs import sample_cutoff_1d, sample_cutoff_2d
    from .decomp import decompose_1d, decompose_2d
    spec = args.profile or ("sine" if args.dim == 1 else "gaussian")
    profile = parse_profile(spec, args.dim, args.omega, args.kappa)
    if args.dim == 1:
        text = decompose_1d(sample_cutoff_1d(profile, args.n)).export_text()
    else:
        text = decompose_2d(sample_cutoff_2d(profile, args.n)).export_text()
    _write(text.encode(), args.out)
    return 0


def _cmd_check(args) -> int:
    import numpy as np

    from . import (GridSpec, builtin_profile, decompose_1d, decompose_2d,
                   direct_pft_1d, direct_pft_2d, frft_apply, frft_plan,
                   pft1d_apply, pft2d_apply, ring_points, sample_cutoff_1d,
                   sample_cutoff_2d)

    rng = np.random.default_rng(args.seed)
    failures = 0

    def report(name, ok):
        nonlocal failures
        print(f"{'PASS' if ok else 'FAIL'}  {name}")
        failures += 0 if ok else 1

    c1 = sample_cutoff_1d(builtin_profile("sine", 1), 64)
    d1 = decompose_1d(c1)
    report("1D partition cell count", d1.cell_count() == int(c1.c.sum()))

    c2 = sample_cutoff_2d(builtin_profile("gaussian", 2), 32)
    d2 = decompose_2d(c2)
    report("2D partition cell count", d2.cell_count() == int(c2.c.sum()))

    ok = True
    for s in (1, 2, 8, 32):
        n = 4 * s
        plan = frft_plan(s, n)
        x = np.arange(s)
        dense = np.exp(2j * np.pi * np.outer(x, x) / n)
        v = rng.standard_normal(s) + 1j * rng.standard_normal(s)
        ok &= np.linalg.norm(frft_apply(plan, v) - dense @ v) <= 1e-12 * max(
            1.0, np.linalg.norm(v))
    report("frft matches dense kernel", ok)

    n = 256
    c = sample_cutoff_1d(builtin_profile("sine", 1), n)
    f = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    ue = direct_pft_1d(f, c)
    err = np.linalg.norm(pft1d_apply(f, c) - ue) / np.linalg.norm(ue)
    report("1D exactness at N=256", err <= 1e-12)

    n = 16
    c = sample_cutoff_2d(builtin_profile("gaussian", 2), n)
    f = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    ue = direct_pft_2d(f, c)
    ua = pft2d_apply(f, c, GridSpec(5), direct_threshold=1 << 30)
    report("2D ring coverage (all-direct)",
           np.linalg.norm(ua - ue) / np.linalg.norm(ue) <= 1e-12)

    pts = sum(len(ring_points(j, 1, 32)) for j in range(46))
    report("ring partition counts", pts == 32 * 32)

    return 2 if failures else 0


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "threads", None):
        _pin_threads(args.threads)
    from .errors import PartialFTError
    try:
        if args.command == "bench1d":
            return _cmd_bench(args, 1)
        if args.command == "bench2d":
            return _cmd_bench(args, 2)
        if args.command == "decompose":
            return _cmd_decompose(args)
        if args.command == "check":
            return _cmd_check(args)
    except PartialFTError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
