"""Benchmark harness: times the fast transforms against direct evaluation
and a plain FFT, and reports the accuracy of the 2D approximation.

Per size the harness reports T_a (median wall time of the algorithm over
a few repetitions, after one discarded warm-up), R_da (direct time over
T_a), R_af (T_a over one FFT of the same size) and an error column.
Direct evaluation is quadratic in the point count, so above a
configurable cap it is not run; the ratio is then extrapolated from a
measured constant times the quadratic model and the row is flagged --
extrapolations are never presented as measurements.
"""
import time
from dataclasses import dataclass, field

import numpy as np

from ._util import require_power_of_two
from .butterfly import GridSpec
from .cutoffs import (CutoffProfile1D, CutoffProfile2D, sample_cutoff_1d,
                      sample_cutoff_2d)
from .decomp import decompose_1d, decompose_2d, group_by_interval
from .errors import InvalidArgumentError
from .oracle import (direct_pft_1d, direct_pft_2d,
                     sampled_error_vs_direct_1d, sampled_error_vs_direct_2d)
from .pft1d import pft1d_apply
from .pft2d import pft2d_apply

DEFAULT_DIRECT_MAX_1D = 1 << 15
DEFAULT_DIRECT_MAX_2D = 256


@dataclass
class BenchConfig:
    dimension: int
    profile: object
    n_values: list
    p_values: list = field(default_factory=lambda: [5, 9])
    repetitions: int = 3
    seed: int = 0
    direct_max: int | None = None
    sample_size: int = 100
    profile_name: str = ""

    def __post_init__(self):
        if self.dimension not in (1, 2):
            raise InvalidArgumentError("dimension must be 1 or 2")
        if self.dimension == 1 and not isinstance(self.profile, CutoffProfile1D):
            raise InvalidArgumentError("1D benchmark needs a CutoffProfile1D")
        if self.dimension == 2 and not isinstance(self.profile, CutoffProfile2D):
            raise InvalidArgumentError("2D benchmark needs a CutoffProfile2D")
        if not self.n_values:
            raise InvalidArgumentError("need at least one N")
        for n in self.n_values:
            require_power_of_two(n, "N", minimum=2)
        if self.repetitions < 1:
            raise InvalidArgumentError("repetitions must be >= 1")
        for p in self.p_values:
            if p < 2:
                raise InvalidArgumentError("p must be >= 2")
        if self.direct_max is None:
            self.direct_max = (DEFAULT_DIRECT_MAX_1D if self.dimension == 1
                               else DEFAULT_DIRECT_MAX_2D)


@dataclass
class BenchRow:
    n: int
    p: int | None
    t_algo: float
    t_direct: float
    t_fft: float
    r_da: float
    r_af: float
    err: float
    extrapolated: bool
    boxes: int
    groups: int | None = None


def _median_time(fn, repetitions: int) -> float:
    fn()  # warm-up, discarded
    times = []
    for _ in range(repetitions):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return float(np.median(times))


def _random_field(shape, seed_key) -> np.ndarray:
    rng = np.random.default_rng(seed_key)
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)


def run_bench_1d(cfg: BenchConfig) -> list:
    if cfg.dimension != 1:
        raise InvalidArgumentError("run_bench_1d needs a 1D config")
    rows = []
    direct_constant = None  # (t / N^2) from the largest measured direct run
    for n in cfg.n_values:
        cutoff = sample_cutoff_1d(cfg.profile, n)
        f = _random_field(n, (cfg.seed, n))
        t_algo = _median_time(lambda: pft1d_apply(f, cutoff), cfg.repetitions)
        t_fft = _median_time(lambda: np.fft.fft(f), cfg.repetitions)
        u = pft1d_apply(f, cutoff)
        if n <= cfg.direct_max:
            t0 = time.perf_counter()
            u_exact = direct_pft_1d(f, cutoff)
            t_direct = time.perf_counter() - t0
            direct_constant = t_direct / float(n) ** 2
            den = np.linalg.norm(u_exact)
            err = float(np.linalg.norm(u - u_exact) / den) if den else 0.0
            extrapolated = False
        else:
            if direct_constant is None:
                direct_constant = _calibrate_direct_1d(cfg)
            t_direct = direct_constant * float(n) ** 2
            err = sampled_error_vs_direct_1d(f, cutoff, u, cfg.sample_size, cfg.seed)
            extrapolated = True
        rows.append(BenchRow(
            n=n, p=None, t_algo=t_algo, t_direct=t_direct, t_fft=t_fft,
            r_da=t_direct / t_algo, r_af=t_algo / t_fft, err=err,
            extrapolated=extrapolated, boxes=decompose_1d(cutoff).box_count()))
    return rows


def _calibrate_direct_1d(cfg) -> float:
    n = cfg.direct_max
    cutoff = sample_cutoff_1d(cfg.profile, n)
    f = _random_field(n, (cfg.seed, n, 1))
    t0 = time.perf_counter()
    direct_pft_1d(f, cutoff)
    return (time.perf_counter() - t0) / float(n) ** 2


def run_bench_2d(cfg: BenchConfig) -> list:
    if cfg.dimension != 2:
        raise InvalidArgumentError("run_bench_2d needs a 2D config")
    rows = []
    direct_constant = None
    for n in cfg.n_values:
        cutoff = sample_cutoff_2d(cfg.profile, n)
        f = _random_field((n, n), (cfg.seed, n))
        decomposition = decompose_2d(cutoff)
        groups = len(group_by_interval(decomposition))
        boxes = decomposition.box_count()
        t_fft = _median_time(lambda: np.fft.fft2(f), cfg.repetitions)
        if n <= cfg.direct_max:
            t0 = time.perf_counter()
            direct_pft_2d(f, cutoff)
            t_direct = time.perf_counter() - t0
            direct_constant = t_direct / float(n) ** 4
            extrapolated = False
        else:
            if direct_constant is None:
                direct_constant = _calibrate_direct_2d(cfg)
            t_direct = direct_constant * float(n) ** 4
            extrapolated = True
        for p in cfg.p_values:
            grid = GridSpec(p)
            t_algo = _median_time(lambda: pft2d_apply(f, cutoff, grid),
                                  cfg.repetitions)
            u = pft2d_apply(f, cutoff, grid)
            err = sampled_error_vs_direct_2d(f, cutoff, u, cfg.sample_size, cfg.seed)
            rows.append(BenchRow(
                n=n, p=p, t_algo=t_algo, t_direct=t_direct, t_fft=t_fft,
                r_da=t_direct / t_algo, r_af=t_algo / t_fft, err=err,
                extrapolated=extrapolated, boxes=boxes, groups=groups))
    return rows


def _calibrate_direct_2d(cfg) -> float:
    # calibrate at a modest size: the model only scales an N^4 cost
    n = min(cfg.direct_max, 64)
    cutoff = sample_cutoff_2d(cfg.profile, n)
    f = _random_field((n, n), (cfg.seed, n, 1))
    t0 = time.perf_counter()
    direct_pft_2d(f, cutoff)
    return (time.perf_counter() - t0) / float(n) ** 4


# ---------------------------------------------------------------------------
# table rendering


def _fmt(v) -> str:
    if isinstance(v, bool):
        return "yes" if v else "no"
    if v is None:
        return ""
    if isinstance(v, float):
        return f"{v:.2e}"
    return str(v)


def _columns(rows):
    two_d = rows[0].p is not None
    cols = ["N"] + (["p"] if two_d else []) + ["T_a", "R_d/a", "R_a/f", "E"]
    cols += ["direct_extrapolated", "boxes"] + (["groups"] if two_d else [])
    return cols, two_d


def _row_cells(r: BenchRow, two_d: bool):
    cells = [str(r.n)] + ([str(r.p)] if two_d else [])
    cells += [_fmt(r.t_algo), _fmt(r.r_da), _fmt(r.r_af), _fmt(r.err),
              _fmt(r.extrapolated), str(r.boxes)]
    if two_d:
        cells.append(str(r.groups))
    return cells


def emit_table(rows, output_format: str = "text") -> bytes:
    """Render benchmark rows as csv or aligned text; 3 significant digits."""
    if not rows:
        raise InvalidArgumentError("no benchmark rows to emit")
    cols, two_d = _columns(rows)
    table = [cols] + [_row_cells(r, two_d) for r in rows]
    if output_format == "csv":
        text = "\n".join(",".join(cells) for cells in table) + "\n"
    elif output_format == "text":
        widths = [max(len(row[i]) for row in table) for i in range(len(cols))]
        text = "\n".join(
            "  ".join(c.rjust(w) for c, w in zip(row, widths)) for row in table
        ) + "\n"
    else:
        raise InvalidArgumentError(f"unknown output format {output_format!r}")
    return text.encode()
