"""Cutoff profiles and their integer samplings.

A cutoff profile is a function c0 on [0,1] (or [0,1]^2) with values in
[0,1].  Sampling at resolution n produces the integer cutoff array

    c_x = ceil(n * c0(x/n)),  clamped to [0, n],

which defines the per-output-point frequency summation limit of the
partial Fourier transform.  Velocity models enter through the propagating
wave condition |k| <= omega/v(x): the helper ``cutoff_from_velocity`` maps
omega/(v*kappa) onto the unit cutoff scale, where kappa is a user-chosen
normalization (the mapping of physical wavenumbers onto [0,1] is not
standardized; kappa makes the choice explicit).
"""
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from ._util import require_power_of_two
from .errors import InvalidArgumentError, InvalidDataError, InvalidProfileError


# ---------------------------------------------------------------------------
# 1D profiles


class CutoffProfile1D:
    """Base class: a [0,1]-valued function on [0,1]."""

    def evaluate(self, t: np.ndarray) -> np.ndarray:
        raise NotImplementedError


class CutoffProfile2D:
    """Base class: a [0,1]-valued function on [0,1]^2."""

    def evaluate(self, t1: np.ndarray, t2: np.ndarray) -> np.ndarray:
        raise NotImplementedError


def _check_unit(value: float, what: str) -> None:
    if not (0.0 <= value <= 1.0):
        raise InvalidProfileError(f"{what} must lie in [0, 1], got {value}")


@dataclass
class ConstantProfile(CutoffProfile1D):
    value: float

    def __post_init__(self):
        _check_unit(self.value, "constant profile value")

    def evaluate(self, t):
        return np.full_like(np.asarray(t, dtype=float), self.value)


@dataclass
class LinearProfile(CutoffProfile1D):
    """c0(t) = a + (b - a) * t."""

    a: float
    b: float

    def __post_init__(self):
        _check_unit(self.a, "linear profile endpoint a")
        _check_unit(self.b, "linear profile endpoint b")

    def evaluate(self, t):
        t = np.asarray(t, dtype=float)
        return self.a + (self.b - self.a) * t


@dataclass
class SineProfile(CutoffProfile1D):
    """c0(t) = mean + amplitude * sin(2*pi*periods*t)."""

    mean: float
    amplitude: float
    periods: float

    def __post_init__(self):
        if not (0.0 <= self.mean - abs(self.amplitude)
                and self.mean + abs(self.amplitude) <= 1.0):
            raise InvalidProfileError(
                f"sine profile range [{self.mean - abs(self.amplitude)}, "
                f"{self.mean + abs(self.amplitude)}] exceeds [0, 1]"
            )

    def evaluate(self, t):
        t = np.asarray(t, dtype=float)
        return self.mean + self.amplitude * np.sin(2.0 * np.pi * self.periods * t)


@dataclass
class TableProfile1D(CutoffProfile1D):
    """Piecewise-linear interpolation of m values at t_j = j/m, clamped to [0,1].

    Nodes sit at j/m (not j/(m-1)) so that sampling an m-entry table at
    resolution n == m evaluates exactly at the table entries; beyond the
    last node the profile extends flat.
    """

    values: np.ndarray

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=float).ravel()
        if vals.size == 0:
            raise InvalidProfileError("table profile needs at least one value")
        self.values = np.clip(vals, 0.0, 1.0)

    def evaluate(self, t):
        t = np.asarray(t, dtype=float)
        m = self.values.size
        nodes = np.arange(m) / m
        return np.clip(np.interp(t, nodes, self.values), 0.0, 1.0)


# ---------------------------------------------------------------------------
# 2D profiles


@dataclass
class ConstantProfile2D(CutoffProfile2D):
    value: float

    def __post_init__(self):
        _check_unit(self.value, "constant profile value")

    def evaluate(self, t1, t2):
        return np.full_like(np.asarray(t1, dtype=float), self.value)


@dataclass
class GaussianProfile(CutoffProfile2D):
    """c0(t) = floor + (peak - floor) * exp(-|t - center|^2 / (2 width^2))."""

    center: tuple = (0.5, 0.5)
    width: float = 0.25
    floor: float = 0.1
    peak: float = 0.95

    def __post_init__(self):
        _check_unit(self.floor, "gaussian floor")
        _check_unit(self.peak, "gaussian peak")
        if self.peak < self.floor:
            raise InvalidProfileError("gaussian peak must be >= floor")
        if self.width <= 0:
            raise InvalidProfileError("gaussian width must be positive")

    def evaluate(self, t1, t2):
        t1 = np.asarray(t1, dtype=float)
        t2 = np.asarray(t2, dtype=float)
        d2 = (t1 - self.center[0]) ** 2 + (t2 - self.center[1]) ** 2
        return self.floor + (self.peak - self.floor) * np.exp(-d2 / (2.0 * self.width ** 2))


@dataclass
class SeparableSineProfile(CutoffProfile2D):
    """c0(t) = mean + amplitude * sin(2 pi p1 t1) * sin(2 pi p2 t2)."""

    mean: float = 0.5
    amplitude: float = 0.3
    p1: float = 1.0
    p2: float = 1.0

    def __post_init__(self):
        if not (0.0 <= self.mean - abs(self.amplitude)
                and self.mean + abs(self.amplitude) <= 1.0):
            raise InvalidProfileError("separable sine range exceeds [0, 1]")

    def evaluate(self, t1, t2):
        t1 = np.asarray(t1, dtype=float)
        t2 = np.asarray(t2, dtype=float)
        return self.mean + self.amplitude * (
            np.sin(2.0 * np.pi * self.p1 * t1) * np.sin(2.0 * np.pi * self.p2 * t2)
        )


@dataclass
class TableProfile2D(CutoffProfile2D):
    """Bilinear interpolation of an (r, c) grid with nodes at j/r, j/c."""

    values: np.ndarray

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=float)
        if vals.ndim != 2 or vals.size == 0:
            raise InvalidProfileError("2D table profile needs a nonempty 2D grid")
        self.values = np.clip(vals, 0.0, 1.0)

    def evaluate(self, t1, t2):
        t1 = np.asarray(t1, dtype=float)
        t2 = np.asarray(t2, dtype=float)
        r, c = self.values.shape
        # index space with flat extension at the upper edges
        i = np.clip(t1 * r, 0.0, r - 1.0)
        j = np.clip(t2 * c, 0.0, c - 1.0)
        i0 = np.minimum(i.astype(np.int64), r - 2) if r > 1 else np.zeros_like(i, np.int64)
        j0 = np.minimum(j.astype(np.int64), c - 2) if c > 1 else np.zeros_like(j, np.int64)
        di = i - i0 if r > 1 else np.zeros_like(i)
        dj = j - j0 if c > 1 else np.zeros_like(j)
        i1 = np.minimum(i0 + 1, r - 1)
        j1 = np.minimum(j0 + 1, c - 1)
        v = self.values
        out = (v[i0, j0] * (1 - di) * (1 - dj) + v[i1, j0] * di * (1 - dj)
               + v[i0, j1] * (1 - di) * dj + v[i1, j1] * di * dj)
        return np.clip(out, 0.0, 1.0)


# ---------------------------------------------------------------------------
# sampled cutoffs


@dataclass
class SampledCutoff1D:
    """Integer cutoff array: u_x sums over k < c[x]."""

    n: int
    c: np.ndarray

    def __post_init__(self):
        require_power_of_two(self.n, "n", minimum=2)
        c = np.asarray(self.c, dtype=np.int64)
        if c.shape != (self.n,):
            raise InvalidArgumentError(f"c must have shape ({self.n},), got {c.shape}")
        if c.size and (c.min() < 0 or c.max() > self.n):
            raise InvalidArgumentError("cutoff values must lie in [0, n]")
        self.c = c


@dataclass
class SampledCutoff2D:
    """Integer cutoff grid: u_x sums over |k| < c[x1, x2]."""

    n: int
    c: np.ndarray

    def __post_init__(self):
        require_power_of_two(self.n, "n", minimum=2)
        c = np.asarray(self.c, dtype=np.int64)
        if c.shape != (self.n, self.n):
            raise InvalidArgumentError(f"c must have shape ({self.n}, {self.n}), got {c.shape}")
        if c.size and (c.min() < 0 or c.max() > self.n):
            raise InvalidArgumentError("cutoff values must lie in [0, n]")
        self.c = c


def _ceil_scaled(values: np.ndarray, n: int) -> np.ndarray:
    if np.any(values < 0.0) or np.any(values > 1.0):
        raise InvalidProfileError("profile evaluated outside [0, 1]")
    return np.clip(np.ceil(n * values), 0, n).astype(np.int64)


def sample_cutoff_1d(profile: CutoffProfile1D, n: int) -> SampledCutoff1D:
    """c_x = ceil(n * c0(x/n)) for x = 0..n-1, clamped to [0, n]."""
    require_power_of_two(n, "n", minimum=2)
    t = np.arange(n) / n
    return SampledCutoff1D(n=n, c=_ceil_scaled(profile.evaluate(t), n))


def sample_cutoff_2d(profile: CutoffProfile2D, n: int) -> SampledCutoff2D:
    """c[x1, x2] = ceil(n * c0(x1/n, x2/n)), clamped to [0, n]."""
    require_power_of_two(n, "n", minimum=2)
    t = np.arange(n) / n
    t1, t2 = np.meshgrid(t, t, indexing="ij")
    return SampledCutoff2D(n=n, c=_ceil_scaled(profile.evaluate(t1, t2), n))


# ---------------------------------------------------------------------------
# velocity ingestion


def cutoff_from_velocity(v, omega: float, kappa: float):
    """Table profile clamp(omega / (v * kappa), 0, 1) from a velocity model.

    ``v`` is a 1D sequence or 2D grid of positive velocities; the result is
    a TableProfile1D or TableProfile2D accordingly.  omega is the angular
    frequency of interest and kappa the wavenumber normalization mapping
    omega/v onto the unit cutoff scale.
    """
    v = np.asarray(v, dtype=float)
    if omega <= 0 or kappa <= 0:
        raise InvalidArgumentError("omega and kappa must be positive")
    if v.size == 0:
        raise InvalidDataError("velocity model is empty")
    if np.any(v <= 0):
        raise InvalidDataError("velocities must be positive")
    values = np.clip(omega / (v * kappa), 0.0, 1.0)
    if v.ndim == 1:
        return TableProfile1D(values=values)
    if v.ndim == 2:
        return TableProfile2D(values=values)
    raise InvalidDataError(f"velocity model must be 1D or 2D, got ndim={v.ndim}")


def read_velocity_file(path) -> np.ndarray:
    """Read a plain-text velocity model.

    2D files start with a header line "rows cols" followed by rows*cols
    whitespace-separated reals in row-major order; anything else is read as
    a flat 1D list of reals.
    """
    text = Path(path).read_text()
    lines = text.splitlines()
    first = lines[0].split() if lines else []
    if len(first) == 2:
        try:
            rows, cols = int(first[0]), int(first[1])
        except ValueError:
            rows = cols = -1
        if rows > 0 and cols > 0:
            body = np.array(" ".join(lines[1:]).split(), dtype=float)
            if body.size != rows * cols:
                raise InvalidDataError(
                    f"expected {rows * cols} values after '{rows} {cols}' header, "
                    f"got {body.size}"
                )
            return body.reshape(rows, cols)
    flat = np.array(text.split(), dtype=float)
    if flat.size == 0:
        raise InvalidDataError(f"no numeric data in {path}")
    return flat


# ---------------------------------------------------------------------------
# built-in named profiles (CLI and benchmark defaults)

BUILTIN_1D = {
    "constant": lambda: ConstantProfile(0.75),
    "linear": lambda: LinearProfile(0.1, 0.9),
    "sine": lambda: SineProfile(mean=0.5, amplitude=0.3, periods=2.0),
}

BUILTIN_2D = {
    "constant": lambda: ConstantProfile2D(0.75),
    "gaussian": lambda: GaussianProfile(),
    "sine": lambda: SeparableSineProfile(),
}


def builtin_profile(name: str, dimension: int):
    registry = BUILTIN_1D if dimension == 1 else BUILTIN_2D
    if name not in registry:
        raise InvalidArgumentError(
            f"unknown built-in {dimension}D profile {name!r}; "
            f"choose from {sorted(registry)}"
        )
    return registry[name]()
