"""Direct quadratic-cost reference evaluators and the sampled error metric.

Everything here trades speed for being obviously correct: plain summation
in a fixed order (ascending k, row-major), with integer phase exponents
reduced mod n through a lookup table so the phases are exact regardless of
how large x*k gets.  These are the ground truth for every accuracy test.
"""
import math

import numpy as np

from ._util import phase_table
from .cutoffs import SampledCutoff1D, SampledCutoff2D
from .errors import InvalidArgumentError
from .pointset import PointSet

#: Returned by relative_error_sampled when the exact field vanishes on the
#: sample (the error quotient is undefined); test with math.isnan.
UNDEFINED_ERROR = float("nan")


def direct_pft_1d(f: np.ndarray, cutoff: SampledCutoff1D) -> np.ndarray:
    """u_x = sum_{k < c_x} exp(2*pi*i*x*k/n) f_k by direct summation."""
    f = np.asarray(f, dtype=np.complex128)
    n = cutoff.n
    if f.shape != (n,):
        raise InvalidArgumentError(f"f must have shape ({n},), got {f.shape}")
    table = phase_table(n)
    k = np.arange(n, dtype=np.int64)
    u = np.zeros(n, dtype=np.complex128)
    for x in range(n):
        cx = cutoff.c[x]
        if cx == 0:
            continue
        u[x] = np.sum(table[(x * k[:cx]) % n] * f[:cx])
    return u


def direct_pft_1d_at(f: np.ndarray, cutoff: SampledCutoff1D, xs) -> np.ndarray:
    """Direct evaluation of the 1D transform at selected output points."""
    f = np.asarray(f, dtype=np.complex128)
    n = cutoff.n
    table = phase_table(n)
    k = np.arange(n, dtype=np.int64)
    out = np.zeros(len(xs), dtype=np.complex128)
    for i, x in enumerate(np.asarray(xs, dtype=np.int64)):
        cx = cutoff.c[x]
        if cx:
            out[i] = np.sum(table[(x * k[:cx]) % n] * f[:cx])
    return out


def _norm2_grid(n: int) -> np.ndarray:
    k = np.arange(n, dtype=np.int64)
    return k[:, None] ** 2 + k[None, :] ** 2


def direct_pft_2d(f: np.ndarray, cutoff: SampledCutoff2D) -> np.ndarray:
    """u_x = sum_{|k| < c_x} exp(2*pi*i*x.k/n) f_k by direct summation.

    |k| is the Euclidean norm and the constraint is strict; membership is
    decided in integer arithmetic (k1^2 + k2^2 < c_x^2).
    """
    f = np.asarray(f, dtype=np.complex128)
    n = cutoff.n
    if f.shape != (n, n):
        raise InvalidArgumentError(f"f must have shape ({n}, {n}), got {f.shape}")
    pts = np.stack(np.meshgrid(np.arange(n), np.arange(n), indexing="ij"),
                   axis=-1).reshape(-1, 2)
    return direct_pft_2d_at(f, cutoff, pts).reshape(n, n)


def direct_pft_2d_at(f: np.ndarray, cutoff: SampledCutoff2D, xs) -> np.ndarray:
    """Direct evaluation of the 2D transform at selected (x1, x2) points."""
    f = np.asarray(f, dtype=np.complex128)
    n = cutoff.n
    table = phase_table(n)
    norm2 = _norm2_grid(n).ravel()
    k1 = np.repeat(np.arange(n, dtype=np.int64), n)
    k2 = np.tile(np.arange(n, dtype=np.int64), n)
    fflat = f.ravel()
    xs = np.asarray(xs, dtype=np.int64).reshape(-1, 2)
    out = np.zeros(xs.shape[0], dtype=np.complex128)
    for i, (x1, x2) in enumerate(xs):
        cx = cutoff.c[x1, x2]
        if cx == 0:
            continue
        mask = norm2 < cx * cx
        out[i] = np.sum(table[(x1 * k1[mask] + x2 * k2[mask]) % n] * fflat[mask])
    return out


def direct_sparse_sum(X: PointSet, K: PointSet, f, n: int) -> np.ndarray:
    """u(x) = sum_{k in K} exp(2*pi*i*x.k/n) f_k for every x in X.

    ``f`` is either an array aligned with K.points or a mapping from point
    tuples to complex values.  The result is aligned with X.points.
    """
    if X.n != n or K.n != n:
        raise InvalidArgumentError("point sets must be defined on [0, n)^2")
    fvals = aligned_values(f, K)
    table = phase_table(n)
    out = np.empty(len(X), dtype=np.complex128)
    kt = K.points.T
    # chunk target rows to bound the (chunk, |K|) phase matrix
    chunk = max(1, 8_000_000 // max(1, len(K)))
    for lo in range(0, len(X), chunk):
        xb = X.points[lo:lo + chunk]
        idx = (xb @ kt) % n
        out[lo:lo + chunk] = table[idx] @ fvals
    return out


def aligned_values(f, K: PointSet) -> np.ndarray:
    """Source values as an array aligned with K.points (dict or array in)."""
    if isinstance(f, dict):
        try:
            return np.array([f[tuple(pt)] for pt in K.points], dtype=np.complex128)
        except KeyError as exc:
            raise InvalidArgumentError(f"source value missing for point {exc}") from exc
    fvals = np.asarray(f, dtype=np.complex128)
    if fvals.shape != (len(K),):
        raise InvalidArgumentError(
            f"source values must be aligned with K ({len(K)} points), got shape {fvals.shape}"
        )
    return fvals


def sample_indices(total: int, sample_size: int, seed: int) -> np.ndarray:
    """Seeded uniform sample without replacement, returned sorted ascending."""
    if sample_size > total:
        raise InvalidArgumentError(f"sample_size {sample_size} exceeds {total} points")
    rng = np.random.default_rng(seed)
    return np.sort(rng.choice(total, size=sample_size, replace=False))


def relative_error_sampled(u_exact, u_approx, sample_size: int, seed: int) -> float:
    """sqrt(sum_S |u - u_a|^2 / sum_S |u|^2) over a seeded sample S.

    Deterministic for a fixed seed.  An all-zero denominator yields the
    distinguished UNDEFINED_ERROR value (nan) rather than raising.
    """
    ue = np.asarray(u_exact, dtype=np.complex128)
    ua = np.asarray(u_approx, dtype=np.complex128)
    if ue.shape != ua.shape:
        raise InvalidArgumentError(f"shape mismatch {ue.shape} vs {ua.shape}")
    idx = sample_indices(ue.size, sample_size, seed)
    num = float(np.sum(np.abs(ue.ravel()[idx] - ua.ravel()[idx]) ** 2))
    den = float(np.sum(np.abs(ue.ravel()[idx]) ** 2))
    if den == 0.0:
        return UNDEFINED_ERROR
    return math.sqrt(num / den)


def sampled_error_vs_direct_2d(f, cutoff: SampledCutoff2D, u_approx,
                               sample_size: int, seed: int) -> float:
    """relative_error_sampled against the direct oracle, evaluated only at
    the sampled points (usable when the full O(n^4) oracle is unaffordable)."""
    n = cutoff.n
    ua = np.asarray(u_approx, dtype=np.complex128)
    if ua.shape != (n, n):
        raise InvalidArgumentError(f"u_approx must have shape ({n}, {n})")
    idx = sample_indices(n * n, sample_size, seed)
    pts = np.column_stack([idx // n, idx % n])
    exact = direct_pft_2d_at(f, cutoff, pts)
    num = float(np.sum(np.abs(exact - ua.ravel()[idx]) ** 2))
    den = float(np.sum(np.abs(exact) ** 2))
    if den == 0.0:
        return UNDEFINED_ERROR
    return math.sqrt(num / den)


def sampled_error_vs_direct_1d(f, cutoff: SampledCutoff1D, u_approx,
                               sample_size: int, seed: int) -> float:
    """1D analogue of sampled_error_vs_direct_2d."""
    n = cutoff.n
    ua = np.asarray(u_approx, dtype=np.complex128)
    idx = sample_indices(n, sample_size, seed)
    exact = direct_pft_1d_at(f, cutoff, idx)
    num = float(np.sum(np.abs(exact - ua.ravel()[idx]) ** 2))
    den = float(np.sum(np.abs(exact) ** 2))
    if den == 0.0:
        return UNDEFINED_ERROR
    return math.sqrt(num / den)
