"""Approximate 2D partial Fourier transform in O(n^2 log^2 n).

The radial set R = {(x1, x2, r): r < c_x} is decomposed into dyadic boxes
and grouped by r-interval.  Each ring group contributes

    sum_{k in K^A} exp(2*pi*i*x.k/n) f_k   for x in X^A,

a Fourier summation between two sparse band-shaped point sets, evaluated
by the butterfly sweep (or exactly by direct summation for small groups).
Group contributions are accumulated in ascending (s, r0) order; for each
output point the rings covering it partition {k: |k| < c_x} exactly, so
with direct per-group evaluation the result equals the direct transform
to roundoff, and with the butterfly it is accurate to the grid order.
"""
import numpy as np

from .butterfly import GridSpec, butterfly_apply, plan_butterfly
from .cutoffs import SampledCutoff2D
from .decomp import RingGroup, decompose_2d, group_by_interval
from .errors import InvalidArgumentError
from .oracle import direct_sparse_sum


def ring_group_contribution(group: RingGroup, f: np.ndarray, grid: GridSpec,
                            direct_threshold: int | None = None) -> np.ndarray:
    """Contribution of one ring group, aligned with group.X.points."""
    f = np.asarray(f, dtype=np.complex128)
    n = group.X.n
    fvals = f[group.K.points[:, 0], group.K.points[:, 1]]
    threshold = 4 * grid.p * grid.p if direct_threshold is None else direct_threshold
    if max(len(group.X), len(group.K)) < threshold:
        return direct_sparse_sum(group.X, group.K, fvals, n)
    plan = plan_butterfly(group.X, group.K, n, grid, direct_threshold=threshold)
    return butterfly_apply(plan, fvals)


def pft2d_apply(f: np.ndarray, cutoff: SampledCutoff2D, grid: GridSpec | None = None,
                direct_threshold: int | None = None) -> np.ndarray:
    """u_x = sum_{|k| < c_x} exp(2*pi*i*x.k/n) f_k, approximately.

    ``direct_threshold`` overrides the group size below which summation is
    exact (default 4 p^2); passing a huge value forces every group onto
    the direct path, which reproduces the direct transform to roundoff.
    """
    grid = grid or GridSpec()
    f = np.asarray(f, dtype=np.complex128)
    n = cutoff.n
    if f.shape != (n, n):
        raise InvalidArgumentError(f"f must have shape ({n}, {n}), got {f.shape}")
    groups = group_by_interval(decompose_2d(cutoff))
    u = np.zeros((n, n), dtype=np.complex128)
    for g in groups:
        vals = ring_group_contribution(g, f, grid, direct_threshold=direct_threshold)
        u[g.X.points[:, 0], g.X.points[:, 1]] += vals
    return u
