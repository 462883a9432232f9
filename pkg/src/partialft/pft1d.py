"""Exact 1D partial Fourier transform in O(n log^2 n).

The summation domain D = {(x, k): k < c_x} is decomposed into dyadic
boxes.  For a box with corner (xb, kb) and size s, the local kernel
exp(2*pi*i*(xb+x')(kb+k')/n) factors into

    diag[exp(2*pi*i*x'*kb/n)] . M2 . diag[exp(2*pi*i*xb*(kb+k')/n)]

with (M2)_{x'k'} = exp(2*pi*i*x'*k'/n), the fractional Fourier kernel,
so each box costs O(s log s).  No approximation is made anywhere; the
output matches direct summation up to roundoff.

Boxes of one size are batched: the diagonal phases are integer-exponent
table lookups and the fractional transform runs on an (m, s) stack, so
per-box Python overhead is avoided.
"""
import numpy as np

from ._util import phases_mod
from .cutoffs import SampledCutoff1D
from .decomp import Decomposition1D, DyadicBox1D, decompose_1d
from .errors import InvalidArgumentError
from .frft import FrftPlan, cached_frft_plan, frft_apply


def _batched_contributions(x0, k0, s, n, f, plan):
    """Box sums for a stack of size-s boxes; returns (m, s) rows of v_{x'}."""
    ks = np.arange(s, dtype=np.int64)
    segs = f[k0[:, None] + ks[None, :]]
    # M3 diagonal: exp(2*pi*i*xb*(kb+k')/n)
    segs = segs * phases_mod(x0[:, None] * (k0[:, None] + ks[None, :]), n)
    g = frft_apply(plan, segs)
    # M1 diagonal: exp(2*pi*i*x'*kb/n)
    return g * phases_mod(ks[None, :] * k0[:, None], n)


def box_contribution(box: DyadicBox1D, f: np.ndarray, plan: FrftPlan) -> np.ndarray:
    """v_{x'} = sum_{k'} exp(2*pi*i*(xb+x')(kb+k')/n) f_{kb+k'} for one box."""
    f = np.asarray(f, dtype=np.complex128)
    n = len(f)
    if plan.s != box.s:
        raise InvalidArgumentError(f"plan size {plan.s} does not match box size {box.s}")
    if plan.n != n:
        raise InvalidArgumentError(f"plan n {plan.n} does not match field length {n}")
    if not (0 <= box.x0 and box.x0 + box.s <= n and 0 <= box.k0 and box.k0 + box.s <= n):
        raise InvalidArgumentError(f"box {box} not within [0, {n})^2")
    x0 = np.array([box.x0], dtype=np.int64)
    k0 = np.array([box.k0], dtype=np.int64)
    return _batched_contributions(x0, k0, box.s, n, f, plan)[0]


def pft1d_apply(f: np.ndarray, cutoff: SampledCutoff1D) -> np.ndarray:
    """Exact partial Fourier transform u_x = sum_{k < c_x} e^{2 pi i xk/n} f_k."""
    f = np.asarray(f, dtype=np.complex128)
    n = cutoff.n
    if f.shape != (n,):
        raise InvalidArgumentError(f"f must have shape ({n},), got {f.shape}")
    return apply_decomposition(f, decompose_1d(cutoff))


def apply_decomposition(f: np.ndarray, d: Decomposition1D) -> np.ndarray:
    """Accumulate box contributions of an existing decomposition into u.

    Boxes are processed in ascending (s, x0, k0) order; boxes sharing an
    x-interval are reduced by np.add.at in that fixed order, so repeated
    runs are bitwise identical.
    """
    n = d.n
    u = np.zeros(n, dtype=np.complex128)
    for s in d.sizes():
        boxes = d.boxes_by_size[s]
        if not len(boxes):
            continue
        plan = cached_frft_plan(int(s), n)
        v = _batched_contributions(boxes[:, 0], boxes[:, 1], int(s), n, f, plan)
        np.add.at(u.reshape(n // s, s), boxes[:, 0] // s, v)
    return u
