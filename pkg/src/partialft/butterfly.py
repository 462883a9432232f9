"""Approximate sparse-to-sparse 2D Fourier summation via a butterfly sweep.

Computes u(x) = sum_{k in K} exp(2*pi*i*x.k/n) f_k for point sets X, K in
[0, n)^2 in O(M log M) time, M = max(|X|, |K|), with accuracy set by the
number p of interpolation nodes per dimension.

The kernel restricted to a target box A and source box B factors as

  e^{2 pi i x.k/n} = e^{2 pi i x.c_B/n} e^{2 pi i (x-c_A).(k-c_B)/n}
                     e^{2 pi i c_A.(k-c_B)/n}

and the middle residual is smooth whenever w_A * w_B <= n, so it is
carried by "equivalent charges" on a p-per-dimension uniform Cartesian
grid, re-expanded between levels by a least-squares fit of the residual
kernel on the same nodes (see _child_transfer).  The sweep pairs
target-tree level l (width n/2^l) with
source-tree level L-l (width 2^l), keeping w_A * w_B = n throughout:

  * start: A = root, B = width-1 leaves; each source point sits on the
    corner node of its leaf, so the initial expansions are exact;
  * first half (l < L/2): "equivalent charges" on the source box's grid
    are merged into the parent source box for each child target box;
  * switch at floor(L/2): charges are evaluated onto the target box's
    grid, turning expansions into field samples;
  * second half: field samples are interpolated from parent target boxes
    onto child target boxes while source boxes merge upward;
  * end: A = width-1 leaves whose corner node carries u(x) exactly.

Both trees keep only boxes containing points, and every (A, B) pair at
complementary levels is processed.  Per level the work is organized as a
handful of batched matrix products over all pairs, chunked to bound
temporary memory.  Everything is plain deterministic numpy, so repeated
runs are bitwise identical.

Inputs smaller than a threshold (default 4 p^2 points) skip the sweep and
go through the exact direct summation instead, which is both cheaper and
exact there.
"""
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from ._util import require_power_of_two
from .errors import InvalidArgumentError
from .oracle import aligned_values, direct_sparse_sum
from .pointset import PointSet

#: element budget for per-chunk temporaries in the sweep (complex128)
_CHUNK_ELEMS = 2_000_000


@dataclass
class GridSpec:
    """p uniformly spaced interpolation nodes per dimension in [0, 1].

    Endpoint-inclusive spacing 1/(p-1) aligns nodes of width <= p-1 boxes
    with the integer lattice, which keeps the shallow tree levels exact.
    """

    p: int = 9

    def __post_init__(self):
        if self.p < 2:
            raise InvalidArgumentError(f"grid needs p >= 2 nodes, got {self.p}")

    @property
    def nodes(self) -> np.ndarray:
        return np.arange(self.p) / (self.p - 1)


def kernel_phase(x, k, n: int) -> complex:
    """Unit-modulus kernel value exp(2*pi*i*(x1*k1 + x2*k2)/n)."""
    x = np.asarray(x, dtype=np.int64)
    k = np.asarray(k, dtype=np.int64)
    return np.exp((2j * np.pi / n) * ((x * k).sum(axis=-1) % n))


@dataclass
class Expansion:
    """Equivalent-charge coefficients of one (target box, source box) pair."""

    target_id: int
    source_id: int
    level: int
    coefficients: np.ndarray  # (p, p) complex


@lru_cache(maxsize=8)
def _child_transfer(p: int):
    """Child-to-parent transfer matrices W[c] (c = lower/upper half).

    W[c][i, j] re-expands a unit charge at node i of child half c as
    charges on the parent's p nodes.  The coefficients are the least
    squares fit of the scale-invariant residual kernel exp(2*pi*i*xi*eta)
    (|xi|, |eta| <= 1/2; the box-width product is pinned to n) over a
    dense xi sample, constrained to the parent-node basis.  Child
    positions that coincide with a parent node solve exactly, so levels
    whose grids contain the integer lattice stay exact; elsewhere the fit
    is several times tighter than Lagrange interpolation through the same
    p nodes.
    """
    eta = np.arange(p) / (p - 1) - 0.5
    child = np.concatenate([(c + np.arange(p) / (p - 1)) / 2.0 for c in (0, 1)]) - 0.5
    xi_fine = np.linspace(-0.5, 0.5, 40 * p)
    basis = np.exp(2j * np.pi * np.outer(xi_fine, eta))
    targets = np.exp(2j * np.pi * np.outer(xi_fine, child))
    coeffs, *_ = np.linalg.lstsq(basis, targets, rcond=None)  # (p, 2p)
    # the normal equations are real (symmetric xi sample), so drop roundoff
    coeffs = coeffs.real
    out = []
    for c in (0, 1):
        W = coeffs[:, c * p:(c + 1) * p].T.copy()
        # child node (c(p-1)+s)/(2(p-1)) coinciding with a parent node has
        # the exact unit-vector solution; snap it to kill lstsq noise
        for s in range(p):
            num = c * (p - 1) + s
            if num % 2 == 0:
                W[s] = 0.0
                W[s, num // 2] = 1.0
        out.append(W)
    return tuple(out)


class _Tree:
    """Quadtree over the nonempty dyadic boxes covering a point set.

    Level j holds sorted flattened ids bx * 2^j + by of the occupied boxes
    of width n / 2^j; leaves (level L) are width 1, one per point.
    """

    def __init__(self, pts: np.ndarray, n: int):
        self.n = n
        self.L = n.bit_length() - 1
        self.ids = []
        for j in range(self.L + 1):
            shift = self.L - j
            bx = pts[:, 0] >> shift
            by = pts[:, 1] >> shift
            self.ids.append(np.unique(bx * (1 << j) + by))
        self.parent_idx = [None]
        self.child_idx = []
        for j in range(1, self.L + 1):
            cur = self.ids[j]
            bx, by = cur // (1 << j), cur % (1 << j)
            pid = (bx >> 1) * (1 << (j - 1)) + (by >> 1)
            par = np.searchsorted(self.ids[j - 1], pid)
            self.parent_idx.append(par)
            ci = np.full((len(self.ids[j - 1]), 4), -1, dtype=np.int64)
            ci[par, (bx & 1) * 2 + (by & 1)] = np.arange(len(cur))
            self.child_idx.append(ci)
        self.child_idx.append(None)  # leaves have no children

    def corners(self, j: int) -> np.ndarray:
        w = self.n >> j
        ids = self.ids[j]
        return np.stack([(ids // (1 << j)) * w, (ids % (1 << j)) * w], axis=1)

    def node_coords(self, j: int, xi: np.ndarray):
        """Per-box grid node coordinates, (m, p) arrays for each dimension."""
        w = self.n >> j
        c = self.corners(j)
        return c[:, 0:1] + w * xi[None, :], c[:, 1:2] + w * xi[None, :]

    def centers(self, j: int) -> np.ndarray:
        return self.corners(j) + (self.n >> j) / 2.0

    def child_pos(self, j: int) -> np.ndarray:
        ids = self.ids[j]
        bx, by = ids // (1 << j), ids % (1 << j)
        return (bx & 1) * 2 + (by & 1)


@dataclass
class ButterflyPlan:
    """Paired target/source trees plus the level schedule for one (X, K)."""

    n: int
    levels: int
    switch_level: int
    grid: GridSpec
    X: PointSet
    K: PointSet
    threshold: int
    use_direct: bool
    xtree: _Tree | None = None
    ktree: _Tree | None = None

    def schedule(self):
        """(level, target box width, source box width) per sweep stage;
        the width product is the admissibility scale n at every stage."""
        return [(l, self.n >> l, 1 << l) for l in range(self.levels + 1)]


def plan_butterfly(X: PointSet, K: PointSet, n: int, grid: GridSpec,
                   direct_threshold: int | None = None) -> ButterflyPlan:
    """Build trees and the pairing schedule; cost O(M log M)."""
    require_power_of_two(n, "n", minimum=2)
    if len(X) == 0 or len(K) == 0:
        raise InvalidArgumentError("point sets must be nonempty")
    if X.n != n or K.n != n:
        raise InvalidArgumentError("point sets must be defined on [0, n)^2")
    threshold = 4 * grid.p * grid.p if direct_threshold is None else direct_threshold
    L = n.bit_length() - 1
    use_direct = max(len(X), len(K)) < threshold
    plan = ButterflyPlan(n=n, levels=L, switch_level=L // 2, grid=grid,
                         X=X, K=K, threshold=threshold, use_direct=use_direct)
    if not use_direct:
        plan.xtree = _Tree(X.points, n)
        plan.ktree = _Tree(K.points, n)
    return plan


def butterfly_apply(plan: ButterflyPlan, f) -> np.ndarray:
    """Evaluate the sum; returns values aligned with plan.X.points.

    ``f`` is an array aligned with plan.K.points or a mapping keyed by
    point tuples (which must cover K exactly).
    """
    fvals = aligned_values(f, plan.K)
    if plan.use_direct:
        return direct_sparse_sum(plan.X, plan.K, fvals, plan.n)
    return _sweep(plan, fvals)


def expansions_at_level(plan: ButterflyPlan, f, level: int):
    """Equivalent-charge Expansions captured mid-sweep (first half only);
    diagnostic surface for testing the low-rank representation."""
    if plan.use_direct:
        raise InvalidArgumentError("direct-path plans carry no expansions")
    if not (0 <= level <= plan.switch_level):
        raise InvalidArgumentError(
            f"level must be in [0, {plan.switch_level}] (charge form)"
        )
    fvals = aligned_values(f, plan.K)
    delta = _sweep(plan, fvals, capture_level=level)
    p = plan.grid.p
    jB = plan.levels - level
    A_ids, B_ids = plan.xtree.ids[level], plan.ktree.ids[jB]
    delta4 = delta.reshape(len(A_ids), len(B_ids), p, p)
    return [
        Expansion(target_id=int(a), source_id=int(b), level=level,
                  coefficients=delta4[ia, ib])
        for ia, a in enumerate(A_ids) for ib, b in enumerate(B_ids)
    ]


def _phases(a, n):
    return np.exp((2j * np.pi / n) * a)


def _sweep(plan: ButterflyPlan, fvals: np.ndarray, capture_level=None):
    n, L, h, p = plan.n, plan.levels, plan.switch_level, plan.grid.p
    xi = plan.grid.nodes
    xt, kt = plan.xtree, plan.ktree

    # init: A = root, B = width-1 leaves.  Leaf order equals K.points order,
    # and each point sits on its leaf's corner node, so the expansion is a
    # plain placement of f onto node (0, 0).
    nB = len(kt.ids[L])
    delta = np.zeros((len(xt.ids[0]) * nB, p, p), dtype=np.complex128)
    delta.reshape(-1, p, p)[:, 0, 0] = fvals

    for ell in range(L + 1):
        if capture_level is not None and ell == capture_level:
            return delta
        if ell == h:
            delta = _charges_to_values(plan, delta, ell, xi)
        if ell == L:
            break
        delta = _transition(plan, delta, ell, first_half=ell < h, xi=xi)

    # A leaves are width 1 with u(x) sitting on the corner node; leaf order
    # equals X.points order.
    return delta.reshape(len(xt.ids[L]), p, p)[:, 0, 0].copy()


def _charges_to_values(plan, delta, ell, xi):
    """Evaluate equivalent charges at the target-box grid nodes."""
    n, L, p = plan.n, plan.levels, plan.grid.p
    jA, jB = ell, L - ell
    gAx, gAy = plan.xtree.node_coords(jA, xi)
    gBx, gBy = plan.ktree.node_coords(jB, xi)
    nA, nBox = len(plan.xtree.ids[jA]), len(plan.ktree.ids[jB])
    delta4 = delta.reshape(nA, nBox, p, p)
    out = np.empty_like(delta4)
    chunk = max(1, _CHUNK_ELEMS // max(1, nBox * p * p))
    for lo in range(0, nA, chunk):
        hi = min(nA, lo + chunk)
        P1 = _phases(gAx[lo:hi, None, :, None] * gBx[None, :, None, :], n)
        P2 = _phases(gAy[lo:hi, None, :, None] * gBy[None, :, None, :], n)
        out[lo:hi] = np.matmul(np.matmul(P1, delta4[lo:hi]),
                               np.swapaxes(P2, -1, -2))
    return out.reshape(-1, p, p)


def _transition(plan, delta, ell, first_half, xi):
    """One sweep step: target tree descends a level, source tree ascends."""
    n, L, p = plan.n, plan.levels, plan.grid.p
    xt, kt = plan.xtree, plan.ktree
    jA, jB = ell, L - ell
    jA2, jB2 = ell + 1, jB - 1
    nA, nB = len(xt.ids[jA]), len(kt.ids[jB])
    nA2, nP = len(xt.ids[jA2]), len(kt.ids[jB2])
    W = _child_transfer(p)
    paridx = xt.parent_idx[jA2]
    childs = kt.child_idx[jB2]
    cA2 = xt.centers(jA2)
    delta4 = delta.reshape(nA, nB, p, p)
    new4 = np.zeros((nA2, nP, p, p), dtype=np.complex128)

    if first_half:
        gBx, gBy = kt.node_coords(jB, xi)
    else:
        gAx, gAy = xt.node_coords(jA, xi)
        gA2x, gA2y = xt.node_coords(jA2, xi)
        cB = kt.centers(jB)
        cposA2 = xt.child_pos(jA2)

    for c in range(4):
        sel = np.nonzero(childs[:, c] >= 0)[0]
        if len(sel) == 0:
            continue
        bidx = childs[sel, c]
        m = len(sel)
        Wx, Wy = W[c >> 1], W[c & 1]
        chunk = max(1, _CHUNK_ELEMS // max(1, m * p * p))
        for lo in range(0, nA2, chunk):
            hi = min(nA2, lo + chunk)
            src = delta4[np.ix_(paridx[lo:hi], bidx)]
            if first_half:
                # charges of (parent A, child B) re-expanded onto P's grid
                # for the child target box: phase in the child's center,
                # polynomial transfer from B-subgrid to P-grid
                px = _phases(cA2[lo:hi, 0][:, None, None] * gBx[bidx][None], n)
                py = _phases(cA2[lo:hi, 1][:, None, None] * gBy[bidx][None], n)
                src = src * px[..., :, None] * py[..., None, :]
                out = np.matmul(np.matmul(Wx.T, src), Wy)
            else:
                # field samples on A's grid interpolated onto A2's grid,
                # phase-corrected by the source box center
                pinx = _phases(-gAx[paridx[lo:hi]][:, None, :] * cB[bidx, 0][None, :, None], n)
                piny = _phases(-gAy[paridx[lo:hi]][:, None, :] * cB[bidx, 1][None, :, None], n)
                src = src * pinx[..., :, None] * piny[..., None, :]
                out = np.empty_like(src)
                cp = cposA2[lo:hi]
                for cc in range(4):
                    rows = np.nonzero(cp == cc)[0]
                    if len(rows) == 0:
                        continue
                    Vx, Vy = W[cc >> 1], W[cc & 1]
                    out[rows] = np.matmul(np.matmul(Vx, src[rows]), Vy.T)
                poutx = _phases(gA2x[lo:hi][:, None, :] * cB[bidx, 0][None, :, None], n)
                pouty = _phases(gA2y[lo:hi][:, None, :] * cB[bidx, 1][None, :, None], n)
                out = out * poutx[..., :, None] * pouty[..., None, :]
            new4[lo:hi, sel] += out

    if first_half:
        # counter-phase at the parent source grid completes the factorization
        gPx, gPy = kt.node_coords(jB2, xi)
        chunk = max(1, _CHUNK_ELEMS // max(1, nP * p))
        for lo in range(0, nA2, chunk):
            hi = min(nA2, lo + chunk)
            qx = _phases(-cA2[lo:hi, 0][:, None, None] * gPx[None], n)
            qy = _phases(-cA2[lo:hi, 1][:, None, None] * gPy[None], n)
            new4[lo:hi] *= qx[..., :, None]
            new4[lo:hi] *= qy[..., None, :]

    return new4.reshape(nA2 * nP, p, p)
