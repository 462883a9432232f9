"""Multiscale dyadic decomposition of the summation domains.

1D: the domain D = {(x, k): k < c_x} in [0, n)^2 is split recursively from
the root box into dyadic boxes.  A box fully inside D is kept, a box fully
outside is discarded, and a straddling box is split into four children.
The kept boxes are pairwise disjoint and their union is exactly D.

2D: only |k| enters the constraint, so the 3D radial set
R = {(x1, x2, r): r < c_x} in [0, n)^3 is decomposed the same way with
eight children per split.  Boxes are then grouped by their r-interval
A = [r0, r0+s); each group owns the spatial footprint X^A (union of the
boxes' x-squares) and the ring K^A = {k: r0 <= |k| < r0+s}, which feed
one sparse Fourier summation each.

"Fully inside" means every lattice cell of the box satisfies the
constraint, which reduces to k0 + s <= min(c) over the box's x-range;
aligned dyadic min/max tables make that test O(1) per box.  A size-1 box
is never partial (its single cell is in or out), so recursion terminates.
"""
import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .cutoffs import SampledCutoff1D, SampledCutoff2D
from .errors import InvalidArgumentError
from .pointset import PointSet


class BoxClass(Enum):
    INSIDE = "inside"
    OUTSIDE = "outside"
    PARTIAL = "partial"


@dataclass
class DyadicBox1D:
    """Half-open box [x0, x0+s) x [k0, k0+s) with corners aligned to s."""

    x0: int
    k0: int
    s: int


@dataclass
class DyadicBox2D:
    """Half-open box [x1, x1+s) x [x2, x2+s) x [r0, r0+s)."""

    x1: int
    x2: int
    r0: int
    s: int


@dataclass
class MinMaxTable:
    """Per-level min/max of the cutoff over aligned dyadic intervals/squares.

    Level j aggregates blocks of size 2^j; level 0 is the cutoff itself.
    """

    ndim: int
    mins: list
    maxs: list

    @property
    def levels(self) -> int:
        return len(self.mins)


def build_minmax(cutoff) -> MinMaxTable:
    """O(n) (1D) / O(n^2) (2D) dyadic min/max aggregates of the cutoff."""
    if isinstance(cutoff, SampledCutoff1D):
        mins, maxs = [cutoff.c], [cutoff.c]
        while mins[-1].size > 1:
            m = mins[-1]
            M = maxs[-1]
            mins.append(np.minimum(m[0::2], m[1::2]))
            maxs.append(np.maximum(M[0::2], M[1::2]))
        return MinMaxTable(ndim=1, mins=mins, maxs=maxs)
    if isinstance(cutoff, SampledCutoff2D):
        mins, maxs = [cutoff.c], [cutoff.c]
        while mins[-1].shape[0] > 1:
            m = mins[-1]
            M = maxs[-1]
            m2 = np.minimum(m[0::2, :], m[1::2, :])
            mins.append(np.minimum(m2[:, 0::2], m2[:, 1::2]))
            M2 = np.maximum(M[0::2, :], M[1::2, :])
            maxs.append(np.maximum(M2[:, 0::2], M2[:, 1::2]))
        return MinMaxTable(ndim=2, mins=mins, maxs=maxs)
    raise InvalidArgumentError(f"unsupported cutoff type {type(cutoff).__name__}")


def classify_box_1d(box: DyadicBox1D, table: MinMaxTable) -> BoxClass:
    """Inside iff k0+s <= min c over the x-range; outside iff k0 >= max c."""
    if table.ndim != 1:
        raise InvalidArgumentError("classify_box_1d needs a 1D MinMaxTable")
    j = box.s.bit_length() - 1
    i = box.x0 >> j
    if box.k0 + box.s <= table.mins[j][i]:
        return BoxClass.INSIDE
    if box.k0 >= table.maxs[j][i]:
        return BoxClass.OUTSIDE
    return BoxClass.PARTIAL


def classify_box_2d(box: DyadicBox2D, table: MinMaxTable) -> BoxClass:
    if table.ndim != 2:
        raise InvalidArgumentError("classify_box_2d needs a 2D MinMaxTable")
    j = box.s.bit_length() - 1
    i1, i2 = box.x1 >> j, box.x2 >> j
    if box.r0 + box.s <= table.mins[j][i1, i2]:
        return BoxClass.INSIDE
    if box.r0 >= table.maxs[j][i1, i2]:
        return BoxClass.OUTSIDE
    return BoxClass.PARTIAL


@dataclass
class Decomposition1D:
    """Accepted boxes grouped by size; disjoint with union exactly D."""

    n: int
    boxes_by_size: dict  # s -> (m, 2) int64 array of (x0, k0), sorted

    def sizes(self):
        return sorted(self.boxes_by_size)

    def box_count(self) -> int:
        return sum(len(v) for v in self.boxes_by_size.values())

    def cell_count(self) -> int:
        """Total lattice cells covered: must equal sum(c_x)."""
        return sum(int(s) * int(s) * len(v) for s, v in self.boxes_by_size.items())

    def iter_boxes(self):
        for s in self.sizes():
            for x0, k0 in self.boxes_by_size[s]:
                yield DyadicBox1D(x0=int(x0), k0=int(k0), s=int(s))

    def export_text(self) -> str:
        """One box per line: "s x0 k0" (plotting-friendly dump)."""
        lines = [f"{b.s} {b.x0} {b.k0}" for b in self.iter_boxes()]
        return "\n".join(lines) + ("\n" if lines else "")


@dataclass
class Decomposition2D:
    n: int
    boxes_by_size: dict  # s -> (m, 3) int64 array of (x1, x2, r0), sorted

    def sizes(self):
        return sorted(self.boxes_by_size)

    def box_count(self) -> int:
        return sum(len(v) for v in self.boxes_by_size.values())

    def cell_count(self) -> int:
        """Total lattice cells of R covered: must equal sum(c_x)."""
        return sum(int(s) ** 3 * len(v) for s, v in self.boxes_by_size.items())

    def iter_boxes(self):
        for s in self.sizes():
            for x1, x2, r0 in self.boxes_by_size[s]:
                yield DyadicBox2D(x1=int(x1), x2=int(x2), r0=int(r0), s=int(s))

    def export_text(self) -> str:
        """One box per line: "s x0 y0 r0"."""
        lines = [f"{b.s} {b.x1} {b.x2} {b.r0}" for b in self.iter_boxes()]
        return "\n".join(lines) + ("\n" if lines else "")


def decompose_1d(cutoff: SampledCutoff1D) -> Decomposition1D:
    """Recursive subdivision of [0, n)^2, level-vectorized."""
    n = cutoff.n
    table = build_minmax(cutoff)
    out = {}
    # active partial boxes at the current size, as (m, 2) arrays of corners
    active = np.zeros((1, 2), dtype=np.int64)
    s = n
    while s >= 1 and len(active):
        j = s.bit_length() - 1
        x0, k0 = active[:, 0], active[:, 1]
        mn = table.mins[j][x0 >> j]
        mx = table.maxs[j][x0 >> j]
        inside = k0 + s <= mn
        outside = k0 >= mx
        partial = ~(inside | outside)
        if np.any(inside):
            kept = active[inside]
            order = np.lexsort((kept[:, 1], kept[:, 0]))
            out[s] = kept[order]
        if s == 1:
            # a single cell is in or out, never partial
            assert not np.any(partial)
            break
        half = s // 2
        par = active[partial]
        if len(par):
            # four children per partial box, fixed order
            offs = np.array([[0, 0], [0, half], [half, 0], [half, half]],
                            dtype=np.int64)
            active = (par[:, None, :] + offs[None, :, :]).reshape(-1, 2)
        else:
            active = par
        s = half
    return Decomposition1D(n=n, boxes_by_size=out)


def decompose_2d(cutoff: SampledCutoff2D) -> Decomposition2D:
    """Recursive subdivision of [0, n)^3 over (x1, x2, r)."""
    n = cutoff.n
    table = build_minmax(cutoff)
    out = {}
    active = np.zeros((1, 3), dtype=np.int64)
    s = n
    while s >= 1 and len(active):
        j = s.bit_length() - 1
        x1, x2, r0 = active[:, 0], active[:, 1], active[:, 2]
        mn = table.mins[j][x1 >> j, x2 >> j]
        mx = table.maxs[j][x1 >> j, x2 >> j]
        inside = r0 + s <= mn
        outside = r0 >= mx
        partial = ~(inside | outside)
        if np.any(inside):
            kept = active[inside]
            order = np.lexsort((kept[:, 2], kept[:, 1], kept[:, 0]))
            out[s] = kept[order]
        if s == 1:
            assert not np.any(partial)
            break
        half = s // 2
        par = active[partial]
        if len(par):
            offs = np.array(
                [[a, b, c] for a in (0, half) for b in (0, half) for c in (0, half)],
                dtype=np.int64)
            active = (par[:, None, :] + offs[None, :, :]).reshape(-1, 3)
        else:
            active = par
        s = half
    return Decomposition2D(n=n, boxes_by_size=out)


# ---------------------------------------------------------------------------
# ring grouping

_norm2_cache = {}


def _norm2(n: int) -> np.ndarray:
    if n not in _norm2_cache:
        k = np.arange(n, dtype=np.int64)
        _norm2_cache[n] = k[:, None] ** 2 + k[None, :] ** 2
    return _norm2_cache[n]


def ring_points(r0: int, s: int, n: int) -> PointSet:
    """All integer k in [0, n)^2 with r0 <= |k| < r0 + s, row-major order.

    Membership uses squared-norm integer comparisons, so boundary points
    (e.g. |(3,4)| = 5) classify exactly.
    """
    rmax = math.ceil(math.sqrt(2.0) * n)
    if r0 < 0 or s < 1 or r0 + s > rmax:
        raise InvalidArgumentError(
            f"ring [{r0}, {r0 + s}) out of range [0, {rmax}] for n={n}"
        )
    norm2 = _norm2(n)
    mask = (norm2 >= r0 * r0) & (norm2 < (r0 + s) * (r0 + s))
    return PointSet(points=np.argwhere(mask), n=n)


@dataclass
class RingGroup:
    """All decomposition boxes sharing the r-interval A = [r0, r0+s).

    X is the union of the boxes' x-squares (disjoint for a fixed interval,
    deduplicated defensively) and K the ring of lattice modes whose
    Euclidean norm falls in A.
    """

    r0: int
    s: int
    boxes: np.ndarray  # (m, 3) rows (x1, x2, r0), all with this r0 and size s
    X: PointSet
    K: PointSet


def group_by_interval(d: Decomposition2D) -> list:
    """One RingGroup per occupied r-interval, ascending (s, r0).

    Every decomposition box lands in exactly one group.  Groups whose ring
    contains no lattice point are dropped (they contribute nothing).
    """
    groups = []
    for s in d.sizes():
        boxes = d.boxes_by_size[s]
        offs = np.arange(s, dtype=np.int64)
        for r0 in np.unique(boxes[:, 2]):
            sub = boxes[boxes[:, 2] == r0]
            # lattice points of the (disjoint) s x s squares
            px = (sub[:, 0][:, None, None] + offs[None, :, None])
            py = (sub[:, 1][:, None, None] + offs[None, None, :])
            pts = np.stack([np.broadcast_to(px, (len(sub), s, s)).ravel(),
                            np.broadcast_to(py, (len(sub), s, s)).ravel()], axis=1)
            X = PointSet.from_points(pts, d.n)
            K = ring_points(int(r0), int(s), d.n)
            if len(K) == 0:
                continue
            groups.append(RingGroup(r0=int(r0), s=int(s), boxes=sub, X=X, K=K))
    groups.sort(key=lambda g: (g.s, g.r0))
    return groups
