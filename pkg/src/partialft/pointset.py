"""Explicit integer lattice point collections on [0, n)^2."""
from dataclasses import dataclass

import numpy as np

from .errors import InvalidArgumentError


@dataclass
class PointSet:
    """A deduplicated, lexicographically sorted set of integer points.

    ``points`` has shape (m, 2) with 0 <= points < n.  Sorting is row-major
    (first coordinate, then second), which coincides with ascending order of
    the flattened ids ``points[:, 0] * n + points[:, 1]``.  Values attached
    to a PointSet (source strengths, output samples) are always arrays
    aligned with this canonical order.
    """

    points: np.ndarray
    n: int

    def __post_init__(self):
        pts = np.ascontiguousarray(np.asarray(self.points, dtype=np.int64))
        if pts.ndim != 2 or pts.shape[1] != 2:
            raise InvalidArgumentError(f"points must have shape (m, 2), got {pts.shape}")
        if pts.size and (pts.min() < 0 or pts.max() >= self.n):
            raise InvalidArgumentError(f"points must lie in [0, {self.n})^2")
        ids = pts[:, 0] * self.n + pts[:, 1]
        if np.any(np.diff(ids) <= 0):
            raise InvalidArgumentError("points must be strictly sorted and deduplicated")
        self.points = pts

    @classmethod
    def from_points(cls, points, n: int) -> "PointSet":
        """Build a PointSet from an arbitrary (m, 2) array: sort + dedup."""
        pts = np.asarray(points, dtype=np.int64).reshape(-1, 2)
        if pts.size:
            pts = np.unique(pts, axis=0)
        return cls(points=pts, n=int(n))

    def __len__(self) -> int:
        return self.points.shape[0]

    @property
    def flat_ids(self) -> np.ndarray:
        return self.points[:, 0] * self.n + self.points[:, 1]
