import numpy as np
import pytest

from partialft import (BoxClass, DyadicBox1D, DyadicBox2D, InvalidArgumentError,
                       SampledCutoff1D, SampledCutoff2D, build_minmax,
                       builtin_profile, classify_box_1d, classify_box_2d,
                       decompose_1d, decompose_2d, group_by_interval,
                       ring_points, sample_cutoff_1d, sample_cutoff_2d)

PROFILES_1D = ["constant", "linear", "sine"]
PROFILES_2D = ["constant", "gaussian", "sine"]


def cutoff1(c):
    c = np.asarray(c, dtype=np.int64)
    return SampledCutoff1D(n=len(c), c=c)


class TestMinMax:
    def test_small_example(self):
        t = build_minmax(cutoff1([3, 5, 2, 7, 1, 6, 4, 0]))
        assert np.array_equal(t.mins[1], [3, 2, 1, 0])
        assert np.array_equal(t.maxs[1], [5, 7, 6, 4])
        assert np.array_equal(t.mins[2], [2, 0])
        assert np.array_equal(t.maxs[2], [7, 6])
        assert t.mins[3][0] == 0 and t.maxs[3][0] == 7

    def test_constant(self):
        t = build_minmax(cutoff1([4] * 8))
        for level in range(t.levels):
            assert np.all(t.mins[level] == 4)
            assert np.all(t.maxs[level] == 4)

    def test_random_against_brute_force(self, rng):
        n = 64
        c = cutoff1(rng.integers(0, n + 1, size=n))
        t = build_minmax(c)
        for j in range(t.levels):
            w = 1 << j
            for i in range(n // w):
                assert t.mins[j][i] == c.c[i * w:(i + 1) * w].min()
                assert t.maxs[j][i] == c.c[i * w:(i + 1) * w].max()

    def test_2d_random_against_brute_force(self, rng):
        n = 16
        c = SampledCutoff2D(n=n, c=rng.integers(0, n + 1, size=(n, n)))
        t = build_minmax(c)
        for j in range(t.levels):
            w = 1 << j
            for i1 in range(n // w):
                for i2 in range(n // w):
                    blk = c.c[i1 * w:(i1 + 1) * w, i2 * w:(i2 + 1) * w]
                    assert t.mins[j][i1, i2] == blk.min()
                    assert t.maxs[j][i1, i2] == blk.max()


class TestClassify:
    def test_full_cutoff_all_inside(self):
        n = 16
        t = build_minmax(cutoff1([n] * n))
        assert classify_box_1d(DyadicBox1D(0, 0, n), t) is BoxClass.INSIDE
        assert classify_box_1d(DyadicBox1D(8, 8, 8), t) is BoxClass.INSIDE

    def test_zero_cutoff_all_outside(self):
        n = 16
        t = build_minmax(cutoff1([0] * n))
        assert classify_box_1d(DyadicBox1D(0, 0, n), t) is BoxClass.OUTSIDE

    def test_linear_is_partial(self):
        t = build_minmax(cutoff1(list(range(8))))
        # min c = 0 < k0+s = 4, max c = 3 > k0 = 0 over x in [0,4)
        assert classify_box_1d(DyadicBox1D(0, 0, 4), t) is BoxClass.PARTIAL

    def test_against_cell_enumeration(self, rng):
        n = 32
        c = cutoff1(rng.integers(0, n + 1, size=n))
        t = build_minmax(c)
        for s in (1, 2, 4, 8):
            for _ in range(20):
                x0 = int(rng.integers(0, n // s)) * s
                k0 = int(rng.integers(0, n // s)) * s
                cells_in = sum(1 for dx in range(s) for dk in range(s)
                               if k0 + dk < c.c[x0 + dx])
                got = classify_box_1d(DyadicBox1D(x0, k0, s), t)
                if cells_in == s * s:
                    assert got is BoxClass.INSIDE
                elif cells_in == 0:
                    assert got is BoxClass.OUTSIDE
                else:
                    assert got is BoxClass.PARTIAL

    def test_2d_classify(self):
        n = 8
        c = SampledCutoff2D(n=n, c=np.full((n, n), 5))
        t = build_minmax(c)
        assert classify_box_2d(DyadicBox2D(0, 0, 0, 4), t) is BoxClass.INSIDE
        assert classify_box_2d(DyadicBox2D(0, 0, 4, 4), t) is BoxClass.PARTIAL
        c0 = SampledCutoff2D(n=n, c=np.zeros((n, n), dtype=np.int64))
        assert classify_box_2d(DyadicBox2D(0, 0, 0, 8), build_minmax(c0)) is BoxClass.OUTSIDE


class TestDecompose1D:
    def test_full_cutoff_single_root(self):
        n = 32
        d = decompose_1d(cutoff1([n] * n))
        assert d.sizes() == [n]
        assert np.array_equal(d.boxes_by_size[n], [[0, 0]])

    def test_zero_cutoff_empty(self):
        d = decompose_1d(cutoff1([0] * 16))
        assert d.box_count() == 0
        assert d.cell_count() == 0

    @pytest.mark.parametrize("name", PROFILES_1D)
    @pytest.mark.parametrize("n", [16, 64, 256])
    def test_cell_count_identity(self, name, n):
        c = sample_cutoff_1d(builtin_profile(name, 1), n)
        d = decompose_1d(c)
        assert d.cell_count() == int(c.c.sum())

    def test_random_cutoff_cell_count(self, rng):
        n = 64
        c = cutoff1(rng.integers(0, n + 1, size=n))
        assert decompose_1d(c).cell_count() == int(c.c.sum())

    def test_exact_coverage(self, rng):
        # every lattice cell of D covered exactly once, every other cell never
        n = 64
        c = sample_cutoff_1d(builtin_profile("sine", 1), n)
        cover = np.zeros((n, n), dtype=np.int64)
        d = decompose_1d(c)
        for b in d.iter_boxes():
            cover[b.x0:b.x0 + b.s, b.k0:b.k0 + b.s] += 1
        k = np.arange(n)
        in_domain = k[None, :] < c.c[:, None]
        assert np.array_equal(cover, in_domain.astype(np.int64))

    def test_disjointness_by_interval_arithmetic(self):
        n = 64
        c = sample_cutoff_1d(builtin_profile("sine", 1), n)
        boxes = list(decompose_1d(c).iter_boxes())
        for i in range(len(boxes)):
            for j in range(i + 1, len(boxes)):
                a, b = boxes[i], boxes[j]
                overlap_x = max(a.x0, b.x0) < min(a.x0 + a.s, b.x0 + b.s)
                overlap_k = max(a.k0, b.k0) < min(a.k0 + a.s, b.k0 + b.s)
                assert not (overlap_x and overlap_k)

    def test_box_count_scaling_constant_bounded(self):
        # count(s) <= C * n/s for the smooth sine profile: the constant fit
        # at n=256 (rounded up to absorb per-size fluctuation) must not
        # grow through n=1024
        consts = []
        for n in (256, 512, 1024):
            c = sample_cutoff_1d(builtin_profile("sine", 1), n)
            d = decompose_1d(c)
            consts.append(max(len(v) * s / n for s, v in d.boxes_by_size.items()))
        envelope = np.ceil(consts[0])
        assert consts[1] <= envelope
        assert consts[2] <= envelope

    def test_export_text(self):
        d = decompose_1d(cutoff1([4] * 4))
        assert d.export_text() == "4 0 0\n"


class TestDecompose2D:
    def test_full_cutoff_single_root(self):
        n = 16
        c = SampledCutoff2D(n=n, c=np.full((n, n), n))
        d = decompose_2d(c)
        assert d.sizes() == [n]
        assert np.array_equal(d.boxes_by_size[n], [[0, 0, 0]])

    def test_zero_cutoff_empty(self):
        c = SampledCutoff2D(n=8, c=np.zeros((8, 8), dtype=np.int64))
        assert decompose_2d(c).box_count() == 0

    @pytest.mark.parametrize("name", PROFILES_2D)
    @pytest.mark.parametrize("n", [16, 32])
    def test_cell_count_identity(self, name, n):
        c = sample_cutoff_2d(builtin_profile(name, 2), n)
        assert decompose_2d(c).cell_count() == int(c.c.sum())

    def test_exact_coverage_3d(self):
        n = 16
        c = sample_cutoff_2d(builtin_profile("gaussian", 2), n)
        cover = np.zeros((n, n, n), dtype=np.int64)
        for b in decompose_2d(c).iter_boxes():
            cover[b.x1:b.x1 + b.s, b.x2:b.x2 + b.s, b.r0:b.r0 + b.s] += 1
        r = np.arange(n)
        in_domain = r[None, None, :] < c.c[:, :, None]
        assert np.array_equal(cover, in_domain.astype(np.int64))


class TestRingPoints:
    def test_origin_ring(self):
        pts = ring_points(0, 1, 8)
        assert np.array_equal(pts.points, [[0, 0]])

    def test_first_ring(self):
        pts = ring_points(1, 1, 8)
        assert np.array_equal(pts.points, [[0, 1], [1, 0], [1, 1]])

    def test_brute_force_filter(self):
        n, r0, s = 8, 2, 2
        pts = ring_points(r0, s, n)
        expected = [(a, b) for a in range(n) for b in range(n)
                    if r0 * r0 <= a * a + b * b < (r0 + s) ** 2]
        assert [tuple(p) for p in pts.points] == expected

    def test_boundary_is_exact(self):
        # |(3,4)| = 5 exactly: belongs to [5, 6), not [4, 5)
        in_45 = {tuple(p) for p in ring_points(4, 1, 8).points}
        in_56 = {tuple(p) for p in ring_points(5, 1, 8).points}
        assert (3, 4) not in in_45
        assert (3, 4) in in_56

    def test_partition_over_dyadic_intervals(self):
        n = 32
        for s in (1, 2, 4, 8):
            seen = np.zeros((n, n), dtype=int)
            r0 = 0
            while r0 < int(np.ceil(np.sqrt(2) * n)) - s + 1:
                pts = ring_points(r0, s, n)
                if len(pts):
                    seen[pts.points[:, 0], pts.points[:, 1]] += 1
                r0 += s
            assert np.all(seen <= 1)
            # everything with |k| < n covered (the tail beyond the last full
            # interval may be missed only above sqrt(2) n - s)
            k = np.arange(n)
            norm2 = k[:, None] ** 2 + k[None, :] ** 2
            assert np.all(seen[norm2 < (r0 - s) ** 2] == 1)

    def test_out_of_range(self):
        with pytest.raises(InvalidArgumentError):
            ring_points(-1, 1, 8)
        with pytest.raises(InvalidArgumentError):
            ring_points(100, 4, 8)


class TestRingGroups:
    def test_full_cutoff_single_group(self):
        n = 16
        c = SampledCutoff2D(n=n, c=np.full((n, n), n))
        groups = group_by_interval(decompose_2d(c))
        assert len(groups) == 1
        g = groups[0]
        assert (g.r0, g.s) == (0, n)
        assert len(g.X) == n * n
        k = np.arange(n)
        norm2 = k[:, None] ** 2 + k[None, :] ** 2
        assert len(g.K) == int((norm2 < n * n).sum())

    def test_empty_decomposition(self):
        c = SampledCutoff2D(n=8, c=np.zeros((8, 8), dtype=np.int64))
        assert group_by_interval(decompose_2d(c)) == []

    def test_every_box_in_exactly_one_group(self):
        n = 32
        c = sample_cutoff_2d(builtin_profile("gaussian", 2), n)
        d = decompose_2d(c)
        groups = group_by_interval(d)
        total = sum(len(g.boxes) for g in groups)
        assert total == d.box_count()

    def test_column_coverage(self):
        # for every x and r < c_x exactly one group has r in A and x in X^A
        n = 32
        c = sample_cutoff_2d(builtin_profile("gaussian", 2), n)
        groups = group_by_interval(decompose_2d(c))
        cover = np.zeros((n, n, n), dtype=np.int64)
        for g in groups:
            xs = g.X.points
            cover[xs[:, 0], xs[:, 1], g.r0:g.r0 + g.s] += 1
        r = np.arange(n)
        in_domain = r[None, None, :] < c.c[:, :, None]
        assert np.array_equal(cover, in_domain.astype(np.int64))

    def test_groups_sorted(self):
        n = 32
        c = sample_cutoff_2d(builtin_profile("sine", 2), n)
        groups = group_by_interval(decompose_2d(c))
        keys = [(g.s, g.r0) for g in groups]
        assert keys == sorted(keys)
