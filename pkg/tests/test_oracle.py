import math

import numpy as np
import pytest

from conftest import random_complex, rel_l2
from partialft import (ConstantProfile, ConstantProfile2D, InvalidArgumentError,
                       PointSet, SampledCutoff1D, SampledCutoff2D,
                       direct_pft_1d, direct_pft_2d, direct_pft_2d_at,
                       direct_sparse_sum, relative_error_sampled,
                       ring_points, sample_cutoff_1d, sample_cutoff_2d)


def cutoff1(n, value):
    return SampledCutoff1D(n=n, c=np.full(n, value, dtype=np.int64))


def cutoff2(n, value):
    return SampledCutoff2D(n=n, c=np.full((n, n), value, dtype=np.int64))


class TestDirect1D:
    def test_zero_cutoff(self, rng):
        f = random_complex(rng, 16)
        assert np.array_equal(direct_pft_1d(f, cutoff1(16, 0)), np.zeros(16))

    def test_full_cutoff_is_positive_fft(self, rng):
        n = 64
        f = random_complex(rng, n)
        u = direct_pft_1d(f, cutoff1(n, n))
        # unnormalized DFT with positive exponent == n * ifft
        assert rel_l2(u, np.fft.ifft(f) * n) <= 1e-12

    def test_delta_source(self, rng):
        n = 16
        f = np.zeros(n, dtype=complex)
        f[0] = 1.0
        c = np.arange(n, dtype=np.int64)  # c_x = x
        u = direct_pft_1d(f, SampledCutoff1D(n=n, c=c))
        assert np.array_equal(u, (c >= 1).astype(complex))

    def test_size_mismatch(self, rng):
        with pytest.raises(InvalidArgumentError):
            direct_pft_1d(random_complex(rng, 8), cutoff1(16, 3))

    def test_linearity(self, rng):
        n = 64
        c = sample_cutoff_1d(ConstantProfile(0.7), n)
        f, g = random_complex(rng, n), random_complex(rng, n)
        a, b = 1.7 - 0.3j, -0.4 + 2.2j
        lhs = direct_pft_1d(a * f + b * g, c)
        rhs = a * direct_pft_1d(f, c) + b * direct_pft_1d(g, c)
        assert rel_l2(lhs, rhs) <= 1e-12


class TestDirect2D:
    def test_zero_cutoff(self, rng):
        f = random_complex(rng, (8, 8))
        assert np.array_equal(direct_pft_2d(f, cutoff2(8, 0)), np.zeros((8, 8)))

    def test_delta_source(self):
        n = 8
        f = np.zeros((n, n), dtype=complex)
        f[0, 0] = 1.0
        c = np.zeros((n, n), dtype=np.int64)
        c[2:, :] = 3
        u = direct_pft_2d(f, SampledCutoff2D(n=n, c=c))
        assert np.array_equal(u, (c >= 1).astype(complex))

    def test_small_disc_hand_enumeration(self):
        # n=4, c=2, f=1: modes with |k| < 2 are (0,0),(0,1),(1,0),(1,1)
        n = 4
        f = np.ones((n, n), dtype=complex)
        u = direct_pft_2d(f, cutoff2(n, 2))
        w = np.exp(2j * np.pi / n)
        for x1 in range(n):
            for x2 in range(n):
                expected = sum(w ** ((x1 * k1 + x2 * k2) % n)
                               for (k1, k2) in [(0, 0), (0, 1), (1, 0), (1, 1)])
                assert abs(u[x1, x2] - expected) <= 1e-12

    def test_at_matches_full(self, rng):
        n = 16
        cut = sample_cutoff_2d(ConstantProfile2D(0.6), n)
        f = random_complex(rng, (n, n))
        full = direct_pft_2d(f, cut)
        pts = np.array([[0, 0], [3, 7], [15, 15], [8, 1]])
        at = direct_pft_2d_at(f, cut, pts)
        for (x1, x2), v in zip(pts, at):
            # same code path and summation order: bitwise equal
            assert full[x1, x2] == v


class TestSparseSum:
    def test_single_source_zero_phase(self, rng):
        n = 16
        X = PointSet.from_points(rng.integers(0, n, size=(20, 2)), n)
        K = PointSet.from_points([[0, 0]], n)
        val = 1.3 - 0.2j
        u = direct_sparse_sum(X, K, np.array([val]), n)
        assert np.allclose(u, val)

    def test_single_target_zero_phase(self, rng):
        n = 16
        X = PointSet.from_points([[0, 0]], n)
        K = PointSet.from_points(rng.integers(0, n, size=(30, 2)), n)
        f = random_complex(rng, len(K))
        u = direct_sparse_sum(X, K, f, n)
        assert abs(u[0] - f.sum()) <= 1e-12 * np.abs(f).sum()

    def test_random_sets_vs_double_loop(self, rng):
        n = 64
        X = PointSet.from_points(rng.integers(0, n, size=(50, 2)), n)
        K = PointSet.from_points(rng.integers(0, n, size=(50, 2)), n)
        f = random_complex(rng, len(K))
        u = direct_sparse_sum(X, K, f, n)
        # independent double loop
        for i, (x1, x2) in enumerate(X.points):
            acc = 0.0 + 0.0j
            for (k1, k2), fv in zip(K.points, f):
                acc += np.exp(2j * np.pi * (x1 * k1 + x2 * k2) / n) * fv
            assert abs(u[i] - acc) <= 1e-9 * max(1.0, abs(acc))

    def test_dict_input_and_key_mismatch(self, rng):
        n = 8
        K = PointSet.from_points([[1, 2], [3, 4]], n)
        X = PointSet.from_points([[0, 0]], n)
        u = direct_sparse_sum(X, K, {(1, 2): 1.0, (3, 4): 2.0}, n)
        assert abs(u[0] - 3.0) <= 1e-12
        with pytest.raises(InvalidArgumentError):
            direct_sparse_sum(X, K, {(1, 2): 1.0}, n)
        with pytest.raises(InvalidArgumentError):
            direct_sparse_sum(X, K, np.ones(3, dtype=complex), n)


class TestRingPartitionAgainstDirect:
    def test_ring_sums_reproduce_direct_2d(self, rng):
        n = 16
        cval = 9
        cut = cutoff2(n, cval)
        f = random_complex(rng, (n, n))
        full = direct_pft_2d(f, cut)
        rings = [ring_points(r0, 1, n) for r0 in range(cval)]
        covered = np.concatenate([r.flat_ids for r in rings])
        assert len(np.unique(covered)) == len(covered)
        x = np.array([3, 11])
        per_ring = [direct_sparse_sum(PointSet.from_points([x], n), r,
                                      f[r.points[:, 0], r.points[:, 1]], n)[0]
                    for r in rings]
        total = np.sum(np.array(per_ring))
        assert abs(total - full[x[0], x[1]]) <= 1e-12 * max(1.0, abs(full[x[0], x[1]]))

    def test_ring_terms_sorted_match_direct_bitwise(self, rng):
        # per-term products collected ring by ring, sorted back into the
        # oracle's row-major order: identical values, identical sum
        from partialft._util import phase_table

        n = 16
        cval = 9
        cut = cutoff2(n, cval)
        f = random_complex(rng, (n, n))
        full = direct_pft_2d(f, cut)
        table = phase_table(n)
        for x1, x2 in [(0, 0), (3, 11), (15, 2)]:
            ids, terms = [], []
            for r0 in range(cval):
                r = ring_points(r0, 1, n)
                k1, k2 = r.points[:, 0], r.points[:, 1]
                ids.append(r.flat_ids)
                terms.append(table[(x1 * k1 + x2 * k2) % n] * f[k1, k2])
            ids = np.concatenate(ids)
            terms = np.concatenate(terms)
            order = np.argsort(ids)
            assert np.sum(terms[order]) == full[x1, x2]


class TestRelativeErrorSampled:
    def test_exact_match_is_zero(self, rng):
        u = random_complex(rng, (8, 8))
        assert relative_error_sampled(u, u, 10, seed=0) == 0.0

    def test_double_is_one(self, rng):
        u = random_complex(rng, 64)
        assert abs(relative_error_sampled(u, 2 * u, 16, seed=0) - 1.0) <= 1e-12

    def test_zero_denominator_is_undefined(self):
        z = np.zeros(16, dtype=complex)
        assert math.isnan(relative_error_sampled(z, z + 1, 4, seed=0))

    def test_deterministic_for_seed(self, rng):
        u = random_complex(rng, 256)
        v = u + 0.01 * random_complex(rng, 256)
        e1 = relative_error_sampled(u, v, 32, seed=5)
        e2 = relative_error_sampled(u, v, 32, seed=5)
        assert e1 == e2

    def test_shape_mismatch(self, rng):
        with pytest.raises(InvalidArgumentError):
            relative_error_sampled(np.zeros(4), np.zeros(5), 2, seed=0)

    def test_sample_size_too_large(self):
        with pytest.raises(InvalidArgumentError):
            relative_error_sampled(np.zeros(4), np.zeros(4), 5, seed=0)
