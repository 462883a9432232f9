import numpy as np
import pytest

from conftest import random_complex, rel_l2
from partialft import InvalidArgumentError, cached_frft_plan, frft_apply, frft_plan


def dense_kernel(s, n):
    x = np.arange(s, dtype=np.int64)
    return np.exp((2j * np.pi / n) * ((x[:, None] * x[None, :]) % n))


class TestPlan:
    def test_size_one_is_identity(self):
        plan = frft_plan(1, 8)
        v = np.array([2.0 - 1.0j])
        assert np.array_equal(frft_apply(plan, v), v)

    def test_chirp_unit_modulus_and_even(self):
        plan = frft_plan(4, 8)
        assert plan.chirp.shape == (7,)
        assert np.max(np.abs(np.abs(plan.chirp) - 1.0)) <= 1e-14
        # chirp(j) = chirp(-j)
        assert np.allclose(plan.chirp, plan.chirp[::-1])

    def test_invalid_sizes(self):
        with pytest.raises(InvalidArgumentError):
            frft_plan(3, 8)
        with pytest.raises(InvalidArgumentError):
            frft_plan(8, 12)
        with pytest.raises(InvalidArgumentError):
            frft_plan(16, 8)

    def test_conv_length(self):
        plan = frft_plan(64, 256)
        assert plan.conv_len >= 2 * 64 - 1
        assert plan.conv_len & (plan.conv_len - 1) == 0

    def test_cached_plan_is_shared(self):
        assert cached_frft_plan(32, 128) is cached_frft_plan(32, 128)


class TestApply:
    def test_delta_gives_ones(self):
        s, n = 32, 128
        f = np.zeros(s, dtype=complex)
        f[0] = 1.0
        g = frft_apply(frft_plan(s, n), f)
        assert np.max(np.abs(g - 1.0)) <= 1e-12

    def test_ones_sum_at_zero(self):
        s, n = 64, 256
        g = frft_apply(frft_plan(s, n), np.ones(s, dtype=complex))
        assert abs(g[0] - s) <= 1e-12 * s

    def test_small_case_matches_dense(self, rng):
        s, n = 4, 8
        f = random_complex(rng, s)
        g = frft_apply(frft_plan(s, n), f)
        assert rel_l2(g, dense_kernel(s, n) @ f) <= 1e-12

    @pytest.mark.parametrize("s", [1, 2, 4, 8, 16, 32, 64, 128, 256])
    def test_matches_dense_at_n_4s(self, rng, s):
        n = 4 * s
        f = random_complex(rng, s)
        g = frft_apply(frft_plan(s, n), f)
        assert rel_l2(g, dense_kernel(s, n) @ f) <= 1e-12

    @pytest.mark.parametrize("n", [16, 64, 256])
    def test_s_equals_n_is_fft(self, rng, n):
        f = random_complex(rng, n)
        g = frft_apply(frft_plan(n, n), f)
        assert rel_l2(g, np.fft.ifft(f) * n) <= 1e-12

    def test_batched_matches_loop(self, rng):
        s, n = 32, 512
        plan = frft_plan(s, n)
        fs = random_complex(rng, (5, s))
        batched = frft_apply(plan, fs)
        for i in range(5):
            assert np.array_equal(batched[i], frft_apply(plan, fs[i]))

    def test_plan_reuse_bitwise(self, rng):
        plan = frft_plan(64, 256)
        f = random_complex(rng, 64)
        assert np.array_equal(frft_apply(plan, f), frft_apply(plan, f))

    def test_length_mismatch(self, rng):
        with pytest.raises(InvalidArgumentError):
            frft_apply(frft_plan(8, 32), random_complex(rng, 7))

    def test_large_n_phase_accuracy(self, rng):
        # at large n the chirp exponent j^2/n is reduced in integers, so
        # accuracy must not degrade
        s, n = 64, 1 << 18
        f = random_complex(rng, s)
        g = frft_apply(frft_plan(s, n), f)
        assert rel_l2(g, dense_kernel(s, n) @ f) <= 1e-12
