"""Size-s fractional Fourier transform with phase increment 1/n.

Evaluates g_{x'} = sum_{k'=0}^{s-1} exp(2*pi*i*x'*k'/n) f_{k'} for
0 <= x' < s in O(s log s).  A plain radix FFT cannot do this when s < n
because the phase increment 1/n is not tied to the vector length, so the
Bluestein identity

    x'k' = (x'^2 + k'^2 - (x' - k')^2) / 2

is used to split the kernel into diagonal chirps around a linear
convolution, which is carried out as a cyclic convolution at a padded
power-of-two length L >= 2s-1.  For small s a direct O(s^2) matrix
product is cheaper and exact, so plans below a crossover size store the
dense kernel matrix instead.
"""
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from ._util import require_power_of_two
from .errors import InvalidArgumentError

#: below this size frft_apply multiplies by the dense kernel matrix
DIRECT_SIZE_LIMIT = 16


@dataclass
class FrftPlan:
    """Reusable transform plan for a fixed (s, n) pair.

    ``chirp`` holds exp(pi*i*j^2/n) for j = -(s-1)..(s-1); its center
    element is chirp[s-1] (j = 0).  Exponents are reduced mod 2n in integer
    arithmetic before the complex exponential, so the chirp stays accurate
    for j^2 far beyond the float argument range.
    """

    s: int
    n: int
    alpha: float
    chirp: np.ndarray
    conv_len: int = 0
    kernel_fft: np.ndarray | None = None
    dense: np.ndarray | None = field(default=None, repr=False)

    @property
    def is_direct(self) -> bool:
        return self.dense is not None


def _chirp(js: np.ndarray, n: int) -> np.ndarray:
    # exp(pi*i*j^2/n) = exp(pi*i*(j^2 mod 2n)/n), exact in int64 for j <= 2^19
    return np.exp((1j * np.pi / n) * ((js.astype(np.int64) ** 2) % (2 * n)))


def frft_plan(s: int, n: int, direct_limit: int = DIRECT_SIZE_LIMIT) -> FrftPlan:
    """Plan the size-s transform with phase increment 1/n; cost O(s log s)."""
    require_power_of_two(s, "s")
    require_power_of_two(n, "n")
    if s > n:
        raise InvalidArgumentError(f"s={s} must not exceed n={n}")
    js = np.arange(-(s - 1), s)
    chirp = _chirp(js, n)
    if s <= direct_limit:
        x = np.arange(s, dtype=np.int64)
        dense = np.exp((2j * np.pi / n) * ((x[:, None] * x[None, :]) % n))
        return FrftPlan(s=s, n=n, alpha=1.0 / n, chirp=chirp, dense=dense)
    L = 1
    while L < 2 * s - 1:
        L *= 2
    kernel = np.zeros(L, dtype=np.complex128)
    b = np.conj(chirp[s - 1:])  # exp(-pi*i*j^2/n), j = 0..s-1
    kernel[:s] = b
    kernel[L - s + 1:] = b[1:][::-1]  # wrap negative lags; b is even in j
    return FrftPlan(s=s, n=n, alpha=1.0 / n, chirp=chirp, conv_len=L,
                    kernel_fft=np.fft.fft(kernel))


@lru_cache(maxsize=64)
def cached_frft_plan(s: int, n: int) -> FrftPlan:
    """Shared immutable plan per (s, n); reused across all boxes of a size."""
    return frft_plan(s, n)


def frft_apply(plan: FrftPlan, f: np.ndarray) -> np.ndarray:
    """Apply a plan to f (last axis of length s; leading axes are batched)."""
    f = np.asarray(f, dtype=np.complex128)
    if f.shape[-1] != plan.s:
        raise InvalidArgumentError(
            f"input length {f.shape[-1]} does not match plan size {plan.s}"
        )
    if plan.is_direct:
        # dense kernel is symmetric, so right-multiplication works batched
        return f @ plan.dense
    w = plan.chirp[plan.s - 1:]  # exp(+pi*i*j^2/n), j = 0..s-1
    y = f * w
    spec = np.fft.fft(y, n=plan.conv_len, axis=-1)
    conv = np.fft.ifft(spec * plan.kernel_fft, axis=-1)[..., :plan.s]
    return conv * w
