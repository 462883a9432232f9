"""Small shared numeric helpers."""
from functools import lru_cache

import numpy as np

from .errors import InvalidArgumentError


def is_power_of_two(m: int) -> bool:
    return m >= 1 and (m & (m - 1)) == 0


def require_power_of_two(m: int, name: str = "n", minimum: int = 1) -> None:
    if not isinstance(m, (int, np.integer)) or m < minimum or not is_power_of_two(int(m)):
        raise InvalidArgumentError(
            f"{name} must be a power of two >= {minimum}, got {m!r}"
        )


@lru_cache(maxsize=8)
def phase_table(n: int) -> np.ndarray:
    """exp(2*pi*i*j/n) for j = 0..n-1.

    Integer phase exponents are reduced mod n before lookup, which keeps
    full precision for products like x*k that overflow the argument range
    of exp() long before they overflow int64.
    """
    return np.exp((2j * np.pi / n) * np.arange(n))


def phases_mod(exponents: np.ndarray, n: int) -> np.ndarray:
    """exp(2*pi*i*exponents/n) for integer exponents, reduced mod n."""
    return phase_table(n)[np.asarray(exponents) % n]
