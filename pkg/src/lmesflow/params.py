"""Parameters of the enhanced solver and exact thresholds at a binary scale.

With ``k = 2**lk`` every threshold the enhanced solver compares against has the
form ``c * 2**(a - b*lk) * delta`` for small integers, so with delta a power of
two held as a raw exponent all thresholds are integers at the solver's scale.
"""

import math
from dataclasses import dataclass
from fractions import Fraction

from .quantity import ShiftOverflow, is_power_of_two


@dataclass(frozen=True)
class EnhancedParams:
    n: int
    k: int
    lk: int
    Q: int
    eps: Fraction
    M: int
    S: int

    @property
    def eps_bits(self):
        """epsilon = 2**-eps_bits."""
        return self.Q * self.lk


def derive_params(n, k):
    """Q = ceil(log_k 4n), eps = k**-Q, M = eps**-2, plus the capacity multiplier S."""
    if not is_power_of_two(k):
        raise ValueError(f"k must be a power of two, got {k!r}")
    if k < 4:
        raise ValueError(f"k must be at least 4, got {k}")
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    Q, p = 0, 1
    while p < 4 * n:
        p *= k
        Q += 1
    eps = Fraction(1, p)
    M = p * p
    params = EnhancedParams(n=n, k=k, lk=k.bit_length() - 1, Q=Q, eps=eps, M=M, S=2 * k ** (2 * Q + 2))
    assert Fraction(1, 4 * n * k) < eps <= Fraction(1, 4 * n)
    assert M == eps ** -2 and 16 * n * n <= M
    return params


def default_enhanced_k(n, m):
    """Least power of two >= max{log log n, m/n, 4} (logs base 2)."""

    target = 4.0
    if n > 2:
        target = max(target, math.log2(max(math.log2(n), 1.0)))
    if n > 0:
        target = max(target, m / n)
    k = 4
    while k < target:
        k *= 2
    return k


class Scale:
    """Raw integer thresholds for delta = 2**dexp raw units."""

    def __init__(self, params, dexp):
        self.params = params
        self.dexp = dexp
        q = params.eps_bits
        lk = params.lk
        self.delta = self.pow2(dexp)
        self.half = self.pow2(dexp - 1)
        self.step = self.pow2(dexp - lk)              # delta / k
        self.eps = self.pow2(dexp - q)                # eps * delta
        self.eps4_15 = 3 * self.pow2(dexp - 4 * q - 1)  # 1.5 eps^4 delta
        self.eps4 = self.pow2(dexp - 4 * q)
        self.eps4_3 = 3 * self.eps4
        self.eps5 = self.pow2(dexp - 5 * q)
        self.two_m = self.pow2(dexp + 2 * q + 1)     # 2 M delta
        self.m_delta = self.pow2(dexp + 2 * q)       # M delta
        self.needed = self.pow2(dexp - 2 * q - lk)   # eps^2 delta / k
        self.jump_limit = self.pow2(dexp - 2 * q - lk)  # delta / (k M)

    @staticmethod
    def pow2(e):
        if e < 0:
            raise ShiftOverflow(f"threshold 2**{e} is below the solver's resolution")
        return 1 << e
