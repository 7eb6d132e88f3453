from fractions import Fraction

import pytest

from lmesflow.params import Scale, default_enhanced_k, derive_params
from lmesflow.quantity import ShiftOverflow


def test_params_n16_k4():
    p = derive_params(16, 4)
    assert (p.Q, p.eps, p.M) == (3, Fraction(1, 64), 4096)
    assert 16 * 16 * 16 <= p.M
    assert p.eps_bits == 6


def test_params_n4_k4():
    p = derive_params(4, 4)
    assert (p.Q, p.eps, p.M) == (2, Fraction(1, 16), 256)


@pytest.mark.parametrize("n", [1, 2, 5, 17, 40, 1000])
@pytest.mark.parametrize("k", [4, 8, 16, 64])
def test_eps_window(n, k):
    p = derive_params(n, k)
    assert Fraction(1, 4 * n * k) < p.eps <= Fraction(1, 4 * n)


@pytest.mark.parametrize("k", [2, 3, 12])
def test_bad_k(k):
    with pytest.raises(ValueError):
        derive_params(10, k)


def test_default_k():
    assert default_enhanced_k(10, 20) == 4
    assert default_enhanced_k(10, 50) == 8
    assert default_enhanced_k(10, 90) == 16


def test_scale_thresholds_are_exact():
    p = derive_params(4, 4)           # eps = 2**-4
    sc = Scale(p, 20)
    assert sc.delta == 2 ** 20
    assert sc.step == 2 ** 18
    assert sc.eps == 2 ** 16
    assert sc.eps4 == 2 ** 4 and sc.eps4_15 == 24 and sc.eps4_3 == 48
    assert sc.eps5 == 1
    assert sc.m_delta == 256 * 2 ** 20 and sc.two_m == 2 * sc.m_delta
    assert sc.needed == 2 ** (20 - 8 - 2)
    with pytest.raises(ShiftOverflow):
        Scale(p, 15)
