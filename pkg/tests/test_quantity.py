from fractions import Fraction

import pytest

from lmesflow.quantity import Quantity, ShiftOverflow, is_power_of_two, parse_quantity


def test_canonical_form_makes_equal_values_equal():
    assert Quantity(4, 2) == Quantity(1)
    assert hash(Quantity(4, 2)) == hash(Quantity(1))
    assert Quantity(6, 2) == Fraction(3, 2)


def test_arithmetic_is_exact():
    a = Quantity(3, 2)        # 3/4
    b = Quantity(1, 3)        # 1/8
    assert a + b == Fraction(7, 8)
    assert a - b == Fraction(5, 8)
    assert a * b == Fraction(3, 32)
    assert 1 - a == Fraction(1, 4)
    assert -a == Fraction(-3, 4)


def test_halving_and_power_of_two_division():
    assert Quantity(5).halve(3) == Fraction(5, 8)
    assert Quantity(12).div_pow2(4) == 3
    with pytest.raises(ValueError):
        Quantity(12).div_pow2(3)


def test_mod_and_floor_multiple():
    q = Quantity(23, 2)       # 5.75
    step = Quantity(1, 1)     # 0.5
    assert q.mod(step) == Fraction(1, 4)
    assert q.floor_multiple(step) == Fraction(11, 2)
    assert Quantity(-1).mod(4) == 3
    with pytest.raises(ValueError):
        q.mod(0)


def test_shift_cap_is_enforced():
    with pytest.raises(ShiftOverflow):
        Quantity(1, Quantity.shift_cap + 1)
    with pytest.raises(ShiftOverflow):
        Quantity(1, 5).scaled(3)
    assert Quantity(3, 1).scaled(4) == 24


def test_coerce_rejects_non_dyadic():
    with pytest.raises(ValueError):
        Quantity.coerce(Fraction(1, 3))
    with pytest.raises(TypeError):
        Quantity.coerce(0.5)


def test_string_round_trip():
    for q in (Quantity(7), Quantity(-3, 3), Quantity(0)):
        assert parse_quantity(str(q)) == q
    assert str(Quantity(3, 2)) == "3/4"


def test_is_power_of_two():
    assert [v for v in range(20) if is_power_of_two(v)] == [1, 2, 4, 8, 16]
    assert not is_power_of_two(4.0)
