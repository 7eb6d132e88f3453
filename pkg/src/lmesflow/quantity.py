"""Exact dyadic rationals.

A Quantity is ``mantissa / 2**shift``.  Every flow, excess and threshold the
solvers handle is of this form: capacities are integers and every divisor that
appears (k, 2, the scaling parameter) is a power of two.  Values are kept in
canonical form, so equal quantities compare and hash equal.
"""

from fractions import Fraction

DEFAULT_SHIFT_CAP = 256


class ShiftOverflow(ArithmeticError):
    """Raised when a result would need more fractional bits than allowed."""


def _canonical(mantissa, shift):
    if mantissa == 0:
        return 0, 0
    if shift and not mantissa & 1:
        tz = (mantissa & -mantissa).bit_length() - 1
        tz = min(tz, shift)
        mantissa >>= tz
        shift -= tz
    return mantissa, shift


def is_power_of_two(value):
    return isinstance(value, int) and value > 0 and value & (value - 1) == 0


class Quantity:
    __slots__ = ("mantissa", "shift")

    shift_cap = DEFAULT_SHIFT_CAP

    def __init__(self, mantissa=0, shift=0):
        if isinstance(mantissa, Quantity):
            mantissa, shift = mantissa.mantissa, mantissa.shift
        if shift < 0:
            mantissa, shift = mantissa << -shift, 0
        mantissa, shift = _canonical(int(mantissa), shift)
        if shift > Quantity.shift_cap:
            raise ShiftOverflow(f"shift {shift} exceeds cap {Quantity.shift_cap}")
        self.mantissa = mantissa
        self.shift = shift

    @classmethod
    def coerce(cls, value):
        if isinstance(value, Quantity):
            return value
        if isinstance(value, int):
            return cls(value, 0)
        if isinstance(value, Fraction):
            den = value.denominator
            if den & (den - 1):
                raise ValueError(f"{value} is not dyadic")
            return cls(value.numerator, den.bit_length() - 1)
        raise TypeError(f"cannot make a Quantity from {type(value).__name__}")

    @classmethod
    def from_scaled(cls, raw, shift):
        """The quantity ``raw / 2**shift`` for an integer held at a fixed scale."""
        return cls(raw, shift)

    def scaled(self, shift):
        """Integer ``self * 2**shift``; the shift must be deep enough to be exact."""
        if shift < self.shift:
            raise ShiftOverflow(f"{self} is not representable at shift {shift}")
        return self.mantissa << (shift - self.shift)

    def _align(self, other):
        other = Quantity.coerce(other)
        s = max(self.shift, other.shift)
        return self.mantissa << (s - self.shift), other.mantissa << (s - other.shift), s

    def __add__(self, other):
        if not isinstance(other, (Quantity, int, Fraction)):
            return NotImplemented
        a, b, s = self._align(other)
        return Quantity(a + b, s)

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, (Quantity, int, Fraction)):
            return NotImplemented
        a, b, s = self._align(other)
        return Quantity(a - b, s)

    def __rsub__(self, other):
        if not isinstance(other, (Quantity, int, Fraction)):
            return NotImplemented
        a, b, s = self._align(other)
        return Quantity(b - a, s)

    def __mul__(self, other):
        if isinstance(other, int):
            return Quantity(self.mantissa * other, self.shift)
        if not isinstance(other, (Quantity, Fraction)):
            return NotImplemented
        other = Quantity.coerce(other)
        return Quantity(self.mantissa * other.mantissa, self.shift + other.shift)

    __rmul__ = __mul__

    def __neg__(self):
        return Quantity(-self.mantissa, self.shift)

    def __abs__(self):
        return Quantity(abs(self.mantissa), self.shift)

    def halve(self, times=1):
        return Quantity(self.mantissa, self.shift + times)

    def div_pow2(self, divisor):
        """Exact division by a power-of-two integer."""
        if not is_power_of_two(divisor):
            raise ValueError(f"divisor {divisor} is not a power of two")
        return self.halve(divisor.bit_length() - 1)

    def floor_multiple(self, step):
        """Largest multiple of ``step`` that is at most ``self``."""
        return self - self.mod(step)

    def mod(self, step):
        """``self`` modulo a positive dyadic step; the result lies in [0, step)."""
        step = Quantity.coerce(step)
        if step.mantissa <= 0:
            raise ValueError("modulus must be positive")
        a, b, s = self._align(step)
        return Quantity(a % b, s)

    def _cmp_key(self, other):
        a, b, _ = self._align(other)
        return a, b

    def __eq__(self, other):
        if isinstance(other, (Quantity, int)):
            other = Quantity.coerce(other)
            return self.mantissa == other.mantissa and self.shift == other.shift
        if isinstance(other, Fraction):
            return Fraction(self.mantissa, 1 << self.shift) == other
        return NotImplemented

    def __hash__(self):
        if self.shift == 0:
            return hash(self.mantissa)
        return hash(Fraction(self.mantissa, 1 << self.shift))

    def __lt__(self, other):
        if not isinstance(other, (Quantity, int, Fraction)):
            return NotImplemented
        a, b = self._cmp_key(other)
        return a < b

    def __le__(self, other):
        if not isinstance(other, (Quantity, int, Fraction)):
            return NotImplemented
        a, b = self._cmp_key(other)
        return a <= b

    def __gt__(self, other):
        if not isinstance(other, (Quantity, int, Fraction)):
            return NotImplemented
        a, b = self._cmp_key(other)
        return a > b

    def __ge__(self, other):
        if not isinstance(other, (Quantity, int, Fraction)):
            return NotImplemented
        a, b = self._cmp_key(other)
        return a >= b

    def __bool__(self):
        return self.mantissa != 0

    def is_integer(self):
        return self.shift == 0

    def to_fraction(self):
        return Fraction(self.mantissa, 1 << self.shift)

    def __int__(self):
        if self.shift:
            raise ValueError(f"{self} is not an integer")
        return self.mantissa

    def __float__(self):
        return self.mantissa / (1 << self.shift)

    def __str__(self):
        if self.shift == 0:
            return str(self.mantissa)
        return f"{self.mantissa}/{1 << self.shift}"

    def __repr__(self):
        return f"Quantity({self.mantissa}, {self.shift})"


def parse_quantity(text):
    """Inverse of ``str(Quantity)``: accepts ``"7"`` or ``"-3/8"``."""
    if "/" in text:
        num, den = text.split("/", 1)
        return Quantity.coerce(Fraction(int(num), int(den)))
    return Quantity(int(text))
