"""String classes on S^3 and exact values in Q/Z.

String classes on S^3 form a torsor for H^3(S^3; Z) = Z.  Three classes are
named: the left-framing class ``L``, the class ``dD4`` induced from the
4-disc, and the right-framing class ``R``, with

    L + 1 = dD4,    L + 2 = R.
"""
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
import re

__all__ = ["Anchor", "StringClass", "L", "R", "BOUNDING", "add", "difference",
           "RationalModZ"]


class Anchor(str, Enum):
    L = "L"
    BOUNDING = "dD4"
    R = "R"

    @property
    def position(self):
        """Offset of the anchor class from ``L``."""
        return _POSITION[self]


_POSITION = {Anchor.L: 0, Anchor.BOUNDING: 1, Anchor.R: 2}
_PATTERN = re.compile(r"^\s*(L|R|dD4)\s*(?:([+-])\s*(\d+))?\s*$")


@dataclass(frozen=True)
class StringClass:
    """``anchor + offset`` in units of the generator of H^3(S^3; Z).

    Equality and hashing go through the ``L``-anchored normal form, so
    ``StringClass.parse("R") == StringClass.parse("L+2")``.
    """
    anchor: Anchor = Anchor.L
    offset: int = 0

    def __post_init__(self):
        object.__setattr__(self, "anchor", Anchor(self.anchor))
        if isinstance(self.offset, bool) or int(self.offset) != self.offset:
            raise TypeError("offset must be an integer")
        object.__setattr__(self, "offset", int(self.offset))

    @classmethod
    def parse(cls, text):
        """Parse ``"L"``, ``"R+3"``, ``"dD4-1"``..."""
        if isinstance(text, StringClass):
            return text
        m = _PATTERN.match(str(text))
        if m is None:
            raise ValueError(f"unknown string class {text!r}; expected L+j, R+j or dD4+j")
        anchor, sign, num = m.groups()
        j = int(num) if num else 0
        return cls(Anchor(anchor), -j if sign == "-" else j)

    @property
    def l_offset(self):
        """``j`` such that this class is ``L + j``."""
        return self.anchor.position + self.offset

    def relative_to(self, anchor):
        """``j`` such that this class is ``anchor + j``."""
        return self.l_offset - Anchor(anchor).position

    def normalized(self):
        return StringClass(Anchor.L, self.l_offset)

    def rebased(self, anchor):
        anchor = Anchor(anchor)
        return StringClass(anchor, self.relative_to(anchor))

    def __add__(self, j):
        if isinstance(j, bool) or not isinstance(j, int):
            return NotImplemented
        return StringClass(self.anchor, self.offset + j)

    def __sub__(self, other):
        if isinstance(other, StringClass):
            return self.l_offset - other.l_offset
        if isinstance(other, int) and not isinstance(other, bool):
            return StringClass(self.anchor, self.offset - other)
        return NotImplemented

    def __eq__(self, other):
        if not isinstance(other, StringClass):
            return NotImplemented
        return self.l_offset == other.l_offset

    def __hash__(self):
        return hash(self.l_offset)

    def __str__(self):
        if self.offset == 0:
            return self.anchor.value
        return f"{self.anchor.value}{self.offset:+d}"

    def __repr__(self):
        return f"StringClass({str(self)!r})"


L = StringClass(Anchor.L)
BOUNDING = StringClass(Anchor.BOUNDING)
R = StringClass(Anchor.R)


def add(cls, j):
    return StringClass.parse(cls) + j


def difference(a, b):
    """The integer ``j`` with ``a = b + j``."""
    return StringClass.parse(a) - StringClass.parse(b)


@dataclass(frozen=True)
class RationalModZ:
    """An element of Q/Z, stored as its representative in ``[0, 1)``."""
    value: Fraction

    def __post_init__(self):
        v = Fraction(self.value.numerator, self.value.denominator) \
            if not isinstance(self.value, Fraction) else self.value
        object.__setattr__(self, "value", v - (v.numerator // v.denominator))

    @classmethod
    def of(cls, x):
        if hasattr(x, "numerator") and hasattr(x, "denominator"):
            return cls(Fraction(int(x.numerator), int(x.denominator)))
        return cls(Fraction(x))

    def __add__(self, other):
        other = other if isinstance(other, RationalModZ) else RationalModZ.of(other)
        return RationalModZ(self.value + other.value)

    def __neg__(self):
        return RationalModZ(-self.value)

    def __sub__(self, other):
        return self + (-(other if isinstance(other, RationalModZ) else RationalModZ.of(other)))

    def __eq__(self, other):
        if isinstance(other, RationalModZ):
            return self.value == other.value
        try:
            return self.value == RationalModZ.of(other).value
        except (TypeError, ValueError):
            return NotImplemented

    def __hash__(self):
        return hash(self.value)

    def over(self, denominator):
        """Numerator ``k`` with ``self = k / denominator``; raises if impossible."""
        k = self.value * denominator
        if k.denominator != 1:
            raise ValueError(f"{self} is not a multiple of 1/{denominator}")
        return int(k)

    def format(self, denominator=None):
        if denominator is not None:
            return f"{self.over(denominator)}/{denominator}"
        return f"{self.value.numerator}/{self.value.denominator}"

    def __str__(self):
        return self.format()

    def __float__(self):
        return float(self.value)
