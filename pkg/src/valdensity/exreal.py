"""Exact arithmetic on the extended non-negative rationals and on signed rationals.

``ExtValue`` models ``Q+ ∪ {inf}`` with the convention ``0 * inf = inf * 0 = 0``.
Subtraction is deliberately not defined on it; signed quantities are plain
:class:`fractions.Fraction` values (aliased as :data:`SignedRational`).
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import total_ordering
from typing import Union

SignedRational = Fraction

_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)(?:\s*/\s*(\d+))?\s*$")

Number = Union[int, Fraction, "ExtValue"]


@total_ordering
class ExtValue:
    """An element of ``Q+ ∪ {inf}``; immutable and hashable."""

    __slots__ = ("_q",)

    def __init__(self, value: Union[int, Fraction, str, "ExtValue"] = 0) -> None:
        if isinstance(value, ExtValue):
            q = value._q
        elif isinstance(value, str):
            q = _parse_ext(value)
        elif isinstance(value, (int, Fraction)):
            q = Fraction(value)
            if q < 0:
                raise ValueError(f"negative value {q} is not in the extended non-negative rationals")
        else:
            raise TypeError(f"cannot build ExtValue from {type(value).__name__}")
        object.__setattr__(self, "_q", q)

    def __setattr__(self, name, value):  # pragma: no cover - immutability guard
        raise AttributeError("ExtValue is immutable")

    @classmethod
    def _raw(cls, q: Fraction | None) -> "ExtValue":
        obj = object.__new__(cls)
        object.__setattr__(obj, "_q", q)
        return obj

    @property
    def is_finite(self) -> bool:
        return self._q is not None

    @property
    def is_infinite(self) -> bool:
        return self._q is None

    @property
    def fraction(self) -> Fraction:
        """The finite value; raises ``OverflowError`` on infinity."""
        if self._q is None:
            raise OverflowError("infinite ExtValue has no rational value")
        return self._q

    def __add__(self, other: Number) -> "ExtValue":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self._q is None or other._q is None:
            return INF
        return ExtValue._raw(self._q + other._q)

    __radd__ = __add__

    def __mul__(self, other: Number) -> "ExtValue":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self._q, other._q
        if a == 0 or b == 0:
            return ZERO
        if a is None or b is None:
            return INF
        return ExtValue._raw(a * b)

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            return self._q is not None and self._q == other
        if not isinstance(other, ExtValue):
            return NotImplemented
        return self._q == other._q

    def __lt__(self, other: Number) -> bool:
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self._q is None:
            return False
        if other._q is None:
            return True
        return self._q < other._q

    def __hash__(self) -> int:
        return hash(self._q) if self._q is not None else hash(float("inf"))

    def __bool__(self) -> bool:
        return self._q != 0

    def __str__(self) -> str:
        return format_ext(self)

    def __repr__(self) -> str:
        return f"ExtValue('{format_ext(self)}')"


def _coerce(value) -> ExtValue:
    if isinstance(value, ExtValue):
        return value
    if isinstance(value, (int, Fraction)):
        return ExtValue(value)
    return NotImplemented


def _parse_ext(text: str) -> Fraction | None:
    t = text.strip().lower()
    if t in ("inf", "+inf", "infinity", "∞"):
        return None
    q = parse_rational(t)
    if q < 0:
        raise ValueError(f"negative value {text!r} is not in the extended non-negative rationals")
    return q


def parse_rational(text: str) -> Fraction:
    """Parse ``p`` or ``p/q`` into a reduced :class:`Fraction`."""
    m = _RATIONAL_RE.match(text)
    if not m:
        raise ValueError(f"not a rational literal: {text!r}")
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) is not None else 1
    if den == 0:
        raise ValueError(f"zero denominator in {text!r}")
    return Fraction(num, den)


def format_rational(q: Fraction) -> str:
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def format_ext(v: ExtValue) -> str:
    if v._q is None:
        return "inf"
    return format_rational(v._q)


ZERO = ExtValue._raw(Fraction(0))
ONE = ExtValue._raw(Fraction(1))
INF = ExtValue._raw(None)


def add(a: ExtValue, b: ExtValue) -> ExtValue:
    return a + b


def mul(a: ExtValue, b: ExtValue) -> ExtValue:
    return a * b


def cmp(a: ExtValue, b: ExtValue) -> int:
    """Three-way comparison: -1, 0 or 1."""
    if a == b:
        return 0
    return -1 if a < b else 1


def ext_sum(values) -> ExtValue:
    total = ZERO
    for v in values:
        total = total + v
    return total


def signed_add(a: Fraction, b: Fraction) -> Fraction:
    return a + b


def signed_sub(a: Fraction, b: Fraction) -> Fraction:
    return a - b


def signed_neg(a: Fraction) -> Fraction:
    return -a


def signed_scale(r: Fraction, a: Fraction) -> Fraction:
    return r * a


def signed_cmp(a: Fraction, b: Fraction) -> int:
    return (a > b) - (a < b)
