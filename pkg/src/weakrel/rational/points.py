"""Exact points of Q^n and of Q^n x {-1, +1}, plus the lexicographic level."""
from __future__ import annotations

import re
from fractions import Fraction
from typing import NamedTuple, Union

from ..errors import ValidationError


class RationalTuple(tuple):
    """An n-tuple of reduced fractions; equality is structural."""

    __slots__ = ()

    def __new__(cls, coords=()):
        try:
            return tuple.__new__(cls, (c if type(c) is Fraction else Fraction(c) for c in coords))
        except (TypeError, ValueError, ZeroDivisionError) as exc:
            raise ValidationError("point", f"bad rational coordinate in {coords!r}: {exc}") from None

    @classmethod
    def _raw(cls, coords) -> "RationalTuple":
        # caller guarantees every entry is already a Fraction
        return tuple.__new__(cls, coords)

    @property
    def n(self) -> int:
        return len(self)

    def __repr__(self) -> str:
        return "(" + ",".join(str(c) for c in self) + ")"


class SignedPoint(NamedTuple):
    point: RationalTuple
    sign: int

    @classmethod
    def make(cls, coords, sign: int) -> "SignedPoint":
        if sign not in (-1, 1):
            raise ValidationError("point", f"sign must be -1 or +1, got {sign!r}")
        pt = coords if isinstance(coords, RationalTuple) else RationalTuple(coords)
        return cls(pt, sign)

    def flip(self) -> "SignedPoint":
        """The automorphism p^b -> p^-b."""
        return SignedPoint(self.point, -self.sign)

    def __repr__(self) -> str:
        return f"{self.point!r}{'+' if self.sign > 0 else '-'}"


Point = Union[RationalTuple, SignedPoint]


def lex_level(p: RationalTuple, q: RationalTuple) -> int:
    """``j > 0`` when p, q agree before coordinate j and p_j < q_j;
    ``0`` when p = q; ``-k`` when (q, p) sits at level k."""
    if len(p) != len(q):
        raise ValidationError("dimension", f"tuples of length {len(p)} and {len(q)}")
    k = 0
    for a, b in zip(p, q):
        k += 1
        if a != b:
            return k if a < b else -k
    return 0


def lex_less(p: RationalTuple, q: RationalTuple) -> bool:
    return lex_level(p, q) > 0


_NUM = r"[+-]?\d+(?:/\d+)?"
_POINT = re.compile(r"\(\s*(" + _NUM + r"(?:\s*,\s*" + _NUM + r")*)\s*\)\s*([+-])?")


def parse_point(text: str) -> Point:
    """``"(0,1/2)+"`` -> signed point, ``"(0,1/2)"`` -> plain tuple."""
    m = _POINT.fullmatch(text.strip())
    if not m:
        raise ValidationError("pair", f"cannot parse point {text!r}")
    coords = RationalTuple(re.split(r"\s*,\s*", m.group(1)))
    if m.group(2) is None:
        return coords
    return SignedPoint(coords, 1 if m.group(2) == "+" else -1)


def parse_pair(text: str) -> tuple[Point, Point]:
    """Parse ``"(0,1/2)+ , (1,0)-"``; fraction literals only, no decimals."""
    found = [m for m in _POINT.finditer(text)]
    rest = _POINT.sub("", text).replace(",", "").strip()
    if len(found) != 2 or rest:
        raise ValidationError("pair", f"expected two points, got {text!r}")
    x, y = (parse_point(m.group(0)) for m in found)
    if type(x) is not type(y):
        raise ValidationError("pair", "both points must be signed or both unsigned")
    if _coords(x).n != _coords(y).n:
        raise ValidationError("dimension", f"points of different length in {text!r}")
    return x, y


def format_pair(pair) -> str:
    return f"{pair[0]!r} , {pair[1]!r}"


def _coords(x: Point) -> RationalTuple:
    return x.point if isinstance(x, SignedPoint) else x
