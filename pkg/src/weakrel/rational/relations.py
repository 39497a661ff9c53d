"""The named relation families over Q^n (even chains) and Q^n x {+-1} (odd chains).

``OddR(i)`` for ``-(n+1) <= i <= n+1`` lives on signed points; ``EvenT(i)``
for ``i`` in ``{-(n+1)..-1, 1..n+1}`` on plain tuples.  Negative indices are
unions of the lexicographic levels ``1..n+1+i``; positive odd indices are
the linear negation of their mirror, so the negative side is the only base
case.  ``Delta(i)`` copies ``EvenT(i)`` onto signed points ignoring signs and
``DeltaAlpha(i)`` is ``Delta(i)`` composed with the sign flip.
"""
from __future__ import annotations

from dataclasses import dataclass

from ..errors import ValidationError
from .points import RationalTuple, SignedPoint, lex_level

FAMILIES = ("OddR", "EvenT", "Delta", "DeltaAlpha")


def odd_indices(n: int) -> list[int]:
    return list(range(-(n + 1), n + 2))


def even_indices(n: int) -> list[int]:
    return [i for i in range(-(n + 1), n + 2) if i != 0]


def family_indices(family: str, n: int) -> list[int]:
    return odd_indices(n) if family == "OddR" else even_indices(n)


@dataclass(frozen=True)
class SymbolicRelation:
    family: str
    index: int
    n: int

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValidationError("family", f"unknown family {self.family!r}; expected one of {FAMILIES}")
        if self.n < 1:
            raise ValidationError("dimension", f"n must be >= 1, got {self.n}")
        if self.index not in family_indices(self.family, self.n):
            raise ValidationError("index", f"{self.family}({self.index}) out of range for n={self.n}")

    @property
    def signed(self) -> bool:
        return self.family != "EvenT"

    def __str__(self) -> str:
        return f"{self.family}({self.index})"


def parse_family(text: str, n: int) -> SymbolicRelation:
    """``"OddR:-1"`` -> ``SymbolicRelation("OddR", -1, n)``."""
    name, _, idx = text.partition(":")
    try:
        return SymbolicRelation(name.strip(), int(idx), n)
    except ValueError as exc:
        if isinstance(exc, ValidationError):
            raise
        raise ValidationError("family", f"expected FAMILY:INDEX, got {text!r}") from None


def OddR(i: int, n: int) -> SymbolicRelation:
    return SymbolicRelation("OddR", i, n)


def EvenT(i: int, n: int) -> SymbolicRelation:
    return SymbolicRelation("EvenT", i, n)


def Delta(i: int, n: int) -> SymbolicRelation:
    return SymbolicRelation("Delta", i, n)


def DeltaAlpha(i: int, n: int) -> SymbolicRelation:
    return SymbolicRelation("DeltaAlpha", i, n)


def _check_pair(rel: SymbolicRelation, pair) -> None:
    try:
        x, y = pair
    except (TypeError, ValueError):
        raise ValidationError("pair", f"expected a pair of points, got {pair!r}") from None
    kind = SignedPoint if rel.signed else RationalTuple
    for pt in (x, y):
        if not isinstance(pt, kind):
            raise ValidationError("pair", f"{rel} needs {kind.__name__} endpoints, got {type(pt).__name__}")
        coords = pt.point if rel.signed else pt
        if len(coords) != rel.n:
            raise ValidationError("dimension", f"{rel} needs tuples of length {rel.n}, got {len(coords)}")


def member(rel: SymbolicRelation, pair) -> bool:
    _check_pair(rel, pair)
    x, y = pair
    f, i, n = rel.family, rel.index, rel.n
    if f == "OddR":
        return _odd(i, n, x, y)
    if f == "EvenT":
        return _even(i, n, x, y)
    if f == "Delta":
        return _even(i, n, x.point, y.point)
    return _even(i, n, x.point, y.flip().point)


def _odd(i: int, n: int, x: SignedPoint, y: SignedPoint) -> bool:
    if i < 0:
        if i == -(n + 1):
            return False
        return 1 <= lex_level(x.point, y.point) <= n + 1 + i
    if i == 0:
        return x == y or lex_level(x.point, y.point) > 0
    # (x, y) in ~R iff (alpha(y), x) not in R, alpha flips the sign
    return not _odd(-i, n, y.flip(), x)


def _even(i: int, n: int, p: RationalTuple, q: RationalTuple) -> bool:
    if i < 0:
        if i == -(n + 1):
            return False
        return 1 <= lex_level(p, q) <= n + 1 + i
    if i == 1:
        return lex_level(p, q) >= 0
    return not _even(-i, n, q, p)


@dataclass(frozen=True)
class Profile:
    """Closed form of a family: the allowed values of ``lex_level(p, q)``;
    ``same_sign`` restricts the level-0 pairs to equal signs."""

    levels: frozenset
    same_sign: bool = False

    def admits(self, level: int, b: int = 1, d: int = 1) -> bool:
        if level not in self.levels:
            return False
        return not (level == 0 and self.same_sign and b != d)


def profile(rel: SymbolicRelation) -> Profile:
    """Allowed levels, derived by unfolding the definitions once by hand.

    Used by the generators; :func:`member` stays the reference and the two
    are cross-checked in the tests."""
    f, i, n = rel.family, rel.index, rel.n
    if f == "DeltaAlpha":
        f = "Delta"
    everything = frozenset(range(-n, n + 1))
    if i == -(n + 1):
        return Profile(frozenset())
    if i < 0:
        return Profile(frozenset(range(1, n + 2 + i)))
    if f == "OddR" and i == 0:
        return Profile(frozenset(range(0, n + 1)), same_sign=True)
    # positive side: complement of the mirrored negative family, read backwards
    mirror = n + 1 - i
    return Profile(everything - frozenset(range(-mirror, 0)))


def member_by_profile(rel: SymbolicRelation, pair) -> bool:
    x, y = pair
    if rel.signed:
        if rel.family == "DeltaAlpha":
            y = y.flip()
        return profile(rel).admits(lex_level(x.point, y.point), x.sign, y.sign)
    return profile(rel).admits(lex_level(x, y))


def composition_table(i: int, j: int, n: int, kind: str = "odd") -> int:
    """Index of ``R_i ; R_j``: the index of larger absolute value wins, ties take the minimum."""
    idx = odd_indices(n) if kind == "odd" else even_indices(n)
    if i not in idx or j not in idx:
        raise ValidationError("index", f"({i}, {j}) out of range for the {kind} family with n={n}")
    if abs(j) < abs(i):
        return i
    if abs(i) < abs(j):
        return j
    return min(i, j)
