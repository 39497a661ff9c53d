"""Seeded samplers for rational points, and constructive member generators."""
from __future__ import annotations

import random
import re
from dataclasses import dataclass
from fractions import Fraction

from ..errors import EmptyRelationError, ValidationError
from .points import RationalTuple, SignedPoint
from .relations import SymbolicRelation, member, profile

SIGNS = ((1, 1), (1, -1), (-1, 1), (-1, -1))
STRATEGIES = ("independent", "shared-prefix", "identical", "reuse")
DEFAULT_MIX = {"independent": 0.4, "shared-prefix": 0.3, "identical": 0.2, "reuse": 0.1}
REJECTION_BUDGET = 1000


@dataclass(frozen=True)
class SamplingStrategy:
    """``kind`` is one strategy or ``"mixture"`` (weights in ``mix``).

    ``prefix`` fixes k for shared-prefix; ``None`` draws k uniformly in 1..n.
    """

    kind: str = "mixture"
    prefix: int | None = None
    mix: tuple = tuple(DEFAULT_MIX.items())
    num_range: tuple[int, int] = (-10, 10)
    den_range: tuple[int, int] = (1, 10)

    def __post_init__(self):
        if self.kind != "mixture" and self.kind not in STRATEGIES:
            raise ValidationError("strategy", f"unknown strategy {self.kind!r}")
        lo, hi = self.den_range
        if lo < 1 or hi < lo or self.num_range[1] < self.num_range[0]:
            raise ValidationError("strategy", "empty numerator or denominator range")

    @classmethod
    def shared_prefix(cls, k: int | None = None) -> "SamplingStrategy":
        return cls("shared-prefix", prefix=k)


def parse_mix(text: str) -> SamplingStrategy:
    """``"independent=0.4,shared-prefix=0.3,identical=0.2,reuse=0.1"``; a bare
    strategy name (optionally ``shared-prefix:k``) selects a single strategy."""
    text = text.strip()
    if "=" not in text:
        name, _, k = text.partition(":")
        return SamplingStrategy(name, prefix=int(k) if k else None)
    weights = {}
    for part in re.split(r"\s*,\s*", text):
        name, _, w = part.partition("=")
        if name not in STRATEGIES:
            raise ValidationError("strategy", f"unknown strategy {name!r} in mix")
        try:
            weights[name] = float(w)
        except ValueError:
            raise ValidationError("strategy", f"bad weight {w!r}") from None
    if sum(weights.values()) <= 0 or min(weights.values()) < 0:
        raise ValidationError("strategy", "mix weights must be non-negative and not all zero")
    return SamplingStrategy("mixture", mix=tuple(weights.items()))


class PointSampler:
    """Draws coordinates ``a/b`` with ``a``, ``b`` uniform in the strategy ranges."""

    def __init__(self, n: int, rng: random.Random, strategy: SamplingStrategy | None = None):
        self.n = n
        self.rng = rng
        self.strategy = strategy or SamplingStrategy()
        lo, hi = self.strategy.num_range
        dlo, dhi = self.strategy.den_range
        self._grid = [[Fraction(a, b) for b in range(dlo, dhi + 1)] for a in range(lo, hi + 1)]
        self._prev: RationalTuple | None = None

    def coord(self) -> Fraction:
        row = self.rng.choice(self._grid)
        return self.rng.choice(row)

    def point(self) -> RationalTuple:
        return RationalTuple._raw(tuple(self.coord() for _ in range(self.n)))

    def _pick_kind(self) -> str:
        s = self.strategy
        if s.kind != "mixture":
            return s.kind
        names, weights = zip(*s.mix)
        return self.rng.choices(names, weights)[0]

    def tuple_pair(self, kind: str | None = None) -> tuple[RationalTuple, RationalTuple]:
        kind = kind or self._pick_kind()
        p = self.point()
        if kind == "identical":
            q = p
        elif kind == "shared-prefix":
            k = self.strategy.prefix or self.rng.randint(1, self.n)
            k = min(k, self.n)
            q = RationalTuple._raw(p[:k] + tuple(self.coord() for _ in range(self.n - k)))
        elif kind == "reuse" and self._prev is not None:
            p, q = self._prev, p
        else:
            q = self.point()
        self._prev = q
        return p, q

    def step(self, p: RationalTuple, level: int) -> RationalTuple:
        """A tuple ``q`` with ``lex_level(p, q) == level``."""
        if level == 0:
            return p
        k = abs(level)
        gap = self.coord()
        gap = abs(gap) or Fraction(1)
        head = p[k - 1] + gap if level > 0 else p[k - 1] - gap
        return RationalTuple._raw(p[:k - 1] + (head,) + tuple(self.coord() for _ in range(self.n - k)))


def sample_pairs(n: int, strategy: SamplingStrategy | None = None, count: int = 1, seed: int = 0,
                 signed: bool = False) -> list:
    """``count`` tuple pairs from a seeded stream; with ``signed`` each tuple
    pair is emitted once per sign combination (4 * count pairs)."""
    if count < 1:
        raise ValidationError("count", f"count must be >= 1, got {count}")
    sampler = PointSampler(n, random.Random(seed), strategy)
    out = []
    for _ in range(count):
        p, q = sampler.tuple_pair()
        if signed:
            out.extend((SignedPoint(p, b), SignedPoint(q, d)) for b, d in SIGNS)
        else:
            out.append((p, q))
    return out


def successor(rel: SymbolicRelation, x, sampler: PointSampler, levels=None):
    """A point ``y`` with ``(x, y)`` in ``rel``, level drawn uniformly from the profile.

    ``levels`` optionally restricts the admissible levels further."""
    prof = profile(rel)
    allowed = sorted(prof.levels if levels is None else prof.levels & set(levels))
    if not allowed:
        raise EmptyRelationError(f"{rel} has no pair at the requested levels")
    level = sampler.rng.choice(allowed)
    if not rel.signed:
        return sampler.step(x, level)
    q = sampler.step(x.point, level)
    if level == 0 and prof.same_sign:
        return SignedPoint(q, x.sign)
    return SignedPoint(q, sampler.rng.choice((1, -1)))


def predecessor(rel: SymbolicRelation, y, sampler: PointSampler):
    """A point ``x`` with ``(x, y)`` in ``rel``."""
    prof = profile(rel)
    if not prof.levels:
        raise EmptyRelationError(f"{rel} is empty")
    level = sampler.rng.choice(sorted(prof.levels))
    if not rel.signed:
        return sampler.step(y, -level)
    pt = sampler.step(y.point, -level)
    if level == 0 and prof.same_sign:
        return SignedPoint(pt, y.sign)
    return SignedPoint(pt, sampler.rng.choice((1, -1)))


def random_point(n: int, signed: bool, sampler: PointSampler):
    p = sampler.point()
    return SignedPoint(p, sampler.rng.choice((1, -1))) if signed else p


def generate_member(rel: SymbolicRelation, seed: int = 0, sampler: PointSampler | None = None):
    """A pair in ``rel``: pick an allowed level, share the prefix, force the step."""
    if not profile(rel).levels:
        raise EmptyRelationError(f"{rel} is empty for n={rel.n}")
    sampler = sampler or PointSampler(rel.n, random.Random(seed))
    x = random_point(rel.n, rel.signed, sampler)
    pair = (x, successor(rel, x, sampler))
    if not member(rel, pair):  # pragma: no cover - generator and predicate disagree
        raise AssertionError(f"generated non-member {pair} of {rel}")
    return pair


def rejection_member(rel: SymbolicRelation, sampler: PointSampler, budget: int = REJECTION_BUDGET):
    """Draw mixture pairs (all sign combinations for signed families) until one
    lands in ``rel``; falls back to the constructive generator after ``budget``."""
    for _ in range(budget):
        p, q = sampler.tuple_pair()
        if rel.signed:
            b, d = sampler.rng.choice(SIGNS)
            pair = (SignedPoint(p, b), SignedPoint(q, d))
        else:
            pair = (p, q)
        if member(rel, pair):
            return pair
    return generate_member(rel, sampler=sampler)
