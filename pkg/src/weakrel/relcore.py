"""Finite binary relations as bitsets over an indexed carrier.

A relation on an ``n``-element carrier is stored as a Python int whose bit
``x*n + y`` is set when ``(x, y)`` is a member.  Every :class:`Rel` lives
inside a declared :class:`Universe` (``X^2`` or an equivalence ``E``) and
complements are always taken relative to that universe.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Iterable, Iterator

from . import _pykernels, kernels
from .errors import StructuralError, ValidationError
from .report import VerificationReport

Pair = tuple[int, int]


def compose_masks(a: int, b: int, n: int) -> int:
    if n <= kernels.MAX_CARRIER:
        return kernels.compose(a, b, n)
    return _pykernels.compose(a, b, n)


def converse_mask(a: int, n: int) -> int:
    out = 0
    while a:
        low = a & -a
        pos = low.bit_length() - 1
        x, y = divmod(pos, n)
        out |= 1 << (y * n + x)
        a ^= low
    return out


def mask_pairs(a: int, n: int) -> Iterator[Pair]:
    while a:
        low = a & -a
        yield divmod(low.bit_length() - 1, n)
        a ^= low


def perm_mask(perm: Iterable[int], n: int) -> int:
    """Graph of a function given as the list of images."""
    return sum(1 << (x * n + y) for x, y in enumerate(perm))


def diagonal_mask(n: int) -> int:
    return sum(1 << (x * n + x) for x in range(n))


@dataclass(frozen=True)
class Carrier:
    labels: tuple[str, ...]

    def __post_init__(self):
        if len(self.labels) < 1:
            raise ValidationError("carrier", "carrier must have at least one element")
        if len(set(self.labels)) != len(self.labels):
            raise ValidationError("carrier", f"duplicate labels in {self.labels}")

    @classmethod
    def of_size(cls, n: int) -> "Carrier":
        return cls(tuple(str(i) for i in range(n)))

    @property
    def size(self) -> int:
        return len(self.labels)

    @cached_property
    def _index(self) -> dict[str, int]:
        return {lab: i for i, lab in enumerate(self.labels)}

    def index(self, x) -> int:
        if isinstance(x, int) and not isinstance(x, bool):
            if not 0 <= x < self.size:
                raise StructuralError(f"index {x} outside carrier of size {self.size}")
            return x
        try:
            return self._index[x]
        except KeyError:
            raise StructuralError(f"unknown element {x!r}") from None


@dataclass(frozen=True)
class Universe:
    """The pair set a relation lives in; ``mask`` uses the ``x*n + y`` layout."""

    carrier: Carrier
    mask: int

    @classmethod
    def full(cls, carrier: Carrier) -> "Universe":
        return cls(carrier, (1 << (carrier.size * carrier.size)) - 1)

    @property
    def n(self) -> int:
        return self.carrier.size

    @cached_property
    def pairs(self) -> tuple[Pair, ...]:
        """Member pairs in row-major order."""
        return tuple(mask_pairs(self.mask, self.n))

    @cached_property
    def is_full(self) -> bool:
        return self.mask == (1 << (self.n * self.n)) - 1

    @cached_property
    def is_symmetric(self) -> bool:
        return converse_mask(self.mask, self.n) == self.mask

    @cached_property
    def is_closed(self) -> bool:
        return compose_masks(self.mask, self.mask, self.n) & ~self.mask == 0


@dataclass(frozen=True)
class Rel:
    universe: Universe
    bits: int = 0

    def __post_init__(self):
        if self.bits & ~self.universe.mask:
            raise StructuralError("relation has pairs outside its universe")

    @classmethod
    def from_pairs(cls, universe: Universe, pairs: Iterable) -> "Rel":
        c = universe.carrier
        n = c.size
        bits = 0
        for x, y in pairs:
            bits |= 1 << (c.index(x) * n + c.index(y))
        return cls(universe, bits)

    @property
    def carrier(self) -> Carrier:
        return self.universe.carrier

    @property
    def n(self) -> int:
        return self.universe.n

    def __contains__(self, pair) -> bool:
        x, y = pair
        c = self.carrier
        return bool(self.bits >> (c.index(x) * c.size + c.index(y)) & 1)

    def __iter__(self) -> Iterator[Pair]:
        return mask_pairs(self.bits, self.n)

    def __len__(self) -> int:
        return bin(self.bits).count("1")

    def labelled_pairs(self) -> list[tuple[str, str]]:
        lab = self.carrier.labels
        return [(lab[x], lab[y]) for x, y in self]

    def issubset(self, other: "Rel") -> bool:
        _same_space(self, other)
        return self.bits & ~other.bits == 0

    __le__ = issubset

    def __or__(self, other):
        return union(self, other)

    def __and__(self, other):
        return intersect(self, other)

    def __matmul__(self, other):
        return compose(self, other)

    def __repr__(self) -> str:
        return f"Rel({self.labelled_pairs()})"


def _same_space(r: Rel, s: Rel) -> None:
    if r.universe != s.universe:
        if r.carrier != s.carrier:
            raise StructuralError("relations live on different carriers")
        raise StructuralError("relations live in different universes")


def compose(r: Rel, s: Rel) -> Rel:
    _same_space(r, s)
    out = compose_masks(r.bits, s.bits, r.n)
    if out & ~r.universe.mask:
        raise StructuralError("composition leaves the universe (universe not closed under composition)")
    return Rel(r.universe, out)


def converse(r: Rel) -> Rel:
    out = converse_mask(r.bits, r.n)
    if out & ~r.universe.mask:
        raise StructuralError("converse leaves the universe (universe not symmetric)")
    return Rel(r.universe, out)


def complement(r: Rel) -> Rel:
    return Rel(r.universe, r.universe.mask & ~r.bits)


def union(r: Rel, s: Rel) -> Rel:
    _same_space(r, s)
    return Rel(r.universe, r.bits | s.bits)


def intersect(r: Rel, s: Rel) -> Rel:
    _same_space(r, s)
    return Rel(r.universe, r.bits & s.bits)


def empty(universe: Universe) -> Rel:
    return Rel(universe, 0)


def identity(universe: Universe) -> Rel:
    return Rel(universe, diagonal_mask(universe.n))


def top(universe: Universe) -> Rel:
    return Rel(universe, universe.mask)


def graph(universe: Universe, images: Iterable[int]) -> Rel:
    return Rel(universe, perm_mask(images, universe.n))


def random_rel(universe: Universe, rng: random.Random) -> Rel:
    """Each universe pair independently with probability 1/2."""
    bits = 0
    for x, y in universe.pairs:
        if rng.random() < 0.5:
            bits |= 1 << (x * universe.n + y)
    return Rel(universe, bits)


# (name, statement, predicate over (R, S, T, gamma, ops))
_IDENTITIES: list[tuple[str, str, Callable]] = [
    ("converse-involution", "R˘˘ = R", lambda R, S, T, g, o: o.cv(o.cv(R)) == R),
    ("converse-complement", "R˘ᶜ = Rᶜ˘", lambda R, S, T, g, o: o.c(o.cv(R)) == o.cv(o.c(R))),
    ("converse-union", "(R ∪ S)˘ = R˘ ∪ S˘", lambda R, S, T, g, o: o.cv(R | S) == o.cv(R) | o.cv(S)),
    ("converse-intersection", "(R ∩ S)˘ = R˘ ∩ S˘", lambda R, S, T, g, o: o.cv(R & S) == o.cv(R) & o.cv(S)),
    ("identity-unit", "id ; R = R ; id = R", lambda R, S, T, g, o: o.id @ R == R and R @ o.id == R),
    ("associativity", "(R ; S) ; T = R ; (S ; T)", lambda R, S, T, g, o: (R @ S) @ T == R @ (S @ T)),
    ("converse-composition", "(R ; S)˘ = S˘ ; R˘", lambda R, S, T, g, o: o.cv(R @ S) == o.cv(S) @ o.cv(R)),
    ("right-distributivity", "(R ∪ S) ; T = R;T ∪ S;T", lambda R, S, T, g, o: (R | S) @ T == (R @ T) | (S @ T)),
    ("left-distributivity", "R ; (S ∪ T) = R;S ∪ R;T", lambda R, S, T, g, o: R @ (S | T) == (R @ S) | (R @ T)),
    ("bijection-left-complement", "(γ ; R)ᶜ = γ ; Rᶜ", lambda R, S, T, g, o: o.c(g @ R) == g @ o.c(R)),
    ("bijection-right-complement", "(R ; γ)ᶜ = Rᶜ ; γ", lambda R, S, T, g, o: o.c(R @ g) == o.c(R) @ g),
]


@dataclass
class _Ops:
    c: Callable[[Rel], Rel]
    cv: Callable[[Rel], Rel] = converse
    id: Rel = field(default=None)


def verify_relation_identities(carrier_size: int, trials: int, seed: int = 0,
                               complement_fn: Callable[[Rel], Rel] = complement) -> VerificationReport:
    """Fuzz the basic laws of relation algebra on random triples and permutations.

    ``complement_fn`` exists so a deliberately broken complement can be injected.
    """
    if carrier_size < 1 or trials < 1:
        raise ValidationError("arguments", "carrier_size and trials must be >= 1")
    carrier = Carrier.of_size(carrier_size)
    uni = Universe.full(carrier)
    ops = _Ops(c=complement_fn, id=identity(uni))
    rng = random.Random(seed)
    report = VerificationReport("relation-identities")
    records = [report.check(name, stmt) for name, stmt, _ in _IDENTITIES]
    for _ in range(trials):
        R, S, T = (random_rel(uni, rng) for _ in range(3))
        perm = list(range(carrier_size))
        rng.shuffle(perm)
        g = graph(uni, perm)
        for rec, (_, _, pred) in zip(records, _IDENTITIES):
            rec.tick(bool(pred(R, S, T, g, ops)),
                     R=R.labelled_pairs(), S=S.labelled_pairs(), T=T.labelled_pairs(), gamma=perm)
    return report
