"""Finite posets enriched with an equivalence ``E`` and an order automorphism.

The pair order on ``E`` is ``(u, v) <= (x, y)`` iff ``x <= u`` and ``v <= y``;
its upsets are the weakening relations that make up an algebra.
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from functools import cached_property
from typing import Iterator, Mapping

import numpy as np

from . import _pykernels, kernels
from .errors import ResourceError, StructuralError, ValidationError
from .relcore import (Carrier, Rel, Universe, compose_masks, converse_mask, diagonal_mask,
                      mask_pairs, perm_mask)

DEFAULT_CAP = 1 << 20


@dataclass(frozen=True)
class FinitePoset:
    carrier: Carrier
    leq: Rel  # universe X^2

    def __post_init__(self):
        _check_order(self.carrier, self.leq.bits)

    @property
    def n(self) -> int:
        return self.carrier.size

    def le(self, x: int, y: int) -> bool:
        return bool(self.leq.bits >> (x * self.n + y) & 1)


def _check_order(carrier: Carrier, leq: int) -> None:
    n = carrier.size
    lab = carrier.labels
    if leq & diagonal_mask(n) != diagonal_mask(n):
        raise ValidationError("order", "order is not reflexive")
    for x, y in mask_pairs(leq, n):
        if x != y and leq >> (y * n + x) & 1:
            raise ValidationError("order", f"antisymmetry fails for {lab[x]!r}, {lab[y]!r}")
    for x, y in mask_pairs(leq, n):
        for z in range(n):
            if leq >> (y * n + z) & 1 and not leq >> (x * n + z) & 1:
                raise ValidationError(
                    "order", f"transitivity fails: {lab[x]!r} <= {lab[y]!r} <= {lab[z]!r} but not {lab[x]!r} <= {lab[z]!r}")


@dataclass(frozen=True)
class RepContext:
    """A poset with an equivalence ``E`` containing the order and an automorphism ``alpha`` inside ``E``."""

    poset: FinitePoset
    E: Rel  # universe X^2
    alpha: tuple[int, ...]

    def __post_init__(self):
        _check_context(self)

    @property
    def carrier(self) -> Carrier:
        return self.poset.carrier

    @property
    def n(self) -> int:
        return self.poset.n

    @property
    def labels(self) -> tuple[str, ...]:
        return self.carrier.labels

    @cached_property
    def universe(self) -> Universe:
        """``E`` as the universe for algebra elements."""
        return Universe(self.carrier, self.E.bits)

    @property
    def e_mask(self) -> int:
        return self.E.bits

    @property
    def leq_mask(self) -> int:
        return self.poset.leq.bits

    @cached_property
    def alpha_mask(self) -> int:
        return perm_mask(self.alpha, self.n)

    @cached_property
    def alpha_inverse(self) -> tuple[int, ...]:
        inv = [0] * self.n
        for x, y in enumerate(self.alpha):
            inv[y] = x
        return tuple(inv)

    @property
    def is_alpha_identity(self) -> bool:
        return self.alpha == tuple(range(self.n))

    def rel(self, bits: int) -> Rel:
        return Rel(self.universe, bits)

    @cached_property
    def leq_rel(self) -> Rel:
        return self.rel(self.leq_mask)

    @cached_property
    def alpha_rel(self) -> Rel:
        return self.rel(self.alpha_mask)

    @cached_property
    def up_masks(self) -> dict[int, int]:
        """For each position ``u*n + v`` of E, the mask of pairs above it (inclusive)."""
        n = self.n
        le = self.poset.le
        out = {}
        for u, v in mask_pairs(self.e_mask, n):
            m = 0
            for x, y in mask_pairs(self.e_mask, n):
                if le(x, u) and le(v, y):
                    m |= 1 << (x * n + y)
            out[u * n + v] = m
        return out

    def to_spec(self) -> dict:
        lab = self.labels
        n = self.n
        leq = [[lab[x], lab[y]] for x, y in mask_pairs(self.leq_mask, n) if x != y]
        full = self.e_mask == (1 << (n * n)) - 1
        spec = {
            "elements": list(lab),
            "leq": leq,
            "E": "full" if full else [[lab[x], lab[y]] for x, y in mask_pairs(self.e_mask, n)],
        }
        if not self.is_alpha_identity:
            spec["alpha"] = {lab[x]: lab[y] for x, y in enumerate(self.alpha)}
        return spec


def _check_context(ctx: RepContext) -> None:
    n = ctx.n
    lab = ctx.labels
    e = ctx.E.bits
    if ctx.E.carrier != ctx.carrier or ctx.poset.leq.carrier != ctx.carrier:
        raise StructuralError("context components use different carriers")
    if e & diagonal_mask(n) != diagonal_mask(n):
        raise ValidationError("E", "E is not reflexive")
    if converse_mask(e, n) != e:
        raise ValidationError("E", "E is not symmetric")
    if compose_masks(e, e, n) & ~e:
        raise ValidationError("E", "E is not transitive")
    missing = ctx.leq_mask & ~e
    if missing:
        x, y = next(mask_pairs(missing, n))
        raise ValidationError("E", f"E does not contain the order pair ({lab[x]!r}, {lab[y]!r})")
    a = ctx.alpha
    if len(a) != n or sorted(a) != list(range(n)):
        raise ValidationError("alpha", "alpha is not a bijection of the carrier")
    le = ctx.poset.le
    for x in range(n):
        for y in range(n):
            if le(x, y) != le(a[x], a[y]):
                raise ValidationError(
                    "alpha", f"alpha is not an order automorphism at ({lab[x]!r}, {lab[y]!r})")
    for x in range(n):
        if not e >> (x * n + a[x]) & 1:
            raise ValidationError(
                "alpha", f"({lab[x]!r}, alpha({lab[x]!r}) = {lab[a[x]]!r}) is not in E")


def make_context(labels, leq_pairs=(), E="full", alpha=None) -> RepContext:
    """Programmatic constructor; the order gets its reflexive closure."""
    labels = tuple(str(x) for x in labels)
    if not labels:
        raise ValidationError("elements", "the carrier must be nonempty")
    try:
        carrier = Carrier(labels)
    except ValidationError as exc:
        raise ValidationError("elements", exc.message) from None
    full = Universe.full(carrier)
    n = carrier.size
    try:
        leq = Rel.from_pairs(full, leq_pairs)
    except StructuralError as exc:
        raise ValidationError("order", str(exc)) from None
    leq = Rel(full, leq.bits | diagonal_mask(n))
    poset = FinitePoset(carrier, leq)
    if isinstance(E, str):
        if E == "full":
            e = full.mask
        elif E in ("id", "identity", "discrete"):
            e = diagonal_mask(n)
        else:
            raise ValidationError("E", f"unknown E keyword {E!r}")
        E_rel = Rel(full, e)
    else:
        try:
            E_rel = Rel.from_pairs(full, E)
        except StructuralError as exc:
            raise ValidationError("E", str(exc)) from None
    if alpha is None:
        images = tuple(range(n))
    else:
        try:
            m = {carrier.index(k): carrier.index(v) for k, v in dict(alpha).items()}
        except StructuralError as exc:
            raise ValidationError("alpha", str(exc)) from None
        images = tuple(m.get(x, x) for x in range(n))
    return RepContext(poset, E_rel, images)


def load_context(spec: Mapping | str) -> RepContext:
    """Build a context from the JSON ContextSpec (a dict, JSON text or a path)."""
    if isinstance(spec, str):
        text = spec
        if not spec.lstrip().startswith("{"):
            with open(spec) as fh:
                text = fh.read()
        try:
            spec = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ValidationError("json", str(exc)) from None
    if not isinstance(spec, Mapping) or "elements" not in spec:
        raise ValidationError("elements", "context spec needs an 'elements' list")
    return make_context(spec["elements"], spec.get("leq", ()), spec.get("E", "full"), spec.get("alpha"))


def _e_position(pair, ctx: RepContext) -> int:
    x, y = (ctx.carrier.index(v) for v in pair)
    pos = x * ctx.n + y
    if not ctx.e_mask >> pos & 1:
        raise StructuralError(f"pair {pair!r} is not in E")
    return pos


def precedes(a, b, ctx: RepContext) -> bool:
    """Pair order on E: ``(u, v) <= (x, y)`` iff ``x <= u`` and ``v <= y``."""
    pa = _e_position(a, ctx)
    pb = _e_position(b, ctx)
    return bool(ctx.up_masks[pa] >> pb & 1)


def is_upset(r: Rel, ctx: RepContext) -> bool:
    if r.universe != ctx.universe:
        raise StructuralError("relation is not over the context's E")
    return is_upset_mask(r.bits, ctx)


def is_upset_mask(bits: int, ctx: RepContext) -> bool:
    up = ctx.up_masks
    b = bits
    while b:
        low = b & -b
        if up[low.bit_length() - 1] & ~bits:
            return False
        b ^= low
    return True


def upset_masks(ctx: RepContext, cap: int = DEFAULT_CAP) -> list[int]:
    """Upset bitmasks sorted by cardinality, then by bit pattern."""
    if cap < 1:
        raise ValidationError("cap", "cap must be >= 1")
    up = ctx.up_masks
    # strictly-above sets shrink as we go up, so sorting by their size is a topological order
    order = sorted(up, key=lambda p: (bin(up[p]).count("1"), p))
    nn = ctx.n * ctx.n
    if ctx.n <= kernels.MAX_CARRIER:
        above = np.zeros(nn, dtype=np.uint64)
        for p, m in up.items():
            above[p] = m & ~(1 << p)
        masks = kernels.enumerate_upsets(np.array(order, dtype=np.int64), above, cap)
    else:
        above = [0] * nn
        for p, m in up.items():
            above[p] = m & ~(1 << p)
        masks = _pykernels.enumerate_upsets(order, above, cap)
    if masks is None:
        raise ResourceError(f"more than {cap} upsets", lower_bound=cap + 1)
    masks.sort(key=lambda m: (bin(m).count("1"), m))
    return masks


def enumerate_upsets(ctx: RepContext, cap: int = DEFAULT_CAP) -> list[Rel]:
    return [ctx.rel(m) for m in upset_masks(ctx, cap)]


def zero_mask(ctx: RepContext) -> int:
    n = ctx.n
    e = ctx.e_mask
    flipped = converse_mask(e & ~ctx.leq_mask, n)
    left = compose_masks(ctx.alpha_mask, flipped, n)
    right = compose_masks(flipped, ctx.alpha_mask, n)
    assert left == right, "alpha ; (<=)^c~ differs from (<=)^c~ ; alpha"
    return left


def zero_relation(ctx: RepContext) -> Rel:
    """The constant ``alpha ; (<=)^{c~}`` (equal to ``(<=)^{c~} ; alpha``)."""
    return ctx.rel(zero_mask(ctx))


# -- exhaustive enumeration of small contexts -------------------------------

def _labels(n: int) -> tuple[str, ...]:
    return tuple("abcdefgh"[i] if n <= 8 else f"x{i}" for i in range(n))


def all_orders(n: int) -> Iterator[int]:
    """Every partial order on ``range(n)`` as an ``x*n + y`` bitmask."""
    off = [(x, y) for x in range(n) for y in range(n) if x != y]
    diag = diagonal_mask(n)
    for k in range(1 << len(off)):
        m = diag
        for i, (x, y) in enumerate(off):
            if k >> i & 1:
                m |= 1 << (x * n + y)
        if any(m >> (x * n + y) & 1 and m >> (y * n + x) & 1 for x, y in off):
            continue
        if compose_masks(m, m, n) != m:
            continue
        yield m


def _partitions(items):
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in _partitions(rest):
        for i in range(len(part)):
            yield part[:i] + [[first] + part[i]] + part[i + 1:]
        yield [[first]] + part


def all_equivalences(n: int) -> Iterator[int]:
    for part in _partitions(list(range(n))):
        m = 0
        for block in part:
            for x in block:
                for y in block:
                    m |= 1 << (x * n + y)
        yield m


def all_contexts(n: int) -> Iterator[RepContext]:
    """Every valid context on ``n`` labelled elements (orders, then E, then alpha)."""
    carrier = Carrier(_labels(n))
    full = Universe.full(carrier)
    for leq in all_orders(n):
        poset = FinitePoset(carrier, Rel(full, leq))
        for e in sorted(all_equivalences(n)):
            if leq & ~e:
                continue
            for perm in itertools.permutations(range(n)):
                if not all(e >> (x * n + perm[x]) & 1 for x in range(n)):
                    continue
                if any(poset.le(x, y) != poset.le(perm[x], perm[y]) for x in range(n) for y in range(n)):
                    continue
                yield RepContext(poset, Rel(full, e), tuple(perm))
