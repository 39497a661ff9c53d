"""Composition witnesses: given (x, y) in R_{table(i,j)}, find z with
(x, z) in R_i and (z, y) in R_j.

The recipes are density midpoints and prefix-copy-with-offset tuples; a
bounded randomized search runs only if none of them validates.
"""
from __future__ import annotations

import random
from fractions import Fraction

from ..errors import ContractError, WitnessSearchError
from .points import RationalTuple, SignedPoint
from .relations import SymbolicRelation, composition_table, member
from .sampling import PointSampler, successor

FALLBACK_BUDGET = 64
_ZERO = Fraction(0)
_ONE = Fraction(1)


def family_of(kind: str) -> str:
    return "OddR" if kind == "odd" else "EvenT"


def _candidate_tuples(p: RationalTuple, q: RationalTuple):
    n = len(p)
    yield "endpoint", p
    yield "endpoint", q
    for k in range(1, n + 1):
        mid = (p[k - 1] + q[k - 1]) / 2
        tail = (_ZERO,) * (n - k)
        yield "midpoint", RationalTuple._raw(p[:k - 1] + (mid,) + tail)
        if p[:k - 1] != q[:k - 1]:
            yield "midpoint", RationalTuple._raw(q[:k - 1] + (mid,) + tail)
    for m in range(n, -1, -1):
        yield "offset", RationalTuple._raw(q[:m] + tuple(c - _ONE for c in q[m:]))
        yield "offset", RationalTuple._raw(p[:m] + tuple(c + _ONE for c in p[m:]))


def find_witness_traced(i: int, j: int, pair, n: int, kind: str = "odd", table=composition_table,
                        rng: random.Random | None = None, budget: int = FALLBACK_BUDGET):
    """Like :func:`find_witness` but also returns the name of the recipe that worked."""
    fam = family_of(kind)
    target = SymbolicRelation(fam, table(i, j, n, kind), n)
    if not member(target, pair):
        raise ContractError(f"{pair} is not in {target} = table({i}, {j})")
    left, right = SymbolicRelation(fam, i, n), SymbolicRelation(fam, j, n)
    x, y = pair

    def ok(z) -> bool:
        return member(left, (x, z)) and member(right, (z, y))

    if kind == "odd":
        p, q = x.point, y.point
        signs = (x.sign, -x.sign)
        for recipe, r in _candidate_tuples(p, q):
            for s in signs:
                z = SignedPoint(r, s)
                if ok(z):
                    return z, recipe
    else:
        for recipe, r in _candidate_tuples(x, y):
            if ok(r):
                return r, recipe

    sampler = PointSampler(n, rng or random.Random(0))
    for _ in range(budget):
        try:
            z = successor(left, x, sampler)
        except Exception:  # empty left factor: nothing to search
            break
        if ok(z):
            return z, "search"
    raise WitnessSearchError(f"no witness for {pair} in {left} ; {right} within budget {budget}")


def find_witness(i: int, j: int, pair, n: int, kind: str = "odd", table=composition_table,
                 rng: random.Random | None = None, budget: int = FALLBACK_BUDGET):
    """A point z with (x, z) in R_i and (z, y) in R_j, validated by ``member``.

    Raises ContractError if ``pair`` is not in R_{table(i,j)} and
    WitnessSearchError if every recipe and the bounded search fail.
    """
    return find_witness_traced(i, j, pair, n, kind, table, rng, budget)[0]
