import random
from collections import Counter
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from weakrel.errors import ContractError, EmptyRelationError, ValidationError, WitnessSearchError
from weakrel.rational import (Delta, DeltaAlpha, EvenT, OddR, RationalTuple, SamplingStrategy, SignedPoint,
                              composition_table, even_indices, find_witness, generate_member, lex_level,
                              member, member_by_profile, odd_indices, parse_family, parse_mix, parse_pair,
                              sample_pairs, verify_composition, verify_embedding, verify_structure)
from weakrel.rational.verify import minus_member, tilde_member, zero_member, zero_member_flipped
from weakrel.rational.witness import find_witness_traced


def P(*c):
    return RationalTuple(c)


def S(sign, *c):
    return SignedPoint(RationalTuple(c), sign)


rationals = st.fractions(min_value=-5, max_value=5, max_denominator=4)


def tuples(n):
    return st.lists(rationals, min_size=n, max_size=n).map(RationalTuple)


# -- points ------------------------------------------------------------------------

def test_canonical_form():
    p = P("2/4", -3, Fraction(6, -4))
    assert p == (Fraction(1, 2), Fraction(-3), Fraction(-3, 2))
    assert hash(p) == hash(P(Fraction(1, 2), -3, "-3/2"))
    with pytest.raises(ValidationError):
        P("1/0")
    with pytest.raises(ValidationError):
        SignedPoint.make((1,), 0)


def test_lex_level_examples():
    assert lex_level(P(0, 0), P(0, 1)) == 2
    assert lex_level(P(3, 1), P(3, 1)) == 0
    assert lex_level(P(1, 0), P(0, 5)) == -1
    with pytest.raises(ValidationError):
        lex_level(P(1), P(1, 2))


@given(st.integers(1, 4).flatmap(lambda n: st.tuples(tuples(n), tuples(n))))
def test_levels_partition(pq):
    p, q = pq
    a, b = lex_level(p, q), lex_level(q, p)
    assert a == -b
    assert (a == 0) == (p == q)
    assert (a > 0) == (p < q)  # tuple order is the lexicographic order


def test_parse_pair():
    x, y = parse_pair("(0,1/2)+ , (1,0)-")
    assert x == S(1, 0, Fraction(1, 2)) and y == S(-1, 1, 0)
    assert parse_pair("(1)(2)") == (P(1), P(2))
    for bad in ["(0.5)+ , (1)-", "(1)+", "(1)+ , (1,2)-", "(1)+ , (2)", "(1/0)+ , (1)+", "junk"]:
        with pytest.raises(ValidationError):
            parse_pair(bad)


def test_parse_family():
    assert parse_family("OddR:-1", 2) == OddR(-1, 2)
    for bad in ["OddR", "Foo:1", "OddR:x", "OddR:9", "EvenT:0"]:
        with pytest.raises(ValidationError):
            parse_family(bad, 2)


# -- membership ------------------------------------------------------------------

def test_member_examples():
    assert member(OddR(-1, 1), (S(1, 0), S(-1, 1)))
    assert not member(OddR(-2, 2), (S(1, 0, 0), S(1, 0, 1)))
    assert member(OddR(1, 1), (S(1, 0), S(-1, 0)))
    assert not member(OddR(0, 1), (S(1, 0), S(-1, 0)))
    assert member(EvenT(1, 1), (P(0), P(0)))
    assert not member(EvenT(-1, 1), (P(0), P(0)))


def test_extremes():
    for n in (1, 2, 3):
        for pair in sample_pairs(n, count=20, seed=n, signed=True):
            assert not member(OddR(-(n + 1), n), pair)
            assert member(OddR(n + 1, n), pair)
        for pair in sample_pairs(n, count=20, seed=n):
            assert not member(EvenT(-(n + 1), n), pair)
            assert member(EvenT(n + 1, n), pair)


def test_member_rejects_malformed():
    with pytest.raises(ValidationError):
        member(OddR(0, 1), (P(0), P(1)))
    with pytest.raises(ValidationError):
        member(EvenT(1, 2), (P(0), P(1)))
    with pytest.raises(ValidationError):
        member(OddR(0, 1), (S(1, 0),))


def test_positive_odd_index_only_consults_mirror(monkeypatch):
    """Membership in OddR(i), i > 0, is decided by the mirror family alone."""
    import weakrel.rational.relations as rel
    calls = []
    real = rel._odd

    def spy(i, n, x, y):
        calls.append(i)
        return real(i, n, x, y)

    monkeypatch.setattr(rel, "_odd", spy)
    member(OddR(2, 2), (S(1, 0, 0), S(1, 1, 0)))
    assert calls == [2, -2]


@settings(max_examples=300)
@given(st.integers(1, 3).flatmap(lambda n: st.tuples(st.just(n), tuples(n), tuples(n),
                                                     st.sampled_from((1, -1)), st.sampled_from((1, -1)))))
def test_profile_agrees_with_definition(args):
    n, p, q, b, d = args
    pair = (SignedPoint(p, b), SignedPoint(q, d))
    for i in odd_indices(n):
        assert member(OddR(i, n), pair) == member_by_profile(OddR(i, n), pair)
    for i in even_indices(n):
        assert member(EvenT(i, n), (p, q)) == member_by_profile(EvenT(i, n), (p, q))
        assert member(Delta(i, n), pair) == member_by_profile(Delta(i, n), pair)
        assert member(DeltaAlpha(i, n), pair) == member_by_profile(DeltaAlpha(i, n), pair)


@settings(max_examples=200)
@given(st.integers(1, 3).flatmap(lambda n: st.tuples(st.just(n), tuples(n), tuples(n),
                                                     st.sampled_from((1, -1)), st.sampled_from((1, -1)))))
def test_chain_zero_and_negations(args):
    n, p, q, b, d = args
    pair = (SignedPoint(p, b), SignedPoint(q, d))
    flags = [member(OddR(i, n), pair) for i in odd_indices(n)]
    assert flags == sorted(flags)
    assert member(OddR(0, n), pair) == zero_member(pair) == zero_member_flipped(pair)
    for i in odd_indices(n):
        R = OddR(i, n)
        assert tilde_member(R, pair) == minus_member(R, pair) == member(OddR(-i, n), pair)


# -- sampling and generators ---------------------------------------------------

def test_shared_prefix_strategy():
    for p, q in sample_pairs(2, SamplingStrategy.shared_prefix(1), count=200, seed=3):
        assert p[0] == q[0]


def test_sampling_is_deterministic():
    a = sample_pairs(3, count=100, seed=9, signed=True)
    b = sample_pairs(3, count=100, seed=9, signed=True)
    assert a == b
    assert a != sample_pairs(3, count=100, seed=10, signed=True)
    assert len(a) == 400
    with pytest.raises(ValidationError):
        sample_pairs(1, count=0)


def test_default_mixture_covers_buckets():
    # thresholds: with the 40/30/20/10 mix at n=1, about 20% of pairs are identical
    # and each strict direction gets about 40%; 50 per bucket is a loose floor
    buckets = Counter()
    for p, q in sample_pairs(1, count=1000, seed=0):
        lvl = lex_level(p, q)
        buckets["L1" if lvl == 1 else "equal" if lvl == 0 else "reverse"] += 1
    assert buckets["L1"] > 50 and buckets["equal"] > 50 and buckets["reverse"] > 50


def test_mixture_hits_deep_levels():
    levels = Counter(lex_level(p, q) for p, q in sample_pairs(3, count=2000, seed=1))
    for k in (1, 2, 3):
        assert levels[k] > 0 and levels[-k] > 0


def test_parse_mix():
    s = parse_mix("independent=1,identical=1")
    assert dict(s.mix) == {"independent": 1.0, "identical": 1.0}
    assert parse_mix("shared-prefix:2").prefix == 2
    for bad in ["bogus=1", "independent=x", "independent=0", "nope"]:
        with pytest.raises(ValidationError):
            parse_mix(bad)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_generate_member_all_families(n):
    for i in odd_indices(n):
        if i == -(n + 1):
            with pytest.raises(EmptyRelationError):
                generate_member(OddR(i, n), seed=0)
            continue
        for seed in range(30):
            assert member(OddR(i, n), generate_member(OddR(i, n), seed=seed))
    for i in even_indices(n):
        fam = [EvenT(i, n), Delta(i, n), DeltaAlpha(i, n)]
        for rel in fam:
            if i == -(n + 1):
                with pytest.raises(EmptyRelationError):
                    generate_member(rel, seed=0)
                continue
            for seed in range(30):
                assert member(rel, generate_member(rel, seed=seed))


def test_generate_member_example():
    x, y = generate_member(OddR(-1, 1), seed=0)
    assert x.point[0] < y.point[0]


# -- composition -------------------------------------------------------------------

def test_table_examples():
    assert composition_table(2, -1, 1) == 2
    assert composition_table(2, -2, 1) == -2
    for k in odd_indices(2):
        assert composition_table(k, 0, 2) == k == composition_table(0, k, 2)
    assert composition_table(1, -1, 1, "even") == -1
    with pytest.raises(ValidationError):
        composition_table(0, 1, 1, "even")
    with pytest.raises(ValidationError):
        composition_table(5, 1, 1)


def test_witness_examples():
    pair = (S(1, 0), S(1, 1))
    z = find_witness(-1, -1, pair, 1)
    assert z.point == P(Fraction(1, 2))
    assert member(OddR(-1, 1), (pair[0], z)) and member(OddR(-1, 1), (z, pair[1]))
    x, y = S(1, 3), S(-1, 5)
    assert find_witness(0, 1, (x, y), 1) == x
    assert find_witness(1, 0, (x, y), 1) == x or member(OddR(0, 1), (find_witness(1, 0, (x, y), 1), y))


def test_witness_offset_recipe():
    # p = q: the witness has to step below q in the last coordinate
    x = S(1, 3)
    z, recipe = find_witness_traced(2, -1, (x, x.flip()), 1)
    assert recipe == "offset" and z.point == P(2)
    x = S(-1, 1, 1)
    z, recipe = find_witness_traced(2, -1, (x, x), 2)
    assert member(OddR(2, 2), (x, z)) and member(OddR(-1, 2), (z, x))


def test_witness_contract():
    x = S(1, 0)
    with pytest.raises(ContractError):
        find_witness(1, -1, (x, x), 1)  # table(1,-1) = -1 and (x, x) is not in R_-1


def test_witness_search_exhaustion():
    def wrong(i, j, n, kind="odd"):
        return 1

    x = S(1, 0)
    with pytest.raises(WitnessSearchError):
        find_witness(-1, -1, (x, x.flip()), 1, table=wrong)


@pytest.mark.parametrize("n", [1, 2])
@pytest.mark.parametrize("kind", ["odd", "even"])
def test_verify_composition_small(n, kind):
    rep = verify_composition(n, 150, seed=4, kind=kind)
    assert rep.passed, [c.to_dict() for c in rep.failed_checks][:3]
    size = 2 * n + 3 if kind == "odd" else 2 * n + 2
    assert len(rep.checks) == 2 * size * size
    assert "search" not in rep.info["witness_recipes"]


def test_vacuous_cells():
    rep = verify_composition(1, 20, seed=0)
    for c in rep.checks:
        if c.cell[0] == -2 and c.name.startswith("soundness"):
            assert c.trials == 0
        if composition_table(*c.cell, 1) == -2 and c.name.startswith("completeness"):
            assert c.trials == 0


def test_mutant_table_detected():
    def mutant(i, j, n, kind="odd"):
        return max(i, j) if abs(i) == abs(j) else composition_table(i, j, n, kind)

    rep = verify_composition(1, 500, seed=0, table=mutant)
    assert not rep.passed
    bad = rep.failed_checks[0]
    assert bad.failures[0]["got"] == "no witness"

    def off_by_one(i, j, n, kind="odd"):
        return i if (i, j) == (-1, -2) else composition_table(i, j, n, kind)

    rep = verify_composition(1, 500, seed=0, table=off_by_one)
    assert not rep["soundness[-1,-2]"].passed or not rep["completeness[-1,-2]"].passed


def test_structure_and_embedding_small():
    for n in (1, 2):
        assert verify_structure(n, 300, seed=2).passed
        assert verify_embedding("odd", n, 300, seed=2).passed
        assert verify_embedding("even", n, 300, seed=2).passed
    rep = verify_embedding("odd", 0)
    assert rep.passed and rep.info["chain_isomorphism"] == {"a-1": "0", "a0": "9", "a1": "f"}


def test_structure_reflexive_zero():
    rng = random.Random(0)
    for _ in range(200):
        x = SignedPoint(RationalTuple(rng.randint(-5, 5) for _ in range(2)), rng.choice((1, -1)))
        assert zero_member((x, x)) and member(OddR(0, 2), (x, x))


def test_reports_are_reproducible():
    a = verify_composition(1, 50, seed=11).to_json()
    b = verify_composition(1, 50, seed=11).to_json()
    assert a == b
