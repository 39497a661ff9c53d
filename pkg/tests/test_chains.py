import pytest
from hypothesis import given
from hypothesis import strategies as st

from weakrel.algebra import build_algebra
from weakrel.chains import build_chain, chain_imp, chain_indices, chain_mul, direct_reduct_check, verify_sugihara_axioms
from weakrel.context import all_contexts
from weakrel.errors import ValidationError


def op(c, name, i, j):
    return c.indices[c.ops[name][c.position(i), c.position(j)]]


def test_index_sets():
    assert chain_indices(4) == [-2, -1, 1, 2]
    assert chain_indices(5) == [-2, -1, 0, 1, 2]
    assert chain_indices(1) == [0]
    with pytest.raises(ValidationError):
        chain_indices(0)


def test_table_examples():
    s4, s5 = build_chain(4), build_chain(5)
    assert op(s4, "mul", -1, 2) == 2
    assert op(s5, "mul", 2, -2) == -2
    assert op(s4, "imp", 1, 2) == 2


def test_units():
    assert build_chain(2).unit_index == 1
    assert build_chain(7).unit_index == 0
    assert build_chain(1).trivial and not build_chain(3).trivial


@pytest.mark.parametrize("n", range(1, 13))
def test_axioms_pass(n):
    c = build_chain(n)
    rep = verify_sugihara_axioms(c)
    assert rep.passed, rep.to_text()
    neg, one = c.ops["neg"], c.consts["one"]
    assert (neg[one] == one) == (n % 2 == 1)


def test_mutated_mul_fails_residuation():
    c = build_chain(5)
    mul = c.ops["mul"].copy()
    mul[1, 3] = mul[3, 1] = 4  # a-1 . a1 should be a-1
    rep = verify_sugihara_axioms(c.with_table("mul", mul))
    assert not rep["residuation"].passed
    assert rep["residuation"].failures


def test_mutated_neg_detected():
    c = build_chain(4)
    neg = c.ops["neg"].copy()
    neg[0], neg[1] = neg[1], neg[0]
    rep = verify_sugihara_axioms(c.with_table("neg", neg))
    assert not rep["double-negation"].passed or not rep["contraposition"].passed


@given(st.integers(-6, 6), st.integers(-6, 6))
def test_arrow_closed_form(i, j):
    expected = max(-i, j) if i <= j else min(-i, j)
    assert chain_imp(i, j) == expected
    assert chain_mul(i, j) == chain_mul(j, i)


@given(st.integers(2, 12))
def test_order_and_negation(n):
    c = build_chain(n)
    idx = c.indices
    leq = c.leq
    for a, i in enumerate(idx):
        for b, j in enumerate(idx):
            assert leq[a, b] == (i <= j)
        assert idx[c.ops["neg"][a]] == -i


def test_direct_reduct_s3(s3ctx):
    alg = build_algebra(s3ctx)
    rep = direct_reduct_check(alg, [s3ctx.rel(0), s3ctx.leq_rel, s3ctx.rel(s3ctx.e_mask)])
    assert rep.passed and rep.info["sugihara"]
    assert rep["chain-isomorphism"].passed
    assert rep.info["chain_isomorphism"] == {"a-1": "0", "a0": "9", "a1": "f"}


def test_direct_reduct_singleton(singleton):
    rep = direct_reduct_check(build_algebra(singleton))
    assert rep.passed and rep.info["sugihara"]
    assert rep.info["chain_isomorphism"] == {"a-1": "0", "a1": "1"}


def test_direct_reduct_noncommutative_still_has_arrow_identity():
    seen_noncomm = 0
    for k in (2, 3):
        for ctx in all_contexts(k):
            alg = build_algebra(ctx)
            rep = direct_reduct_check(alg)
            assert rep["arrow-identity"].passed
            if not rep.info["commutative_idempotent"]:
                seen_noncomm += 1
    assert seen_noncomm > 0


def test_direct_reduct_rejects_unclosed_subset(chain2ctx):
    alg = build_algebra(chain2ctx)
    rep = direct_reduct_check(alg, [chain2ctx.leq_rel])
    assert not rep["closed-subset"].passed


def test_direct_reduct_detects_corrupted_arrow(s3ctx):
    alg = build_algebra(s3ctx)
    imp = alg.imp.copy()
    imp[0, 0] = 0
    rep = direct_reduct_check(alg.with_table("imp", imp))
    assert not rep["arrow-identity"].passed
