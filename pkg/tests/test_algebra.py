import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from weakrel.algebra import (arrow, build_algebra, generate_subalgebra, hasse_dot, is_cyclic, negations,
                             product_context, residuals, verify_infl_axioms, verify_product_iso)
from weakrel.context import all_contexts, zero_relation
from weakrel.errors import ResourceError, StructuralError
from weakrel.relcore import compose_masks, converse_mask


def test_build_examples(s3ctx, singleton, chain2ctx):
    s3 = build_algebra(s3ctx)
    assert s3.size == 16 and s3.identity == s3.zero
    assert s3.element(s3.identity) == s3ctx.leq_rel
    one = build_algebra(singleton)
    assert one.size == 2 and [one.element(i).bits for i in range(2)] == [0, 1]
    assert build_algebra(chain2ctx).size == 6


def test_s3_is_boolean(s3ctx):
    alg = build_algebra(s3ctx)
    # 16 upsets of a 4-element antichain of pairs: every subset
    assert sorted(alg.masks) == list(range(16))


def test_build_cap(s3ctx):
    with pytest.raises(ResourceError):
        build_algebra(s3ctx, cap=10)


def test_negation_examples(s3ctx, chain2ctx):
    tilde, minus = negations(s3ctx.leq_rel, s3ctx)
    assert tilde == s3ctx.leq_rel
    top = s3ctx.rel(s3ctx.e_mask)
    assert negations(top, s3ctx)[0].bits == 0
    tilde, _ = negations(chain2ctx.leq_rel, chain2ctx)
    assert tilde.labelled_pairs() == [("x", "y")]


def test_negations_reject_non_upset(chain2ctx):
    with pytest.raises(StructuralError):
        negations(chain2ctx.rel(1 << 2), chain2ctx)


def test_residuation_exhaustive_s3(s3ctx):
    alg = build_algebra(s3ctx)
    els = [alg.element(i) for i in range(alg.size)]
    for r in els:
        for s in els:
            rs = r @ s
            for t in els:
                ldiv, rdiv = residuals(r, t, s3ctx)
                _, t_over_s = residuals(t, s, s3ctx)
                a = rs <= t
                assert a == (s <= ldiv) == (r <= t_over_s)


def test_arrow_examples(s3ctx):
    alg = build_algebra(s3ctx)
    top, empty = s3ctx.rel(s3ctx.e_mask), s3ctx.rel(0)
    for i in range(alg.size):
        s = alg.element(i)
        assert arrow(s3ctx.leq_rel, s, s3ctx) == s
        assert arrow(empty, s, s3ctx) == top
    assert arrow(top, empty, s3ctx) == empty


@pytest.mark.parametrize("size", [1, 2])
def test_infl_axioms_small(size):
    for ctx in all_contexts(size):
        alg = build_algebra(ctx)
        rep = verify_infl_axioms(alg)
        assert rep.passed, rep.to_text()
        cyclic, witness = is_cyclic(alg)
        assert cyclic == ctx.is_alpha_identity
        assert (witness is None) == cyclic


def test_cyclic_examples(s3ctx, chain2ctx):
    alg = build_algebra(s3ctx)
    cyclic, w = is_cyclic(alg)
    assert not cyclic and alg.neg[w] != alg.mneg[w]
    assert is_cyclic(build_algebra(chain2ctx)) == (True, None)


def mutant_negation(alg):
    """~R replaced by R^{c~} without the automorphism."""
    ctx = alg.context
    masks = [converse_mask(ctx.e_mask & ~m, ctx.n) for m in alg.masks]
    return alg.with_table("neg", alg.lookup(np.array(masks, dtype=np.uint64)))


def test_mutant_negation_detected(s3ctx):
    alg = build_algebra(s3ctx)
    rep = verify_infl_axioms(mutant_negation(alg))
    assert not rep["involution"].passed
    assert rep["involution"].failures
    assert not rep["neg-is-residual"].passed


def test_mutant_negation_harmless_when_alpha_is_identity(chain2ctx):
    alg = build_algebra(chain2ctx)
    assert verify_infl_axioms(mutant_negation(alg)).passed


def test_mutant_product_detected(chain2ctx):
    alg = build_algebra(chain2ctx)
    mul = alg.mul.copy()
    mul[1, 2], mul[2, 1] = mul[2, 1], mul[1, 2]
    rep = verify_infl_axioms(alg.with_table("mul", mul))
    assert not rep.passed


def test_subalgebra_examples(s3ctx, chain2ctx):
    gens = [s3ctx.rel(0), s3ctx.leq_rel, s3ctx.rel(s3ctx.e_mask)]
    sub = generate_subalgebra(s3ctx, gens)
    assert [r.bits for r in sub] == [0, s3ctx.leq_mask, s3ctx.e_mask]
    unit_only = generate_subalgebra(chain2ctx, [])
    assert chain2ctx.leq_rel in unit_only


def brute_closure(alg, seeds):
    """Fixpoint over the full operation tables of the algebra."""
    cur = set(seeds) | {alg.identity}
    while True:
        new = set(cur)
        for a in cur:
            new.add(int(alg.neg[a]))
            new.add(int(alg.mneg[a]))
            for b in cur:
                for t in (alg.meet, alg.join, alg.mul, alg.imp):
                    new.add(int(t[a, b]))
        if new == cur:
            return cur
        cur = new


@pytest.mark.parametrize("size", [1, 2])
def test_subalgebra_matches_table_closure(size):
    rng = random.Random(size)
    for ctx in all_contexts(size):
        alg = build_algebra(ctx)
        for _ in range(4):
            seeds = rng.sample(range(alg.size), k=min(2, alg.size))
            got = {alg.index_of(r) for r in generate_subalgebra(ctx, [alg.element(i) for i in seeds])}
            assert got == brute_closure(alg, seeds)


def test_subalgebra_rejects_non_upset(chain2ctx):
    with pytest.raises(StructuralError):
        generate_subalgebra(chain2ctx, [chain2ctx.rel(1 << 2)])


def test_product_examples(singleton, s3ctx):
    joint = product_context([singleton, singleton])
    jalg = build_algebra(joint)
    assert jalg.size == 4
    assert verify_product_iso(jalg, [build_algebra(singleton)] * 2).passed
    solo = build_algebra(product_context([s3ctx]))
    assert verify_product_iso(solo, [build_algebra(s3ctx)]).passed
    big = build_algebra(product_context([s3ctx, singleton]))
    assert big.size == 32
    assert verify_product_iso(big, [build_algebra(s3ctx), build_algebra(singleton)]).passed
    assert joint.labels == ("0.x", "1.x")


def test_product_iso_detects_wrong_factor(singleton, chain2ctx):
    joint = build_algebra(product_context([singleton, chain2ctx]))
    swapped = verify_product_iso(joint, [build_algebra(chain2ctx), build_algebra(singleton)])
    assert not swapped.passed
    with pytest.raises(StructuralError):
        verify_product_iso(joint, [build_algebra(chain2ctx)])
    bad = joint.with_table("mul", np.zeros_like(joint.mul))
    assert not verify_product_iso(bad, [build_algebra(singleton), build_algebra(chain2ctx)]).passed


def test_hasse_dot(s3ctx):
    dot = hasse_dot(build_algebra(s3ctx))
    assert dot.count("[label=") == 16
    # Boolean lattice on 4 atoms: 4 * 2^3 cover edges
    assert dot.count("->") == 32


@settings(max_examples=25, deadline=None)
@given(st.integers(min_value=0, max_value=10**6))
def test_reduct_arrow_identity_random_contexts(seed):
    rng = random.Random(seed)
    ctxs = list(all_contexts(rng.choice([2, 3])))
    ctx = rng.choice(ctxs)
    alg = build_algebra(ctx)
    assert (alg.imp == alg.reduct_imp).all()
    a, b = rng.randrange(alg.size), rng.randrange(alg.size)
    assert arrow(alg.element(a), alg.element(b), ctx).bits == alg.masks[alg.imp[a, b]]


def test_zero_forms_agree_everywhere():
    for k in (1, 2, 3):
        for ctx in all_contexts(k):
            z = zero_relation(ctx)
            left = compose_masks(ctx.alpha_mask, converse_mask(ctx.e_mask & ~ctx.leq_mask, ctx.n), ctx.n)
            assert z.bits == left
