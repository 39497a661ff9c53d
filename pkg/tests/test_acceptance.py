"""Acceptance criteria, one test per criterion.

Each test asserts its runtime limit as well as its result; a summary line per
criterion is printed at the end of the session (see ``conftest.py``).
"""
import time
from itertools import permutations

import numpy as np

from weakrel.algebra import (build_algebra, check_small_contexts, product_context,
                             verify_infl_axioms, verify_product_iso)
from weakrel.chains import build_chain, direct_reduct_check, verify_sugihara_axioms
from weakrel.context import all_contexts, make_context
from weakrel.finite import Homomorphism, find_embedding, verify_homomorphism
from weakrel.rational import composition_table, verify_composition, verify_embedding, verify_structure
from weakrel.rational import verify as rverify
from weakrel.rational.relations import member
from weakrel.relcore import converse_mask

TRIALS = 10_000


class Clock:
    def __init__(self, limit):
        self.limit = limit
        self.start = time.perf_counter()

    @property
    def elapsed(self):
        return time.perf_counter() - self.start

    def check(self):
        assert self.elapsed < self.limit, f"took {self.elapsed:.1f}s, limit {self.limit}s"


def test_criterion_1_s3_example(record_property):
    clock = Clock(1.0)
    ctx = make_context(["x", "y"], [], "full", {"x": "y", "y": "x"})
    alg = build_algebra(ctx)
    assert alg.size == 16
    assert verify_infl_axioms(alg).passed
    # Boolean: every element has a lattice complement
    bottom, top = int(np.argmin([bin(m).count("1") for m in alg.masks])), alg.index[ctx.e_mask]
    for a in range(alg.size):
        assert any(alg.meet[a, b] == bottom and alg.join[a, b] == top for b in range(alg.size))
    three = [alg.index[0], alg.identity, alg.index[ctx.e_mask]]
    for name in ("meet", "join", "mul", "imp", "ldiv", "rdiv", "reduct_imp"):
        tab = getattr(alg, name)
        assert {int(tab[a, b]) for a in three for b in three} <= set(three), name
    assert {int(alg.neg[a]) for a in three} <= set(three)
    h = Homomorphism(build_chain(3), alg, tuple(three))
    assert verify_homomorphism(h).passed
    assert find_embedding(build_chain(3), alg).mapping == tuple(three)
    assert direct_reduct_check(alg, [ctx.rel(m) for m in (0, ctx.leq_mask, ctx.e_mask)]).passed
    record_property("elapsed", clock.elapsed)
    clock.check()


def test_criterion_2_exhaustive_small_contexts(record_property):
    clock = Clock(120.0)
    seen, exceptions = 0, []
    for ctx, report, cyclic, alpha_id in check_small_contexts(3):
        seen += 1
        if not report.passed or cyclic != alpha_id:
            exceptions.append((ctx.labels, [c.name for c in report.failed_checks], cyclic, alpha_id))
    assert seen == 1 + 5 + 43
    assert exceptions == []
    record_property("elapsed", clock.elapsed)
    clock.check()


def test_criterion_3_composition(record_property):
    clock = Clock(300.0)
    for n in (1, 2, 3):
        start = time.perf_counter()
        rep = verify_composition(n, TRIALS, seed=n)
        assert rep.passed, [c.to_dict() for c in rep.failed_checks][:3]
        assert all(c.trials in (0, TRIALS) for c in rep.checks)
        assert "search" not in rep.info["witness_recipes"]
        assert time.perf_counter() - start < 300.0
    record_property("elapsed", clock.elapsed)


def test_criterion_4_structure(record_property):
    clock = Clock(180.0)
    for n in (1, 2, 3):
        rep = verify_structure(n, TRIALS, seed=n)
        assert rep.passed, rep.to_text()
        assert {c.name for c in rep.checks} == {"order-is-zero", "level-transitivity", "upset",
                                                "negations-agree", "chain", "transitivity"}
        assert all(c.trials == TRIALS for c in rep.checks)
    record_property("elapsed", clock.elapsed)
    clock.check()


def test_criterion_5_embedding(record_property):
    clock = Clock(180.0)
    runs = [("odd", 1), ("odd", 2), ("odd", 3), ("even", 1), ("even", 2)]
    chains = []
    for kind, n in runs:
        rep = verify_embedding(kind, n, TRIALS, seed=n)
        assert rep.passed, rep.to_text()
        if kind == "odd":
            assert rep["delta-bridge"].trials > 0
        chains.append(rep.info["chain"])
    assert chains == ["S5", "S7", "S9", "S4", "S6"]
    record_property("elapsed", clock.elapsed)
    clock.check()


def test_criterion_6_products(record_property):
    clock = Clock(60.0)
    algs = {k: [(c, build_algebra(c)) for c in all_contexts(k)] for k in (1, 2, 3)}
    count = 0
    for a, b in [(1, 1), (1, 2), (2, 1), (1, 3), (3, 1), (2, 2)]:
        for c1, A in algs[a]:
            for c2, B in algs[b]:
                joint = build_algebra(product_context([c1, c2]))
                rep = verify_product_iso(joint, [A, B])
                assert rep.passed, (c1.labels, c2.labels, rep.to_text())
                count += 1
    assert count == 1 + 5 + 5 + 43 + 43 + 25
    record_property("elapsed", clock.elapsed)
    clock.check()


def test_criterion_7_chains(record_property):
    clock = Clock(10.0)
    for n in range(2, 13):
        c = build_chain(n)
        assert verify_sugihara_axioms(c).passed
        fixed = int(c.ops["neg"][c.consts["one"]]) == c.consts["one"]
        if n % 2:
            assert fixed
        else:
            assert not fixed
    record_property("elapsed", clock.elapsed)
    clock.check()


# -- criterion 8 --------------------------------------------------------------------

def _oracle_first(source, target):
    """Lexicographically first injective map preserving every operation, by brute force."""
    tgt = target.signature_view(source.signature)
    m = source.size
    for h in permutations(range(tgt.size), m):
        if any(h[source.consts[c]] != tgt.consts[c] for c in source.consts):
            continue
        ok = True
        for name, s in source.ops.items():
            t = tgt.ops[name]
            if s.ndim == 1:
                ok = all(int(t[h[a]]) == h[int(s[a])] for a in range(m))
            else:
                ok = all(int(t[h[a], h[b]]) == h[int(s[a, b])] for a in range(m) for b in range(m))
            if not ok:
                break
        if ok:
            return h
    return None


def _mutant_tilde(rel, pair):
    x, y = pair
    return not member(rel, (y, x))  # converse complement without the automorphism


def test_criterion_8_oracle_and_faults(record_property, monkeypatch):
    clock = Clock(120.0)
    # oracle equivalence
    compared = 0
    targets = [build_algebra(c) for k in (1, 2) for c in all_contexts(k)]
    for m in (1, 2, 3):
        src = build_chain(m)
        for alg in targets:
            want = _oracle_first(src, alg)
            got = find_embedding(src, alg)
            assert (got.mapping if got is not None else None) == want
            compared += 1
    assert compared == 3 * 6

    # fault injection, one per suite
    c5 = build_chain(5)
    mul = c5.ops["mul"].copy()
    mul[1, 3] = mul[3, 1] = 4
    assert not verify_sugihara_axioms(c5.with_table("mul", mul)).passed
    neg = c5.ops["neg"].copy()
    neg[0], neg[4] = neg[1], neg[3]
    assert not verify_sugihara_axioms(c5.with_table("neg", neg)).passed

    s3ctx = make_context(["x", "y"], [], "full", {"x": "y", "y": "x"})
    s3 = build_algebra(s3ctx)
    bad_neg = [converse_mask(s3ctx.e_mask & ~mk, s3ctx.n) for mk in s3.masks]
    assert not verify_infl_axioms(s3.with_table("neg", s3.lookup(np.array(bad_neg, dtype=np.uint64)))).passed
    chain2 = build_algebra(make_context(["x", "y"], [("x", "y")]))
    bad_mul = chain2.mul.copy()
    bad_mul[1, 2], bad_mul[2, 1] = bad_mul[2, 1], bad_mul[1, 2]
    assert not verify_infl_axioms(chain2.with_table("mul", bad_mul)).passed

    three = (s3.index[0], s3.identity, s3.index[s3ctx.e_mask])
    assert not verify_homomorphism(Homomorphism(build_chain(3), s3, (three[0], three[2], three[1]))).passed
    corrupt = s3.with_table("neg", s3.neg[::-1].copy())
    assert not direct_reduct_check(corrupt, [s3ctx.rel(m) for m in (0, s3ctx.leq_mask, s3ctx.e_mask)]).passed

    singleton = make_context(["x"])
    joint = build_algebra(product_context([singleton, s3ctx]))
    assert not verify_product_iso(joint.with_table("neg", joint.neg[::-1].copy()),
                                  [build_algebra(singleton), s3]).passed

    def diag_max(i, j, n, kind="odd"):
        return max(i, j) if abs(i) == abs(j) else composition_table(i, j, n, kind)

    assert not verify_composition(1, 500, seed=0, table=diag_max).passed
    assert not verify_composition(1, 500, seed=0, table=diag_max, kind="even").passed

    monkeypatch.setattr(rverify, "tilde_member", _mutant_tilde)
    assert not verify_structure(1, 500, seed=0)["negations-agree"].passed
    assert not verify_embedding("odd", 1, 500, seed=0)["neg"].passed
    monkeypatch.undo()

    monkeypatch.setattr(rverify, "composition_table", diag_max)
    assert not verify_embedding("odd", 1, 200, seed=0)["mul"].passed
    assert not verify_embedding("even", 1, 200, seed=0)["mul"].passed
    monkeypatch.undo()
    record_property("elapsed", clock.elapsed)
    clock.check()
