"""Finite Sugihara chains built from their closed-form index rules.

Elements are ``a_i`` for ``i`` in ``-k..-1, 1..k`` (``n = 2k``) or
``-k..k`` (``n = 2k + 1``), stored in increasing index order.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import ValidationError
from .finite import FiniteAlgebra, find_embedding
from .report import VerificationReport


def chain_indices(n: int) -> list[int]:
    if n < 1:
        raise ValidationError("size", f"chain size must be >= 1, got {n}")
    k = n // 2
    if n % 2:
        return list(range(-k, k + 1))
    return [i for i in range(-k, k + 1) if i != 0]


def chain_mul(i: int, j: int) -> int:
    if abs(j) < abs(i):
        return i
    if abs(i) < abs(j):
        return j
    return min(i, j)


def chain_imp(i: int, j: int) -> int:
    return max(-i, j) if i <= j else min(-i, j)


@dataclass
class SugiharaChain(FiniteAlgebra):
    n: int = 0
    indices: tuple[int, ...] = ()
    trivial: bool = False

    def position(self, i: int) -> int:
        return self.indices.index(i)

    def element(self, i: int) -> str:
        return f"a{i}"

    @property
    def unit_index(self) -> int:
        return self.indices[self.consts["one"]]


def build_chain(n: int) -> SugiharaChain:
    """The ``n``-element Sugihara chain; ``n = 1`` gives the trivial algebra (flagged)."""
    idx = chain_indices(n)
    pos = {i: p for p, i in enumerate(idx)}
    m = len(idx)
    meet = np.empty((m, m), dtype=np.int32)
    join = np.empty((m, m), dtype=np.int32)
    mul = np.empty((m, m), dtype=np.int32)
    imp = np.empty((m, m), dtype=np.int32)
    for a, i in enumerate(idx):
        for b, j in enumerate(idx):
            meet[a, b] = pos[min(i, j)]
            join[a, b] = pos[max(i, j)]
            mul[a, b] = pos[chain_mul(i, j)]
            imp[a, b] = pos[chain_imp(i, j)]
    neg = np.array([pos[-i] for i in idx], dtype=np.int32)
    unit = 0 if n % 2 else 1
    return SugiharaChain(
        labels=[f"a{i}" for i in idx],
        ops={"meet": meet, "join": join, "mul": mul, "imp": imp, "neg": neg},
        consts={"one": pos[unit]},
        name=f"S{n}",
        n=n,
        indices=tuple(idx),
        trivial=(n == 1),
    )


def _pairwise(report, name, anchor, bad, labels):
    rec = report.check(name, anchor)
    rec.trials = bad.size
    for where in np.argwhere(bad)[:10]:
        rec.fail(args=[labels[v] for v in where])
    rec.failure_count = int(bad.sum())
    return rec


def verify_sugihara_axioms(alg: FiniteAlgebra) -> VerificationReport:
    """Exhaustive check of the Sugihara-monoid axioms on a finite table algebra."""
    report = VerificationReport(f"sugihara-axioms {alg.name}".strip())
    meet, join, mul, imp, neg = (alg.ops[o] for o in ("meet", "join", "mul", "imp", "neg"))
    one = alg.consts["one"]
    labels = alg.labels
    m = alg.size
    ar = np.arange(m)
    col = ar[:, None]

    _pairwise(report, "lattice", "∧, ∨ commutative, idempotent, absorptive",
              (meet != meet.T) | (join != join.T) | (meet[col, join] != col) | (join[col, meet] != col)
              | (meet[ar, ar] != ar)[:, None], labels)
    for name, result in (("meet-associativity", kernels.assoc_failures(meet)),
                         ("join-associativity", kernels.assoc_failures(join)),
                         ("distributivity", kernels.distrib_failures(meet, join)),
                         ("mul-associativity", kernels.assoc_failures(mul))):
        count, (a, b, c) = result
        rec = report.check(name)
        rec.trials = m ** 3
        if count:
            rec.fail(a=labels[a], b=labels[b], c=labels[c])
            rec.failure_count = count
    _pairwise(report, "commutative", "a · b = b · a", mul != mul.T, labels)
    _pairwise(report, "idempotent", "a · a = a", (mul[ar, ar] != ar)[:, None], labels)
    _pairwise(report, "unit", "1 · a = a = a · 1", ((mul[one, :] != ar) | (mul[:, one] != ar))[:, None], labels)

    leq = alg.leq
    count, (a, b, c) = kernels.residuation_failures(leq, mul, imp, imp.T)
    rec = report.check("residuation", "a · b ≤ c  iff  b ≤ a → c")
    rec.trials = m ** 3
    if count:
        rec.fail(a=labels[a], b=labels[b], c=labels[c])
        rec.failure_count = count
    _pairwise(report, "double-negation", "~~a = a", (neg[neg] != ar)[:, None], labels)
    _pairwise(report, "contraposition", "a → ~b = b → ~a", imp[col, neg[None, :]] != imp[ar[None, :], neg[:, None]],
              labels)
    return report


def direct_reduct_check(alg, elements=None) -> VerificationReport:
    """Check ``a => b = ~(-b . a)`` on a concrete algebra and, when the
    (sub)algebra is commutative and idempotent, that its direct reduct is a
    Sugihara monoid (and, for a chain, isomorphic to the abstract chain).

    ``elements`` optionally restricts to a closed subset (indices or relations).
    """
    report = VerificationReport("direct-reduct")
    m = alg.size
    sel = np.arange(m) if elements is None else np.array(sorted(alg.index_of(e) if not isinstance(e, (int, np.integer))
                                                                else int(e) for e in elements))
    labels = alg.labels
    concrete = alg.imp[np.ix_(sel, sel)]
    reduct = alg.reduct_imp[np.ix_(sel, sel)]
    _pairwise(report, "arrow-identity", "R => S = ~(-S ; R)", concrete != reduct,
              [labels[i] for i in sel])

    view = alg.reduct()
    pos = {int(v): p for p, v in enumerate(sel)}
    closed = report.check("closed-subset", "selection closed under ∧ ∨ · → ~ and contains 1")
    closed.trials = 1
    sub_ops = {}
    for op in ("meet", "join", "mul", "imp"):
        t = view.ops[op][np.ix_(sel, sel)]
        if not all(int(v) in pos for v in t.ravel()):
            closed.fail(op=op)
        sub_ops[op] = t
    t = view.ops["neg"][sel]
    if not all(int(v) in pos for v in t):
        closed.fail(op="neg")
    sub_ops["neg"] = t
    if alg.identity not in pos:
        closed.fail(op="one")
    if not closed.passed:
        return report
    remap = np.vectorize(lambda v: pos[int(v)], otypes=[np.int32])
    sub = FiniteAlgebra([labels[i] for i in sel], {k: remap(v) for k, v in sub_ops.items()},
                        {"one": pos[alg.identity]}, name="reduct")
    mul = sub.ops["mul"]
    ar = np.arange(sub.size)
    commutative = bool((mul == mul.T).all())
    idempotent = bool((mul[ar, ar] == ar).all())
    # not a failure when false: the reduct just is not a Sugihara monoid then
    report.info["commutative_idempotent"] = commutative and idempotent
    if not (commutative and idempotent):
        report.info["sugihara"] = False
        return report
    sug = verify_sugihara_axioms(sub)
    report.extend(sug, prefix="sugihara")
    report.info["sugihara"] = sug.passed
    leq = sub.leq
    if bool((leq | leq.T).all()):
        rec = report.check("chain-isomorphism", "linearly ordered reduct is isomorphic to the abstract chain")
        hom = find_embedding(build_chain(sub.size), sub)
        rec.tick(hom is not None, size=sub.size)
        if hom is not None:
            report.info["chain_isomorphism"] = hom.image_labels()
    return report
