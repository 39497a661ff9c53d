"""The finite distributive InFL-algebra of upsets of ``<E, pair order>``.

Elements are the upsets (weakening relations inside ``E``), with
intersection, union, composition, unit ``<=``, and the two negations

    ~R = R^{c~} ; alpha        -R = alpha ; R^{c~}

where complements are taken in ``E``.  All operation tables are computed by
the kernels in :mod:`weakrel.kernels` and cached on the algebra.
"""
from __future__ import annotations

from functools import cached_property

import numpy as np

from . import kernels
from .context import (DEFAULT_CAP, RepContext, all_contexts, is_upset_mask, make_context,
                      upset_masks, zero_mask)
from .errors import ResourceError, StructuralError, ValidationError
from .finite import DINFL_SIGNATURE, FiniteAlgebra
from .relcore import Rel, compose_masks, converse_mask, mask_pairs
from .report import VerificationReport

U64 = np.uint64


class DInFLAlgebra:
    def __init__(self, context: RepContext, masks: list[int]):
        self.context = context
        self.masks = list(masks)
        self.index = {m: i for i, m in enumerate(self.masks)}
        self.identity = self.index.get(context.leq_mask, -1)
        self.zero = self.index.get(zero_mask(context), -1)
        self._overrides: dict[str, np.ndarray] = {}

    def __len__(self) -> int:
        return len(self.masks)

    @property
    def size(self) -> int:
        return len(self.masks)

    @property
    def n(self) -> int:
        return self.context.n

    def element(self, i: int) -> Rel:
        return self.context.rel(self.masks[i])

    def label(self, i: int) -> str:
        width = max(1, (self.n * self.n + 3) // 4)
        return f"{self.masks[i]:0{width}x}"

    @property
    def labels(self) -> list[str]:
        return [self.label(i) for i in range(self.size)]

    def index_of(self, r) -> int:
        bits = r.bits if isinstance(r, Rel) else int(r)
        try:
            return self.index[bits]
        except KeyError:
            raise StructuralError("relation is not an element of the algebra") from None

    # -- vectorised helpers -------------------------------------------------

    @cached_property
    def _arr(self) -> np.ndarray:
        return np.array(self.masks, dtype=U64) if self.n <= kernels.MAX_CARRIER else None

    @cached_property
    def _sorted(self):
        order = np.argsort(self._arr, kind="stable")
        return self._arr[order], order

    def lookup(self, masks) -> np.ndarray:
        """Map masks to element indices; -1 marks a result outside the carrier."""
        if self._arr is None:
            flat = [self.index.get(int(m), -1) for m in np.asarray(masks, dtype=object).ravel()]
            return np.array(flat, dtype=np.int32).reshape(np.shape(masks))
        keys, order = self._sorted
        masks = np.asarray(masks, dtype=U64)
        pos = np.searchsorted(keys, masks)
        pos = np.minimum(pos, len(keys) - 1)
        hit = keys[pos] == masks
        return np.where(hit, order[pos], -1).astype(np.int32)

    def _compose_table(self, left, right):
        n = self.n
        if self._arr is not None:
            return kernels.compose_table(np.asarray(left, dtype=U64), np.asarray(right, dtype=U64), n)
        out = np.empty((len(left), len(right)), dtype=object)
        for i, a in enumerate(left):
            for j, b in enumerate(right):
                out[i, j] = compose_masks(int(a), int(b), n)
        return out

    def _vec(self, values):
        if self._arr is not None:
            return np.array([int(v) for v in values], dtype=U64)
        return np.array([int(v) for v in values], dtype=object)

    @cached_property
    def _e(self):
        e = self.context.e_mask
        return U64(e) if self._arr is not None else e

    @cached_property
    def _conv(self):
        return self._vec(converse_mask(m, self.n) for m in self.masks)

    @cached_property
    def _compl(self):
        return self._vec(self.context.e_mask & ~m for m in self.masks)

    # -- operation tables -----------------------------------------------------

    def _table(self, name, compute):
        if name in self._overrides:
            return self._overrides[name]
        cache = self.__dict__.setdefault("_tables", {})
        if name not in cache:
            cache[name] = compute()
        return cache[name]

    @property
    def meet(self) -> np.ndarray:
        def go():
            a = self._vec(self.masks)
            return self.lookup(a[:, None] & a[None, :])
        return self._table("meet", go)

    @property
    def join(self) -> np.ndarray:
        def go():
            a = self._vec(self.masks)
            return self.lookup(a[:, None] | a[None, :])
        return self._table("join", go)

    @property
    def mul(self) -> np.ndarray:
        return self._table("mul", lambda: self.lookup(self._compose_table(self.masks, self.masks)))

    @property
    def ldiv(self) -> np.ndarray:
        """``R \\ S = (R~ ; S^c)^c``."""
        return self._table("ldiv", lambda: self.lookup(self._e & ~self._compose_table(self._conv, self._compl)))

    @property
    def rdiv(self) -> np.ndarray:
        """``R / S = (R^c ; S~)^c``."""
        return self._table("rdiv", lambda: self.lookup(self._e & ~self._compose_table(self._compl, self._conv)))

    @property
    def imp(self) -> np.ndarray:
        """Concrete arrow ``R => S = (R~ ; S^c)^c`` (the left residual)."""
        return self._table("imp", lambda: self.ldiv)

    @property
    def neg(self) -> np.ndarray:
        def go():
            cc = self._vec(converse_mask(int(m), self.n) for m in self._compl)
            return self.lookup(self._compose_table(cc, [self.context.alpha_mask])[:, 0])
        return self._table("neg", go)

    @property
    def mneg(self) -> np.ndarray:
        def go():
            cc = self._vec(converse_mask(int(m), self.n) for m in self._compl)
            return self.lookup(self._compose_table([self.context.alpha_mask], cc)[0, :])
        return self._table("mneg", go)

    @property
    def reduct_imp(self) -> np.ndarray:
        """Direct-reduct arrow ``a -> b = ~(-b . a)`` computed from the tables."""
        def go():
            neg, mneg, mul = self.neg, self.mneg, self.mul
            m = self.size
            out = np.full((m, m), -1, dtype=np.int32)
            mb = mneg[None, :].repeat(m, axis=0)  # [a, b] -> -b
            ok = mb >= 0
            prod = np.where(ok, mul[np.where(ok, mb, 0), np.arange(m)[:, None]], -1)
            good = prod >= 0
            out[good] = neg[prod[good]]
            return out
        return self._table("reduct_imp", go)

    def with_table(self, name: str, table) -> "DInFLAlgebra":
        """Copy sharing the carrier but with one table replaced (fault injection)."""
        other = DInFLAlgebra(self.context, self.masks)
        other._overrides = dict(self._overrides)
        other._overrides[name] = np.asarray(table, dtype=np.int32)
        return other

    # -- views ----------------------------------------------------------------

    def signature_view(self, names) -> FiniteAlgebra:
        """Tables for the requested signature; ``imp`` is the direct-reduct arrow."""
        ops = {}
        for name in names:
            if name == "one":
                continue
            ops[name] = self.reduct_imp if name == "imp" else getattr(self, name)
        consts = {"one": self.identity} if "one" in names else {}
        return FiniteAlgebra(self.labels, ops, consts, name="D(E)")

    def reduct(self) -> FiniteAlgebra:
        return self.signature_view(("meet", "join", "mul", "imp", "neg", "one"))

    def table_view(self) -> FiniteAlgebra:
        return self.signature_view(DINFL_SIGNATURE)

    def subset_order(self) -> np.ndarray:
        if self._arr is not None:
            a = self._arr
            return (a[:, None] & ~a[None, :]) == 0
        m = self.size
        return np.array([[self.masks[i] & ~self.masks[j] == 0 for j in range(m)] for i in range(m)])

    def describe(self, tables: bool = False) -> dict:
        ctx = self.context
        lab = ctx.labels
        out = {
            "context": ctx.to_spec(),
            "size": self.size,
            "identity": self.label(self.identity),
            "zero": self.label(self.zero),
            "elements": [
                {"id": self.label(i), "pairs": [[lab[x], lab[y]] for x, y in mask_pairs(m, ctx.n)]}
                for i, m in enumerate(self.masks)
            ],
        }
        if tables:
            view = self.table_view().to_dict()
            out["tables"] = view["tables"]
        return out


def build_algebra(ctx: RepContext, cap: int = DEFAULT_CAP, check_closure: bool = True) -> DInFLAlgebra:
    alg = DInFLAlgebra(ctx, upset_masks(ctx, cap))
    if alg.identity < 0 or alg.zero < 0:
        raise AssertionError("unit or zero is not an upset")
    if check_closure:
        for name in ("meet", "join", "mul", "neg", "mneg", "ldiv", "rdiv"):
            if (getattr(alg, name) < 0).any():
                raise AssertionError(f"carrier not closed under {name}")
    return alg


# -- element-level operations on relations ---------------------------------

def _upset_arg(r: Rel, ctx: RepContext) -> int:
    if r.universe != ctx.universe:
        raise StructuralError("relation is not over the context's E")
    if not is_upset_mask(r.bits, ctx):
        raise StructuralError("relation is not an upset of the pair order")
    return r.bits


def _neg_masks(bits: int, ctx: RepContext) -> tuple[int, int]:
    n = ctx.n
    cc = converse_mask(ctx.e_mask & ~bits, n)
    return compose_masks(cc, ctx.alpha_mask, n), compose_masks(ctx.alpha_mask, cc, n)


def _ldiv_mask(a: int, b: int, ctx: RepContext) -> int:
    n = ctx.n
    return ctx.e_mask & ~compose_masks(converse_mask(a, n), ctx.e_mask & ~b, n)


def _rdiv_mask(a: int, b: int, ctx: RepContext) -> int:
    n = ctx.n
    return ctx.e_mask & ~compose_masks(ctx.e_mask & ~a, converse_mask(b, n), n)


def negations(r: Rel, ctx: RepContext) -> tuple[Rel, Rel]:
    """``(~r, -r)`` via complement-converse and alpha, cross-checked against ``r\\0`` and ``0/r``."""
    bits = _upset_arg(r, ctx)
    tilde, minus = _neg_masks(bits, ctx)
    zero = zero_mask(ctx)
    assert tilde == _ldiv_mask(bits, zero, ctx), "~r differs from r\\0"
    assert minus == _rdiv_mask(zero, bits, ctx), "-r differs from 0/r"
    return ctx.rel(tilde), ctx.rel(minus)


def residuals(r: Rel, s: Rel, ctx: RepContext) -> tuple[Rel, Rel]:
    a, b = _upset_arg(r, ctx), _upset_arg(s, ctx)
    return ctx.rel(_ldiv_mask(a, b, ctx)), ctx.rel(_rdiv_mask(a, b, ctx))


def arrow(r: Rel, s: Rel, ctx: RepContext) -> Rel:
    """``r => s = (r~ ; s^c)^c``, asserted equal to ``~(-s ; r)``."""
    a, b = _upset_arg(r, ctx), _upset_arg(s, ctx)
    out = _ldiv_mask(a, b, ctx)
    minus_b = _neg_masks(b, ctx)[1]
    assert out == _neg_masks(compose_masks(minus_b, a, ctx.n), ctx)[0], "r => s differs from ~(-s ; r)"
    return ctx.rel(out)


# -- verification -------------------------------------------------------------

def _triple_record(report, name, anchor, m, result, labels):
    count, (a, b, c) = result
    rec = report.check(name, anchor)
    rec.trials = m ** 3
    if count:
        rec.fail(a=labels[a], b=labels[b], c=labels[c])
        rec.failure_count = count
    return rec


def verify_infl_axioms(alg: DInFLAlgebra) -> VerificationReport:
    """Exhaustively check the distributive InFL-algebra axioms on the carrier."""
    report = VerificationReport("infl-axioms")
    m = alg.size
    labels = alg.labels
    tables = {name: getattr(alg, name) for name in ("meet", "join", "mul", "neg", "mneg", "ldiv", "rdiv")}

    closed = report.check("closure", "carrier closed under ∩ ∪ ; ~ - \\ /")
    for name, t in tables.items():
        bad = np.argwhere(t < 0)
        rec_trials = t.size
        closed.trials += rec_trials
        if len(bad):
            closed.failure_count += len(bad)
            idx = tuple(int(v) for v in bad[0])
            closed.failures.append({"op": name, "args": [labels[i] for i in idx]})
    bounds = report.check("bounds", "∅ and E are elements")
    bounds.tick(0 in alg.index and alg.context.e_mask in alg.index)
    unit_ok = alg.identity >= 0
    report.check("unit-present", "<= is an element").tick(unit_ok)
    zero_ok = alg.zero >= 0
    report.check("zero-present", "0 = alpha ; (<=)^c~ is an element").tick(zero_ok)
    if not closed.passed or not unit_ok or not zero_ok:
        return report

    meet, join, mul = tables["meet"], tables["join"], tables["mul"]
    neg, mneg, ldiv, rdiv = tables["neg"], tables["mneg"], tables["ldiv"], tables["rdiv"]
    ar = np.arange(m)

    rec = report.check("lattice-ops", "meet/join are ∩/∪ and commutative, idempotent, absorptive")
    ok = (meet == meet.T) & (join == join.T) & (meet[ar[:, None], join] == ar[:, None]) & (join[ar[:, None], meet] == ar[:, None])
    rec.trials = ok.size
    for a, b in np.argwhere(~ok)[:10]:
        rec.fail(a=labels[a], b=labels[b])
    rec.failure_count = int((~ok).sum()) + int((meet[ar, ar] != ar).sum())
    _triple_record(report, "distributivity", "a ∧ (b ∨ c) = (a ∧ b) ∨ (a ∧ c)", m,
                   kernels.distrib_failures(meet, join), labels)
    _triple_record(report, "associativity", "(a ; b) ; c = a ; (b ; c)", m, kernels.assoc_failures(mul), labels)

    rec = report.check("monoid-unit", "<= ; a = a ; <= = a")
    one = alg.identity
    bad = np.flatnonzero((mul[one, :] != ar) | (mul[:, one] != ar))
    rec.trials = m
    for a in bad[:10]:
        rec.fail(a=labels[a])
    rec.failure_count = len(bad)

    leq = alg.subset_order()
    _triple_record(report, "residuation", "a;b ⊆ c  iff  b ⊆ a\\c  iff  a ⊆ c/b", m,
                   kernels.residuation_failures(leq, mul, ldiv, rdiv), labels)

    rec = report.check("involution", "-~a = a = ~-a")
    bad = np.flatnonzero((mneg[neg] != ar) | (neg[mneg] != ar))
    rec.trials = m
    for a in bad[:10]:
        rec.fail(a=labels[a], neg=labels[neg[a]], mneg=labels[mneg[a]])
    rec.failure_count = len(bad)

    rec = report.check("neg-is-residual", "~a = a\\0 and -a = 0/a")
    z = alg.zero
    bad = np.flatnonzero((neg != ldiv[:, z]) | (mneg != rdiv[z, :]))
    rec.trials = m
    for a in bad[:10]:
        rec.fail(a=labels[a], neg=labels[neg[a]], a_ldiv_zero=labels[ldiv[a, z]])
    rec.failure_count = len(bad)
    return report


def is_cyclic(alg: DInFLAlgebra, check: bool = True) -> tuple[bool, int | None]:
    """``(True, None)`` when ``~a = -a`` everywhere, else ``(False, witness index)``.

    With ``check`` set, the answer is asserted to match ``alpha == id``.
    """
    diff = np.flatnonzero(alg.neg != alg.mneg)
    cyclic = len(diff) == 0
    if check:
        assert cyclic == alg.context.is_alpha_identity, "cyclicity does not match alpha = id"
    return cyclic, (None if cyclic else int(diff[0]))


def generate_subalgebra(ctx: RepContext, generators, cap: int = DEFAULT_CAP) -> list[Rel]:
    """Least set containing the generators and ``<=`` closed under ∩ ∪ ; ~ - =>."""
    current = {ctx.leq_mask}
    for g in generators:
        bits = g.bits if isinstance(g, Rel) else int(g)
        if isinstance(g, Rel) and g.universe != ctx.universe:
            raise StructuralError("generator is not over the context's E")
        if not is_upset_mask(bits, ctx):
            raise StructuralError("generator is not an upset of the pair order")
        current.add(bits)
    n = ctx.n
    frontier = set(current)
    while frontier:
        new = set()
        for a in sorted(current):
            for v in _neg_masks(a, ctx):
                if v not in current:
                    new.add(v)
        pool = sorted(current | new)
        front = frontier | new
        for a in pool:
            for b in pool:
                if a not in front and b not in front:
                    continue
                for v in (a & b, a | b, compose_masks(a, b, n), _ldiv_mask(a, b, ctx)):
                    if v not in current:
                        new.add(v)
        new -= current
        current |= new
        frontier = new
        if len(current) > cap:
            raise ResourceError(f"subalgebra exceeds {cap} elements", lower_bound=len(current))
    return [ctx.rel(m) for m in sorted(current, key=lambda v: (bin(v).count("1"), v))]


# -- products ---------------------------------------------------------------------

def product_context(ctxs: list[RepContext]) -> RepContext:
    """Disjoint union of contexts; element ``x`` of factor ``i`` becomes ``"i.x"``."""
    if not ctxs:
        raise ValidationError("product", "need at least one factor")
    labels, leq, E, alpha = [], [], [], {}
    for i, c in enumerate(ctxs):
        if not isinstance(c, RepContext):
            raise ValidationError("product", f"factor {i} is not a context")
        name = [f"{i}.{x}" for x in c.labels]
        labels.extend(name)
        leq.extend((name[x], name[y]) for x, y in mask_pairs(c.leq_mask, c.n))
        E.extend((name[x], name[y]) for x, y in mask_pairs(c.e_mask, c.n))
        alpha.update({name[x]: name[c.alpha[x]] for x in range(c.n)})
    return make_context(labels, leq, E, alpha)


def _restrict(masks, big_n: int, offset: int, k: int):
    row = (1 << k) - 1
    out = []
    for m in masks:
        v = 0
        for x in range(k):
            v |= ((m >> ((offset + x) * big_n + offset)) & row) << (x * k)
        out.append(v)
    return out


def verify_product_iso(joint: DInFLAlgebra, factors: list[DInFLAlgebra]) -> VerificationReport:
    """Check ``R -> (R ∩ E_i)_i`` is a bijective homomorphism onto the product."""
    report = VerificationReport("product-iso")
    sizes = [f.n for f in factors]
    if sum(sizes) != joint.n:
        raise StructuralError("joint carrier is not the disjoint union of the factor carriers")
    offsets = np.cumsum([0] + sizes[:-1])
    m = joint.size
    labels = joint.labels
    images = []
    rec = report.check("well-defined", "R ∩ E_i is an element of the i-th factor")
    for f, off in zip(factors, offsets):
        idx = np.array([f.index.get(v, -1) for v in _restrict(joint.masks, joint.n, int(off), f.n)], dtype=np.int64)
        for a in np.flatnonzero(idx < 0)[:10]:
            rec.fail(element=labels[a], factor=len(images))
        rec.failure_count += int((idx < 0).sum())
        images.append(idx)
    rec.trials = m * len(factors)
    if not rec.passed:
        return report

    radix = [f.size for f in factors]
    code = np.zeros(m, dtype=np.int64)
    for img, r in zip(images, radix):
        code = code * r + img
    rec = report.check("bijective", "the map is injective and |D(E)| = ∏|D(E_i)|")
    rec.trials = m
    total = int(np.prod(radix, dtype=np.int64))
    if len(np.unique(code)) != m or m != total:
        rec.fail(joint_size=m, product_size=total, distinct_images=int(len(np.unique(code))))

    def combine(pieces):
        out = np.zeros(pieces[0].shape, dtype=np.int64)
        for p, r in zip(pieces, radix):
            out = out * r + p
        return out

    for op, stmt in (("meet", "∩"), ("join", "∪"), ("mul", ";")):
        rec = report.check(op, f"(R {stmt} S) ∩ E_i = (R ∩ E_i) {stmt} (S ∩ E_i)")
        lhs = code[getattr(joint, op)]
        rhs = combine([getattr(f, op)[img[:, None], img[None, :]] for f, img in zip(factors, images)])
        bad = lhs != rhs
        rec.trials = bad.size
        for a, b in np.argwhere(bad)[:10]:
            rec.fail(a=labels[a], b=labels[b])
        rec.failure_count = int(bad.sum())
    for op, stmt in (("neg", "~"), ("mneg", "-")):
        rec = report.check(op, f"({stmt}R) ∩ E_i = {stmt}(R ∩ E_i)")
        lhs = code[getattr(joint, op)]
        rhs = combine([getattr(f, op)[img] for f, img in zip(factors, images)])
        bad = lhs != rhs
        rec.trials = bad.size
        for a in np.flatnonzero(bad)[:10]:
            rec.fail(a=labels[a])
        rec.failure_count = int(bad.sum())
    rec = report.check("one", "<= maps to the tuple of units")
    rec.tick(int(code[joint.identity]) == int(combine([np.array(f.identity) for f in factors])))
    rec = report.check("zero", "0 maps to the tuple of zeros")
    rec.tick(int(code[joint.zero]) == int(combine([np.array(f.zero) for f in factors])))
    return report


def check_small_contexts(max_size: int = 3):
    """Yield ``(context, axiom report, cyclic, alpha_is_id)`` for every small context."""
    for k in range(1, max_size + 1):
        for ctx in all_contexts(k):
            alg = build_algebra(ctx)
            cyclic, _ = is_cyclic(alg, check=False)
            yield ctx, verify_infl_axioms(alg), cyclic, ctx.is_alpha_identity


# -- DOT export -------------------------------------------------------------------

def hasse_dot(alg: DInFLAlgebra, name: str = "algebra") -> str:
    """Inclusion Hasse diagram; nodes are labelled by the bitset in hex."""
    le = alg.subset_order()
    lt = le & ~np.eye(alg.size, dtype=bool)
    lti = lt.astype(np.int64)
    between = (lti @ lti) > 0
    cover = lt & ~between
    labels = alg.labels
    lines = [f"digraph {name} {{", "  rankdir=BT;", "  node [shape=box, fontname=monospace];"]
    for i, lab in enumerate(labels):
        tags = []
        if i == alg.identity:
            tags.append("1")
        if i == alg.zero:
            tags.append("0")
        extra = f" ({', '.join(tags)})" if tags else ""
        lines.append(f'  "{lab}" [label="{lab}{extra}"];')
    for a, b in np.argwhere(cover):
        lines.append(f'  "{labels[a]}" -> "{labels[b]}";')
    lines.append("}")
    return "\n".join(lines) + "\n"
