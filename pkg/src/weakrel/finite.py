"""Finite algebras given by operation tables, homomorphisms between them,
and a backtracking search for embeddings.

Operation names are shared across the package:

* binary: ``meet``, ``join``, ``mul``, ``imp`` (residual arrow), ``ldiv``, ``rdiv``
* unary: ``neg`` (the linear negation written ``~``), ``mneg`` (written ``-``)
* constants: ``one``

A Sugihara-signature algebra carries ``meet, join, mul, imp, one, neg``;
a DInFL-signature algebra carries ``meet, join, mul, one, neg, mneg``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .errors import ResourceError, StructuralError
from .report import VerificationReport

BINARY = ("meet", "join", "mul", "imp", "ldiv", "rdiv")
UNARY = ("neg", "mneg")
CONSTANTS = ("one",)

SUGIHARA_SIGNATURE = ("meet", "join", "mul", "imp", "neg", "one")
DINFL_SIGNATURE = ("meet", "join", "mul", "neg", "mneg", "one")

_SYMBOL = {"meet": "∧", "join": "∨", "mul": "·", "imp": "→", "ldiv": "\\", "rdiv": "/",
           "neg": "~", "mneg": "-", "one": "1"}


@dataclass
class FiniteAlgebra:
    labels: list[str]
    ops: dict[str, np.ndarray] = field(default_factory=dict)
    consts: dict[str, int] = field(default_factory=dict)
    name: str = ""

    def __post_init__(self):
        m = len(self.labels)
        for op, t in list(self.ops.items()):
            t = np.asarray(t, dtype=np.int32)
            want = (m, m) if op in BINARY else (m,)
            if t.shape != want:
                raise StructuralError(f"table {op!r} has shape {t.shape}, expected {want}")
            self.ops[op] = t

    @property
    def size(self) -> int:
        return len(self.labels)

    @property
    def signature(self) -> tuple[str, ...]:
        return tuple(self.ops) + tuple(self.consts)

    @cached_property
    def leq(self) -> np.ndarray:
        """Lattice order read off the meet table."""
        meet = self.ops["meet"]
        return meet == np.arange(self.size)[:, None]

    def restrict(self, names) -> "FiniteAlgebra":
        names = set(names)
        return FiniteAlgebra(
            list(self.labels),
            {k: v.copy() for k, v in self.ops.items() if k in names},
            {k: v for k, v in self.consts.items() if k in names},
            self.name,
        )

    def with_table(self, op: str, table) -> "FiniteAlgebra":
        """Copy with one table replaced (used for deliberate-fault tests)."""
        ops = {k: v.copy() for k, v in self.ops.items()}
        ops[op] = np.asarray(table, dtype=np.int32)
        return FiniteAlgebra(list(self.labels), ops, dict(self.consts), self.name + "*")

    def cayley_text(self) -> str:
        width = max(len(s) for s in self.labels)
        out = []
        for op, t in self.ops.items():
            sym = _SYMBOL.get(op, op)
            if t.ndim == 2:
                head = f"{sym:>{width}} | " + " ".join(f"{s:>{width}}" for s in self.labels)
                out.append(head)
                out.append("-" * len(head))
                for a, row in zip(self.labels, t):
                    out.append(f"{a:>{width}} | " + " ".join(f"{self.labels[v]:>{width}}" for v in row))
            else:
                out.append(f"{sym:>{width}} | " + " ".join(f"{s:>{width}}" for s in self.labels))
                out.append(f"{'':>{width}} | " + " ".join(f"{self.labels[v]:>{width}}" for v in t))
            out.append("")
        for c, v in self.consts.items():
            out.append(f"{_SYMBOL.get(c, c)} = {self.labels[v]}")
        return "\n".join(out)

    def to_dict(self) -> dict:
        lab = self.labels
        return {
            "name": self.name,
            "elements": list(lab),
            "constants": {c: lab[v] for c, v in self.consts.items()},
            "tables": {op: [[lab[v] for v in row] for row in t] if t.ndim == 2 else [lab[v] for v in t]
                       for op, t in self.ops.items()},
        }


@dataclass
class Homomorphism:
    source: FiniteAlgebra
    target: FiniteAlgebra
    mapping: tuple[int, ...]
    embedding: bool = True

    def image_labels(self) -> dict[str, str]:
        return {self.source.labels[a]: self.target.labels[t] for a, t in enumerate(self.mapping)}


def _view(target, source: FiniteAlgebra) -> FiniteAlgebra:
    """Resolve a concrete algebra to the table view matching the source signature."""
    if isinstance(target, FiniteAlgebra):
        return target
    view = getattr(target, "signature_view", None)
    if view is None:
        raise StructuralError(f"cannot use {type(target).__name__} as a finite algebra")
    return view(source.signature)


def shared_signature(source: FiniteAlgebra, target: FiniteAlgebra) -> list[str]:
    missing = [s for s in source.signature if s not in target.signature]
    if missing:
        raise StructuralError(f"target lacks operations {missing}")
    return list(source.signature)


def verify_homomorphism(h: Homomorphism) -> VerificationReport:
    """Check every source operation is preserved, element by element."""
    src = h.source
    tgt = _view(h.target, src)
    report = VerificationReport("homomorphism")
    hm = np.asarray(h.mapping, dtype=np.int64)
    total = report.check("total", "h defined on every source element")
    total.tick(len(hm) == src.size and bool(((hm >= 0) & (hm < tgt.size)).all()), mapping=list(h.mapping))
    if not total.passed:
        return report
    for op in shared_signature(src, tgt):
        sym = _SYMBOL.get(op, op)
        if op in src.consts:
            rec = report.check(op, f"h({sym}) = {sym}")
            rec.tick(int(hm[src.consts[op]]) == tgt.consts[op],
                     got=tgt.labels[hm[src.consts[op]]], expected=tgt.labels[tgt.consts[op]])
            continue
        s, t = src.ops[op], tgt.ops[op]
        rec = report.check(op, f"h(a {sym} b) = h(a) {sym} h(b)" if s.ndim == 2 else f"h({sym}a) = {sym}h(a)")
        if s.ndim == 2:
            lhs = hm[s]
            rhs = t[hm[:, None], hm[None, :]]
            bad = lhs != rhs
            rec.trials = bad.size
            for a, b in np.argwhere(bad)[:10]:
                rec.fail(a=src.labels[a], b=src.labels[b], got=tgt.labels[lhs[a, b]], expected=tgt.labels[rhs[a, b]])
            rec.failure_count = int(bad.sum())
        else:
            lhs = hm[s]
            rhs = t[hm]
            bad = lhs != rhs
            rec.trials = bad.size
            for (a,) in np.argwhere(bad)[:10]:
                rec.fail(a=src.labels[a], got=tgt.labels[lhs[a]], expected=tgt.labels[rhs[a]])
            rec.failure_count = int(bad.sum())
    if h.embedding:
        rec = report.check("injective", "h(a) = h(b) implies a = b")
        rec.tick(len(set(h.mapping)) == len(h.mapping), mapping=list(h.mapping))
    return report


def find_embedding(source: FiniteAlgebra, target, budget: int = 10**6) -> Homomorphism | None:
    """First injective homomorphism in lexicographic candidate order, or None.

    Candidates for each source element (in index order) are tried in target
    index order.  Pruning: the unit goes to the unit, order is reflected both
    ways, unary-operation orbits stay consistent, and every table entry whose
    three elements are already placed is checked immediately.
    """
    tgt = _view(target, source)
    sig = shared_signature(source, tgt)
    m, k = source.size, tgt.size
    if m > k:
        return None
    s_leq = source.leq if "meet" in source.ops else None
    t_leq = tgt.leq if "meet" in tgt.ops else None
    unary = [(source.ops[o], tgt.ops[o]) for o in sig if o in UNARY]
    binary = [(source.ops[o], tgt.ops[o]) for o in sig if o in BINARY]
    forced = {source.consts[c]: tgt.consts[c] for c in sig if c in CONSTANTS}
    reserved = set(forced.values())
    # table entries producing each source element, for back-checks
    produced_by = [[] for _ in range(m)]
    for bi, (s, _) in enumerate(binary):
        for a in range(m):
            for b in range(m):
                produced_by[int(s[a, b])].append((bi, a, b))

    h = [-1] * m
    used = [False] * k
    nodes = 0

    def consistent(a: int, t: int) -> bool:
        if a in forced:
            if forced[a] != t:
                return False
        elif t in reserved:
            return False
        if s_leq is not None:
            for b in range(m):
                hb = h[b]
                if hb < 0:
                    continue
                if s_leq[b, a] != t_leq[hb, t] or s_leq[a, b] != t_leq[t, hb]:
                    return False
        h[a] = t
        try:
            for s, tt in unary:
                ia = int(s[a])
                if h[ia] >= 0 and h[ia] != tt[t]:
                    return False
                for b in range(m):
                    if h[b] >= 0 and s[b] == a and tt[h[b]] != t:
                        return False
            for s, tt in binary:
                for b in range(m):
                    hb = h[b]
                    if hb < 0:
                        continue
                    r = int(s[a, b])
                    if h[r] >= 0 and h[r] != tt[t, hb]:
                        return False
                    r = int(s[b, a])
                    if h[r] >= 0 and h[r] != tt[hb, t]:
                        return False
            for bi, b, c in produced_by[a]:
                hb, hc = h[b], h[c]
                if hb >= 0 and hc >= 0 and binary[bi][1][hb, hc] != t:
                    return False
            return True
        finally:
            h[a] = -1

    def search(a: int) -> bool:
        nonlocal nodes
        if a == m:
            return True
        for t in range(k):
            if used[t]:
                continue
            nodes += 1
            if nodes > budget:
                raise ResourceError(f"embedding search exceeded {budget} nodes", lower_bound=None)
            if not consistent(a, t):
                continue
            h[a] = t
            used[t] = True
            if search(a + 1):
                return True
            h[a] = -1
            used[t] = False
        return False

    if not search(0):
        return None
    hom = Homomorphism(source, tgt, tuple(h), embedding=True)
    check = verify_homomorphism(hom)
    if not check.passed:  # pragma: no cover - would mean the pruning is unsound
        raise AssertionError(f"search produced a non-homomorphism: {check.to_text()}")
    return hom
