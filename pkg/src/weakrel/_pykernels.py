"""Numpy implementations of the hot kernels.

Relations on an ``n``-element carrier are uint64 bitmasks with bit ``x*n + y``
set when ``(x, y)`` is a member, so ``n <= 8``.  Every function here has a
compiled twin in ``_ckernels.pyx`` with the same signature and results.
"""
import numpy as np

U64 = np.uint64


def compose(a, b, n):
    a = int(a)
    b = int(b)
    row = (1 << n) - 1
    out = 0
    for x in range(n):
        ra = (a >> (x * n)) & row
        acc = 0
        z = 0
        while ra:
            if ra & 1:
                acc |= (b >> (z * n)) & row
            ra >>= 1
            z += 1
        out |= acc << (x * n)
    return out


def compose_table(left, right, n):
    """``out[i, j] = compose(left[i], right[j])``."""
    left = np.asarray(left, dtype=U64)[:, None]
    right = np.asarray(right, dtype=U64)[None, :]
    row = U64((1 << n) - 1)
    out = np.zeros((left.shape[0], right.shape[1]), dtype=U64)
    rows = [(right >> U64(z * n)) & row for z in range(n)]
    for x in range(n):
        for z in range(n):
            hit = ((left >> U64(x * n + z)) & U64(1)).astype(bool)
            out |= np.where(hit, rows[z] << U64(x * n), U64(0))
    return out


def enumerate_upsets(order, above, cap):
    """All sets closed upward, as a list of int masks (DFS order), or None past ``cap``.

    ``order`` lists positions so that everything strictly above a position
    precedes it; ``above[pos]`` is the strict up-set mask of ``pos``.
    """
    order = [int(p) for p in order]
    above = [int(m) for m in above]
    out = []
    k_max = len(order)

    def walk(k, mask):
        if len(out) > cap:
            return
        if k == k_max:
            out.append(mask)
            return
        pos = order[k]
        walk(k + 1, mask)
        if above[pos] & ~mask == 0:
            walk(k + 1, mask | (1 << pos))

    walk(0, 0)
    if len(out) > cap:
        return None
    return out


def _first(bad):
    idx = np.argwhere(bad)
    return tuple(int(v) for v in idx[0])


def assoc_failures(op):
    op = np.asarray(op)
    m = op.shape[0]
    count = 0
    first = (-1, -1, -1)
    for a in range(m):
        left = op[op[a, :], :]
        right = op[a, op]
        bad = left != right
        c = int(bad.sum())
        if c:
            if count == 0:
                first = (a,) + _first(bad)
            count += c
    return count, first


def distrib_failures(meet, join):
    meet = np.asarray(meet)
    join = np.asarray(join)
    m = meet.shape[0]
    count = 0
    first = (-1, -1, -1)
    for a in range(m):
        left = meet[a, join]
        ma = meet[a, :]
        right = join[ma[:, None], ma[None, :]]
        bad = left != right
        c = int(bad.sum())
        if c:
            if count == 0:
                first = (a,) + _first(bad)
            count += c
    return count, first


def residuation_failures(leq, mul, ldiv, rdiv):
    """Count (a, b, c) where a*b <= c, b <= a\\c and a <= c/b disagree."""
    leq = np.asarray(leq, dtype=bool)
    mul = np.asarray(mul)
    ldiv = np.asarray(ldiv)
    rdiv = np.asarray(rdiv)
    m = leq.shape[0]
    idx = np.arange(m)
    count = 0
    first = (-1, -1, -1)
    for a in range(m):
        prod = leq[mul[a, :][:, None], idx[None, :]]
        under = leq[idx[:, None], ldiv[a, :][None, :]]
        over = leq[a, rdiv.T]
        bad = (prod != under) | (prod != over)
        c = int(bad.sum())
        if c:
            if count == 0:
                first = (a,) + _first(bad)
            count += c
    return count, first
