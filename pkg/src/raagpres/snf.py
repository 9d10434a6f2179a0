"""Exact integer Smith normal form.

Two entry points: :func:`smith_normal_form` keeps the unimodular transforms and
is meant for small matrices, :func:`abelian_invariants` first clears unit
pivots on a sparse copy and only runs the dense algorithm on what is left,
which is what the abelianization of a big presentation needs.
"""

from dataclasses import dataclass


@dataclass(frozen=True)
class SNFResult:
    diagonal: tuple
    rank: int
    U: tuple = None
    V: tuple = None
    D: tuple = None


def _identity(k):
    return [[int(i == j) for j in range(k)] for i in range(k)]


def matmul(a, b):
    if not a:
        return []
    inner = len(b)
    cols = len(b[0]) if b else 0
    return [[sum(row[k] * b[k][j] for k in range(inner)) for j in range(cols)] for row in a]


def smith_normal_form(m, transforms=True):
    """Return the Smith normal form of an integer matrix given as a list of rows.

    With ``transforms`` the result carries unimodular U and V with U*m*V == D.
    """
    rows = len(m)
    cols = len(m[0]) if rows else 0
    a = [[int(x) for x in row] for row in m]
    U = _identity(rows) if transforms else None
    V = _identity(cols) if transforms else None

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        if transforms:
            U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        if transforms:
            for row in V:
                row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):
        # row_dst += q * row_src
        ra, rs = a[dst], a[src]
        for k in range(cols):
            if rs[k]:
                ra[k] += q * rs[k]
        if transforms:
            ua, us = U[dst], U[src]
            for k in range(rows):
                if us[k]:
                    ua[k] += q * us[k]

    def add_col(dst, src, q):
        for row in a:
            if row[src]:
                row[dst] += q * row[src]
        if transforms:
            for row in V:
                if row[src]:
                    row[dst] += q * row[src]

    t = 0
    limit = min(rows, cols)
    while t < limit:
        best = None
        for i in range(t, rows):
            for j in range(t, cols):
                x = a[i][j]
                if x and (best is None or abs(x) < best[0]):
                    best = (abs(x), i, j)
                    if best[0] == 1:
                        break
            if best and best[0] == 1:
                break
        if best is None:
            break
        _, i, j = best
        while True:
            if i != t:
                swap_rows(i, t)
            if j != t:
                swap_cols(j, t)
            p = a[t][t]
            for r in range(t + 1, rows):
                if a[r][t]:
                    add_row(r, t, -(a[r][t] // p))
            for c in range(t + 1, cols):
                if a[t][c]:
                    add_col(c, t, -(a[t][c] // p))
            # anything left in row/column t is smaller than the pivot
            best = None
            for r in range(t + 1, rows):
                if a[r][t] and (best is None or abs(a[r][t]) < best[0]):
                    best = (abs(a[r][t]), r, t)
            for c in range(t + 1, cols):
                if a[t][c] and (best is None or abs(a[t][c]) < best[0]):
                    best = (abs(a[t][c]), t, c)
            if best is not None:
                _, i, j = best
                continue
            bad = None
            for r in range(t + 1, rows):
                for c in range(t + 1, cols):
                    if a[r][c] % p:
                        bad = r
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            add_row(t, bad, 1)
            i, j = t, t
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            if transforms:
                U[t] = [-x for x in U[t]]
        t += 1

    diagonal = tuple(a[k][k] for k in range(limit))
    rank = sum(1 for d in diagonal if d)
    if not transforms:
        return SNFResult(diagonal, rank)
    freeze = lambda mat: tuple(tuple(r) for r in mat)
    return SNFResult(diagonal, rank, freeze(U), freeze(V), freeze(a))


def abelian_invariants(rows, ncols):
    """Invariants of the abelian group Z^ncols / <rows>.

    ``rows`` is an iterable of dicts column -> coefficient (or dense lists).
    Returns (free_rank, torsion) with torsion in divisibility order.
    """
    sparse = []
    for r in rows:
        if isinstance(r, dict):
            d = {c: v for c, v in r.items() if v}
        else:
            d = {c: v for c, v in enumerate(r) if v}
        if d:
            sparse.append(d)
    alive = set(range(len(sparse)))
    by_col = {}
    for idx, d in enumerate(sparse):
        for c in d:
            by_col.setdefault(c, set()).add(idx)

    killed = 0
    while True:
        pivot = None
        for idx in sorted(alive, key=lambda k: (len(sparse[k]), k)):
            for c in sorted(sparse[idx]):
                if abs(sparse[idx][c]) == 1:
                    pivot = (idx, c)
                    break
            if pivot:
                break
        if pivot is None:
            break
        idx, c = pivot
        prow = sparse[idx]
        sign = prow[c]
        for other in sorted(by_col.get(c, ())):
            if other == idx:
                continue
            orow = sparse[other]
            q = orow[c] * sign
            for cc, v in prow.items():
                nv = orow.get(cc, 0) - q * v
                if nv:
                    if cc not in orow:
                        by_col.setdefault(cc, set()).add(other)
                    orow[cc] = nv
                else:
                    if cc in orow:
                        del orow[cc]
                        by_col[cc].discard(other)
            if not orow:
                alive.discard(other)
        for cc in prow:
            by_col[cc].discard(idx)
        alive.discard(idx)
        killed += 1

    rest_cols = sorted({c for k in alive for c in sparse[k]})
    pos = {c: i for i, c in enumerate(rest_cols)}
    dense = []
    for k in sorted(alive):
        row = [0] * len(rest_cols)
        for c, v in sparse[k].items():
            row[pos[c]] = v
        dense.append(row)
    torsion = []
    rank = killed
    if dense and rest_cols:
        res = smith_normal_form(dense, transforms=False)
        rank += res.rank
        torsion = [d for d in res.diagonal if d > 1]
    return ncols - rank, torsion
