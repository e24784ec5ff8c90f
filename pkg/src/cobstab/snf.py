"""Integer lattices: Smith normal form, cokernels and row-space membership."""

from __future__ import annotations


def _eye(n):
    return [[int(i == j) for j in range(n)] for i in range(n)]


def xgcd(a: int, b: int):
    """Return (g, s, t) with g = s*a + t*b = gcd(a, b) >= 0."""
    s0, s1, t0, t1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if a < 0:
        a, s0, t0 = -a, -s0, -t0
    return a, s0, t0


def smith_normal_form(M):
    """Return (U, D, V) with U*M*V = D, U and V unimodular, d_i | d_{i+1}."""
    A = [list(map(int, row)) for row in M]
    m = len(A)
    n = len(A[0]) if m else 0
    U, V = _eye(m), _eye(n)

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in A:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):
        # row_dst += q * row_src
        if q:
            A[dst] = [x + q * y for x, y in zip(A[dst], A[src])]
            U[dst] = [x + q * y for x, y in zip(U[dst], U[src])]

    def add_col(dst, src, q):
        if q:
            for row in A:
                row[dst] += q * row[src]
            for row in V:
                row[dst] += q * row[src]

    for t in range(min(m, n)):
        best = None
        for i in range(t, m):
            for j in range(t, n):
                if A[i][j] and (best is None or abs(A[i][j]) < abs(A[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        swap_rows(t, best[0])
        swap_cols(t, best[1])
        while True:
            done = True
            for i in range(t + 1, m):
                if A[i][t]:
                    add_row(i, t, -(A[i][t] // A[t][t]))
                    if A[i][t]:
                        done = False
            for j in range(t + 1, n):
                if A[t][j]:
                    add_col(j, t, -(A[t][j] // A[t][t]))
                    if A[t][j]:
                        done = False
            if not done:
                # move the smallest leftover entry of row/column t to the corner
                cands = [(abs(A[i][t]), i, t) for i in range(t + 1, m) if A[i][t]]
                cands += [(abs(A[t][j]), t, j) for j in range(t + 1, n) if A[t][j]]
                _, i, j = min(cands)
                if i != t:
                    swap_rows(t, i)
                else:
                    swap_cols(t, j)
                continue
            bad = None
            p = A[t][t]
            for i in range(t + 1, m):
                if any(A[i][j] % p for j in range(t + 1, n)):
                    bad = i
                    break
            if bad is None:
                break
            add_row(t, bad, 1)
        if A[t][t] < 0:
            A[t] = [-x for x in A[t]]
            U[t] = [-x for x in U[t]]
    return U, A, V


def diagonal(D) -> list:
    return [D[i][i] for i in range(min(len(D), len(D[0]) if D else 0))]


def invariants_of(M, ncols=None) -> list:
    """Cokernel of the row space of M as [0]*free + torsion orders > 1."""
    if ncols is None:
        ncols = len(M[0]) if M else 0
    if not M:
        return [0] * ncols
    _, D, _ = smith_normal_form(M)
    diag = [x for x in diagonal(D) if x]
    return [0] * (ncols - len(diag)) + sorted(x for x in diag if x > 1)


def left_kernel(A) -> list:
    """Basis of {v : v*A = 0} over the integers."""
    m = len(A)
    if m == 0:
        return []
    U, D, _ = smith_normal_form(A)
    rank = sum(1 for x in diagonal(D) if x)
    return [U[i] for i in range(rank, m)]


def mat_mul(A, B):
    Bt = list(zip(*B))
    return [[sum(x * y for x, y in zip(row, col)) for col in Bt] for row in A]


def determinant(A) -> int:
    """Exact determinant by fraction-free elimination (Bareiss)."""
    M = [list(r) for r in A]
    n = len(M)
    sign, prev = 1, 1
    for k in range(n - 1):
        if M[k][k] == 0:
            for i in range(k + 1, n):
                if M[i][k]:
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[-1][-1] if n else 1


class RowLattice:
    """Sparse echelon basis of a sublattice of Z^n, built incrementally.

    Rows are dicts column -> nonzero int.  The leading column of each basis
    row is its smallest column; leading entries are positive.
    """

    def __init__(self, rows=()):
        self.pivots = {}
        for r in rows:
            self.add(r)

    def _reduce(self, v: dict) -> dict:
        v = {k: x for k, x in v.items() if x}
        while v:
            c = min(v)
            p = self.pivots.get(c)
            if p is None or v[c] % p[c]:
                return v
            q = v[c] // p[c]
            for k, x in p.items():
                y = v.get(k, 0) - q * x
                if y:
                    v[k] = y
                else:
                    v.pop(k, None)
        return v

    def add(self, v: dict) -> bool:
        """Insert a row; return True if the lattice grew."""
        v = self._reduce(v)
        grew = False
        while v:
            c = min(v)
            p = self.pivots.get(c)
            if p is None:
                if v[c] < 0:
                    v = {k: -x for k, x in v.items()}
                self.pivots[c] = v
                return True
            g, s, t = xgcd(p[c], v[c])
            a, b = p[c] // g, v[c] // g
            keys = set(p) | set(v)
            new = {k: s * p.get(k, 0) + t * v.get(k, 0) for k in keys}
            rest = {k: a * v.get(k, 0) - b * p.get(k, 0) for k in keys}
            self.pivots[c] = {k: x for k, x in new.items() if x}
            v = self._reduce(rest)
            grew = True
        return grew

    def contains(self, v: dict) -> bool:
        return not self._reduce(v)

    def rows(self) -> list:
        return [self.pivots[c] for c in sorted(self.pivots)]

    def rank(self) -> int:
        return len(self.pivots)


def sparse_cokernel(rows, ncols: int) -> list:
    """Invariants of Z^ncols / span(rows); rows are dicts column -> int.

    Unit pivots are eliminated sparsely, the small remainder goes through a
    dense Smith normal form.
    """
    rows = [dict(r) for r in rows if r]
    by_col = {}
    for i, r in enumerate(rows):
        for c in r:
            by_col.setdefault(c, set()).add(i)
    alive = set(range(len(rows)))
    removed_cols = set()
    changed = True
    while changed:
        changed = False
        for i in list(alive):
            if i not in alive:
                continue
            r = rows[i]
            c = next((k for k, x in r.items() if abs(x) == 1), None)
            if c is None:
                continue
            u = r[c]
            for j in list(by_col.get(c, ())):
                if j == i or j not in alive:
                    continue
                rj = rows[j]
                q = rj[c] * u  # u is its own inverse
                for k, x in r.items():
                    y = rj.get(k, 0) - q * x
                    if y:
                        if k not in rj:
                            by_col.setdefault(k, set()).add(j)
                        rj[k] = y
                    elif k in rj:
                        del rj[k]
                        by_col[k].discard(j)
                if not rj:
                    alive.discard(j)
            alive.discard(i)
            for k in r:
                by_col[k].discard(i)
            removed_cols.add(c)
            changed = True
    cols = sorted(set(range(ncols)) - removed_cols)
    index = {c: k for k, c in enumerate(cols)}
    dense = []
    for i in sorted(alive):
        if rows[i]:
            row = [0] * len(cols)
            for k, x in rows[i].items():
                row[index[k]] = x
            dense.append(row)
    return invariants_of(dense, len(cols))
