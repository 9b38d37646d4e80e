"""Exact matrices of polynomials: minors, Pfaffians, exterior powers, rank.

Index sets in the public API are 1-based and strictly increasing, following
the multi-index conventions used throughout the accompanying computations.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations

from .coeff import cadd, cdiv, cis_zero, cmul, cneg, csub
from .poly import Poly, PolyRing, poly_eval, poly_exact_div


class IndexSet(tuple):
    """Strictly increasing tuple of distinct 1-based indices."""

    def __new__(cls, indices):
        t = tuple(indices)
        if any(t[k] >= t[k + 1] for k in range(len(t) - 1)):
            raise ValueError(f"index set must be strictly increasing: {t}")
        if t and t[0] < 1:
            raise ValueError("index sets are 1-based")
        return super().__new__(cls, t)

    def complement(self, n: int) -> "IndexSet":
        s = set(self)
        return IndexSet(k for k in range(1, n + 1) if k not in s)


def subsets_lex(n: int, k: int):
    """All k-element IndexSets of [1, n] in lexicographic order."""
    return [IndexSet(c) for c in combinations(range(1, n + 1), k)]


class PolyMatrix:
    """Immutable dense matrix of Poly entries over one ring."""

    __slots__ = ("ring", "rows", "cols", "entries")

    def __init__(self, ring: PolyRing, entries):
        rows = tuple(tuple(self._lift(ring, e) for e in row) for row in entries)
        ncols = len(rows[0]) if rows else 0
        for row in rows:
            if len(row) != ncols:
                raise ValueError("ragged matrix")
        for row in rows:
            for e in row:
                if e.ring != ring:
                    raise ValueError("entry from a different ring")
        self.ring = ring
        self.rows = len(rows)
        self.cols = ncols
        self.entries = rows

    @staticmethod
    def _lift(ring, e):
        if isinstance(e, Poly):
            return e
        return ring.const(e)

    @classmethod
    def zero(cls, ring, rows, cols):
        z = ring.zero
        return cls(ring, [[z] * cols for _ in range(rows)])

    @classmethod
    def identity(cls, ring, n):
        z, o = ring.zero, ring.one
        return cls(ring, [[o if i == j else z for j in range(n)] for i in range(n)])

    @classmethod
    def exchange(cls, ring, n):
        """Anti-diagonal identity: entry (i, j) = 1 iff i + j = n + 1."""
        z, o = ring.zero, ring.one
        return cls(ring, [[o if i + j == n - 1 else z for j in range(n)] for i in range(n)])

    @classmethod
    def block(cls, blocks):
        """Assemble from a 2D grid of PolyMatrix blocks with matching shapes."""
        ring = blocks[0][0].ring
        out = []
        for brow in blocks:
            height = brow[0].rows
            for b in brow:
                if b.rows != height:
                    raise ValueError("block row heights differ")
            for i in range(height):
                row = []
                for b in brow:
                    row.extend(b.entries[i])
                out.append(row)
        return cls(ring, out)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def row(self, i):
        return list(self.entries[i])

    def col(self, j):
        return [self.entries[i][j] for i in range(self.rows)]

    def transpose(self):
        return PolyMatrix(self.ring, [[self.entries[i][j] for i in range(self.rows)]
                                      for j in range(self.cols)])

    def __neg__(self):
        return PolyMatrix(self.ring, [[-e for e in row] for row in self.entries])

    def __add__(self, other):
        if self.rows != other.rows or self.cols != other.cols:
            raise ValueError("shape mismatch")
        return PolyMatrix(self.ring, [[a + b for a, b in zip(r1, r2)]
                                      for r1, r2 in zip(self.entries, other.entries)])

    def __sub__(self, other):
        return self + (-other)

    def __matmul__(self, other):
        if self.cols != other.rows:
            raise ValueError("shape mismatch in product")
        zero = self.ring.zero
        bt = other.transpose().entries
        out = []
        for r in self.entries:
            orow = []
            for c in bt:
                acc = zero
                for a, b in zip(r, c):
                    if a and b:
                        acc = acc + a * b
                orow.append(acc)
            out.append(orow)
        return PolyMatrix(self.ring, out)

    def scale(self, c):
        return PolyMatrix(self.ring, [[e * c for e in row] for row in self.entries])

    def submatrix(self, rows: "IndexSet", cols: "IndexSet"):
        return PolyMatrix(self.ring, [[self.entries[i - 1][j - 1] for j in cols]
                                      for i in rows])

    def map(self, fn):
        return PolyMatrix(self.ring, [[fn(e) for e in row] for row in self.entries])

    def is_zero(self):
        return all(e.is_zero() for row in self.entries for e in row)

    def is_symmetric(self):
        return self.rows == self.cols and all(
            self.entries[i][j] == self.entries[j][i]
            for i in range(self.rows) for j in range(i + 1, self.cols))

    def is_skew(self):
        if self.rows != self.cols:
            return False
        for i in range(self.rows):
            if not self.entries[i][i].is_zero():
                return False
            for j in range(i + 1, self.cols):
                if self.entries[i][j] != -self.entries[j][i]:
                    return False
        return True

    def __eq__(self, other):
        return (isinstance(other, PolyMatrix) and self.rows == other.rows
                and self.cols == other.cols
                and all(a == b for r1, r2 in zip(self.entries, other.entries)
                        for a, b in zip(r1, r2)))

    __hash__ = None

    def __repr__(self):
        return f"<PolyMatrix {self.rows}x{self.cols}>"


def _det_cofactor(ring, grid):
    """Determinant by memoized expansion along successive rows."""
    n = len(grid)
    if n == 0:
        return ring.one
    full = (1 << n) - 1
    memo = {0: ring.one}

    def det(colmask, row):
        val = memo.get(colmask)
        if val is not None:
            return val
        acc = ring.zero
        sign = 1
        for j in range(n):
            bit = 1 << j
            if colmask & bit:
                e = grid[row][j]
                if e:
                    sub = det(colmask & ~bit, row + 1)
                    if sub:
                        term = e * sub
                        acc = acc + term if sign > 0 else acc - term
                sign = -sign
        memo[colmask] = acc
        return acc

    return det(full, 0)


def _det_bareiss(ring, grid):
    """Fraction-free Bareiss elimination with exact polynomial divisions."""
    n = len(grid)
    if n == 0:
        return ring.one
    a = [list(row) for row in grid]
    sign = 1
    prev = ring.one
    for k in range(n - 1):
        if a[k][k].is_zero():
            for r in range(k + 1, n):
                if not a[r][k].is_zero():
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return ring.zero
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = a[k][k] * a[i][j] - a[i][k] * a[k][j]
                a[i][j] = poly_exact_div(num, prev) if num else ring.zero
            a[i][k] = ring.zero
        prev = a[k][k]
    d = a[n - 1][n - 1]
    return -d if sign < 0 else d


def minor(M: PolyMatrix, rows, cols) -> Poly:
    """Determinant of the submatrix on the given 1-based index sets.

    Bareiss elimination for size >= 5, cofactor expansion below that.
    """
    rows = IndexSet(rows)
    cols = IndexSet(cols)
    if len(rows) != len(cols):
        raise ValueError("row and column index sets must have equal size")
    if rows and (rows[-1] > M.rows or cols[-1] > M.cols):
        raise IndexError("index out of range")
    grid = [[M.entries[i - 1][j - 1] for j in cols] for i in rows]
    if len(rows) < 5:
        return _det_cofactor(M.ring, grid)
    return _det_bareiss(M.ring, grid)


def det(M: PolyMatrix) -> Poly:
    if M.rows != M.cols:
        raise ValueError("determinant of a non-square matrix")
    idx = IndexSet(range(1, M.rows + 1))
    return minor(M, idx, idx)


def pfaffian(M: PolyMatrix, idx=None) -> Poly:
    """Pfaffian of the principal submatrix on idx (full matrix by default).

    Expansion along the first row; the empty index set gives 1.
    """
    if idx is None:
        idx = IndexSet(range(1, M.rows + 1))
    else:
        idx = IndexSet(idx)
    if idx and idx[-1] > M.rows:
        raise IndexError("index out of range")
    if not M.is_skew():
        raise ValueError("pfaffian requires a skew-symmetric matrix")
    if len(idx) % 2:
        raise ValueError("pfaffian needs an even index set")
    memo = {(): M.ring.one}

    def pf(t):
        val = memo.get(t)
        if val is not None:
            return val
        acc = M.ring.zero
        first = t[0]
        rest = t[1:]
        for pos, j in enumerate(rest):
            e = M.entries[first - 1][j - 1]
            if e:
                sub = pf(tuple(x for x in rest if x != j))
                if sub:
                    term = e * sub
                    acc = acc + term if pos % 2 == 0 else acc - term
        memo[t] = acc
        return acc

    return pf(tuple(idx))


def _minor_table_levelwise(M: PolyMatrix, k: int, colsets):
    """Shared-lattice minors: {(rowset, colset): nonzero minor} over all
    requested column sets, expanding along the largest row of each rowset.
    Intermediate levels share work between overlapping column sets."""
    ring = M.ring
    colsets = [tuple(cs) for cs in colsets]
    allowed = sorted({c for cs in colsets for c in cs})
    entries = M.entries
    prev = {((), ()): ring.one}
    for j in range(1, k + 1):
        cur = {}
        for (rs, cs), val in prev.items():
            start = rs[-1] + 1 if rs else 1
            # the new row must leave room for k - j more rows afterwards
            for r in range(start, M.rows - (k - j) + 1):
                e_row = entries[r - 1]
                nrs = rs + (r,)
                for pos_c, c in enumerate(allowed):
                    if c in cs:
                        continue
                    e = e_row[c - 1]
                    if not e:
                        continue
                    pos = 0
                    for x in cs:
                        if x < c:
                            pos += 1
                    ncs = cs[:pos] + (c,) + cs[pos:]
                    key = (nrs, ncs)
                    term = e * val
                    if (j - 1 + pos) % 2:
                        term = -term
                    cur_val = cur.get(key)
                    if cur_val is None:
                        cur[key] = term
                    else:
                        s = cur_val + term
                        if s:
                            cur[key] = s
                        else:
                            del cur[key]
        prev = cur
    wanted = set(colsets)
    return {(rs, cs): v for (rs, cs), v in prev.items() if cs in wanted}


def minors_on_colsets(M: PolyMatrix, k: int, colsets):
    """All k x k minors of M with columns restricted to the given colsets.

    Returns {(rowset, colset): Poly}; zero minors are omitted.
    """
    return _minor_table_levelwise(M, k, [IndexSet(c) for c in colsets])


def exterior_power(M: PolyMatrix, k: int) -> PolyMatrix:
    """Matrix of all k x k minors.

    Rows and columns are indexed by the k-subsets of the row and column
    indices of M in lexicographic order; entries are plain minors on
    ascending index sets (no extra sign).
    """
    if k < 0 or k > min(M.rows, M.cols):
        raise ValueError("exterior power index out of range")
    if k == 0:
        return PolyMatrix(M.ring, [[M.ring.one]])
    rowsets = subsets_lex(M.rows, k)
    colsets = subsets_lex(M.cols, k)
    table = minors_on_colsets(M, k, colsets)
    zero = M.ring.zero
    return PolyMatrix(M.ring, [[table.get((tuple(rs), tuple(cs)), zero) for cs in colsets]
                               for rs in rowsets])


@dataclass
class RankResult:
    rank: int
    certified: bool
    probabilistic: bool
    witness_rows: tuple
    witness_cols: tuple
    trials: int

    def __int__(self):
        return self.rank

    def __eq__(self, other):
        if isinstance(other, int):
            return self.rank == other
        return NotImplemented


def _numeric_rank(M: PolyMatrix, point):
    """Rank of M evaluated at a rational point, with pivot row/col witness."""
    vals = [[poly_eval(e, point) for e in row] for row in M.entries]
    nr, nc = M.rows, M.cols
    piv_rows, piv_cols = [], []
    rows_left = list(range(nr))
    for col in range(nc):
        pr = None
        for r in rows_left:
            if not cis_zero(vals[r][col]):
                pr = r
                break
        if pr is None:
            continue
        piv_rows.append(pr)
        piv_cols.append(col)
        rows_left.remove(pr)
        inv = cdiv(1, vals[pr][col])
        for r in rows_left:
            f = vals[r][col]
            if cis_zero(f):
                continue
            fac = cmul(f, inv)
            vr, vp = vals[r], vals[pr]
            for c in range(col, nc):
                vr[c] = csub(vr[c], cmul(fac, vp[c]))
        if len(piv_rows) == min(nr, nc):
            break
    order = sorted(range(len(piv_rows)), key=lambda t: piv_rows[t])
    rows = tuple(piv_rows[t] + 1 for t in order)
    cols_sorted = tuple(sorted(c + 1 for c in piv_cols))
    return len(piv_rows), rows, cols_sorted


def rank_ff(M: PolyMatrix, trials: int = 4, seed: int = 0,
            certify_budget: int = 5000) -> RankResult:
    """Rank over the fraction field.

    Random rational evaluations give a certified lower bound (a nonzero
    evaluation of an r x r minor proves that minor nonzero); the upper bound
    is certified by checking all (r+1)-minors vanish symbolically when their
    count fits the budget, otherwise by extra evaluations with a
    "probabilistic" flag.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    if M.rows == 0 or M.cols == 0:
        return RankResult(0, True, False, (), (), 0)
    rng = random.Random(seed)
    names = M.ring.var_names
    best = (0, (), ())
    for _ in range(trials):
        point = {name: rng.randint(-10**6, 10**6) for name in names}
        r, rows, cols = _numeric_rank(M, point)
        if r > best[0]:
            best = (r, rows, cols)
        if best[0] == min(M.rows, M.cols):
            break
    r, wrows, wcols = best
    if r == min(M.rows, M.cols):
        return RankResult(r, True, False, wrows, wcols, trials)
    from math import comb
    count = comb(M.rows, r + 1) * comb(M.cols, r + 1)
    if certify_budget and count <= certify_budget:
        for rows in combinations(range(1, M.rows + 1), r + 1):
            for cols in combinations(range(1, M.cols + 1), r + 1):
                if not minor(M, rows, cols).is_zero():
                    # the evaluations missed a larger nonzero minor
                    return rank_ff(M, trials + 4, seed + 1, certify_budget)
        return RankResult(r, True, False, wrows, wcols, trials)
    extra = 20
    for _ in range(extra):
        point = {name: rng.randint(-10**6, 10**6) for name in names}
        rr, rows, cols = _numeric_rank(M, point)
        if rr > r:
            return rank_ff(M, trials + extra, seed + 1, certify_budget)
    return RankResult(r, False, True, wrows, wcols, trials + extra)
