"""Sparse exact Gaussian elimination over Q(i).

Rows are dicts {column -> coefficient}.  Columns may be any sortable keys;
pivoting always takes the minimal column of a row, which keeps results
deterministic.
"""

from __future__ import annotations

from .coeff import cdiv, cis_zero, cmul, cneg, csub


class Echelon:
    """Incremental forward echelon form of a row space."""

    def __init__(self):
        self.pivots = {}  # pivot column -> row dict normalized to pivot 1
        self.order = []   # pivot columns in insertion order

    @property
    def rank(self):
        return len(self.pivots)

    def reduce(self, row) -> dict:
        """Residue of row modulo the current row space.

        A pivot row's support starts at its pivot column, so eliminating a
        column only introduces larger ones; one heap pass suffices.
        """
        import heapq

        res = {c: v for c, v in row.items() if not cis_zero(v)}
        heap = list(res)
        heapq.heapify(heap)
        while heap:
            c = heapq.heappop(heap)
            f = res.get(c)
            if f is None:
                continue
            piv = self.pivots.get(c)
            if piv is None:
                continue
            for pc, pv in piv.items():
                cur = res.get(pc)
                new = csub(cur, cmul(f, pv)) if cur is not None else cneg(cmul(f, pv))
                if cis_zero(new):
                    res.pop(pc, None)
                else:
                    if cur is None and pc != c:
                        heapq.heappush(heap, pc)
                    res[pc] = new
        return res

    def add(self, row) -> bool:
        """Insert a row; True if it enlarged the space."""
        res = self.reduce(row)
        if not res:
            return False
        c = min(res)
        inv = cdiv(1, res[c])
        self.pivots[c] = {k: cmul(v, inv) for k, v in res.items()}
        self.order.append(c)
        return True

    def contains(self, row) -> bool:
        return not self.reduce(row)


def kernel_basis(equations, columns):
    """Basis of {x : A x = 0} for equations given as rows {col -> coeff}.

    columns is the ordered list of unknowns.  Returns a list of solution
    dicts, one per free column, deterministic in column order.
    """
    ech = Echelon()
    for eq in equations:
        ech.add(eq)
    piv_cols = set(ech.pivots)
    free = [c for c in columns if c not in piv_cols]
    basis = []
    for f in free:
        sol = {f: 1}
        # back-substitute pivots in descending column order
        for c in sorted(ech.pivots, reverse=True):
            row = ech.pivots[c]
            acc = 0
            for k, v in row.items():
                if k == c:
                    continue
                xv = sol.get(k)
                if xv is not None:
                    acc = csub(acc, cmul(v, xv))
            if not cis_zero(acc):
                sol[c] = acc
        basis.append(sol)
    return basis
