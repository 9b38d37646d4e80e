"""Buchsbaum-Eisenbud multiplier maps for length-4 Gorenstein resolutions.

For a resolution 0 -> R -> F3 -> F2 -> F1 -> R with ranks (1, n, 2n-2, n, 1)
and differential ranks (1, n-1, n-1, 1), the first structure theorem factors
the exterior powers of the differentials:

    minor(d3; K, [n] \\ {j}) = a3[K] * eps(j) * d4[j]      eps(j) = (-1)^(j-1)
    minor(d2; L, K)          = a2[L] * eta(K) * a3[K^c]    eta(K) = sgn(K, K^c)

a3 is stored on plain (n-1)-subsets of the middle basis; when a hyperbolic
labeling of the middle basis is attached, signed-subset access reorders the
wedge accordingly.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from .chain import FreeComplex
from .linalg import IndexSet, PolyMatrix, minors_on_colsets, rank_ff, subsets_lex
from .poly import InexactDivisionError, Poly, poly_exact_div


class MultiplierError(ValueError):
    pass


def shuffle_sign(K, Kc) -> int:
    """Sign of the permutation (K, K^c) of the ascending union."""
    inv = sum(1 for a in K for b in Kc if a > b)
    return -1 if inv % 2 else 1


def _eps(j: int) -> int:
    return -1 if j % 2 == 0 else 1


@dataclass
class MultiplierSet:
    n: int
    ranks: tuple
    a4: list
    a3: dict           # IndexSet (plain rows of F2) -> Poly
    a2: dict           # IndexSet (plain rows of F1) -> Poly
    pivot_col: int
    labels: dict = None  # signed label -> 1-based middle-basis position
    ring: object = None

    @property
    def m(self) -> int:
        return self.n - 1

    def a3_signed(self, K) -> Poly:
        """a3 coordinate for a signed index set K (canonical order)."""
        if self.labels is None:
            raise MultiplierError("no hyperbolic labeling attached")
        pos = [self.labels[k] for k in K]
        order = sorted(range(len(pos)), key=lambda t: pos[t])
        rows = IndexSet(pos[t] for t in order)
        inv = sum(1 for a in range(len(pos)) for b in range(a + 1, len(pos))
                  if pos[a] > pos[b])
        val = self.a3.get(rows, self.ring.zero)
        return -val if inv % 2 else val

    def to_json(self):
        def key(t):
            return "[" + ",".join(str(x) for x in t) + "]"
        if self.labels is not None:
            m = self.m
            coords = {}
            for K in signed_full_sets(m):
                v = self.a3_signed(K)
                if not v.is_zero():
                    coords[key(K)] = str(v)
        else:
            coords = {key(R): str(v) for R, v in sorted(self.a3.items()) if not v.is_zero()}
        return {
            "n": self.n,
            "ranks": list(self.ranks),
            "a4": [str(v) for v in self.a4],
            "a3": coords,
            "a2": {key(L): str(v) for L, v in sorted(self.a2.items())},
        }


def signed_full_sets(m: int):
    """All signed m-subsets of {+-1..+-m} in canonical order, lexicographically
    by the choice pattern (one of -i/+i/both/neither per index, m total)."""
    out = []

    def rec(i, remaining, acc):
        if remaining == 0:
            out.append(tuple(acc))
            return
        if i > m or (m - i + 1) * 2 < remaining:
            return
        # canonical order puts -i before +i
        if remaining >= 2:
            rec(i + 1, remaining - 2, acc + [-i, i])
        rec(i + 1, remaining - 1, acc + [-i])
        rec(i + 1, remaining - 1, acc + [i])
        rec(i + 1, remaining, acc)

    rec(1, m, [])
    return out


def compute_multipliers(C: FreeComplex, labels=None) -> MultiplierSet:
    """Multipliers a4, a3, a2 for a (1, n, 2n-2, n, 1) resolution.

    labels optionally attaches a hyperbolic labeling {+-i -> column of F2}.
    The a3 coordinates divide exactly precisely when the complex is acyclic
    with the Gorenstein rank pattern; a failed division is reported as such.
    """
    if C.length != 4:
        raise MultiplierError("multipliers are defined for length-4 complexes")
    ranks = C.ranks()
    n = ranks[1]
    if ranks != (1, n, 2 * n - 2, n, 1):
        raise MultiplierError(f"rank pattern {ranks} is not (1, n, 2n-2, n, 1)")
    ring = C.ring
    d4 = C.differential(4)
    d3 = C.differential(3)
    d2 = C.differential(2)
    a4 = [d4.entries[i][0] for i in range(n)]
    j0 = next((j for j in range(1, n + 1) if a4[j - 1]), None)
    if j0 is None:
        raise MultiplierError("all d4 entries zero")
    div3 = a4[j0 - 1] if _eps(j0) > 0 else -a4[j0 - 1]
    colset = IndexSet(j for j in range(1, n + 1) if j != j0)
    table = minors_on_colsets(d3, n - 1, [colset])
    a3 = {}
    for R in subsets_lex(2 * n - 2, n - 1):
        mv = table.get((tuple(R), tuple(colset)))
        if mv is None:
            a3[R] = ring.zero
            continue
        try:
            a3[R] = poly_exact_div(mv, div3)
        except InexactDivisionError as exc:
            raise MultiplierError(
                f"a3 division obstruction at rows {tuple(R)}: {exc}") from exc
    R0 = next((R for R in subsets_lex(2 * n - 2, n - 1) if a3[R]), None)
    if R0 is None:
        raise MultiplierError("a3 vanishes identically")
    K0 = R0.complement(2 * n - 2)
    div2 = a3[R0] if shuffle_sign(K0, R0) > 0 else -a3[R0]
    a2 = {}
    for L in subsets_lex(n, n - 1):
        try:
            a2[L] = poly_exact_div(minorn(d2, L, K0), div2)
        except InexactDivisionError as exc:
            raise MultiplierError(
                f"a2 division obstruction at rows {tuple(L)}: {exc}") from exc
    return MultiplierSet(n=n, ranks=(1, n - 1, n - 1, 1), a4=a4, a3=a3, a2=a2,
                         pivot_col=j0, labels=dict(labels) if labels else None,
                         ring=ring)


def minorn(M: PolyMatrix, rows, cols) -> Poly:
    from .linalg import minor
    return minor(M, rows, cols)


@dataclass
class BEDiagramReport:
    checks: list = field(default_factory=list)

    @property
    def passed(self):
        return all(ok for _, ok, _ in self.checks)

    def add(self, name, ok, detail=""):
        self.checks.append((name, bool(ok), detail))

    def first_failure(self):
        for name, ok, detail in self.checks:
            if not ok:
                return name, detail
        return None

    def to_json(self):
        return {"passed": self.passed,
                "checks": [{"name": n, "passed": ok, "detail": d}
                           for n, ok, d in self.checks]}


def verify_be_diagram(C: FreeComplex, M: MultiplierSet) -> BEDiagramReport:
    """Entrywise symbolic check of both factorization identities."""
    rep = BEDiagramReport()
    n = M.n
    ring = C.ring
    d3 = C.differential(3)
    d2 = C.differential(2)
    colsets = [IndexSet(j for j in range(1, n + 1) if j != j0) for j0 in range(1, n + 1)]
    table3 = minors_on_colsets(d3, n - 1, colsets)
    ok = True
    detail = ""
    for j0 in range(1, n + 1):
        cs = tuple(colsets[j0 - 1])
        rhs_base = M.a4[j0 - 1] if _eps(j0) > 0 else -M.a4[j0 - 1]
        for R in subsets_lex(2 * n - 2, n - 1):
            lhs = table3.get((tuple(R), cs), ring.zero)
            if lhs != M.a3[R] * rhs_base:
                ok = False
                detail = f"rows {tuple(R)}, omitted column {j0}"
                break
        if not ok:
            break
    rep.add("wedge^r3 d3 = a3 . a4*", ok, detail)
    colsets2 = subsets_lex(2 * n - 2, n - 1)
    table2 = minors_on_colsets(d2, n - 1, colsets2)
    ok = True
    detail = ""
    for K in colsets2:
        Kc = K.complement(2 * n - 2)
        sgn = shuffle_sign(K, Kc)
        a3c = M.a3[Kc]
        for L in subsets_lex(n, n - 1):
            lhs = table2.get((tuple(L), tuple(K)), ring.zero)
            rhs = M.a2[L] * a3c
            if sgn < 0:
                rhs = -rhs
            if lhs != rhs:
                ok = False
                detail = f"rows {tuple(L)}, cols {tuple(K)}"
                break
        if not ok:
            break
    rep.add("wedge^r2 d2 = a2 . a3*", ok, detail)
    return rep
