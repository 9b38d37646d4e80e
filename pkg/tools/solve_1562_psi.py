"""Solve for the doubling lift of the deformed (1,5,6,2) resolution and diff
it against the figure transcription."""

import pickle
import sys

sys.path.insert(0, "src")

from spinres.coeff import cadd, cis_zero, cdiv, cmul
from spinres.qsolve import kernel_basis
from spinres.linalg import PolyMatrix

with open("tools/check_1562.py") as fh:
    text = fh.read()
prelude = text.split('print("level-1 square')[0]
# drop the check prints in the prelude
prelude = prelude.replace('print("d1(t) d2(t) == 0:", (d1t @ d2t).is_zero())', '')
prelude = prelude.replace('print("d2(t) d3(t) == 0:", (d2t @ d3t).is_zero())', '')
exec(prelude)

xyvars = list(range(0, 12))
zvars = list(range(12, 16))

# unknown slots for psi2 entries
unk = []
for r in range(4):
    for cidx in range(2):
        for k in (1, 2, 3, 4):
            for v in xyvars:
                unk.append(("A", r, cidx, k, v))
        unk.append(("T", r, cidx))  # t * const
    for cidx in range(2, 6):
        for k in (1, 2, 3, 4):
            for v in zvars:
                unk.append(("A", r, cidx, k, v))
        for k in (5, 6):
            for v in xyvars:
                unk.append(("A", r, cidx, k, v))
for cidx in range(2):
    for k in (5, 6):
        unk.append(("C", 4, cidx, k))
unk += [("G", i, j) for i in range(2) for j in range(2)]
uidx = {x: i for i, x in enumerate(unk)}
NU = len(unk)
print("unknowns:", NU)


def upoly(x):
    if x[0] == "A":
        _, r, cidx, k, v = x
        return tau[k] * S.var(v)
    if x[0] == "T":
        return t
    if x[0] == "C":
        _, r, cidx, k = x
        return tau[k]
    raise ValueError


rows = []


def addeq(eq):
    for rowd in eq.values():
        r = {j: v for j, v in rowd.items() if not cis_zero(v)}
        if r:
            rows.append(r)


# level 1: sum_r d1[r] psi2[r, c] - sum_{t', t} psi1[t] G[t', t] d3[c][t'] = 0
for cidx in range(6):
    eq = {}
    for x in unk:
        if x[0] in ("A", "T", "C") and x[2] == cidx:
            r = x[1]
            e = d1t.entries[0][r]
            prod = e * upoly(x)
            j = uidx[x]
            for mon, co in prod.packed_items():
                cur = eq.setdefault(mon, {})
                cur[j] = cadd(cur.get(j, 0), co)
    for tprime in range(2):
        e = d3t.entries[cidx][tprime]
        if e.is_zero():
            continue
        for tt in range(2):
            prod = -(e * psi1t.entries[0][tt])
            j = uidx[("G", tprime, tt)]
            for mon, co in prod.packed_items():
                cur = eq.setdefault(mon, {})
                cur[j] = cadd(cur.get(j, 0), co)
    addeq(eq)

# middle skewness: d2 psi2^T + psi2 d2^T = 0
for i in range(5):
    for jj in range(i, 5):
        eq = {}
        for x in unk:
            if x[0] not in ("A", "T", "C"):
                continue
            r, cidx = x[1], x[2]
            tot = S.zero
            if r == jj and not d2t.entries[i][cidx].is_zero():
                tot = tot + d2t.entries[i][cidx] * upoly(x)
            if r == i and not d2t.entries[jj][cidx].is_zero():
                tot = tot + d2t.entries[jj][cidx] * upoly(x)
            if tot.is_zero():
                continue
            j = uidx[x]
            for mon, co in tot.packed_items():
                cur = eq.setdefault(mon, {})
                cur[j] = cadd(cur.get(j, 0), co)
        addeq(eq)
print("rows:", len(rows))
basis = kernel_basis(rows, list(range(NU)))
print("solution dim:", len(basis))
good = []
for b in basis:
    G = [[b.get(uidx[("G", i, j)], 0) for j in range(2)] for i in range(2)]
    if any(not cis_zero(G[i][j]) for i in range(2) for j in range(2)):
        good.append((b, G))
print("solutions with nonzero G:", len(good))
for b, G in good[:4]:
    print("  G:", G)
if len(good) == 1:
    b, G = good[0]
    psi2c = [[S.zero] * 6 for _ in range(5)]
    for x, j in uidx.items():
        if x[0] == "G":
            continue
        v = b.get(j)
        if v is None or cis_zero(v):
            continue
        r, cidx = x[1], x[2]
        psi2c[r][cidx] = psi2c[r][cidx] + upoly(x) * v
    psi2c = PolyMatrix(S, psi2c)
    Gm = PolyMatrix(S, [[S.const(G[i][j]) for j in range(2)] for i in range(2)])
    d3c = d3t @ Gm
    lhs = d1t @ psi2c
    rhs = psi1t @ d3c.transpose()
    print("level-1 verified:", (lhs - rhs).is_zero())
    print("skew verified:",
          ((d2t @ psi2c.transpose()) + (psi2c @ d2t.transpose())).is_zero())
    diffs = [(r, c) for r in range(5) for c in range(6)
             if psi2c.entries[r][c] != psi2t.entries[r][c]]
    print("entries differing from figure:", diffs)
    for (r, c) in diffs:
        print(f"  [{r + 1},{c + 1}] figure: {psi2t.entries[r][c]}")
        print(f"           solved: {psi2c.entries[r][c]}")
    with open("build/psi1562.pkl", "wb") as fh:
        pickle.dump({"psi2": [[str(e) for e in row] for row in psi2c.entries],
                     "G": G}, fh)
