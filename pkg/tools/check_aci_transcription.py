"""Verify the printed matrices of the codim-3 ACI resolution and its doubling
lift, and solve for minimal corrections where the printed data fails the
complex/chain-map identities."""

import sys
sys.path.insert(0, "src")

from spinres.poly import PolyRing
from spinres.linalg import PolyMatrix, minor, IndexSet

names = (["c12", "c13", "c23"]
         + [f"u{i}{j}" for i in range(1, 4) for j in range(1, 4)]
         + ["tau1", "tau2", "tau3", "tau4"])
grad = [1] * 12 + [1, 1, 1, 2]
R = PolyRing(names, [grad])
c12, c13, c23 = (R.var(n) for n in ("c12", "c13", "c23"))
u = {(i, j): R.var(f"u{i}{j}") for i in range(1, 4) for j in range(1, 4)}
tau = [None] + [R.var(f"tau{k}") for k in range(1, 5)]
Z = R.zero

q = [None,
     c23 * u[1, 1] - c13 * u[1, 2] + c12 * u[1, 3],
     c23 * u[2, 1] - c13 * u[2, 2] + c12 * u[2, 3],
     c23 * u[3, 1] - c13 * u[3, 2] + c12 * u[3, 3]]

N = PolyMatrix(R, [[-u[1, 1], u[1, 2], -u[1, 3]],
                   [-u[2, 1], u[2, 2], -u[2, 3]],
                   [-u[3, 1], u[3, 2], -u[3, 3]]])


def nm(rows, cols):
    return minor(N, IndexSet(rows), IndexSet(cols))


d1 = PolyMatrix(R, [[q[1], q[2], q[3], -nm((1, 2, 3), (1, 2, 3))]])
d2 = PolyMatrix(R, [
    [-q[2], -q[3], Z, nm((2, 3), (1, 2)), nm((2, 3), (1, 3)), nm((2, 3), (2, 3))],
    [q[1], Z, -q[3], -nm((1, 3), (1, 2)), -nm((1, 3), (1, 3)), -nm((1, 3), (2, 3))],
    [Z, q[1], q[2], nm((1, 2), (1, 2)), nm((1, 2), (1, 3)), nm((1, 2), (2, 3))],
    [Z, Z, Z, -c12, c13, -c23]])
d3 = PolyMatrix(R, [
    [Z, -c12, c13],
    [c12, Z, -c23],
    [-c13, c23, Z],
    [-u[1, 1], u[1, 2], -u[1, 3]],
    [-u[2, 1], u[2, 2], -u[2, 3]],
    [-u[3, 1], u[3, 2], -u[3, 3]]])

print("d1.d2 == 0:", (d1 @ d2).is_zero())
print("d2.d3 == 0:", (d2 @ d3).is_zero())
if not (d2 @ d3).is_zero():
    P = d2 @ d3
    for i in range(4):
        for j in range(3):
            if P.entries[i][j]:
                print(f"  (d2 d3)[{i+1},{j+1}] =", P.entries[i][j])

# try column sign flips on d2 / d3 to fix d2.d3 = 0 while keeping d1.d2 = 0
import itertools
found = []
for se in itertools.product((1, -1), repeat=6):
    d2f = PolyMatrix(R, [[d2.entries[i][j] * se[j] for j in range(6)] for i in range(4)])
    if not (d1 @ d2f).is_zero():
        continue
    for te in itertools.product((1, -1), repeat=3):
        d3f = PolyMatrix(R, [[d3.entries[i][j] * te[j] * se[i]
                              for j in range(3)] for i in range(6)])
        # row i of d3 corresponds to column i of d2: row flips must match col flips
        if (d2f @ d3f).is_zero():
            found.append((se, te))
print("sign-flip fixes (d2 cols, d3 cols):", found[:8], "count", len(found))
