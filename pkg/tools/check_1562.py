"""Verify the printed type-(1,5,6,2) resolution, its deformation, and the
doubling lift psi2(t) transcribed from the rotated figure."""

import pickle
import sys

sys.path.insert(0, "src")

from spinres.chain import FreeComplex, GradedFreeModule, verify_complex
from spinres.linalg import PolyMatrix
from spinres.poly import PolyRing
from spinres.coeff import GaussRat

xylabels = ["12", "13", "14", "23", "24", "34"]
zlabels = ["123", "124", "134", "234"]
names = ([f"x{l}" for l in xylabels] + [f"y{l}" for l in xylabels]
         + [f"z{l}" for l in zlabels] + [f"tau{k}" for k in range(1, 7)] + ["t"])
gr1 = [1] * 6 + [1] * 6 + [0] * 4 + [1, 1, 1, 1, 0, 0] + [2]
gr2 = [0] * 6 + [0] * 6 + [1] * 4 + [0, 0, 0, 0, 1, 1] + [0]
S = PolyRing(names, [gr1, gr2])
x = {tuple(int(c) for c in l): S.var(f"x{l}") for l in xylabels}
y = {tuple(int(c) for c in l): S.var(f"y{l}") for l in xylabels}
z = {tuple(int(c) for c in l): S.var(f"z{l}") for l in zlabels}
tau = {k: S.var(f"tau{k}") for k in range(1, 7)}
t = S.var("t")
Z = S.zero


def xv(i, j):
    """x_{i,j} extended antisymmetrically to i > j."""
    if i < j:
        return x[(i, j)]
    return -x[(j, i)]


def yv(i, j):
    if i < j:
        return y[(i, j)]
    return -y[(j, i)]


def zhat(i):
    key = tuple(sorted(set((1, 2, 3, 4)) - {i}))
    return z[key]


def Delta(pair1, pair2):
    return x[pair1] * y[pair2] - x[pair2] * y[pair1]


u_cubic = {}
u_cubic[(1, 2, 3)] = (-2 * z[(2, 3, 4)] * Delta((1, 2), (1, 3))
                      + 2 * z[(1, 3, 4)] * Delta((1, 2), (2, 3))
                      - 2 * z[(1, 2, 4)] * Delta((1, 3), (2, 3))
                      + z[(1, 2, 3)] * (Delta((1, 3), (2, 4)) - Delta((1, 2), (3, 4))
                                        + Delta((1, 4), (2, 3))))
u_cubic[(1, 2, 4)] = (2 * z[(2, 3, 4)] * Delta((1, 2), (1, 4))
                      - 2 * z[(1, 3, 4)] * Delta((1, 2), (2, 4))
                      + z[(1, 2, 4)] * (Delta((1, 2), (3, 4)) + Delta((1, 3), (2, 4))
                                        + Delta((1, 4), (2, 3)))
                      - 2 * z[(1, 2, 3)] * Delta((1, 4), (2, 4)))
u_cubic[(1, 3, 4)] = (2 * z[(2, 3, 4)] * Delta((1, 3), (1, 4))
                      + z[(1, 3, 4)] * (-Delta((1, 2), (3, 4)) - Delta((1, 3), (2, 4))
                                        + Delta((1, 4), (2, 3)))
                      + 2 * z[(1, 2, 4)] * Delta((1, 3), (3, 4))
                      - 2 * z[(1, 2, 3)] * Delta((1, 4), (3, 4)))
u_cubic[(2, 3, 4)] = (z[(2, 3, 4)] * (-Delta((1, 2), (3, 4)) - Delta((1, 3), (2, 4))
                                      - Delta((1, 4), (2, 3)))
                      - 2 * z[(1, 3, 4)] * Delta((2, 3), (2, 4))
                      + 2 * z[(1, 2, 4)] * Delta((2, 3), (3, 4))
                      - 2 * z[(1, 2, 3)] * Delta((2, 4), (3, 4)))
a = x[(1, 2)] * x[(3, 4)] - x[(1, 3)] * x[(2, 4)] + x[(1, 4)] * x[(2, 3)]
b = (x[(1, 2)] * y[(3, 4)] - x[(1, 3)] * y[(2, 4)] + x[(1, 4)] * y[(2, 3)]
     + x[(3, 4)] * y[(1, 2)] - x[(2, 4)] * y[(1, 3)] + x[(2, 3)] * y[(1, 4)])
c = y[(1, 2)] * y[(3, 4)] - y[(1, 3)] * y[(2, 4)] + y[(1, 4)] * y[(2, 3)]
uu = b * b - 4 * a * c

uj = {j: sum((xv(i, j) * zhat(i) * ((-1) ** i) for i in range(1, 5) if i != j), Z)
      for j in range(1, 5)}
vj = {j: sum((yv(i, j) * zhat(i) * ((-1) ** i) for i in range(1, 5) if i != j), Z)
      for j in range(1, 5)}
delta1 = Delta((1, 2), (3, 4))
delta2 = Delta((1, 3), (2, 4))
delta3 = Delta((1, 4), (2, 3))

# the printed u_{2,3,4} has a sign typo on its Delta(13,24) term; the unique
# left kernel of d2(t) in the generator degrees fixes the signs below.
u234c = (z[(2, 3, 4)] * (-Delta((1, 2), (3, 4)) + Delta((1, 3), (2, 4))
                         - Delta((1, 4), (2, 3)))
         - 2 * z[(1, 3, 4)] * Delta((2, 3), (2, 4))
         + 2 * z[(1, 2, 4)] * Delta((2, 3), (3, 4))
         - 2 * z[(1, 2, 3)] * Delta((2, 4), (3, 4)))
u_t = uu - t * t
gen = [u234c - z[(2, 3, 4)] * t,
       u_cubic[(1, 3, 4)] - z[(1, 3, 4)] * t,
       u_cubic[(1, 2, 4)] - z[(1, 2, 4)] * t,
       u_cubic[(1, 2, 3)] + z[(1, 2, 3)] * t,
       u_t]
d1t = PolyMatrix(S, [gen])

d2t = PolyMatrix(S, [
    [vj[1], uj[1], -delta1 + delta2 - delta3 + t, 2 * Delta((1, 3), (1, 4)),
     -2 * Delta((1, 2), (1, 4)), -2 * Delta((1, 2), (1, 3))],
    [-vj[2], -uj[2], -2 * Delta((2, 3), (2, 4)), -delta1 - delta2 + delta3 + t,
     2 * Delta((1, 2), (2, 4)), 2 * Delta((1, 2), (2, 3))],
    [vj[3], uj[3], 2 * Delta((2, 3), (3, 4)), 2 * Delta((1, 3), (3, 4)),
     -delta1 - delta2 - delta3 - t, -2 * Delta((1, 3), (2, 3))],
    [vj[4], uj[4], 2 * Delta((2, 4), (3, 4)), 2 * Delta((1, 4), (3, 4)),
     -2 * Delta((1, 4), (2, 4)), delta1 - delta2 - delta3 + t],
    [Z, Z, -z[(2, 3, 4)], -z[(1, 3, 4)], z[(1, 2, 4)], z[(1, 2, 3)]]])

d3t = PolyMatrix(S, [
    [b + t, 2 * a],
    [-2 * c, -b + t],
    [-vj[1], -uj[1]],
    [vj[2], uj[2]],
    [vj[3], uj[3]],
    [-vj[4], -uj[4]]])

print("d1(t) d2(t) == 0:", (d1t @ d2t).is_zero())
print("d2(t) d3(t) == 0:", (d2t @ d3t).is_zero())
if not (d1t @ d2t).is_zero():
    P = d1t @ d2t
    for j in range(6):
        if P.entries[0][j]:
            print(f"  (d1 d2)[{j + 1}]:", str(P.entries[0][j])[:150])
if not (d2t @ d3t).is_zero():
    P = d2t @ d3t
    for i in range(5):
        for j in range(2):
            if P.entries[i][j]:
                print(f"  (d2 d3)[{i + 1},{j + 1}]:", str(P.entries[i][j])[:150])

# Figure-1 matrix (6 rows x 5 cols as typeset); psi2(t) = its transpose
from fractions import Fraction
half = Fraction(1, 2)
fig = [
    [-x[(1, 4)] * tau[4] - x[(2, 4)] * tau[3] - x[(3, 4)] * tau[2],
     x[(1, 3)] * tau[4] + x[(2, 3)] * tau[3] - x[(3, 4)] * tau[1],
     -x[(1, 2)] * tau[4] + x[(2, 3)] * tau[2] + x[(2, 4)] * tau[1],
     -x[(1, 2)] * tau[3] - x[(1, 3)] * tau[2] - x[(1, 4)] * tau[1],
     tau[5]],
    [y[(1, 4)] * tau[4] + y[(2, 4)] * tau[3] + y[(3, 4)] * tau[2],
     -y[(1, 3)] * tau[4] - y[(2, 3)] * tau[3] + y[(3, 4)] * tau[1],
     y[(1, 2)] * tau[4] - y[(2, 3)] * tau[2] - y[(2, 4)] * tau[1],
     y[(1, 2)] * tau[3] + y[(1, 3)] * tau[2] + y[(1, 4)] * tau[1],
     tau[6]],
    [x[(1, 4)] * tau[6] + y[(1, 4)] * tau[5] - z[(1, 2, 4)] * tau[3] * half - z[(1, 3, 4)] * tau[2] * half,
     -x[(1, 3)] * tau[6] - y[(1, 3)] * tau[5] + z[(1, 2, 3)] * tau[3] * half - z[(1, 3, 4)] * tau[1] * half,
     x[(1, 2)] * tau[6] + y[(1, 2)] * tau[5] + z[(1, 2, 3)] * tau[2] * half + z[(1, 2, 4)] * tau[1] * half,
     Z, Z],
    [-x[(2, 4)] * tau[6] - y[(2, 4)] * tau[5] - z[(1, 2, 4)] * tau[4] * half + z[(2, 3, 4)] * tau[2] * half,
     x[(2, 3)] * tau[6] + y[(2, 3)] * tau[5] + z[(1, 2, 3)] * tau[4] * half + z[(2, 3, 4)] * tau[1] * half,
     Z,
     -x[(1, 2)] * tau[6] - y[(1, 2)] * tau[5] - z[(1, 2, 3)] * tau[2] * half - z[(1, 2, 4)] * tau[1] * half,
     Z],
    [x[(3, 4)] * tau[6] + y[(3, 4)] * tau[5] + z[(1, 3, 4)] * tau[4] * half + z[(2, 3, 4)] * tau[3] * half,
     Z,
     -x[(2, 3)] * tau[6] - y[(2, 3)] * tau[5] - z[(1, 2, 3)] * tau[4] * half - z[(2, 3, 4)] * tau[1] * half,
     x[(1, 3)] * tau[6] + y[(1, 3)] * tau[5] - z[(1, 2, 3)] * tau[3] * half + z[(1, 3, 4)] * tau[1] * half,
     Z],
    [Z,
     -x[(3, 4)] * tau[6] - y[(3, 4)] * tau[5] - z[(1, 3, 4)] * tau[4] * half - z[(2, 3, 4)] * tau[3] * half,
     x[(2, 4)] * tau[6] + y[(2, 4)] * tau[5] + z[(1, 2, 4)] * tau[4] * half - z[(2, 3, 4)] * tau[2] * half,
     -x[(1, 4)] * tau[6] - y[(1, 4)] * tau[5] + z[(1, 2, 4)] * tau[3] * half + z[(1, 3, 4)] * tau[2] * half,
     Z]]
psi2t = PolyMatrix(S, [[fig[r][cdx] for r in range(6)] for cdx in range(5)])
f1 = (-tau[1] * uj[4] - tau[2] * uj[3] - tau[3] * uj[2] - tau[4] * uj[1]
      + tau[5] * b + 2 * a * tau[6] - tau[5] * t)
f2 = (tau[1] * vj[4] + tau[2] * vj[3] + tau[3] * vj[2] + tau[4] * vj[1]
      - 2 * c * tau[5] - b * tau[6] - tau[6] * t)
psi1t = PolyMatrix(S, [[f1, f2]])
lhs = d1t @ psi2t
rhs = psi1t @ d3t.transpose()
print("level-1 square (printed psi2):", (lhs - rhs).is_zero())
print("middle skewness (printed psi2):",
      ((d2t @ psi2t.transpose()) + (psi2t @ d2t.transpose())).is_zero())
if not (lhs - rhs).is_zero():
    P = lhs - rhs
    for j in range(6):
        if P.entries[0][j]:
            print(f"  square defect[{j + 1}]:", str(P.entries[0][j])[:200])
