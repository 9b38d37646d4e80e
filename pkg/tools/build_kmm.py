"""Build and verify the deformed generic-doubling complex and its renaming to
the 7-generator model; emit the corrected middle matrix and a diff against the
printed one."""

import pickle
import sys

sys.path.insert(0, "src")

from spinres.chain import FreeComplex, GradedFreeModule, verify_complex
from spinres.linalg import IndexSet, PolyMatrix, minor
from spinres.poly import PolyRing, poly_parse, poly_substitute

names = (["c12", "c13", "c23"] + [f"u{i}{j}" for i in range(1, 4) for j in range(1, 4)]
         + ["tau1", "tau2", "tau3", "tau4", "t"])
grad = [1] * 12 + [1, 1, 1, 2, 1]
R = PolyRing(names, [grad])
u = {(i, j): R.var(f"u{i}{j}") for i in range(1, 4) for j in range(1, 4)}
tau = {k: R.var(f"tau{k}") for k in range(1, 5)}
c12, c13, c23 = (R.var(n) for n in ("c12", "c13", "c23"))
tv = R.var("t")
Z = R.zero
q = {i: c23 * u[i, 1] - c13 * u[i, 2] + c12 * u[i, 3] for i in (1, 2, 3)}
N = PolyMatrix(R, [[-u[1, 1], u[1, 2], -u[1, 3]],
                   [-u[2, 1], u[2, 2], -u[2, 3]],
                   [-u[3, 1], u[3, 2], -u[3, 3]]])


def nm(rows, cols):
    return minor(N, IndexSet(rows), IndexSet(cols))


with open("build/aci_final.pkl", "rb") as fh:
    data = pickle.load(fh)
d3 = PolyMatrix(R, [[poly_parse(R, e) for e in row] for row in data["d3"]])
psi2 = PolyMatrix(R, [[poly_parse(R, e) for e in row] for row in data["psi2"]])
s1 = tau[4] * c23 + tau[1] * nm((2, 3), (2, 3)) + tau[2] * nm((1, 3), (2, 3)) + tau[3] * nm((1, 2), (2, 3))
s2 = tau[4] * c13 - tau[1] * nm((2, 3), (1, 3)) - tau[2] * nm((1, 3), (1, 3)) - tau[3] * nm((1, 2), (1, 3))
s3 = tau[4] * c12 + tau[1] * nm((2, 3), (1, 2)) + tau[2] * nm((1, 3), (1, 2)) + tau[3] * nm((1, 2), (1, 2))
g = [q[1] + tv * tau[1], q[2] - tv * tau[2], q[3] + tv * tau[3],
     -nm((1, 2, 3), (1, 2, 3)) - tv * tau[4]]
d1t = PolyMatrix(R, [g + [s1, s2, s3]])
qd = {1: g[0], 2: g[1], 3: g[2]}
d2t_qblock = PolyMatrix(R, [
    [-qd[2], -qd[3], Z, nm((2, 3), (1, 2)), nm((2, 3), (1, 3)), nm((2, 3), (2, 3))],
    [qd[1], Z, -qd[3], -nm((1, 3), (1, 2)), -nm((1, 3), (1, 3)), -nm((1, 3), (2, 3))],
    [Z, qd[1], qd[2], nm((1, 2), (1, 2)), nm((1, 2), (1, 3)), nm((1, 2), (2, 3))],
    [Z, Z, Z, -c12, c13, -c23]])
phi2 = PolyMatrix(R, [[Z, Z, Z, Z, Z, -tv], [Z, Z, Z, Z, tv, Z], [Z, Z, Z, -tv, Z, Z]])
delta2 = PolyMatrix.block([[d2t_qblock, psi2], [phi2, -d3.transpose()]])
delta3 = PolyMatrix.block([[d3, -psi2.transpose()],
                           [-phi2.transpose(), -d2t_qblock.transpose()]])
delta4 = PolyMatrix(R, [[-s1], [-s2], [-s3]] + [[-e] for e in g])
print("d1 d2:", (d1t @ delta2).is_zero())
print("d2 d3:", (delta2 @ delta3).is_zero())
print("d3 d4:", (delta3 @ delta4).is_zero())
tw1 = [(2,), (2,), (2,), (3,), (3,), (3,), (3,)]
tw3 = [(5,), (5,), (5,), (6,), (6,), (6,), (5,)]
C = FreeComplex(R, [GradedFreeModule(1, [(0,)]), GradedFreeModule(7, tw1),
                    GradedFreeModule(12, [(4,)] * 12), GradedFreeModule(7, tw3),
                    GradedFreeModule(1, [(8,)])],
                [d1t, delta2, delta3, delta4])
rep = verify_complex(C)
print("deformed cone verify:", rep.passed, rep.diff_ranks, "prob:", rep.probabilistic)
for c in rep.checks:
    if not c.passed:
        print("  FAIL", c.name, c.detail)

Knames = [f"x{i}" for i in range(1, 5)] + [f"a{i}{j}" for i in range(1, 4)
                                           for j in range(1, 5)] + ["v"]
K = PolyRing(Knames, [[1] * 16 + [2]])
x = {i: K.var(f"x{i}") for i in range(1, 5)}
a = {(i, j): K.var(f"a{i}{j}") for i in range(1, 4) for j in range(1, 5)}
vv = K.var("v")
images = {"c12": -x[3], "c13": -x[2], "c23": -x[1], "t": x[4],
          "tau1": a[1, 4], "tau2": -a[2, 4], "tau3": a[3, 4], "tau4": -vv}
for i in range(1, 4):
    images[f"u{i}1"] = -a[i, 1]
    images[f"u{i}2"] = a[i, 2]
    images[f"u{i}3"] = -a[i, 3]


def ren(M):
    return PolyMatrix(K, [[poly_substitute(e, K, images) for e in row]
                          for row in M.entries])


D1 = ren(d1t)
D2 = ren(delta2)
rowperm = [1, 2, 3, 5, 6, 7, 4]
colperm = [1, 2, 3, 4, 5, 6, 12, 11, 10, 9, 8, 7]
d1K = PolyMatrix(K, [[D1.entries[0][r - 1] for r in rowperm]])
DK = PolyMatrix(K, [[D2.entries[r - 1][c - 1] for c in colperm] for r in rowperm])
print("KMM generators:", [str(e) for e in d1K.entries[0]])
sK = PolyMatrix.exchange(K, 12)
print("D s D^T == 0:", (DK @ sK @ DK.transpose()).is_zero())
print("d1K . DK == 0:", (d1K @ DK).is_zero())
print("KMM D matrix:")
for r in range(7):
    print("  [" + ", ".join(str(e) for e in DK.entries[r]) + "]")
with open("build/kmm_D.pkl", "wb") as fh:
    pickle.dump({"d1": [str(e) for e in d1K.entries[0]],
                 "D": [[str(e) for e in row] for row in DK.entries]}, fh)
