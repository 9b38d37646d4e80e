"""Derive the coefficients of the equivariant map p : S2(half-spinor) -> /\^m V.

The half-spinor basis is u_A (A a subset of [1..m] of fixed parity), the
target basis is e_K for signed m-subsets K of {+-1..+-m} in canonical order
(ascending absolute value, negative label before positive at ties).

so(V) acts on spinors via phi(R_{a,b}) = 1/2 [gamma(a), gamma(b)] and on
/\^m V as a derivation.  The space of equivariant maps is one-dimensional per
parity; we solve the equivariance equations exactly and normalize so the
diagonal coefficient p(u_L u_L) on canonical e_{-L u L^c} equals +1 for the
lexicographically first L.

Output: diagonal signs (should all be +1) and the mixed coefficients
sigma(L, M, N) scaled by 2^(|L(+)M|-1), tested against closed-form candidates.
"""

import sys
from fractions import Fraction
from itertools import combinations

sys.path.insert(0, "src")


def subsets(m, parity):
    out = []
    for k in range(m + 1):
        if k % 2 == parity % 2:
            out.extend(combinations(range(1, m + 1), k))
    return out


def canonical_signed(labels):
    """Sort signed labels canonically; return (tuple, sign) or (None, 0) on repeat."""
    labels = list(labels)
    key = lambda v: (abs(v), v > 0)
    # insertion sort counting swaps
    sign = 1
    for i in range(1, len(labels)):
        j = i
        while j > 0 and key(labels[j - 1]) > key(labels[j]):
            labels[j - 1], labels[j] = labels[j], labels[j - 1]
            sign = -sign
            j -= 1
    for i in range(1, len(labels)):
        if labels[i - 1] == labels[i]:
            return None, 0
    return tuple(labels), sign


# --- gamma operators on spinor basis (subsets of [1..m]) ---

def wedge_neg(i, A):
    """gamma(e_{-i}) u_A; returns (B, sign) or None."""
    if i in A:
        return None
    pos = sum(1 for a in A if a < i)
    B = tuple(sorted(A + (i,)))
    return B, (-1) ** pos


def contract_pos(i, A):
    """gamma(e_i) u_A."""
    if i not in A:
        return None
    pos = A.index(i)
    B = A[:pos] + A[pos + 1:]
    return B, (-1) ** pos


def gamma(label, A):
    return contract_pos(label, A) if label > 0 else wedge_neg(-label, A)


def phi_R(a, b, A):
    """phi(R_{e_a, e_b}) u_A = 1/2 (gamma_a gamma_b - gamma_b gamma_a) u_A.

    Returns dict B -> Fraction coefficient.
    """
    out = {}

    def apply2(first, second, s):
        r1 = gamma(second, A)
        if r1 is None:
            return
        B1, s1 = r1
        r2 = gamma(first, B1)
        if r2 is None:
            return
        B2, s2 = r2
        out[B2] = out.get(B2, Fraction(0)) + Fraction(s * s1 * s2, 2)

    apply2(a, b, 1)
    apply2(b, a, -1)
    from spinres.coeff import cfrom
    return {B: cfrom(c) for B, c in out.items() if c}


def R_on_V(a, b, c):
    """R_{e_a, e_b} e_c = Q(e_b, e_c) e_a - Q(e_a, e_c) e_b; labels signed."""
    out = {}
    if c == -b:
        out[a] = out.get(a, 0) + 1
    if c == -a:
        out[b] = out.get(b, 0) - 1
    return out


def R_on_wedge(a, b, K):
    """Derivation action on the canonical wedge basis element e_K."""
    out = {}
    for t, c in enumerate(K):
        img = R_on_V(a, b, c)
        for nc, coef in img.items():
            labels = K[:t] + (nc,) + K[t + 1:]
            T, sgn = canonical_signed(labels)
            if T is None:
                continue
            out[T] = out.get(T, Fraction(0)) + Fraction(coef * sgn)
    from spinres.coeff import cfrom
    return {T: cfrom(v) for T, v in out.items() if v}


def weight_spinor(A, m):
    return tuple(Fraction(-1, 2) if i in A else Fraction(1, 2) for i in range(1, m + 1))


def weight_wedge(K, m):
    w = [Fraction(0)] * m
    for c in K:
        w[abs(c) - 1] += 1 if c > 0 else -1
    return tuple(w)


def solve_p(m, parity):
    spin = subsets(m, parity)
    pairs = []
    for i, L in enumerate(spin):
        for M in spin[i:]:
            pairs.append((L, M))
    wedges = []
    for negpart in range(m + 1):
        pass
    # all canonical signed m-subsets
    wedges = []
    labels = [v for i in range(1, m + 1) for v in (-i, i)]
    for K in combinations(labels, m):
        T, s = canonical_signed(K)
        if T is not None and s == 1 and T == tuple(sorted(K, key=lambda v: (abs(v), v > 0))):
            wedges.append(T)
    # unknowns: weight-compatible (pair, K)
    unknowns = []
    uidx = {}
    for P in pairs:
        wp = tuple(a + b for a, b in zip(weight_spinor(P[0], m), weight_spinor(P[1], m)))
        for K in wedges:
            if weight_wedge(K, m) == wp:
                uidx[(P, K)] = len(unknowns)
                unknowns.append((P, K))
    # equations: equivariance for every generator pair (a, b)
    gens = []
    for i, a in enumerate(labels):
        for b in labels[i + 1:]:
            if a != -b:
                gens.append((a, b))
            else:
                gens.append((a, b))  # include Cartans as a sanity check
    rows = []
    pair_index = {P: k for k, P in enumerate(pairs)}

    def pairkey(A, B):
        return (A, B) if (len(A), A) <= (len(B), B) else (B, A)

    from spinres.coeff import cadd, csub, cis_zero, cmul
    for (a, b) in gens:
        # action on S2 basis
        act = {}
        for P in pairs:
            L, M = P
            img = {}
            for B, c in phi_R(a, b, L).items():
                key = pairkey(B, M)
                img[key] = cadd(img.get(key, 0), c)
            for B, c in phi_R(a, b, M).items():
                key = pairkey(L, B)
                img[key] = cadd(img.get(key, 0), c)
            act[P] = {k: v for k, v in img.items() if not cis_zero(v)}
        for P in pairs:
            # p(g P) - g p(P) = 0, coefficientwise in target basis
            lhs = {}
            for P2, c in act[P].items():
                for K in wedges:
                    j = uidx.get((P2, K))
                    if j is not None:
                        lhs[(K, j)] = cadd(lhs.get((K, j), 0), c)
            for K in wedges:
                j = uidx.get((P, K))
                if j is None:
                    continue
                for K2, c in R_on_wedge(a, b, K).items():
                    lhs[(K2, j)] = csub(lhs.get((K2, j), 0), c)
            eqs = {}
            for (K, j), c in lhs.items():
                eqs.setdefault(K, {})[j] = c
            for K, row in eqs.items():
                row = {j: v for j, v in row.items() if not cis_zero(v)}
                if row:
                    rows.append(row)
    from spinres.qsolve import kernel_basis
    basis = kernel_basis(rows, list(range(len(unknowns))))
    assert len(basis) == 1, f"expected 1-dim space, got {len(basis)} (m={m}, parity={parity})"
    sol = basis[0]
    # normalize: first diagonal coefficient = +1
    L0 = spin[0]
    K0 = tuple(sorted([-x for x in L0] + [x for x in range(1, m + 1) if x not in L0],
                      key=lambda v: (abs(v), v > 0)))
    j0 = uidx[((L0, L0), K0)]
    c0 = sol.get(j0)
    assert c0, "normalizing coefficient vanishes"
    from spinres.coeff import cdiv
    sol = {j: cdiv(v, c0) for j, v in sol.items()}
    p = {}
    for ((P, K)), j in uidx.items():
        v = sol.get(j)
        if v:
            p[(P, K)] = v
    return spin, p


def analyze(m, parity):
    spin, p = solve_p(m, parity)
    print(f"== m={m} parity={'even' if parity % 2 == 0 else 'odd'}: "
          f"{len(p)} nonzero coefficients")
    # diagonals
    bad = []
    for L in spin:
        K = tuple(sorted([-x for x in L] + [x for x in range(1, m + 1) if x not in L],
                         key=lambda v: (abs(v), v > 0)))
        v = p.get(((L, L), K))
        if v != 1:
            bad.append((L, v))
    print("   all diagonal coefficients +1:", not bad, bad[:4])
    # mixed: sigma = coeff * 2^(d-1)
    from spinres.coeff import cmul, cfrom, ceq
    records = []
    for (P, K), v in p.items():
        L, M = P
        if L == M:
            continue
        D = tuple(sorted(set(L) ^ set(M)))
        N = tuple(sorted(x for x in D if x in {abs(c) for c in K if c < 0}))
        sigma = cmul(v, 1 << (len(D) - 1))
        records.append((L, M, N, sigma))
    # candidate sign formulas
    def inv_count(X, Y):
        return sum(1 for x in X for y in Y if x > y)

    def cand1(L, M, N):
        # sgn(N, D\N) convention on the symmetric difference
        D = tuple(sorted(set(L) ^ set(M)))
        rest = tuple(x for x in D if x not in N)
        s = (-1) ** inv_count(N, rest)
        return s

    def cand2(L, M, N):
        D = tuple(sorted(set(L) ^ set(M)))
        rest = tuple(x for x in D if x not in N)
        # position-sum inside D
        t = sum(D.index(x) for x in N)
        return (-1) ** t

    def cand3(L, M, N):
        D = sorted(set(L) ^ set(M))
        t = sum(D.index(x) for x in N) + len(N) * (len(N) - 1) // 2
        return (-1) ** t

    def cand4(L, M, N):
        D = sorted(set(L) ^ set(M))
        # alternating-position product with a global twist by sum of D gaps
        t = sum(D.index(x) for x in N)
        g = sum(D) - len(D) * (len(D) + 1) // 2
        return (-1) ** (t + g)

    for name, cand in [("sgn(N,D-N)", cand1), ("pos-sum", cand2),
                       ("pos-sum+tri", cand3), ("pos-sum+gap", cand4)]:
        ok = all(cand(L, M, N) == sigma for (L, M, N, sigma) in records)
        flips = [r for r in records if cand(r[0], r[1], r[2]) != r[3]]
        print(f"   candidate {name}: {'MATCH' if ok else f'no ({len(flips)}/{len(records)})'}")
        if not ok and len(flips) <= 6:
            for r in flips:
                print("      flip:", r)
    # dump a few records for inspection
    for r in records[:12]:
        print("   ", r)
    return records


if __name__ == "__main__":
    for m in (2, 3, 4):
        for parity in (0, 1):
            analyze(m, parity)
