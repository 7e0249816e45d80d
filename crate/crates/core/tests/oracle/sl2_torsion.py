"""Independent Smith-normal-form oracle for the integral cohomology of
sl2(Z) with coefficients in S^s(ad*).

Builds the Chevalley-Eilenberg cochain complex directly from the textbook
formula
    (dw)(a_0..a_t) = sum_i (-1)^i a_i . w(..^a_i..)
                   + sum_{i<j} (-1)^{i+j} w([a_i,a_j], ..^a_i..^a_j..)
with the coadjoint action on polynomials, and reads torsion off sympy's
Smith normal form. Prints a JSON table {s: {t: [invariant factors > 1]}}.

    python3 sl2_torsion.py 6
"""

import itertools
import json
import sys

from sympy import Matrix, ZZ
from sympy.matrices.normalforms import smith_normal_form

# basis (h, e, f): [h,e] = 2e, [h,f] = -2f, [e,f] = h
N = 3
BR = {(0, 1): {1: 2}, (0, 2): {2: -2}, (1, 2): {0: 1}}


def bracket(i, j):
    if i == j:
        return {}
    if i < j:
        return dict(BR.get((i, j), {}))
    return {k: -v for k, v in BR.get((j, i), {}).items()}


def monomials(s):
    return [m for m in itertools.product(range(s + 1), repeat=N) if sum(m) == s]


def act(i, mono):
    """e_i acting on y^mono; y_k spans g*, (e_i . y_k)(b) = -y_k([e_i, b])."""
    out = {}
    for k in range(N):
        if mono[k] == 0:
            continue
        # e_i . y_k = -sum_j c^k_{ij} y_j
        for j in range(N):
            c = bracket(i, j).get(k, 0)
            if c == 0:
                continue
            new = list(mono)
            new[k] -= 1
            new[j] += 1
            new = tuple(new)
            out[new] = out.get(new, 0) - c * mono[k]
    return {m: v for m, v in out.items() if v}


def cochain_basis(s, t):
    return [(S, m) for S in itertools.combinations(range(N), t) for m in monomials(s)]


def differential(s, t):
    """Matrix of d: C^t -> C^{t+1} (rows: target basis, cols: source basis)."""
    src = cochain_basis(s, t)
    tgt = cochain_basis(s, t + 1)
    index = {b: i for i, b in enumerate(src)}
    rows = []
    for A, m in tgt:
        # evaluate d(phi) on (e_A) for phi running over source basis: phi_(S,m')
        # is the cochain sending e_S to y^m' and other basis tuples to 0
        row = [0] * len(src)
        for i, a in enumerate(A):
            rest = A[:i] + A[i + 1:]
            # term (-1)^i a . w(rest): contributes when w(rest) = y^m', a.y^m' has y^m
            for mp in monomials(s):
                coef = act(a, mp).get(m, 0)
                if coef:
                    row[index[(rest, mp)]] += (-1) ** i * coef
        for i, j in itertools.combinations(range(len(A)), 2):
            rest = [A[k] for k in range(len(A)) if k not in (i, j)]
            for k, c in bracket(A[i], A[j]).items():
                if k in rest:
                    continue
                args = [k] + rest
                perm_sign = 1
                order = sorted(range(len(args)), key=lambda q: args[q])
                # sign of the permutation sorting args
                seen = [False] * len(args)
                for q in range(len(args)):
                    if not seen[q]:
                        q2, cyc = q, 0
                        while not seen[q2]:
                            seen[q2] = True
                            q2 = order[q2]
                            cyc += 1
                        if cyc % 2 == 0:
                            perm_sign = -perm_sign
                S = tuple(sorted(args))
                row[index[(S, m)]] += (-1) ** (i + j) * c * perm_sign
        rows.append(row)
    return Matrix(rows) if rows else Matrix.zeros(0, len(src))


def invariant_factors(M):
    if M.rows == 0 or M.cols == 0:
        return []
    D = smith_normal_form(M, domain=ZZ)
    diag = [abs(D[i, i]) for i in range(min(D.rows, D.cols))]
    return sorted(int(d) for d in diag if d > 1)


def main():
    top = int(sys.argv[1]) if len(sys.argv) > 1 else 6
    table = {}
    for s in range(top + 1):
        # torsion of H^t = torsion of coker(d: C^{t-1} -> C^t)
        table[s] = {t: invariant_factors(differential(s, t - 1)) if t > 0 else [] for t in range(N + 1)}
    print(json.dumps(table))


if __name__ == "__main__":
    main()
