#!/usr/bin/env python3
"""Brute-force dim H^1(k, B, B) for monomial quotients B = k[vars]/(monomials).

Independent of the engine: H^1(k, B, B) = Exal_k(B, B) is computed as
symmetric 2-cocycles B x B -> B modulo coboundaries of linear maps B -> B,
by dense exact elimination over Q or F_p.

Usage: h1_bruteforce.py            (prints the corpus table)
"""
from fractions import Fraction
from itertools import product


def monomial_basis(nvars, gens):
    """Standard monomials of k[x_1..x_n]/(gens), all nilpotent generators assumed."""
    bound = max(max(g) for g in gens) + 1
    basis = []
    for exps in product(range(bound * nvars + 1), repeat=nvars):
        if not any(all(e >= g for e, g in zip(exps, gen)) for gen in gens):
            basis.append(exps)
    basis.sort(key=lambda e: (sum(e), tuple(-x for x in e)))
    return basis


def structure(basis, gens):
    index = {m: i for i, m in enumerate(basis)}

    def mul(i, j):
        m = tuple(a + b for a, b in zip(basis[i], basis[j]))
        return index.get(m)

    return mul


class Field:
    def __init__(self, p):
        self.p = p

    def reduce(self, x):
        if self.p == 0:
            return Fraction(x)
        return x % self.p

    def inv(self, x):
        if self.p == 0:
            return 1 / Fraction(x)
        return pow(x, self.p - 2, self.p)


def rank(rows, field):
    rows = [[field.reduce(x) for x in r] for r in rows]
    rk, col = 0, 0
    ncols = len(rows[0]) if rows else 0
    while rk < len(rows) and col < ncols:
        piv = next((r for r in range(rk, len(rows)) if rows[r][col] != 0), None)
        if piv is None:
            col += 1
            continue
        rows[rk], rows[piv] = rows[piv], rows[rk]
        inv = field.inv(rows[rk][col])
        rows[rk] = [field.reduce(x * inv) for x in rows[rk]]
        for r in range(len(rows)):
            if r != rk and rows[r][col] != 0:
                c = rows[r][col]
                rows[r] = [field.reduce(a - c * b) for a, b in zip(rows[r], rows[rk])]
        rk += 1
        col += 1
    return rk


def dim_h1(nvars, gens, p):
    field = Field(p)
    basis = monomial_basis(nvars, gens)
    d = len(basis)
    mul = structure(basis, gens)
    # unknown f(i, j)_t at (i * d + j) * d + t
    nf = d * d * d

    def fvar(i, j, t):
        return (i * d + j) * d + t

    eqs = []
    # symmetry
    for i in range(d):
        for j in range(i + 1, d):
            for t in range(d):
                row = [0] * nf
                row[fvar(i, j, t)] += 1
                row[fvar(j, i, t)] -= 1
                eqs.append(row)
    # b_i f(b_j, b_k) - f(b_i b_j, b_k) + f(b_i, b_j b_k) - f(b_i, b_j) b_k = 0
    for i, j, k in product(range(d), repeat=3):
        rows = [[0] * nf for _ in range(d)]
        for s in range(d):
            t = mul(i, s)
            if t is not None:
                rows[t][fvar(j, k, s)] += 1
            t = mul(s, k)
            if t is not None:
                rows[t][fvar(i, j, s)] -= 1
        ij, jk = mul(i, j), mul(j, k)
        for t in range(d):
            if ij is not None:
                rows[t][fvar(ij, k, t)] -= 1
            if jk is not None:
                rows[t][fvar(i, jk, t)] += 1
        eqs.extend(rows)
    cocycles = nf - rank(eqs, field)
    # coboundaries of g: B -> B, g(b_s)_t
    cob = []
    for s, t in product(range(d), repeat=2):
        col = [0] * nf
        for i, j in product(range(d), repeat=2):
            # (dg)(b_i, b_j) = b_i g(b_j) - g(b_i b_j) + g(b_i) b_j
            if j == s:
                u = mul(i, t)
                if u is not None:
                    col[fvar(i, j, u)] += 1
            ij = mul(i, j)
            if ij == s:
                col[fvar(i, j, t)] -= 1
            if i == s:
                u = mul(t, j)
                if u is not None:
                    col[fvar(i, j, u)] += 1
        cob.append(col)
    return cocycles - rank(cob, field)


CORPUS = [
    ("Q[x]/(x^2)", 1, [(2,)], 0),
    ("F5[x]/(x^5)", 1, [(5,)], 5),
    ("F101[x,y]/(x^2,xy,y^2)", 2, [(2, 0), (1, 1), (0, 2)], 101),
    ("F101[x,y]/(x^2,y^2)", 2, [(2, 0), (0, 2)], 101),
    ("F101[x]/(x^3)", 1, [(3,)], 101),
]

if __name__ == "__main__":
    for name, nvars, gens, p in CORPUS:
        print(f"{name}\t{dim_h1(nvars, gens, p)}")
