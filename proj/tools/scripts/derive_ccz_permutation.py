"""Derives the APN permutation in data/corpus/ccz_perm_type_1.75_4.txt.

Start from the quadratic APN function x^3 + x^10 + u x^24 over GF(64)
(modulus x^6 + x + 1, first u giving an APN function), look for 6-dimensional
linear subspaces inside the zero set of its extended Walsh spectrum, and map
the graph of F through a pair of complementary subspaces.  When the first
half of the image is a bijection the second half is a CCZ-equivalent
function; we keep the first pair that yields a permutation.

Usage: python3 derive_ccz_permutation.py > ccz_perm_type_1.75_4.txt
"""
import itertools
import sys

import numpy as np

Q = 64
MOD = 0b1000011


def mul(a, b):
    r = 0
    while b:
        if b & 1:
            r ^= a
        b >>= 1
        a <<= 1
        if a & Q:
            a ^= MOD
    return r


def power(a, e):
    r = 1
    while e:
        if e & 1:
            r = mul(r, a)
        a = mul(a, a)
        e >>= 1
    return r


def parity(x):
    return bin(x).count("1") & 1


def delta(F):
    worst = 0
    for u in range(1, Q):
        c = [0] * Q
        for x in range(Q):
            c[F[x] ^ F[x ^ u]] += 1
        worst = max(worst, max(c))
    return worst


def extended_walsh(F):
    sign = np.array([[(-1) ** parity(a & x) for x in range(Q)] for a in range(Q)])
    W = np.zeros((Q, Q), dtype=int)
    for b in range(Q):
        W[b] = sign @ np.array([(-1) ** parity(b & F[x]) for x in range(Q)])
    return W


def rank(vectors):
    rows, r = list(vectors), 0
    for bit in range(12):
        piv = [x for x in rows if x >> bit & 1]
        if not piv:
            continue
        p = piv[0]
        rows = [x ^ p if x >> bit & 1 else x for x in rows if x != p]
        r += 1
    return r


def basis(space):
    b = []
    for v in sorted(space):
        if v and rank(b + [v]) > len(b):
            b.append(v)
    return b


def zero_subspaces(zeros):
    Z = sorted(zeros)
    found = set()

    def grow(S, k, start):
        if k == 6:
            found.add(frozenset(S))
            return
        for i in range(start, len(Z)):
            v = Z[i]
            if v in S or min(v ^ s for s in S) != v:
                continue
            if all((s ^ v) in zeros for s in S):
                grow(S | {s ^ v for s in S}, k + 1, i + 1)

    grow({0}, 0, 0)
    return sorted(found, key=sorted)


def main():
    for u in range(1, Q):
        F = [power(x, 3) ^ power(x, 10) ^ mul(u, power(x, 24)) for x in range(Q)]
        if delta(F) == 2:
            break
    W = extended_walsh(F)
    zeros = {(b << 6) | a for b in range(Q) for a in range(Q) if W[b][a] == 0 and (a | b)}
    for U, V in itertools.combinations(zero_subspaces(zeros), 2):
        bu, bv = basis(U), basis(V)
        if rank(bu + bv) < 12:
            continue
        G = [None] * Q
        for x in range(Q):
            w = (F[x] << 6) | x
            xi = sum(parity(bu[i] & w) << i for i in range(6))
            if G[xi] is not None:
                break
            G[xi] = sum(parity(bv[i] & w) << i for i in range(6))
        else:
            if len(set(G)) == Q:
                assert delta(G) == 2
                print(" ".join(f"{y:02x}" for y in G))
                return 0
    print("no permutation found", file=sys.stderr)
    return 1


if __name__ == "__main__":
    sys.exit(main())
