"""Basis reduction and exact integer matrix helpers for Gram matrices."""
from __future__ import annotations

import math
from fractions import Fraction

import numpy as np


def common_denominator(rows) -> int:
    den = 1
    for row in rows:
        for x in row:
            den = den * Fraction(x).denominator // math.gcd(den, Fraction(x).denominator)
    return den


def scaled_integer_gram(gram) -> tuple[list[list[int]], int]:
    """Return (D*gram as ints, D) for the least common denominator D."""
    D = common_denominator(gram)
    return [[int(Fraction(x) * D) for x in row] for row in gram], D


def lll_gram(G: list[list[int]], delta: float = 0.99) -> tuple[list[list[int]], list[list[int]]]:
    """LLL-reduce an integral positive definite Gram matrix.

    Returns (G', U) with G' = U G U^T exactly; U is unimodular and its rows
    express the reduced basis in the old one.  Gram-Schmidt data is computed
    in floating point, all updates of G and U are integer operations, so the
    output is exact whatever the quality of the reduction.
    """
    n = len(G)
    G = [list(map(int, row)) for row in G]
    U = [[int(i == j) for j in range(n)] for i in range(n)]
    if n <= 1:
        return G, U

    def gso():
        L = np.linalg.cholesky(np.array(G, dtype=float))
        diag = np.diag(L).copy()
        mu = L / diag[None, :]
        return mu, diag**2

    k = 1
    mu, B = gso()
    guard = 0
    while k < n:
        guard += 1
        if guard > 100000:
            break
        for j in range(k - 1, -1, -1):
            q = int(round(mu[k][j]))
            if q:
                _row_col_reduce(G, U, k, j, q)
                mu, B = gso()
        if B[k] < (delta - mu[k][k - 1] ** 2) * B[k - 1]:
            G[k], G[k - 1] = G[k - 1], G[k]
            for row in G:
                row[k], row[k - 1] = row[k - 1], row[k]
            U[k], U[k - 1] = U[k - 1], U[k]
            mu, B = gso()
            k = max(k - 1, 1)
        else:
            k += 1
    return G, U


def _row_col_reduce(G, U, k, j, q):
    """Replace basis vector k by b_k - q b_j, updating G and U exactly."""
    n = len(G)
    for t in range(n):
        U[k][t] -= q * U[j][t]
    gjj = G[j][j]
    gkj = G[k][j]
    for t in range(n):
        G[k][t] -= q * G[j][t]
    # G[k][k] now equals old_kk - q*old_jk; apply the column operation
    G[k][k] = G[k][k] - q * gkj + q * q * gjj
    for t in range(n):
        if t != k:
            G[t][k] = G[k][t]


def det_fraction(M) -> Fraction:
    """Exact determinant by fraction elimination."""
    A = [[Fraction(x) for x in row] for row in M]
    n = len(A)
    det = Fraction(1)
    for c in range(n):
        p = next((r for r in range(c, n) if A[r][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            A[c], A[p] = A[p], A[c]
            det = -det
        det *= A[c][c]
        inv = 1 / A[c][c]
        for r in range(c + 1, n):
            f = A[r][c] * inv
            if f:
                A[r] = [a - f * b for a, b in zip(A[r], A[c])]
    return det


def inverse_fraction(M) -> list[list[Fraction]]:
    n = len(M)
    A = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(M)]
    for c in range(n):
        p = next((r for r in range(c, n) if A[r][c] != 0), None)
        if p is None:
            raise ZeroDivisionError("singular matrix")
        A[c], A[p] = A[p], A[c]
        inv = 1 / A[c][c]
        A[c] = [a * inv for a in A[c]]
        for r in range(n):
            if r != c and A[r][c] != 0:
                f = A[r][c]
                A[r] = [a - f * b for a, b in zip(A[r], A[c])]
    return [row[n:] for row in A]


def leading_minors_positive(M) -> bool:
    """Exact positive-definiteness test of a symmetric rational matrix."""
    A = [[Fraction(x) for x in row] for row in M]
    n = len(A)
    for c in range(n):
        if A[c][c] <= 0:
            return False
        inv = 1 / A[c][c]
        for r in range(c + 1, n):
            f = A[r][c] * inv
            if f:
                A[r] = [a - f * b for a, b in zip(A[r], A[c])]
    return True


def hermite_rows(gens: list[list[int]]) -> list[list[int]]:
    """Row-style Hermite normal form basis of the Z-span of integer rows."""
    A = [list(map(int, r)) for r in gens if any(r)]
    if not A:
        return []
    ncol = len(A[0])
    row = 0
    for c in range(ncol):
        # gcd-combine all rows at index >= row on column c
        while True:
            nz = [i for i in range(row, len(A)) if A[i][c] != 0]
            if not nz:
                break
            piv = min(nz, key=lambda i: abs(A[i][c]))
            A[row], A[piv] = A[piv], A[row]
            done = True
            for i in range(row + 1, len(A)):
                if A[i][c]:
                    q = A[i][c] // A[row][c]
                    A[i] = [a - q * b for a, b in zip(A[i], A[row])]
                    if A[i][c]:
                        done = False
            if done:
                break
        if row < len(A) and A[row][c] != 0:
            if A[row][c] < 0:
                A[row] = [-a for a in A[row]]
            row += 1
        if row == len(A):
            break
    return A[:row]


def integer_rank(rows: list[list[int]]) -> int:
    """Exact rank over Q by fraction-free (Bareiss style) elimination."""
    A = [list(map(int, r)) for r in rows]
    if not A:
        return 0
    ncol = len(A[0])
    rank = 0
    for c in range(ncol):
        piv = next((i for i in range(rank, len(A)) if A[i][c] != 0), None)
        if piv is None:
            continue
        A[rank], A[piv] = A[piv], A[rank]
        p = A[rank]
        for i in range(rank + 1, len(A)):
            if A[i][c]:
                f = A[i][c]
                new = [p[c] * A[i][t] - f * p[t] for t in range(ncol)]
                g = 0
                for v in new:
                    g = math.gcd(g, v)
                A[i] = [v // g for v in new] if g > 1 else new
        rank += 1
        if rank == len(A):
            break
    return rank
