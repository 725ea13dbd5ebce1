"""Fincke-Pohst enumeration of short lattice vectors.

Pruning runs in floating point on a Cholesky decomposition with the radius
inflated by a relative margin; every candidate is then re-checked in exact
integer arithmetic, so false positives are dropped and (for sane condition
numbers) no true vector is lost.
"""
from __future__ import annotations

import math

import numpy as np
from numba import njit

from .reduction import lll_gram

# relative inflation of the search radius used for the float pruning
RADIUS_SLACK = 1e-9


@njit(cache=True)
def _fp_enum(Q, bound, out):
    n = Q.shape[0]
    cap = out.shape[0]
    x = np.zeros(n, np.int64)
    ub = np.zeros(n, np.int64)
    c = np.zeros(n)
    rem = np.zeros(n)
    zero_above = np.zeros(n, np.bool_)
    count = 0

    i = n - 1
    rem[i] = bound
    c[i] = 0.0
    zero_above[i] = True
    r = math.sqrt(max(rem[i], 0.0) / Q[i, i])
    lo = math.ceil(c[i] - r)
    if lo < 0:
        lo = 0
    x[i] = lo - 1
    ub[i] = math.floor(c[i] + r)
    while True:
        x[i] += 1
        if x[i] > ub[i]:
            i += 1
            if i == n:
                break
            continue
        t = x[i] - c[i]
        left = rem[i] - Q[i, i] * t * t
        if i == 0:
            if zero_above[0] and x[0] == 0:
                continue
            if count < cap:
                for j in range(n):
                    out[count, j] = x[j]
            count += 1
            continue
        k = i - 1
        rem[k] = left
        s = 0.0
        for j in range(i, n):
            s += Q[k, j] * x[j]
        c[k] = -s
        zero_above[k] = zero_above[i] and x[i] == 0
        r = math.sqrt(max(left, 0.0) / Q[k, k])
        lo = math.ceil(c[k] - r)
        if zero_above[k] and lo < 0:
            lo = 0
        x[k] = lo - 1
        ub[k] = math.floor(c[k] + r)
        i = k
    return count


def qform(G: np.ndarray) -> np.ndarray:
    """Fincke-Pohst quadratic-form coefficients from a float Gram matrix.

    norm(x) = sum_i Q[i,i] * (x_i + sum_{j>i} Q[i,j] x_j)^2
    """
    L = np.linalg.cholesky(G)
    n = G.shape[0]
    Q = np.zeros((n, n))
    for i in range(n):
        Q[i, i] = L[i, i] ** 2
        for j in range(i + 1, n):
            Q[i, j] = L[j, i] / L[i, i]
    return Q


def _exact_norms(X: np.ndarray, G: list[list[int]]) -> np.ndarray:
    n = len(G)
    gmax = max((abs(v) for row in G for v in row), default=0)
    xmax = int(np.abs(X).max()) if X.size else 0
    if gmax * xmax * xmax * n * n < 2**62:
        Gi = np.array(G, dtype=np.int64)
        return np.einsum("ij,jk,ik->i", X, Gi, X)
    Xo = X.astype(object)
    Go = np.array(G, dtype=object)
    return np.array([int(v) for v in ((Xo @ Go) * Xo).sum(axis=1)], dtype=object)


def enumerate_short(G: list[list[int]], bound_num: int) -> tuple[np.ndarray, np.ndarray]:
    """All x != 0 up to sign with x^T G x <= bound_num, for integral G.

    Returns (X, norms) with X in the coordinates of the given basis and the
    first nonzero coordinate of every row positive.  Order is unspecified.
    """
    n = len(G)
    if n == 0 or bound_num <= 0:
        return np.zeros((0, n), dtype=np.int64), np.zeros(0, dtype=np.int64)
    Gr, U = lll_gram(G)
    Q = qform(np.array(Gr, dtype=float))
    fb = bound_num * (1.0 + RADIUS_SLACK) + RADIUS_SLACK
    cap = 1 << 14
    while True:
        out = np.zeros((cap, n), dtype=np.int64)
        cnt = _fp_enum(Q, fb, out)
        if cnt <= cap:
            break
        cap = cnt
    Y = out[:cnt]
    norms = _exact_norms(Y, Gr)
    keep = norms <= bound_num
    Y, norms = Y[keep], norms[keep]
    Um = np.array(U, dtype=object if max(abs(v) for r in U for v in r) > 2**20 else np.int64)
    X = Y @ Um
    if X.dtype == object:
        X = X.astype(np.int64)
    # canonical sign: first nonzero coordinate positive
    if len(X):
        first = np.argmax(X != 0, axis=1)
        sgn = np.sign(X[np.arange(len(X)), first])
        X = X * sgn[:, None]
    return X, norms
