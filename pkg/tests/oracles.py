"""Independent reference implementations used only by the tests."""
import itertools
import math
from fractions import Fraction

import numpy as np


def box_scan(gram, bound):
    """All x != 0 with x^T G x <= bound, up to sign, by brute force over a box.

    The box |x_i| <= sqrt(bound * (G^-1)_ii) contains every such vector.
    """
    G = [[Fraction(v) for v in row] for row in gram]
    n = len(G)
    den = math.lcm(*[v.denominator for row in G for v in row], Fraction(bound).denominator)
    Gi = np.array([[int(v * den) for v in row] for row in G], dtype=np.int64)
    bnum = int(Fraction(bound) * den)
    inv = np.linalg.inv(np.array(G, dtype=float))
    radii = [int(math.floor(math.sqrt(float(bound) * inv[i, i]) + 1e-9)) for i in range(n)]
    out = []
    # vectorise over all coordinates but the first
    rest = np.array(list(itertools.product(*[range(-r, r + 1) for r in radii[1:]])), dtype=np.int64).reshape(-1, n - 1)
    for x0 in range(0, radii[0] + 1):
        X = np.concatenate([np.full((len(rest), 1), x0, dtype=np.int64), rest], axis=1)
        norms = np.einsum("ij,jk,ik->i", X, Gi, X)
        keep = (norms <= bnum) & X.any(axis=1)
        if x0 == 0:
            # canonical sign: first nonzero coordinate positive
            first = np.argmax(X != 0, axis=1)
            keep &= X[np.arange(len(X)), first] > 0
        for x, v in zip(X[keep], norms[keep]):
            out.append((Fraction(int(v), den), tuple(int(c) for c in x)))
    return sorted(out)


def euclidean_min_closed_form(d):
    """mu = (d+1)^2 / (16 d) for d = 3 mod 4, (1+d)/4 otherwise."""
    return Fraction((d + 1) ** 2, 16 * d) if d % 4 == 3 else Fraction(1 + d, 4)


def deep_hole_grid_count(d, mu):
    """Count points of norm mu that are nearest to 0 among ring elements, on a fine grid."""
    step = 4 * d
    count = 0
    for a in range(-step, step + 1):
        for b in range(-step, step + 1):
            re, im = Fraction(a, step), Fraction(b, step)
            if re * re + d * im * im != mu:
                continue
            # distance to every ring element in a generous window
            best = None
            for p in range(-3, 4):
                for q in range(-3, 4):
                    if d % 4 == 3:
                        r_re, r_im = p + Fraction(q, 2), Fraction(q, 2)
                    else:
                        r_re, r_im = Fraction(p), Fraction(q)
                    n = (re - r_re) ** 2 + d * (im - r_im) ** 2
                    best = n if best is None else min(best, n)
            if best == mu:
                count += 1
    return count


def float_rank(rows):
    return int(np.linalg.matrix_rank(np.array(rows, dtype=float))) if rows else 0


def herm_det_numeric(G, d):
    M = np.array([[complex(float(x.re), float(x.im) * math.sqrt(d)) for x in row] for row in G])
    return float(np.linalg.det(M).real)
