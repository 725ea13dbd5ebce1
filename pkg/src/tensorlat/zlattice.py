"""Euclidean lattices given by exact rational Gram matrices."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterator, Sequence

import numpy as np

from .enum_core import enumerate_short
from .reduction import (
    common_denominator,
    det_fraction,
    integer_rank,
    inverse_fraction,
    leading_minors_positive,
    lll_gram,
    scaled_integer_gram,
)


class LatticeError(ValueError):
    pass


def _frac(x) -> Fraction:
    if isinstance(x, str):
        return Fraction(x)
    if isinstance(x, float):
        raise LatticeError(f"floating point Gram entry {x!r}; use exact rationals")
    return Fraction(x)


class ZLattice:
    """A full-rank lattice with fixed basis, given by its Gram matrix."""

    def __init__(self, gram: Sequence[Sequence], check: bool = True):
        rows = tuple(tuple(_frac(x) for x in row) for row in gram)
        n = len(rows)
        if check:
            for i, row in enumerate(rows):
                if len(row) != n:
                    raise LatticeError(f"Gram row {i} has length {len(row)}, expected {n}")
            for i in range(n):
                for j in range(i):
                    if rows[i][j] != rows[j][i]:
                        raise LatticeError(f"Gram matrix not symmetric at ({i},{j})")
            if not leading_minors_positive(rows):
                raise LatticeError("Gram matrix is not positive definite")
        self.gram = rows
        self.n = n

    def __eq__(self, other):
        return isinstance(other, ZLattice) and self.gram == other.gram

    def __hash__(self):
        return hash(self.gram)

    def __repr__(self):
        return f"ZLattice(n={self.n}, det={self.det})"

    @cached_property
    def det(self) -> Fraction:
        return det_fraction(self.gram) if self.n else Fraction(1)

    @cached_property
    def _scaled(self) -> tuple[list[list[int]], int]:
        return scaled_integer_gram(self.gram)

    @property
    def is_integral(self) -> bool:
        return all(x.denominator == 1 for row in self.gram for x in row)

    @property
    def is_even(self) -> bool:
        return self.is_integral and all(self.gram[i][i] % 2 == 0 for i in range(self.n))

    @property
    def is_unimodular(self) -> bool:
        return self.is_integral and self.det == 1

    def norm(self, x) -> Fraction:
        return sum(
            (self.gram[i][j] * int(x[i]) * int(x[j]) for i in range(self.n) for j in range(self.n)),
            Fraction(0),
        )

    def inner(self, x, y) -> Fraction:
        return sum(
            (self.gram[i][j] * int(x[i]) * int(y[j]) for i in range(self.n) for j in range(self.n)),
            Fraction(0),
        )

    def transform(self, U) -> "ZLattice":
        """Lattice with basis rows of U, i.e. Gram U G U^T."""
        U = [[int(v) for v in row] for row in U]
        G = self.gram
        n = self.n
        UG = [[sum(U[i][k] * G[k][j] for k in range(n)) for j in range(n)] for i in range(len(U))]
        return ZLattice([[sum(UG[i][k] * U[j][k] for k in range(n)) for j in range(len(U))] for i in range(len(U))])

    def to_json(self) -> dict:
        return {"gram": [[_fmt(x) for x in row] for row in self.gram]}

    @classmethod
    def from_json(cls, obj: dict) -> "ZLattice":
        if "gram" not in obj:
            raise LatticeError("missing 'gram'")
        return cls(obj["gram"])


def _fmt(x: Fraction):
    return x.numerator if x.denominator == 1 else str(x)


def zl_make(gram) -> ZLattice:
    return ZLattice(gram)


def zl_det(L: ZLattice) -> Fraction:
    return L.det


def zl_dual(L: ZLattice) -> ZLattice:
    return ZLattice(inverse_fraction(L.gram), check=False)


def zl_is_even(L: ZLattice) -> bool:
    return L.is_even


def zl_is_unimodular(L: ZLattice) -> bool:
    return L.is_unimodular


@dataclass
class ShortVectorSet:
    """Lattice vectors of norm <= bound, one per +-pair, canonically ordered."""

    bound: Fraction
    vectors: np.ndarray
    norm_numerators: np.ndarray
    denominator: int

    def __len__(self):
        return len(self.vectors)

    @property
    def norms(self) -> list[Fraction]:
        return [Fraction(int(v), self.denominator) for v in self.norm_numerators]

    def lines(self) -> Iterator[str]:
        for x, v in zip(self.vectors, self.norm_numerators):
            yield f"{Fraction(int(v), self.denominator)};{','.join(str(int(c)) for c in x)}"

    def with_signs(self) -> np.ndarray:
        return np.concatenate([self.vectors, -self.vectors]) if len(self.vectors) else self.vectors


def _canonical_order(X: np.ndarray, norms: np.ndarray) -> np.ndarray:
    if len(X) == 0:
        return np.zeros(0, dtype=np.int64)
    keys = [X[:, j] for j in range(X.shape[1] - 1, -1, -1)] + [np.asarray(norms, dtype=np.int64)]
    return np.lexsort(keys)


def short_vectors(L: ZLattice, bound) -> ShortVectorSet:
    bound = Fraction(bound)
    G, D = L._scaled
    bnum = (bound * D).numerator // (bound * D).denominator
    X, norms = enumerate_short(G, bnum)
    order = _canonical_order(X, norms)
    return ShortVectorSet(bound, X[order], np.asarray(norms)[order], D)


def _reduced_min_bound(L: ZLattice) -> Fraction:
    G, D = L._scaled
    Gr, _ = lll_gram(G)
    return Fraction(min(Gr[i][i] for i in range(L.n)), D)


def minimal_vectors(L: ZLattice) -> ShortVectorSet:
    S = short_vectors(L, _reduced_min_bound(L))
    m = S.norm_numerators.min()
    keep = S.norm_numerators == m
    return ShortVectorSet(Fraction(int(m), S.denominator), S.vectors[keep], S.norm_numerators[keep], S.denominator)


def zl_minimum(L: ZLattice) -> tuple[Fraction, int]:
    """Minimum and kissing number (both signs counted)."""
    S = minimal_vectors(L)
    return S.bound, 2 * len(S)


def perfection_rank(L: ZLattice) -> int:
    S = minimal_vectors(L)
    n = L.n
    rows = []
    for x in S.vectors.tolist():
        rows.append([x[i] * x[j] for i in range(n) for j in range(i, n)])
    return integer_rank(rows)


def is_perfect(L: ZLattice) -> bool:
    return perfection_rank(L) == L.n * (L.n + 1) // 2


def tensor_z(L: ZLattice, M: ZLattice) -> ZLattice:
    """Gram of L (x) M on the basis e_i (x) f_j, i major."""
    return ZLattice(
        [[a * b for a in rowL for b in rowM] for rowL in L.gram for rowM in M.gram],
        check=False,
    )


def orthogonal_sum(L: ZLattice, M: ZLattice) -> ZLattice:
    n, m = L.n, M.n
    G = [[Fraction(0)] * (n + m) for _ in range(n + m)]
    for i in range(n):
        for j in range(n):
            G[i][j] = L.gram[i][j]
    for i in range(m):
        for j in range(m):
            G[n + i][n + j] = M.gram[i][j]
    return ZLattice(G, check=False)


def kitaoka_split_rule(rank_l: int, rank_m: int) -> bool:
    """True when minimal vectors of L (x) M are known to be split (min rank <= 43)."""
    if rank_l < 1 or rank_m < 1:
        raise LatticeError("ranks must be positive")
    return min(rank_l, rank_m) <= 43


def extremal_bound(n: int) -> int:
    return 2 + 2 * (n // 24)


def is_extremal(L: ZLattice) -> bool:
    if not (L.is_even and L.is_unimodular):
        raise LatticeError("extremality is defined for even unimodular lattices")
    return zl_minimum(L)[0] == extremal_bound(L.n)


def isometry(L: ZLattice, M: ZLattice) -> np.ndarray | None:
    """An integer matrix U with U^T G_M U = G_L, or None if L and M are not isometric.

    Columns of U are the images of the basis of L, written in the basis of M.
    The search backtracks over short vectors of M with exact inner-product
    pruning; a None result is exhaustive.
    """
    if L.n != M.n or L.det != M.det:
        return None
    n = L.n
    if n == 0:
        return np.zeros((0, 0), dtype=np.int64)
    D = common_denominator(L.gram + M.gram)
    GL = [[int(x * D) for x in row] for row in L.gram]
    GM = np.array([[int(x * D) for x in row] for row in M.gram], dtype=np.int64)
    GLr, V = lll_gram(GL)
    top = max(GLr[i][i] for i in range(n))
    S = short_vectors(M, Fraction(top, D))
    if len(S) == 0:
        return None
    C = S.with_signs()
    Cn = np.concatenate([S.norm_numerators, S.norm_numerators]).astype(np.int64) * (D // S.denominator)
    P = C @ GM
    pools = [np.flatnonzero(Cn == GLr[i][i]) for i in range(n)]
    if any(len(p) == 0 for p in pools):
        return None
    chosen: list[int] = []

    def extend(i: int) -> bool:
        if i == n:
            return True
        cand = pools[i]
        for j, c in enumerate(chosen):
            cand = cand[P[cand] @ C[c] == GLr[i][j]]
            if len(cand) == 0:
                return False
        for c in cand:
            chosen.append(int(c))
            if extend(i + 1):
                return True
            chosen.pop()
        return False

    if not extend(0):
        return None
    W = C[chosen].T  # columns are images of the reduced basis of L
    Vinv = inverse_fraction(V)
    VinvT = np.array([[int(Vinv[j][i]) for j in range(n)] for i in range(n)], dtype=np.int64)
    U = W @ VinvT
    return U


def is_isometric(L: ZLattice, M: ZLattice) -> bool:
    return isometry(L, M) is not None
