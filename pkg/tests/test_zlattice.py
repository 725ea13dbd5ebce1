import random
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import box_scan, float_rank
from tensorlat import (
    LatticeError,
    ZLattice,
    catalog,
    extremal_bound,
    is_extremal,
    is_isometric,
    isometry,
    minimal_vectors,
    perfection_rank,
    short_vectors,
    tensor_z,
    zl_dual,
    zl_minimum,
)
from tensorlat.zlattice import kitaoka_split_rule, orthogonal_sum

A2 = catalog.get("A2").data
D4 = catalog.get("D4").data
E8 = catalog.get("E8").data


def test_basic_invariants():
    assert A2.det == 3 and zl_minimum(A2) == (2, 6)
    assert D4.det == 4 and zl_minimum(D4) == (2, 24)
    assert E8.det == 1 and E8.is_even and zl_minimum(E8) == (2, 240)
    assert zl_dual(A2).det == Fraction(1, 3)


def test_validation():
    with pytest.raises(LatticeError, match="symmetric"):
        ZLattice([[2, 1], [0, 2]])
    with pytest.raises(LatticeError, match="positive definite"):
        ZLattice([[1, 2], [2, 1]])
    with pytest.raises(LatticeError, match="floating"):
        ZLattice([[2.0]])
    with pytest.raises(LatticeError):
        is_extremal(A2)


def test_json_roundtrip():
    L = ZLattice([[Fraction(1, 2), 0], [0, 3]])
    assert ZLattice.from_json(L.to_json()) == L
    assert L.to_json() == {"gram": [["1/2", 0], [0, 3]]}


def test_perfection_ranks():
    assert perfection_rank(A2) == 3
    assert perfection_rank(D4) == 10
    assert perfection_rank(E8) == 36
    assert perfection_rank(ZLattice([[1, 0], [0, 1]])) == 2


def test_tensor_a2_a2():
    T = tensor_z(A2, A2)
    assert T.det == 81
    assert zl_minimum(T) == (4, 18)
    assert perfection_rank(T) == 9


def test_short_vectors_canonical_lines():
    assert list(short_vectors(A2, 2).lines()) == ["2;0,1", "2;1,0", "2;1,1"]


def test_rational_gram():
    L = ZLattice([[Fraction(1, 2), Fraction(1, 4)], [Fraction(1, 4), Fraction(1, 2)]])
    assert zl_minimum(L) == (Fraction(1, 2), 6)


def _random_unimodular(n, rng):
    U = np.eye(n, dtype=np.int64)
    for _ in range(3 * n):
        i, j = rng.sample(range(n), 2)
        U[i] += rng.randint(-2, 2) * U[j]
    return U


@settings(max_examples=25)
@given(seed=st.integers(0, 10**6), name=st.sampled_from(["A2", "D4", "A2perpA2", "E8"]))
def test_invariance_under_basis_change(seed, name):
    L = catalog.get(name).data
    U = _random_unimodular(L.n, random.Random(seed))
    M = L.transform(U.tolist())
    assert M.det == L.det
    assert zl_minimum(M) == zl_minimum(L)
    assert perfection_rank(M) == perfection_rank(L)
    V = isometry(L, M)
    G_M = np.array(M.gram, dtype=object)
    G_L = np.array(L.gram, dtype=object)
    assert (V.T.astype(object) @ G_M @ V.astype(object) == G_L).all()


def test_isometry_negative():
    assert not is_isometric(D4, catalog.get("A2perpA2").data)
    assert isometry(A2, D4) is None


@pytest.mark.parametrize("name", ["A2", "D4", "A2perpA2"])
def test_short_vectors_match_box_scan(name):
    L = catalog.get(name).data
    for bound in (2, 4, 6):
        S = short_vectors(L, bound)
        got = sorted((n, tuple(int(v) for v in x)) for n, x in zip(S.norms, S.vectors))
        assert got == box_scan(L.gram, bound)


def test_minimal_vectors_perfection_float_oracle():
    for L in (A2, D4, E8):
        S = minimal_vectors(L)
        rows = [[x[i] * x[j] for i in range(L.n) for j in range(i, L.n)] for x in S.vectors.tolist()]
        assert float_rank(rows) == perfection_rank(L)


def test_split_rule_and_extremal_bound():
    assert kitaoka_split_rule(2, 50) and not kitaoka_split_rule(44, 50)
    assert extremal_bound(24) == 4 and extremal_bound(48) == 6 and extremal_bound(72) == 8
    assert orthogonal_sum(A2, A2).det == 9
