import json
import random
from fractions import Fraction

import numpy as np
import pytest

from tensorlat import (
    HermLattice,
    Radical,
    a_set_profile,
    catalog,
    certify_48,
    certify_tensor_min,
    count_isometric_sublattices,
    herm_minimum,
    make_field,
    tensor_herm,
    tensor_perfection_report,
)
from tensorlat.hermitian import DrResult, HermitianError, _field_det, hermite_type_lower_bound

Pb = catalog.get("Pb").data
T = catalog.get("T").data
F7, F11 = Pb.field, T.field


def test_t_tensor_t_proven_with_equality_at_rank_2():
    cert = certify_tensor_min(T, T, 2)
    assert cert.verdict == "proven"
    cases = {c["r"]: c for c in cert.rank_cases}
    assert cases[1]["status"] == "excludes"
    assert cases[2]["status"] == "equality-possible"
    assert [w["rank"] for w in cert.witnesses] == [2]
    # every minimal vector of T (x) T has rank 2, none is split
    TT = tensor_herm(T, T)
    mn, V = herm_minimum(TT)
    assert mn == 2
    for i in range(len(V)):
        z = V.coords(i)
        assert _field_det([[z[0], z[1]], [z[2], z[3]]], F11) != 0


def test_certificate_json_is_deterministic():
    a = certify_tensor_min(T, T, 2).to_json()
    b = certify_tensor_min(T, T, 2).to_json()
    a.pop("runtime_ms"), b.pop("runtime_ms")
    assert json.dumps(a, sort_keys=True) == json.dumps(b, sort_keys=True)
    for key in ("claim", "verdict", "rank_cases", "rep_counts", "witnesses", "preconditions_checked"):
        assert key in a


def test_barnes_square():
    assert certify_tensor_min(Pb, Pb, 3).verdict == "proven"
    assert certify_tensor_min(Pb, Pb, 4).verdict == "refuted"
    assert certify_tensor_min(Pb, T, 3).verdict == "inconclusive"


@pytest.mark.parametrize("claim", [2, 3])
def test_weakened_inputs_never_prove_more(claim):
    strong = certify_tensor_min(T, T, claim)
    weak_bound = hermite_type_lower_bound(F11, 2, Fraction(2))
    weak = certify_tensor_min(T, T, claim, dr_M={2: weak_bound})
    assert Radical.of(Fraction(weak.lower_bound)) <= Radical.of(Fraction(strong.lower_bound))
    if weak.verdict == "proven":
        assert strong.verdict == "proven"
    assert weak.verdict != "proven" or claim == 2


def test_rank_one_target_counts_minimal_vectors():
    for L in (Pb, T):
        mn, V = herm_minimum(L)
        rc = count_isometric_sublattices(L, HermLattice(L.field, [[L.field(mn)]]))
        assert rc.raw == len(V)
        assert rc.count == len(V) // len(L.field.units)


def test_pb_contains_itself_once():
    rc = count_isometric_sublattices(Pb, Pb)
    assert rc.count == 1 and rc.raw == rc.self_count
    assert count_isometric_sublattices(Pb, catalog.get("Pa").data).count == 0


def _random_gl(F, m, rng):
    while True:
        U = [[F.from_omega(rng.randint(-1, 1), rng.randint(-1, 1)) for _ in range(m)] for _ in range(m)]
        if _field_det(U, F).norm() == 1:
            return U


def test_rep_count_invariant_under_basis_change():
    rng = random.Random(5)
    U = _random_gl(F7, 3, rng)
    G = [[sum((U[i][k] * Pb.gram[k][l] * U[j][l].conj() for k in range(3) for l in range(3)), F7.zero())
          for j in range(3)] for i in range(3)]
    P2 = HermLattice(F7, G)
    target = HermLattice(F7, [[F7(2), F7.omega], [F7.omega.conj(), F7(2)]])
    a = count_isometric_sublattices(Pb, target)
    b = count_isometric_sublattices(P2, target)
    assert (a.raw, a.count) == (b.raw, b.count)


def test_rank_four_target_rejected():
    with pytest.raises(HermitianError):
        count_isometric_sublattices(Pb, catalog.get("Pc").data)


def test_a_set_profile():
    size, hist = a_set_profile(Pb, [1, 0, 0], 2)
    assert size == 1 and hist == {}
    size, hist = a_set_profile(Pb, [1, 0, 0], F7.omega)
    assert size == 4 and sum(hist.values()) == size * (size - 1)
    with pytest.raises(HermitianError):
        a_set_profile(Pb, [2, 0, 0], F7.omega)


def test_certify_48_representation_branch():
    cert = certify_48(T, require_leech=False)
    assert cert.verdict == "proven" and cert.claim["value"] == "2"
    counts = {rc.target: rc.count for rc in cert.rep_counts}
    assert sorted(counts.values()) == [0, 1]
    notes = " ".join(cert.notes)
    assert "N(z) = 35/11 has 0 solutions" in notes and "N(z) = 34/11 has 0 solutions" in notes


def test_certify_48_lk_branch():
    P = catalog.get("LK-d11a").data.scaled(2)
    cert = certify_48(P, require_leech=False)
    assert cert.verdict == "proven" and cert.claim["value"] == "2"


def test_certify_48_preconditions():
    assert certify_48(Pb).verdict == "inconclusive"
    assert certify_48(T).verdict == "inconclusive"  # not rank 12


def test_perfection_reports():
    A2, D4 = catalog.get("A2").data, catalog.get("D4").data
    r = tensor_perfection_report(A2, A2)
    assert r["perfection_rank"] == 9 < r["threshold"] == 10 and not r["perfect"]
    r = tensor_perfection_report(D4, A2)
    assert r["split_bound"] == 30 and r["threshold"] == 36 and r["perfection_rank"] <= 30
    r = tensor_perfection_report(A2, catalog.get("E8").data, enumerate_limit=8)
    assert r["method"].startswith("split") and r["perfection_rank"] <= r["split_bound"]
    from tensorlat import ZLattice
    assert not tensor_perfection_report(A2, ZLattice([[1]]))["in_scope"]
