import json
from fractions import Fraction

import pytest

from tensorlat import HermLattice, catalog, herm_minimum, is_isometric, make_field, zl_minimum
from tensorlat.catalog import CatalogError
from tensorlat.hermitian import HermitianError, is_dual_scaled


@pytest.mark.parametrize("name", catalog.NAMES)
def test_every_entry_validates_and_roundtrips(name, tmp_path):
    e = catalog.get(name)
    p = tmp_path / f"{name}.json"
    catalog.save(e, p)
    back = catalog.load(p)
    assert back.data == e.data and back.kind == e.kind
    if e.kind == "hermitian":
        L = e.data
        assert L.trace.det == abs(L.field.disc) ** L.m * L.disc**2


def test_builtin_grams():
    F7 = make_field(7)
    a, b = F7.omega, F7.omega.conj()
    assert catalog.get("Pb").data.gram == HermLattice(F7, [[2, a, -1], [b, 2, a], [-1, b, 2]]).gram
    F11 = make_field(11)
    eta = F11.omega
    assert catalog.get("T").data.gram == HermLattice(F11, [[2, eta], [eta.conj(), 2]]).gram
    s = F7.inv_sqrt
    assert catalog.get("LK-d7a").data.gram[0][1] == 2 * s
    assert catalog.get("Pa").data.gram[0][1] == 4 * s


def test_leech_characterisation():
    L = catalog.get("Leech").data
    assert L.n == 24 and L.is_even and L.det == 1
    assert zl_minimum(L)[0] == 4


def test_pc_fixture():
    Pc = catalog.get("Pc")
    assert Pc.provenance == "computed"
    L = Pc.data
    assert L.trace.is_even and L.trace.det == 1 and L.trace.n == 8
    assert is_isometric(L.trace, catalog.get("E8").data)
    assert herm_minimum(L)[0] == 1
    assert is_dual_scaled(L, L.field.sqrt)


def test_unknown_name_lists_catalog():
    with pytest.raises(CatalogError, match="Pb"):
        catalog.get("P7")


def test_malformed_file(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text(json.dumps({"field": {"d": 7}, "gram": [[{"re": "1"}, {"re": "0", "im": "oops"}],
                                                         [{"re": "0"}, {"re": "1"}]]}))
    with pytest.raises(HermitianError, match="row 0, column 1"):
        catalog.load(p)
    p.write_text(json.dumps({"gram": [[1, 2], [2, 1]]}))
    with pytest.raises(ValueError, match="positive definite"):
        catalog.load(p)


def test_user_hermitian_file(tmp_path):
    p = tmp_path / "user.json"
    F = make_field(7)
    obj = {"field": {"d": 7}, "gram": [[{"re": "2"}, {"re": "1/2", "im": "1/2"}], [{"re": "1/2", "im": "-1/2"}, {"re": "2"}]]}
    p.write_text(json.dumps(obj))
    e = catalog.load(p)
    assert e.kind == "hermitian" and e.data.disc == Fraction(2) and e.name == "user"
