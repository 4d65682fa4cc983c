import pytest

from sidonkit.fields import field_create
from sidonkit.incidence import is_projective_plane
from sidonkit.planes3 import (
    FAMILY_TAGS,
    PlaneError,
    extract_sidon,
    family_build,
    orbit_analysis,
    plane_build,
    recover_constructions,
)
from sidonkit.sidon import is_sidon

F3 = field_create(3, 1)
F4 = field_create(2, 2)
F5 = field_create(5, 1)
F7 = field_create(7, 1)


def test_tags():
    assert FAMILY_TAGS == ("i", "ii", "iii", "iv", "v", "vi", "vii", "viii", "ix")


def test_plane_build_is_projective_plane():
    for F in (field_create(2, 1), F3, F4):
        L = plane_build(F)
        assert is_projective_plane(L).order == F.q
    with pytest.raises(PlaneError):
        plane_build(field_create(67, 1))


ORDERS = {
    "i": lambda q: q * q + q + 1,
    "ii": lambda q: q * q - 1,
    "iii": lambda q: (q - 1) ** 2,
    "iv": lambda q: q * (q - 1),
    "v": lambda q: q * q,
    "vi": lambda q: q * q,
    "vii": lambda q: q * q,
    "viii": lambda q: 9,
    "ix": lambda q: 9,
}


@pytest.mark.parametrize("field", [F3, F4, F5, F7], ids=lambda F: f"q{F.q}")
@pytest.mark.parametrize("tag", FAMILY_TAGS)
def test_family_group_orders(field, tag):
    if tag in ("viii", "ix") and (field.q - 1) % 3:
        with pytest.raises(PlaneError):
            family_build(field, tag)
        return
    action = family_build(field, tag)
    assert action.group.order == ORDERS[tag](field.q)


# number of point orbits for the regular-ish families is q-independent
ORBIT_T = {"i": 1, "ii": 3, "iii": 7, "iv": 5, "v": 3}


@pytest.mark.parametrize("field", [F3, F4, F5], ids=lambda F: f"q{F.q}")
@pytest.mark.parametrize("tag", sorted(ORBIT_T))
def test_orbit_counts(field, tag):
    orb = orbit_analysis(family_build(field, tag))
    assert orb.t == ORBIT_T[tag]
    sizes = sorted(len(o) for o in orb.point_orbits)
    assert sum(sizes) == field.q ** 2 + field.q + 1
    assert sizes == sorted(len(o) for o in orb.line_orbits)


def test_orbit_line_point_symmetry_family_iii():
    orb = orbit_analysis(family_build(F4, "iii"))
    assert orb.to_json()["point_orbit_sizes"] == [1, 1, 1, 3, 3, 3, 9]
    assert len(orb.fixed_points) == 3 and len(orb.fixed_lines) == 3


EXTRACT_SIZE = {
    "i": lambda q: q + 1,
    "ii": lambda q: q,
    "iii": lambda q: q - 2,
    "iv": lambda q: q - 1,
    "v": lambda q: q,
}


@pytest.mark.parametrize("field", [F3, F4, F5, F7], ids=lambda F: f"q{F.q}")
@pytest.mark.parametrize("tag", sorted(EXTRACT_SIZE))
def test_extract_sizes_and_sidon(field, tag):
    action = family_build(field, tag)
    ext = extract_sidon(action)
    assert len(ext.S) == EXTRACT_SIZE[tag](field.q)
    assert ext.bound_ok
    assert is_sidon(action.group, ext.S).sidon


@pytest.mark.parametrize("field", [F3, F4, F5, F7], ids=lambda F: f"q{F.q}")
def test_stabilizer_obstructions(field):
    # translations fixing a full line pointwise (vi) or a full pencil
    # linewise (vii) never extract: the error names the offending side
    for tag, side in (("vi", "line"), ("vii", "point")):
        action = family_build(field, tag)
        with pytest.raises(PlaneError) as err:
            extract_sidon(action)
        assert err.value.side == side


def test_stabilizer_witness_on_explicit_flag():
    # point (0,0,1) moves freely under the translations of family vi, but
    # the line at infinity is fixed; asking for it names a fixing element
    action = family_build(F3, "vi")
    inf_line = (0, 0, 1)
    with pytest.raises(PlaneError) as err:
        extract_sidon(action, point=(0, 0, 1), line=inf_line)
    assert err.value.side == "line"
    assert err.value.witness is not None


def test_families_viii_ix_need_cube_roots():
    for tag in ("viii", "ix"):
        with pytest.raises(PlaneError):
            family_build(F3, tag)
        action = family_build(F4, tag)
        assert action.group.factors == (3, 3)
        ext = extract_sidon(action)
        assert is_sidon(action.group, ext.S).sidon


def test_action_is_homomorphism_into_projectivities():
    action = family_build(F5, "iv")
    G = action.group
    for a in list(G.elements())[:8]:
        for b in list(G.elements())[:8]:
            assert action.matrix(a) * action.matrix(b) == action.matrix(a + b)


def test_point_perm_matches_lazy_orbits():
    action = family_build(F4, "ii")
    G = action.group
    g = G.element(1)
    perm = action.point_perm(g)
    assert sorted(perm) == list(range(21))
    orbit0 = action.point_orbit(0)
    assert len(orbit0) in (1, 3, 5, 15, 21)


def test_extract_with_incident_flag_still_sidon():
    # when the chosen point lies on the chosen line, the identity lands in
    # S; the set stays Sidon and keeps its size
    action = family_build(F3, "i")
    from sidonkit.planes3 import _plane_data
    structure, _, _ = _plane_data(F3)
    i, j = next(iter(structure.incidences))
    ext = extract_sidon(action, point=i, line=j)
    assert action.group.zero in ext.S
    assert len(ext.S) == 4
    assert is_sidon(action.group, ext.S).sidon


def test_recover_q3_and_q5_all_equivalent():
    for F in (F3, F5):
        rows = recover_constructions(F)
        seen = {}
        for row in rows:
            assert "skipped" not in row
            assert row["equivalent"] is True
            assert row["conclusive"] is True
            seen[row["family"]] = row["construction"]
        assert seen == {"i": "singer", "ii": "bose", "iii": "hughes",
                        "iv": "spence", "v": "erdos_turan"}


def test_recover_q4_skips_parabola():
    rows = recover_constructions(F4)
    by_family = {row["family"]: row for row in rows}
    assert "skipped" in by_family["v"]
    for tag in ("i", "ii", "iii", "iv"):
        assert by_family[tag]["equivalent"] is True


def test_recover_rejects_tiny_field():
    with pytest.raises(PlaneError):
        recover_constructions(field_create(2, 1))
