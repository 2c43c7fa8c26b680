import json
from fractions import Fraction

import pytest
from hypothesis import given

from compatorder.errors import DiscontinuousError
from compatorder.functions import ValueGrid, enumerate_family
from compatorder.lattice import FiniteLattice, lattice_from_ro, spectrum, theta_lattice
from compatorder.morphisms import CompatMap, is_compat_iso
from compatorder.serialize import (
    BUNDLED_DIR,
    FormatError,
    bundled_names,
    dumps,
    family_from_json,
    family_to_json,
    fn_from_json,
    hasse_dot,
    lattice_from_json,
    lattice_to_json,
    load_family,
    load_map,
    load_space,
    map_to_json,
    read_json,
    resolve,
    space_from_json,
    space_map_from_json,
    space_to_json,
    specialization_dot,
    spectrum_dot,
)
from compatorder.topology import FiniteSpace, SpaceMap

from conftest import spaces

SIER = FiniteSpace.sierpinski()


@given(spaces(4))
def test_space_round_trip(space):
    assert space_from_json(json.loads(dumps(space_to_json(space)))) == space


def test_space_loading_adds_empty_and_full():
    assert space_from_json({"n": 2, "opens": [[0]]}) == SIER


@pytest.mark.parametrize(
    "obj",
    [
        {"n": 2, "opens": [[0], [0]]},
        {"n": 2, "opens": [[0, 0]]},
        {"n": 2, "opens": [[2]]},
        {"n": -1, "opens": []},
        {"n": 2},
        {"n": 2, "opens": [["a"]]},
    ],
)
def test_bad_spaces(obj):
    with pytest.raises(FormatError):
        space_from_json(obj)


def test_family_round_trip_keeps_rationals():
    fam = enumerate_family(FiniteSpace.discrete(2), ValueGrid.parse("-1/2,0,3"))
    data = family_to_json(fam)
    assert {"values": ["-1/2", "3"]} in data
    back = family_from_json(fam.space, data)
    assert [f.values for f in back] == [f.values for f in fam]


def test_function_values():
    d2 = FiniteSpace.discrete(2)
    assert fn_from_json(d2, {"values": ["1/3", 2]}).values == (Fraction(1, 3), Fraction(2))
    for bad in ({"values": ["1/0", "0"]}, {"values": ["x", "0"]}, {"values": [0.5, 0]}, {"values": ["1"]}, [1, 2]):
        with pytest.raises(FormatError):
            fn_from_json(d2, bad)
    with pytest.raises(DiscontinuousError):
        fn_from_json(SIER, {"values": ["1", "0"]})


def test_family_requires_zero():
    d1 = FiniteSpace.discrete(1)
    with pytest.raises(ValueError):
        family_from_json(d1, [{"values": ["1"]}])
    assert len(family_from_json(d1, [{"values": ["1"]}], require_zero=False)) == 1


def test_bundled_resolution():
    assert resolve("bundled:sierpinski") == BUNDLED_DIR / "sierpinski.json"
    assert resolve("bundled:sierpinski.json") == BUNDLED_DIR / "sierpinski.json"
    assert "discrete4" in bundled_names() and "phi_map" in bundled_names()
    assert load_space("bundled:sierpinski") == SIER
    assert load_space("bundled:discrete4") == FiniteSpace.discrete(4)
    with pytest.raises(FormatError):
        read_json("bundled:no_such_thing")


def test_bundled_map_is_the_permutation_map():
    T = load_map("bundled:phi_map")
    assert is_compat_iso(T)
    d3 = load_space("bundled:discrete3")
    phi = space_map_from_json(d3, d3, read_json("bundled:phi"))
    assert phi == SpaceMap(d3, d3, (1, 2, 0))


def test_map_round_trip(tmp_path):
    d2 = FiniteSpace.discrete(2)
    (tmp_path / "space.json").write_text(dumps(space_to_json(d2)))
    fam = enumerate_family(d2, ValueGrid.parse("0,1"))
    (tmp_path / "fam.json").write_text(dumps(family_to_json(fam)))
    T = CompatMap.identity(fam)
    (tmp_path / "map.json").write_text(dumps(map_to_json(T, "fam.json", "fam.json", "space.json", "space.json")))
    assert load_map(tmp_path / "map.json") == T
    assert load_family(d2, "fam.json", tmp_path) == fam


def test_map_errors(tmp_path):
    (tmp_path / "m.json").write_text(json.dumps({"source": "x"}))
    with pytest.raises(FormatError, match="missing keys"):
        load_map(tmp_path / "m.json")
    (tmp_path / "bad.json").write_text("{not json")
    with pytest.raises(FormatError, match="invalid JSON"):
        load_map(tmp_path / "bad.json")
    d2 = FiniteSpace.discrete(2)
    with pytest.raises(FormatError):
        space_map_from_json(d2, d2, {"assignment": [0, 2]})


@pytest.mark.parametrize(
    "lat",
    [FiniteLattice.chain(3), FiniteLattice.powerset(2), lattice_from_ro(SIER), theta_lattice(FiniteSpace.discrete(2), "0,1")],
    ids=repr,
)
def test_lattice_round_trip(lat):
    back = lattice_from_json(json.loads(dumps(lattice_to_json(lat))))
    assert len(back) == len(lat)
    assert [list(r) for r in back.join] == [list(r) for r in lat.join]
    assert [list(r) for r in back.meet] == [list(r) for r in lat.meet]


def test_bad_lattice_tables():
    with pytest.raises(FormatError):
        lattice_from_json({"elements": [0, 1], "join": [[0, 1]], "meet": [[0, 0], [0, 1]]})
    with pytest.raises(FormatError):
        lattice_from_json({"elements": [0, 1], "join": [[0, 1], [1, 5]], "meet": [[0, 0], [0, 1]]})


def test_dot_edges():
    dot = specialization_dot(SIER)
    # the closed point 1 lies in the closure of the open point 0
    assert "p1 -> p0;" in dot and "p0 -> p1;" not in dot
    assert "->" not in specialization_dot(FiniteSpace.discrete(3))
    chain = hasse_dot(FiniteLattice.chain(3))
    assert chain.count("->") == 2 and "rankdir=BT" in chain
    assert spectrum_dot(spectrum(FiniteLattice.chain(3))).count("->") == 1


def test_dumps_keeps_scalar_lists_inline():
    text = dumps({"a": [1, 2, 3], "b": [[0], [1]]})
    assert '"a": [1, 2, 3]' in text
    assert json.loads(text) == {"a": [1, 2, 3], "b": [[0], [1]]}
