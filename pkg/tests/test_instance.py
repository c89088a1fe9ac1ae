import json

import pytest

from conftest import DATA, FIXTURES, load
from skewmorita.instance import InstanceValidationError, load_instance, load_instance_file
from skewmorita.selftest import fixture_dir


def doc(name):
    return json.loads((fixture_dir() / f"{name}.json").read_text())


@pytest.mark.parametrize("name,order,nverts,narrows", [
    ("d10", 10, 5, 10),
    ("trivial", 1, 3, 5),
    ("z2swap", 2, 2, 2),
    ("z2mixed", 2, 3, 7),
    ("z6", 6, 2, 6),
    ("z3nonmono", 3, 1, 2),
    ("s3", 6, 1, 2),
])
def test_fixture_shapes(name, order, nverts, narrows):
    inst, _ = load(name)
    assert inst.group.order == order
    assert inst.quiver.num_vertices == nverts
    assert len(inst.quiver.arrows) == narrows


@pytest.mark.parametrize("name,expected", [
    ("d10", True), ("trivial", True), ("z2swap", True), ("z2mixed", True), ("z6", True),
    ("z3nonmono", False), ("s3", False),
])
def test_monomial_abelian_setting(name, expected):
    inst, _ = load(name)
    assert inst.monomial_abelian is expected


def test_broken_action_reports_pair():
    with pytest.raises(InstanceValidationError) as exc:
        load_instance_file(DATA / "broken_action.json")
    d = exc.value.details
    assert d["error"] == "action"
    assert "s" in d["pair"]
    json.dumps(d)


def test_bad_group_table():
    with pytest.raises(InstanceValidationError) as exc:
        load_instance_file(DATA / "bad_group.json")
    assert exc.value.details["error"] == "group"


def test_unknown_arrow_label():
    d = doc("z2swap")
    d["arrow_action"]["s"]["a"] = "nope"
    with pytest.raises(InstanceValidationError):
        load_instance(d)


def test_non_cycle_potential():
    d = doc("z2swap")
    d["potential"] = [{"cycle": ["a"], "coeff": 1}]
    with pytest.raises(InstanceValidationError):
        load_instance(d)


def test_incomplete_irreps():
    d = doc("s3")
    d["irreps"]["0"] = d["irreps"]["0"][:2]
    with pytest.raises(InstanceValidationError) as exc:
        load_instance(d)
    assert exc.value.details["error"] == "irrep"


def test_isomorphic_irreps_rejected():
    d = doc("s3")
    d["irreps"]["0"][1] = dict(d["irreps"]["0"][0], label="triv2")
    with pytest.raises(InstanceValidationError):
        load_instance(d)


def test_nonabelian_stabilizer_without_irreps():
    d = doc("s3")
    del d["irreps"]
    with pytest.raises(InstanceValidationError):
        load_instance(d)


def test_generators_only_action_is_closed():
    inst, _ = load("d10")
    G = inst.group
    c, t = G.index("c"), G.index("t")
    # t c t = c^-1 on vertices
    assert inst.orbits.action[G.prod(t, c, t)] == inst.orbits.action[G.inverse(c)]
    assert inst.orbits.orbit_reps == (0,)
    assert set(inst.stabilizer(0).elements) == {0, t}


@pytest.mark.parametrize("name", FIXTURES)
def test_qg_vertices_cover_all_irreps(name):
    inst, _ = load(name)
    expected = sum(len(inst.irreps[i]) for i in inst.orbits.orbit_reps)
    assert len(inst.qg_vertices) == expected
