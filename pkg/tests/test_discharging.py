import json

import pytest

from acyclic_planar import generators as gen
from acyclic_planar.discharging import (
    BANK,
    ConfigurationWitness,
    DischargingError,
    apply_rules,
    detect_rc1,
    detect_rc2,
    detect_rc34,
    initial_charges,
    outside_counts,
    replay,
    structural_scan,
    unhappy_elements,
    verify_witness,
)
from acyclic_planar.plane_graph import Thresholds, find_bunches


def test_k4_initial():
    led = initial_charges(gen.k4())
    assert set(led.vertex.values()) == {-6}
    assert set(led.face.values()) == {0}
    assert led.total2() == -24
    assert unhappy_elements(led) == [("vertex", v) for v in range(4)]


def test_cube_initial():
    led = initial_charges(gen.cube())
    assert sorted(led.vertex.values()) == [-6] * 8
    assert sorted(led.face.values()) == [4] * 6


def test_disconnected_rejected():
    g = gen.k4().without_edges(gen.k4().edges)
    with pytest.raises(DischargingError):
        initial_charges(g)


def test_no_big_vertex_no_transfers():
    g = gen.icosahedron()
    led = apply_rules(g, Thresholds())
    assert led.log == []
    init = initial_charges(g)
    assert led.vertex == init.vertex and led.face == init.face


def test_wheel20():
    g = gen.wheel(20)
    led = apply_rules(g, Thresholds.scaled(10))
    hub = max(range(g.n), key=g.degree)
    assert led.vertex[hub] == -116
    assert all(led.vertex[v] == 0 for v in range(g.n) if v != hub)
    outer = max(range(len(g.faces)), key=g.face_length)
    assert led.face[outer] == 68
    assert led.bank == 24
    assert unhappy_elements(led) == [("vertex", hub)]


def test_bunch_two_vertices_end_at_zero():
    g, b = gen.bunch_gadget(gen.GadgetSpec(12, degrees=(2,) * 12, parent_degrees=(30, 30)))
    led = apply_rules(g, Thresholds.scaled(14))
    assert [led.vertex[x] for x in b.vertices] == [0] * 12
    rules = {t.rule for t in led.log if t.target == ("vertex", b.vertices[0])}
    assert rules == {"R1-bunch", "R2-quad"}


def test_replay_reproduces_ledger():
    g = gen.hub_gadget([gen.GadgetSpec(14, seed=3)])[0]
    led = apply_rules(g, Thresholds.scaled(12))
    again = replay(initial_charges(g), led.log)
    assert again.vertex == led.vertex and again.face == led.face and again.bank == led.bank


def test_ledger_json():
    led = apply_rules(gen.wheel(12), Thresholds.scaled(10))
    d = json.loads(json.dumps(led.to_dict()))
    assert d["units"] == "doubled" and d["total2"] == -24
    assert d["bank"] == led.bank
    assert len(d["transfers"]) == len(led.log)


def test_bank_is_a_site():
    led = apply_rules(gen.wheel(12), Thresholds.scaled(10))
    assert led.charge(BANK) == led.bank


def test_rc1_examples():
    g = gen.k4()
    w = detect_rc1(g, 43400)
    assert w.vertex == 0 and w.degree_sum == 9
    assert detect_rc1(g, 8) is None
    assert detect_rc1(gen.icosahedron(), 25).degree_sum == 25


def test_rc2_examples():
    assert detect_rc2(gen.icosahedron(), 5, Thresholds()) is None
    star = gen.star(8)
    assert detect_rc2(star, 8, Thresholds()) is None
    th = Thresholds.scaled(5, rc2_offsets=(1, 1, 1, 1))
    w = detect_rc2(star, 8, th)
    assert w.kind == "RC2" and w.cls == "i" and len(w.vertices) == 8


def hub40():
    specs = [gen.GadgetSpec(18, seed=s, parent_degrees=(40, 40)) for s in (1, 2)]
    return gen.hub_gadget(specs)[0]


def test_rc3_on_two_bunch_hub():
    g = hub40()
    th = Thresholds.scaled(30)
    assert g.degree(0) == 40
    bunches = find_bunches(g, th)
    assert sum(len(b.vertices) for b in bunches if 0 in b.parents) == 36
    w = detect_rc34(g, th, bunches)
    assert w.kind == "RC3" and w.vertex == 0
    assert w.nf + 2 * w.ns <= 4
    assert verify_witness(g, th, w)


def test_rc3_cap_respected():
    g = gen.star(40)
    th = Thresholds.scaled(30, rc4_cap=0)
    assert outside_counts(g, 0, []) == (40, 0)
    assert detect_rc34(g, th, []) is None


def test_rc34_without_big_vertices():
    assert detect_rc34(gen.cube(), Thresholds(), []) is None


@pytest.mark.parametrize("name", ["k4", "icosahedron", "borodin2"])
def test_scan_finds_rc1(name):
    g = {"k4": gen.k4(), "icosahedron": gen.icosahedron(),
         "borodin2": gen.borodin_construction(2)}[name]
    w = structural_scan(g)
    assert w.kind == "RC1"
    assert verify_witness(g, Thresholds(), w)


def test_scan_needs_two_connected():
    with pytest.raises(DischargingError):
        structural_scan(gen.bowtie())


def test_forged_witness_rejected():
    g = gen.k4()
    th = Thresholds()
    assert not verify_witness(g, th, ConfigurationWitness("RC1", 0, degree_sum=8))
    assert not verify_witness(g, th, ConfigurationWitness("RC3", 0, nf=0, ns=0))
    assert not verify_witness(g, th, ConfigurationWitness("RC1", 9, degree_sum=9))


def test_witness_json():
    w = ConfigurationWitness("RC3", 0, nf=4, ns=0)
    assert json.loads(json.dumps(w.to_dict())) == {"schema_version": 1, "kind": "RC3",
                                                   "vertex": 0, "nf": 4, "ns": 0}
