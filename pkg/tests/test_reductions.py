import random

import pytest

from acyclic_planar import generators as gen
from acyclic_planar.acyclic_coloring import (
    ColoringError,
    EdgeColoring,
    bicolored_cycles_through,
    random_acyclic_coloring,
    verify_acyclic,
)
from acyclic_planar.plane_graph import Thresholds, find_bunches
from acyclic_planar.reductions import (
    RegimeError,
    build_c_good,
    color_planar,
    lemma2_extend,
    lemma2_set,
    reduce_big_vertex,
    swap_repair,
    working_graph,
)
from support import perturbed_reduction, spider, two_bunch_hub

TH = Thresholds.scaled(14)


# single-vertex extension

def test_extend_direct():
    # w2 and w3 avoid color 1 at their pendant edges
    g, c = spider(3, arm_colors=[0, 3, 2])
    r = lemma2_extend(g, 0, [1, 2, 3], 100, c, 3, w1=1)
    assert [s["kind"] for s in r.steps] == ["greedy", "direct"]
    assert verify_acyclic(g, r.coloring).ok
    changed = [e for e in c if r.coloring[e] != c[e]]
    assert changed == []


def test_extend_swap():
    g, c = spider(3)
    r = lemma2_extend(g, 0, [1, 2, 3], 100, c, 3, w1=1)
    step = r.steps[-1]
    assert step["kind"] == "swap"
    assert verify_acyclic(g, r.coloring).ok
    changed = [e for e in c if r.coloring[e] != c[e]]
    assert len(changed) == 1 and tuple(sorted(step["moved"])) == changed[0]


def test_extend_certificate():
    g, c = spider(2)
    r = lemma2_extend(g, 0, [1, 2], 100, c, 2, w1=1)
    assert not r.ok
    cert = r.certificate
    assert cert.w_size == 2 and cert.edge_cap == 8
    assert cert.count_ok
    assert cert.quadratic_vacuous and cert.quadratic_ok
    assert cert.bound_ok
    assert cert.to_dict()["bound"] == pytest.approx(102 + 404 ** 0.5)


def test_extend_regime():
    g, c = spider(3)
    with pytest.raises(RegimeError):
        lemma2_extend(g, 0, [1, 2, 3], 99, c, 3)
    with pytest.raises(RegimeError):
        lemma2_extend(g, 0, [4], 100, c, 3)


def test_extend_needs_uncolored_w1():
    g, c = spider(3)
    c[0, 1] = 1
    with pytest.raises(ColoringError):
        lemma2_extend(g, 0, [1, 2, 3], 100, c, 3, w1=1)


def test_low_neighbour_set():
    g, _ = spider(4)
    assert lemma2_set(g, 0, 100) == [1, 2, 3, 4]
    assert sorted(lemma2_set(gen.k4(), 0, 6)) == [1, 2, 3]
    assert lemma2_set(gen.k4(), 0, 5) == []


# C_good

def test_c_good_single_long_bunch():
    g, b = gen.bunch_gadget(gen.GadgetSpec(12, seed=4))
    th = Thresholds.scaled(14)
    bunches = find_bunches(g, th)
    gp = working_graph(g, 0, bunches, th)
    c = random_acyclic_coloring(gp, 20, random.Random(4))
    st = build_c_good(gp, 0, c, bunches, th, 20)
    assert st.short == [] and st.removed["short"] == set()
    anchors = {c[0, x] for x in b.anchors}
    assert st.removed["outside"] == anchors
    assert st.bound_holds


def test_c_good_per_neighbor_cost():
    # three extra degree-3 neighbours between the anchors
    g, _ = gen.hub_gadget([gen.GadgetSpec(12, seed=2)], connectors=[3])
    th = Thresholds.scaled(14)
    bunches = find_bunches(g, th)
    gp = working_graph(g, 0, bunches, th)
    for seed in range(10):
        c = random_acyclic_coloring(gp, 20, random.Random(seed))
        st = build_c_good(gp, 0, c, bunches, th, 20)
        assert st.nf == 5 and st.ns == 0
        assert 20 - len(st.c_good) <= 5 * st.nf
        assert st.bound_holds


def test_c_good_short_bunch_costs_its_length():
    g, _ = gen.hub_gadget([gen.GadgetSpec(12, seed=1), gen.GadgetSpec(10, seed=2)])
    th = Thresholds.scaled(12)
    bunches = find_bunches(g, th)
    gp = working_graph(g, 0, bunches, th)
    c = random_acyclic_coloring(gp, 30, random.Random(0))
    st = build_c_good(gp, 0, c, bunches, th, 30)
    assert [b.length for b in st.short] == [10]
    assert len(st.removed["short"]) == 10
    assert st.bound_holds


@pytest.mark.parametrize("seed", range(20))
def test_removal_count_inequality(seed):
    g, _ = two_bunch_hub(seed)
    bunches = find_bunches(g, TH)
    gp = working_graph(g, 0, bunches, TH)
    c = random_acyclic_coloring(gp, 30, random.Random(seed))
    st = build_c_good(gp, 0, c, bunches, TH, 30)
    nf, ns, s = st.nf, st.ns, st.s
    assert 30 - len(st.c_good) + 2 <= 5 * nf + ns * (nf + ns + 1 - s) + 10 * s + 2


# the reduction

@pytest.mark.parametrize("seed, path", [(1, "shortcut"), (0, "alpha")])
def test_reduce_paths(seed, path):
    g, _ = two_bunch_hub(seed)
    r = reduce_big_vertex(g, 0, TH, 30, seed=seed)
    stages = [x["stage"] for x in r.trace]
    assert path in stages
    assert verify_acyclic(r.working, r.coloring).ok


def test_shortcut_keeps_vy():
    g, _ = two_bunch_hub(1)
    r = reduce_big_vertex(g, 0, TH, 30, seed=1)
    setup = r.trace[0]
    sc = next(x for x in r.trace if x["stage"] == "shortcut")
    x, w, y = setup["x"], setup["w"], sc["y"]
    assert r.coloring[0, x] == sc["vx"]
    assert sc["vx"] in r.state.c_good
    assert sc["vx"] not in (r.coloring[w, x], r.coloring[w, y])


@pytest.mark.parametrize("seed", range(6))
def test_reduce_restore(seed):
    g, _ = two_bunch_hub(seed)
    r = reduce_big_vertex(g, 0, TH, 30, seed=seed, restore=True)
    assert r.working == g
    assert verify_acyclic(g, r.coloring).ok
    assert sum(x["stage"] == "restore" for x in r.trace) == 2


def test_reduce_regime_short_bunches():
    g, _ = gen.hub_gadget([gen.GadgetSpec(5, seed=1), gen.GadgetSpec(5, seed=2)])
    with pytest.raises(RegimeError):
        reduce_big_vertex(g, 0, Thresholds.scaled(7), 100)


def test_reduce_regime_not_a_parent():
    g, _ = two_bunch_hub(0)
    with pytest.raises(RegimeError):
        reduce_big_vertex(g, g.n - 1, TH, 30)


def test_reduce_rejects_bad_base():
    g, _ = two_bunch_hub(0)
    with pytest.raises(ColoringError):
        reduce_big_vertex(g, 0, TH, 30, base=EdgeColoring(30))


# swap repair

def test_swap_repair_identity():
    g, _ = two_bunch_hub(0)
    r = reduce_big_vertex(g, 0, TH, 30, seed=0)
    assert swap_repair(r.working, 0, r.coloring, TH, r.state) == r.coloring


@pytest.mark.parametrize("seed", [0, 1, 4, 5, 8])
def test_swap_repair_double_cycle(seed):
    gp, c, st = perturbed_reduction(seed, swaps=2, want=2)
    cyc = bicolored_cycles_through(gp, c, 0)
    trace = []
    out = swap_repair(gp, 0, c, TH, st, trace=trace)
    assert [x["stage"] for x in trace] == ["swap"]
    # the swap exchanges one color from each cycle
    b1, g1 = trace[0]["colors"]
    assert {b1, g1} & set(cyc[0][:2]) and {b1, g1} & set(cyc[1][:2])
    assert verify_acyclic(gp, out).ok


@pytest.mark.parametrize("seed", range(5))
def test_swap_repair_single_relocation(seed):
    gp, c, st = perturbed_reduction(seed, swaps=1, want=1)
    trace = []
    out = swap_repair(gp, 0, c, TH, st, trace=trace)
    assert [x["stage"] for x in trace] == ["relocate"]
    assert verify_acyclic(gp, out).ok


def test_swap_repair_availability():
    gp, c, st = perturbed_reduction(0, swaps=1, want=1)
    st.long = st.long * 4  # pretend there are many more bunches at v
    with pytest.raises(RegimeError):
        swap_repair(gp, 0, c, TH, st)


# driver

@pytest.mark.parametrize("name, g, k", [
    ("icosahedron", gen.icosahedron(), 25),
    ("dodecahedron", gen.dodecahedron(), 15),
    ("star6", gen.star(6), 6),
    ("bowtie", gen.bowtie(), 8),
    ("trunc-dodec", gen.truncated_dodecahedron(), 15),
])
def test_color_planar_fixtures(name, g, k):
    r = color_planar(g, k)
    assert r.ok, r.reason
    assert verify_acyclic(g, r.coloring).ok


def test_color_planar_reports_stuck_vertex():
    g = gen.icosahedron()
    r = color_planar(g, 20)
    assert not r.ok
    assert r.stuck_vertex is not None and "degree sum" in r.reason


def test_color_planar_disconnected():
    g = gen.k4()
    g2 = g.without_edges([(0, 1), (0, 2), (0, 3)])
    r = color_planar(g2, 5)
    assert r.ok
