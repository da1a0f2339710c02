from collections import Counter

import pytest

from acyclic_planar import generators as gen
from acyclic_planar.plane_graph import (
    QUAD,
    Bunch,
    EmbeddingError,
    Thresholds,
    build_from_rotation,
    check_bunch,
    find_bunches,
    format_embedding,
    parse_embedding,
    validate,
)


def face_lengths(g):
    return Counter(g.face_length(f) for f in range(len(g.faces)))


def test_k4_faces():
    g = gen.k4()
    assert face_lengths(g) == {3: 4}
    assert validate(g).ok


def test_cube_faces():
    assert face_lengths(gen.cube()) == {4: 6}


def test_loop_rejected():
    with pytest.raises(EmbeddingError):
        build_from_rotation([[0, 1], [0]])


def test_validate_cut_vertex():
    rep = validate(gen.bowtie())
    assert rep.connected and rep.simple and rep.euler_ok
    assert not rep.two_connected


def test_single_edge_not_two_connected():
    assert not validate(gen.path(2)).two_connected


def test_embedding_roundtrip():
    g = gen.icosahedron()
    text = format_embedding(g)
    h = parse_embedding(text)
    assert h == g
    assert format_embedding(h) == text


@pytest.mark.parametrize("bad", ["0: 1\n1: 2\n", "0: x\n", "0: 1 1\n1: 0 0\n"])
def test_parse_errors(bad):
    with pytest.raises(EmbeddingError):
        parse_embedding(bad)


def test_succ_pred_inverse():
    g = gen.wheel(7)
    for v in range(g.n):
        for u in g.neighbors(v):
            assert g.pred(v, g.succ(v, u)) == u


def test_relabel_preserves_faces():
    g = gen.truncated_dodecahedron()
    h, _ = gen.relabeled(g, 3)
    assert face_lengths(h) == face_lengths(g)
    assert sorted(h.degrees) == sorted(g.degrees)


def test_no_big_vertex_no_bunches():
    assert find_bunches(gen.icosahedron(), Thresholds()) == []


def test_figure_gadget_is_one_bunch():
    g, b = gen.figure_gadget()
    found = find_bunches(g, Thresholds.scaled(14))
    assert len(found) == 1
    assert found[0].signature() == b.signature()
    assert found[0].length == 12
    assert check_bunch(g, b, Thresholds.scaled(14)) == []


def test_all_two_vertices_means_quads():
    g, b = gen.bunch_gadget(gen.GadgetSpec(12, degrees=(2,) * 12))
    assert b.horizontals == []
    assert set(b.gaps) == {QUAD}


@pytest.mark.parametrize("seed", range(8))
def test_gadget_fixed_point(seed):
    spec = gen.GadgetSpec(11 + seed, seed=seed)
    g, b = gen.bunch_gadget(spec)
    th = Thresholds.scaled(b.length + 2)
    found = find_bunches(g, th)
    assert [x.signature() for x in found] == [b.signature()]


def test_mixed_degree_spec_roundtrip():
    degs = (2, 3, 4, 3, 2, 2, 3, 3, 2, 3, 4)
    spec = gen.GadgetSpec(11, degrees=degs, seed=7)
    g, b = gen.bunch_gadget(spec)
    assert tuple(g.degree(x) for x in b.vertices) == degs
    found = find_bunches(g, Thresholds.scaled(13))
    assert [x.signature() for x in found] == [b.signature()]


def test_bunch_detection_survives_relabeling():
    g, b = gen.bunch_gadget(gen.GadgetSpec(14, seed=2))
    h, perm = gen.relabeled(g, 9)
    th = Thresholds.scaled(16)
    found = find_bunches(h, th)
    assert len(found) == 1
    assert set(found[0].vertices) == {perm[x] for x in b.vertices}


def test_borodin_bunches():
    g = gen.borodin_construction(3)
    found = find_bunches(g, Thresholds.scaled(25))
    assert len(found) == 30
    assert all(b.length == 3 for b in found)
    for b in found:
        assert all(g.degree(p) == 25 for p in b.parents)


def test_truncated_dodecahedron():
    g = gen.truncated_dodecahedron()
    assert (g.n, len(g.edges), len(g.faces)) == (60, 90, 32)
    assert face_lengths(g) == {10: 12, 3: 20}


@pytest.mark.parametrize("t", [1, 2, 3])
def test_borodin_claims(t):
    g = gen.borodin_construction(t)
    assert g.max_degree == 5 * t + 10
    assert min(g.degrees) == 4
    delta = g.max_degree
    for x in range(g.n):
        if g.degree(x) <= 5:
            assert sum(g.degree(u) == delta for u in g.neighbors(x)) == 2


def test_random_planar_deterministic():
    a = gen.random_planar(10, 1)
    b = gen.random_planar(10, 1)
    assert format_embedding(a) == format_embedding(b)
    assert validate(a).two_connected


def test_bunch_to_dict():
    _, b = gen.figure_gadget()
    d = b.to_dict()
    assert len(d["vertices"]) == 12
    assert len(d["gaps"]) == 13


def test_bunch_anchors():
    b = Bunch((0, 1), (5, 6, 7, 8), (QUAD, QUAD, QUAD))
    assert b.anchors == (5, 8)
    assert b.vertices == (6, 7)
    assert b.length == 2
