import json

import pytest

from acyclic_planar import constants as K


def test_rc3_grid_value():
    # the printed product formula peaks at 8961, not the stated 8680
    assert K.rc3_max() == (8961, (7, 0))


def test_rc3_origin():
    assert K.rc3_objective(0, 0) == (5 * 35 + 1) * 36 == 6336


def test_rc3_free_nf_agrees():
    value, (nf, ns, s) = K.rc3_max_free_nf()
    assert value == K.rc3_max()[0]
    assert nf == K.RC3_CAP - 2 * ns


def test_rc3_variant_reproduces_printed_value():
    assert K.rc3_variant_max() == (8680, (7, 0))


def test_rc4_constant_term():
    assert K.rc4_factored(0, 0) == 99991859616
    assert K.rc4_expanded(0, 0) == 99991859616


def test_rc4_expansion():
    ok, bad = K.expansion_agrees(2000)
    assert ok, bad


def test_rc4_max():
    r = K.rc4_max()
    assert 4.18e14 <= r.value <= 4.20e14
    assert r.argmax == (47134, 0)
    assert r.value == 419000854089768
    assert r.relative_gap <= 1e-6
    assert r.interior_critical == []


def test_rc4_gradient_matches_finite_difference():
    for ns, s in [(100, 50), (30000, 2000), (47134, 0)]:
        assert K._grad_s(ns, s) == pytest.approx(K.rc4_expanded(ns, s + 1) - K.rc4_expanded(ns, s),
                                                 rel=1e-3, abs=2 * ns + 20)


def test_threshold_squares():
    rows = K.corollary_checks()
    assert [r["gap_squared"] for r in rows] == [43681, 87025, 130321, 173889]
    assert [r["five_sum"] for r in rows] == [43400, 86800, 130200, 173600]
    assert all(r["holds"] for r in rows)


def test_le_plus_sqrt_exact():
    assert K.le_plus_sqrt(0, 4, 2)
    assert not K.le_plus_sqrt(0, 5, 2)
    assert not K.le_plus_sqrt(3, 0, 2)


def test_quadratic_boundary():
    assert not K.lemma2_compare(80)
    assert K.lemma2_compare(81)
    assert K.lemma2_compare(100)


def test_lemma2_range():
    assert K.lemma2_range(81, 10 ** 5) == (True, [])
    ok, bad = K.lemma2_range(70, 90)
    assert not ok and bad[0] == 70


def test_lemma2_roots():
    assert all(K.lemma2_root_check(q) for q in range(0, 500))


def test_implication():
    assert K.implication_spot(500)


def test_report():
    rep = K.verify_arithmetic()
    assert rep.main_constants["palette_floor"] == 43400
    assert rep.main_constants["delta_suffices"]
    assert not rep.ok  # only because of the rc3 mismatch
    d = json.loads(json.dumps(rep.to_dict()))
    assert d["rc3_max"] == 8961 and d["rc3_claimed"] == 8680
    assert d["lemma2_at_80"] is False and d["lemma2_at_81"] is True
