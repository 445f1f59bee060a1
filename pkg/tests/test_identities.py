import random

import pytest

from icelab import identities as ids
from icelab.icemodel import Boundary, Regime
from icelab.identities import (
    MAIN,
    SPECIALIZATIONS,
    check_counting,
    check_half_widths,
    check_loop_exchange,
    check_main_theorem,
    check_no_qt_of_size_4n2,
    check_prefactor_cancellation,
    check_prefactor_compaction,
    check_specialization,
    check_symmetry,
    check_yang_baxter,
    random_values,
    run_suite,
)


@pytest.mark.parametrize("regime", [Regime.GENERIC, Regime.OMEGA6])
def test_yang_baxter(regime):
    r = check_yang_baxter(regime)
    assert r.passed, r.witness


@pytest.mark.parametrize("width", [1, 2])
def test_loop_exchange(width):
    assert check_loop_exchange(width, seed=1, trials=2).passed


@pytest.mark.parametrize("b,N", [("dwbc", 2), ("dwbc", 3), ("ht_even", 1), ("ht_even", 2),
                                 ("ht_odd", 1), ("ht_odd", 2), ("qt", 1), ("qqt", 1)])
def test_set_wise_symmetry(b, N):
    assert check_symmetry(b, N, "set-wise").passed


def test_special_symmetries():
    assert check_symmetry("qqt", 1, "xy").passed
    assert check_symmetry("qt", 1, "pseudo-xy").passed
    assert check_symmetry("ht_even", 1, "pseudo-xy").passed
    assert check_symmetry("ht_even", 2, "pseudo-xy").passed
    assert check_symmetry("dwbc", 2, "full-omega6").passed
    with pytest.raises(ValueError):
        check_symmetry("qt", 1, "xy")
    with pytest.raises(ValueError):
        check_symmetry("qt", 1, "sideways")


def test_prefactors():
    assert check_prefactor_compaction(trials=30).passed
    assert check_prefactor_cancellation(1, trials=5).passed
    assert check_prefactor_cancellation(2, trials=3).passed


@pytest.mark.parametrize("which", SPECIALIZATIONS)
def test_specializations(which):
    r = check_specialization(which, 1, seed=5, trials=3, regime=Regime.OMEGA6)
    assert r.passed, r.witness


@pytest.mark.parametrize("which", ["ZQT-1", "ZQT-2"])
def test_qt_to_qqt_direction(which):
    assert check_specialization(which, 1, trials=2, big="qt").passed


@pytest.mark.parametrize("which", MAIN)
def test_main_identities(which):
    assert check_main_theorem(which, 1, "symbolic-x", trials=2).passed
    assert check_main_theorem(which, 1, "random-points", trials=1).passed


def test_half_widths():
    r = check_half_widths(1)
    assert r.passed
    assert "qt/conv=1" in r.detail and "qqt/downright=2" in r.detail


def test_counting():
    for N in (1, 2):
        for eq in (1, 2, 3, 4):
            assert check_counting(eq, N).passed
        assert check_no_qt_of_size_4n2(N).passed
    with pytest.raises(ValueError):
        check_counting(5, 1)


def test_random_values_are_distinct_and_safe():
    rng = random.Random(0)
    for _ in range(50):
        vs = random_values(rng, 6, avoid=[2])
        assert len(set(vs)) == 6 and 2 not in vs
        assert all(v != 0 for v in vs)
        assert all(p / q not in (1, -1) for p in vs for q in vs if p is not q)


# -- the checks must be able to fail ---------------------------------------------------------


def test_symmetry_across_groups_fails(monkeypatch):
    monkeypatch.setattr(ids, "_variable_sets", lambda b, N: [list(range(2 * N))])
    r = check_symmetry("dwbc", 2, "set-wise")
    assert not r.passed
    assert set(r.witness) == {"assignment", "lhs", "rhs"} and r.witness["lhs"] != r.witness["rhs"]
    assert "swap" in r.detail


def test_wrong_tag_pairing_fails(monkeypatch):
    pairs = dict(ids.TAG_PAIRS)
    (l1, r1), (l2, r2) = pairs["ZHT-1"]
    pairs["ZHT-1"] = [(l1, r2), (l2, r1)]
    monkeypatch.setattr(ids, "TAG_PAIRS", pairs)
    r = check_specialization("ZHT-1", 1, trials=2)
    assert not r.passed and r.witness["assignment"]


def test_wrong_half_width_fails(monkeypatch):
    hw = dict(ids.HALF_WIDTH)
    hw["resolved-3"] = lambda N: 2 * N + 1
    monkeypatch.setattr(ids, "HALF_WIDTH", hw)
    r = check_main_theorem("resolved-3", 1, trials=1)
    assert not r.passed and r.witness["expected_half_width"] == 3


def test_unknown_names_raise():
    with pytest.raises(ValueError):
        check_main_theorem("main9")
    with pytest.raises(ValueError):
        run_suite("everything")


def test_suite_results_are_deterministic():
    a = [r.to_dict() for r in run_suite("counting", 2, seed=3)]
    b = [r.to_dict() for r in run_suite("counting", 2, seed=3)]
    assert a == b and all(d["status"] == "pass" for d in a)
    names = [d["name"] for d in a]
    assert len(names) == len(set(names)) == 10


def test_boundary_enum_accepted():
    assert check_symmetry(Boundary.QQT, 1, "xy").passed
