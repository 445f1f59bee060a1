"""Acceptance criteria 1-9, one PASS/FAIL line each.

Every comparison is exact (zero tolerance). Time limits: counting < 10 s,
Yang-Baxter < 1 s, symmetry < 30 s.
"""
import time

import pytest

import test_properties as props
from icelab.asm import SymmetryClass as S, count, enumerate_asms
from icelab.exactalg import OMEGA, sigma
from icelab.icemodel import (
    OMEGA6,
    build_model,
    monomial,
    partition_function,
    partition_resolved,
    state_count,
)
from icelab.identities import (
    MAIN,
    SPECIALIZATIONS,
    check_counting,
    check_half_widths,
    check_main_theorem,
    check_specialization,
    check_symmetry,
    check_yang_baxter,
)

COUNTING_LIMIT, YB_LIMIT, SYMMETRY_LIMIT = 10.0, 1.0, 30.0
SEED = 2024


def failures(results):
    return [r.name for r in results if not r.passed]


def test_criterion_1_counting(criterion):
    t = time.perf_counter()
    u = [len(list(enumerate_asms(n))) for n in range(1, 7)]
    ht = [len(list(enumerate_asms(n, S.HALF_TURN))) for n in range(1, 7)]
    qt = {n: len(list(enumerate_asms(n, S.QUARTER_TURN))) for n in (3, 4, 5, 7, 8, 9)}
    qqt = {n: len(list(enumerate_asms(n, S.QUASI_QUARTER_TURN))) for n in (6, 10)}
    rel = [check_counting(eq, N) for N in (1, 2) for eq in (1, 2, 3, 4)]
    dt = time.perf_counter() - t
    ok = (u == [1, 2, 7, 42, 429, 7436] and ht == [1, 2, 3, 10, 25, 140]
          and qt == {3: 1, 4: 2, 5: 3, 7: 12, 8: 40, 9: 100} and qqt == {6: 6, 10: 350}
          and not failures(rel) and dt < COUNTING_LIMIT)
    criterion(1, ok, f"counts and the four product relations at N=1,2 by enumeration, {dt:.2f}s (limit {COUNTING_LIMIT}s)")


def test_criterion_2_no_quarter_turn_of_size_4n_plus_2(criterion):
    c = {n: len(list(enumerate_asms(n, S.QUARTER_TURN))) for n in (6, 10)}
    criterion(2, c == {6: 0, 10: 0}, f"QT counts at sizes 6, 10: {c}")


def test_criterion_3_yang_baxter(criterion):
    t = time.perf_counter()
    r = check_yang_baxter()
    dt = time.perf_counter() - t
    criterion(3, r.passed and dt < YB_LIMIT, f"{r.detail or r.witness}, {dt:.2f}s (limit {YB_LIMIT}s)")


MODEL_SIZES = ([("dwbc", N) for N in range(1, 7)] + [("ht_even", N) for N in range(1, 6)]
               + [("ht_odd", N) for N in range(0, 5)] + [("qt", 1), ("qt", 2)]
               + [("qqt", N) for N in range(0, 3)])


def test_criterion_4_model_consistency(criterion):
    bad = []
    for b, N in MODEL_SIZES:
        m = build_model(b, N)
        c = count(m.n, m.cls)
        z = partition_function(m, {s: 1 for s in m.slots}, OMEGA6)
        if state_count(m) != c or z.terms != {(): sigma(OMEGA) ** m.n_vertices * c}:
            bad.append(f"{b}(N={N})")
    criterion(4, not bad, f"{len(MODEL_SIZES)} models, DWBC n<=6, symmetric n<=10"
              + (f"; failed: {bad}" if bad else ""))


def test_criterion_5_symmetry(criterion):
    t = time.perf_counter()
    rs = [check_symmetry(b, N, "set-wise", seed=SEED) for b in ("dwbc", "ht_even", "ht_odd") for N in (1, 2)]
    rs += [check_symmetry("qqt", N, "xy", seed=SEED) for N in (1, 2)]
    rs += [check_symmetry(b, N, "pseudo-xy", seed=SEED) for b in ("qt", "ht_even") for N in (1, 2)]
    full = check_symmetry("dwbc", 2, "full-omega6", seed=SEED)
    rs.append(full)
    dt = time.perf_counter() - t
    bad = failures(rs)
    ok = not bad and "24 permutations" in full.detail and dt < SYMMETRY_LIMIT
    criterion(5, ok, f"{len(rs)} checks, {dt:.2f}s (limit {SYMMETRY_LIMIT}s)" + (f"; failed: {bad}" if bad else ""))


def test_criterion_6_specializations(criterion):
    rs = [check_specialization(w, 1, seed=SEED, trials=20) for w in SPECIALIZATIONS]
    rs += [check_specialization(w, 1, seed=SEED, trials=20, big="qt") for w in ("ZQT-1", "ZQT-2")]
    rs += [check_specialization(w, 2, seed=SEED, trials=20) for w in ("Z-bax", "Z-ax")]
    bad = failures(rs)
    criterion(6, not bad, f"{len(rs)} specializations x 20 seeded tuples" + (f"; failed: {bad}" if bad else ""))


def test_criterion_7_main_theorem(criterion):
    rs = [check_main_theorem(w, 1, "symbolic-x", seed=SEED, trials=3) for w in MAIN]
    rs += [check_main_theorem(w, 1, "random-points", seed=SEED, trials=3) for w in MAIN]
    # optional larger size
    rs += [check_main_theorem(w, 2, "random-points", seed=SEED, trials=1) for w in ("main1", "main2")]
    bad = failures(rs)
    criterion(7, not bad, f"{len(rs)} checks: six identities at N=1 symbolic in x and at 2h+1 points, main1/main2 at N=2"
              + (f"; failed: {bad}" if bad else ""))


def test_criterion_8_half_widths(criterion):
    widths = {}
    for b, tag in (("qt", "conv"), ("qt", "div"), ("qqt", "downright"), ("qqt", "upleft")):
        m = build_model(b, 1)
        assign = dict(zip(m.slots[:-2], (2, 3)), x=monomial(OMEGA6, x=1), y=7)
        f = partition_resolved(m, tag, assign, OMEGA6)
        widths[f"{b}/{tag}"] = f.half_width("x") if f.is_centered("x") else None
    got = list(widths.values())
    generic = check_half_widths(1, seed=SEED)
    criterion(8, got == [1, 0, 2, 1] and generic.passed, f"half-widths {widths}")


@pytest.mark.parametrize("name", ["ring", "homomorphism", "bijection", "odd-crossing"])
def test_criterion_9_properties(criterion, name):
    groups = {
        "ring": [props.test_poly_ring_axioms, props.test_cyclotomic_poly_ring_axioms,
                 props.test_cyclotomic_field_axioms, props.test_monomial_inverse],
        "homomorphism": [props.test_substitute_is_homomorphism, props.test_evaluate_omega_is_homomorphism],
        "bijection": [props.test_bijection_round_trip],
        "odd-crossing": [props.test_odd_crossing_rule],
    }
    errors = []
    for fn in groups[name]:
        try:
            fn()
        except AssertionError as exc:
            errors.append(f"{fn.__name__}: {exc}")
    criterion(f"9 ({name})", not errors, f"{len(groups[name])} properties x 1000 seeded cases"
              + (f"; {errors}" if errors else ""))
