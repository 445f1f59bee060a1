import random
from fractions import Fraction

import pytest

from icelab.asm import count, enumerate_asms
from icelab.exactalg import OMEGA, LaurentPoly, sigma
from icelab.icemodel import (
    GENERIC,
    OMEGA6,
    Boundary,
    VertexKind,
    asm_to_ice,
    build_model,
    ice_to_asm,
    model_for_size,
    monomial,
    partition_function,
    partition_resolved,
    state_count,
    state_weight,
    vertex_weight,
)
from icelab.identities import Network, _Ring, _strip


def rand_assign(model, seed):
    rng = random.Random(seed)
    vals = set()
    while len(vals) < len(model.slots):
        vals.add(Fraction(rng.choice([-1, 1]) * rng.randint(2, 9), rng.randint(1, 5)))
    return dict(zip(model.slots, sorted(vals)))


def test_round_trip_size_four():
    mats = list(enumerate_asms(4))
    assert len(mats) == 42
    for m in mats:
        ice = asm_to_ice(m)
        assert ice.satisfies_ice_rule() and ice.has_dwbc() and ice.odd_crossings()
        assert ice_to_asm(ice) == m


def test_vertex_weights():
    a = monomial(a=1)
    p = Fraction(3)
    assert vertex_weight(VertexKind.PLUS, p) == sigma(a * a)
    assert vertex_weight(VertexKind.MINUS, p) == sigma(a * a)
    assert vertex_weight(VertexKind.ZERO_RIGHT_DOWN, p) == sigma(a * 3)
    assert vertex_weight(VertexKind.ZERO_LEFT_UP, p) == sigma(a * 3)
    assert vertex_weight(VertexKind.ZERO_RIGHT_UP, p) == sigma(a * Fraction(1, 3))
    assert vertex_weight(VertexKind.DIVALENT, p) == LaurentPoly.constant(1, GENERIC.field, ("a",))
    w = vertex_weight(VertexKind.PLUS, 1, OMEGA6)
    assert w.terms[()] == sigma(OMEGA * OMEGA)
    with pytest.raises(ZeroDivisionError):
        vertex_weight(VertexKind.PLUS, 0)


def test_small_models():
    m = build_model("dwbc", 1)
    assert m.slots == ("x1", "x2") and state_count(m) == 1
    z = partition_function(m, {"x1": 1, "x2": 1})
    assert z == sigma(monomial(a=2))
    q = build_model("qqt", 1)
    assert q.n == 6 and state_count(q) == 6 and q.slots == ("x1", "x2", "x", "y")
    assert len(q.vertices) == 8
    h = build_model("ht_even", 1)
    assert h.n == 2 and state_count(h) == 2 and h.slots == ("x1", "x", "y")
    ho = build_model("ht_odd", 0)
    assert ho.n == 1 and state_count(ho) == 1 and len(ho.vertices) == 0
    assert model_for_size("ht", 5).boundary is Boundary.HT_ODD
    with pytest.raises(ValueError):
        model_for_size("qt", 6)
    with pytest.raises(ValueError):
        build_model("qt", 0)


def test_dwbc_size_two_closed_form():
    m = build_model("dwbc", 2)
    vs = ("a", "x1", "x2", "x3", "x4")
    x1, x2, x3, x4 = (LaurentPoly.variable(v, GENERIC.field, vs) for v in vs[1:])
    a = LaurentPoly.variable("a", GENERIC.field, vs)
    assign = {"x1": 2, "x2": 3, "x3": 5, "x4": 7}
    # identity: diagonal +1, zeros at (0,1) right-down (p = x2/x4), (1,0) left-up (p = x1/x3)
    # antidiagonal: +1 at (0,1),(1,0), zeros at (0,0) p=x2/x3 aq, (1,1) p=x1/x4 aq
    want = (sigma(a * a) ** 2 * sigma(a * x2 * x4.inverse()) * sigma(a * x1 * x3.inverse())
            + sigma(a * a) ** 2 * sigma(a * x3 * x2.inverse()) * sigma(a * x4 * x1.inverse()))
    want = want.substitute_many(assign)
    assert partition_function(m, assign) == want


def dwbc_network(N, assign, ring):
    rows = [ring.const(assign[f"x{g}"]) for g in range(1, N + 1)]
    cols = [ring.const(assign[f"x{N + 1 + j}"]) for j in range(N)]
    net, _ = _strip(rows, cols, "open")
    fixed = {}
    for r in range(N):
        fixed[f"h{r}_0"], fixed[f"h{r}_{N}"] = True, False
    for c in range(N):
        fixed[f"v{c}_0"], fixed[f"v{c}_{N}"] = False, True
    return net.state_sum(fixed, ring)


def ht_even_network(N, assign, ring):
    """Left half of the grid, rows bottom first, right ends joined by nested U-turns."""
    R, C = 2 * N, N

    def rname(g):
        return f"x{g}" if g < N else "x" if g == N else "y" if g == N + 1 else f"x{2 * N + 1 - g}"

    edges = [f"h{r}_{k}" for r in range(R) for k in range(C + 1)]
    edges += [f"v{c}_{k}" for c in range(C) for k in range(R + 1)]
    refs = {e: (e, False) for e in edges}
    for r in range(N):
        top = R - 1 - r
        edges.remove(f"h{top}_{C}")
        refs[f"h{top}_{C}"] = (f"h{r}_{C}", True)
    verts = []
    for r in range(R):
        p = ring.const(assign[rname(r + 1)])
        for c in range(C):
            q = ring.const(assign[f"x{N + c}"])
            verts.append((refs[f"h{r}_{c}"], refs[f"h{r}_{c + 1}"],
                          refs[f"v{c}_{r}"], refs[f"v{c}_{r + 1}"], p * q.inverse()))
    fixed = {f"h{r}_0": True for r in range(R)}
    for c in range(C):
        fixed[f"v{c}_0"], fixed[f"v{c}_{R}"] = False, True
    return Network(edges, verts).state_sum(fixed, ring)


@pytest.mark.parametrize("N", [1, 2, 3])
def test_dwbc_against_network(N):
    m = build_model("dwbc", N)
    ring = _Ring(GENERIC)
    for seed in range(2):
        assign = rand_assign(m, seed)
        assert partition_function(m, assign) == dwbc_network(N, assign, ring)


@pytest.mark.parametrize("N", [1, 2])
def test_ht_even_against_network(N):
    m = build_model("ht_even", N)
    ring = _Ring(GENERIC)
    for seed in range(2):
        assign = rand_assign(m, seed)
        assert partition_function(m, assign) == ht_even_network(N, assign, ring)


MODELS = [("dwbc", 1), ("dwbc", 3), ("ht_even", 1), ("ht_even", 2), ("ht_odd", 1),
          ("ht_odd", 2), ("qt", 1), ("qqt", 1)]


@pytest.mark.parametrize("b,N", MODELS)
def test_omega_all_ones_counts(b, N):
    # at a = w6 every vertex weighs sigma(w) when all lines carry 1
    m = build_model(b, N)
    z = partition_function(m, {s: 1 for s in m.slots}, OMEGA6)
    assert z.terms == {(): sigma(OMEGA) ** len(m.vertices) * count(m.n, m.cls)}


@pytest.mark.parametrize("b,N", [("dwbc", 2), ("ht_even", 1), ("ht_odd", 1), ("qt", 1), ("qqt", 1)])
def test_vectorized_sum_matches_vertex_by_vertex(b, N):
    m = build_model(b, N)
    assign = rand_assign(m, 7)
    total = sum((state_weight(m, mm, assign) for mm in enumerate_asms(m.n, m.cls)),
                LaurentPoly.zero(GENERIC.field, ("a",)))
    assert partition_function(m, assign) == total


@pytest.mark.parametrize("b,N", [("ht_even", 1), ("ht_even", 2), ("ht_odd", 1), ("qt", 1), ("qqt", 1)])
def test_resolved_parts_add_up(b, N):
    m = build_model(b, N)
    assign = rand_assign(m, 3)
    parts = [partition_resolved(m, t, assign) for t in m.tags()]
    assert len(parts) == 2
    assert parts[0] + parts[1] == partition_function(m, assign)
    for mm in enumerate_asms(m.n, m.cls):
        assert m.tag_of(mm) in m.tags()


def test_resolved_parity_in_x():
    # each resolved piece is centered in x and has a single parity
    m = build_model("qqt", 1)
    assign = {"x1": 2, "x2": 3, "x": monomial(x=1), "y": Fraction(5, 7)}
    widths = {}
    for t in m.tags():
        f = partition_resolved(m, t, assign)
        even, odd = f.parity_split("x")
        assert f.is_centered("x")
        widths[t] = f.half_width("x")
        assert (odd if widths[t] % 2 == 0 else even).is_zero()
    assert widths == {"downright": 2, "upleft": 1}


def test_assignment_errors(monkeypatch):
    m = build_model("dwbc", 2)
    with pytest.raises(KeyError):
        partition_function(m, {"x1": 1})
    with pytest.raises(KeyError):
        partition_function(m, {**{s: 1 for s in m.slots}, "z": 1})
    with pytest.raises(ValueError):
        partition_resolved(build_model("qt", 1), "up", {s: 2 for s in build_model("qt", 1).slots})
    monkeypatch.setenv("ICELAB_SYMBOLIC", "1")
    with pytest.raises(ValueError):
        partition_function(m, {"x1": monomial(x1=1), "x2": monomial(x2=1), "x3": 1, "x4": 1})


def test_symbolic_dwbc_polynomial():
    m = build_model("dwbc", 1)
    z = partition_function(m, {"x1": monomial(x1=1), "x2": 1})
    assert z == sigma(monomial(a=2))
    assert "x1" not in z.drop_unused().vars
