"""Executable checks of the local moves, symmetries, specializations and main identities.

Every check returns a CheckResult. Identities containing a division are
compared after cross-multiplying, so all comparisons stay in the polynomial
ring. Random parameters are small exact rationals p/q (1 <= p, q <= 9) drawn
from a seeded generator.
"""
from __future__ import annotations

import enum
import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .asm import SymmetryClass, count
from .exactalg import LaurentPoly, sigma
from .icemodel import (
    GENERIC,
    OMEGA6,
    Boundary,
    Regime,
    WeightContext,
    build_model,
    partition_function,
    partition_resolved,
)


@dataclass
class CheckResult:
    name: str
    passed: bool
    witness: dict | None = None
    detail: str = ""

    def __post_init__(self):
        if not self.passed and self.witness is None:
            self.witness = {}

    @property
    def status(self) -> str:
        return "pass" if self.passed else "fail"

    def to_dict(self) -> dict:
        out = {"name": self.name, "status": self.status}
        if self.detail:
            out["detail"] = self.detail
        if self.witness is not None:
            out["witness"] = self.witness
        return out


def _fmt(v) -> str:
    return v.to_text() if isinstance(v, LaurentPoly) else str(v)


def _mismatch(name, lhs, rhs, assign: dict, detail="") -> CheckResult:
    witness = {"assignment": {k: _fmt(v) for k, v in assign.items()},
               "lhs": _fmt(lhs), "rhs": _fmt(rhs)}
    return CheckResult(name, False, witness, detail)


# -- small helpers over one context --------------------------------------------


class _Ring:
    """Constants, the parameter a and random draws inside one weight context."""

    def __init__(self, ctx: WeightContext, vars: Sequence[str] = ()):
        self.ctx = ctx
        self.vars = tuple(ctx.base_vars()) + tuple(v for v in vars if v not in ctx.base_vars())

    def const(self, c) -> LaurentPoly:
        return LaurentPoly.constant(c, self.ctx.field, self.vars)

    def var(self, name) -> LaurentPoly:
        return LaurentPoly.variable(name, self.ctx.field, self.vars)

    @property
    def a(self) -> LaurentPoly:
        return self.ctx.a(self.vars)

    def prod(self, factors: Iterable[LaurentPoly]) -> LaurentPoly:
        out = self.const(1)
        for f in factors:
            out = out * f
        return out


def random_values(rng: random.Random, k: int, avoid=()) -> list:
    """k distinct rationals p/q, no two with ratio +-1 (so no sigma(x/y) vanishes)."""
    out: list = []
    taken = {abs(Fraction(v)) for v in avoid}
    while len(out) < k:
        v = Fraction(rng.randint(1, 9), rng.randint(1, 9))
        if v in taken:
            continue
        taken.add(v)
        out.append(v)
    return out


# -- brute-force ice networks ---------------------------------------------------
#
# Edges carry one bit: True when the arrow points along the direction of the
# line that owns it. A vertex is given by the (edge, flip) references of the
# upstream and downstream edges of its two lines, plus its explicit parameter.


def local_weight(up1, dn1, up2, dn2, p: LaurentPoly, a: LaurentPoly):
    if up1 != dn1:
        # one line has both arrows in or both out: the other must be the reverse
        if (up2, dn2) == (dn1, up1):
            return sigma(a * a)
        return None
    if up2 != dn2:
        return None
    return sigma(a * p) if up1 != up2 else sigma(a * p.inverse())


@dataclass
class Network:
    edges: list
    vertices: list = field(default_factory=list)  # (ref_up1, ref_dn1, ref_up2, ref_dn2, param)

    def state_sum(self, fixed: dict, ring: _Ring) -> LaurentPoly:
        free = [e for e in self.edges if e not in fixed]
        total = ring.const(0)
        a = ring.a
        for bits in itertools.product((False, True), repeat=len(free)):
            val = dict(fixed)
            val.update(zip(free, bits))
            w = ring.const(1)
            for *refs, p in self.vertices:
                arrows = [val[e] != flip for e, flip in refs]
                lw = local_weight(*arrows, p, a)
                if lw is None:
                    w = None
                    break
                w = w * lw
            if w is not None:
                total = total + w
        return total


def _yb_networks(x, y, z):
    ext = ["V0", "V1", "A0", "A1", "B0", "B1"]
    # V runs upward (V0 at the bottom), A from upper left (A0) to lower right,
    # B from upper right (B1) to lower left; edge bits of B are stored relative
    # to the opposite direction, hence the flips. An explicit parameter at a
    # crossing stands for (column line)/(row line), so weights take its inverse.
    xi, yi, zi = x.inverse(), y.inverse(), z.inverse()
    left = Network(ext + ["Vi", "Ai", "Bi"], [
        (("Vi", False), ("V1", False), ("B1", True), ("Bi", True), xi),
        (("A0", False), ("Ai", False), ("Bi", True), ("B0", True), yi),
        (("V0", False), ("Vi", False), ("Ai", False), ("A1", False), zi),
    ])
    right = Network(ext + ["Vi", "Ai", "Bi"], [
        (("V0", False), ("Vi", False), ("Bi", True), ("B0", True), xi),
        (("Ai", False), ("A1", False), ("B1", True), ("Bi", True), yi),
        (("Vi", False), ("V1", False), ("A0", False), ("Ai", False), zi),
    ])
    return ext, left, right


def check_yang_baxter(regime: Regime = Regime.GENERIC) -> CheckResult:
    """Both triangles agree for all 64 boundary patterns when xyz = 1/a."""
    ctx = WeightContext(regime)
    ring = _Ring(ctx, ("x", "y"))
    x, y = ring.var("x"), ring.var("y")
    z = (ring.a * x * y).inverse()
    ext, left, right = _yb_networks(x, y, z)
    for bits in itertools.product((False, True), repeat=6):
        fixed = dict(zip(ext, bits))
        lhs, rhs = left.state_sum(fixed, ring), right.state_sum(fixed, ring)
        if lhs != rhs:
            return _mismatch("yang-baxter", lhs, rhs, {e: int(b) for e, b in fixed.items()})
    return CheckResult("yang-baxter", True, detail="64 boundary patterns")


def _strip(row_params, col_params, right_ends):
    """Rows (bottom first) running right through vertical lines running up.

    ``right_ends`` is "loop" (the two right ends joined by a U-turn) or "open".
    Returns the network and the names of its boundary edges.
    """
    R, C = len(row_params), len(col_params)
    edges, verts = [], []
    for r in range(R):
        edges += [f"h{r}_{k}" for k in range(C + 1)]
    for c in range(C):
        edges += [f"v{c}_{k}" for k in range(R + 1)]
    refs = {e: (e, False) for e in edges}
    if right_ends == "loop":
        # a single edge: along for row 0 means into the arc, i.e. against for row 1
        edges.remove(f"h1_{C}")
        refs[f"h1_{C}"] = (f"h0_{C}", True)
    for r in range(R):
        for c in range(C):
            verts.append((refs[f"h{r}_{c}"], refs[f"h{r}_{c + 1}"],
                          refs[f"v{c}_{r}"], refs[f"v{c}_{r + 1}"],
                          row_params[r] * col_params[c].inverse()))
    boundary = [f"h{r}_0" for r in range(R)] + [f"v{c}_0" for c in range(C)] + [f"v{c}_{R}" for c in range(C)]
    if right_ends == "open":
        boundary += [f"h{r}_{C}" for r in range(R)]
    return Network(edges, verts), boundary


def check_loop_exchange(width: int = 2, seed: int = 0, trials: int = 3) -> CheckResult:
    """Line exchange on a strip, the U-turn exchange and its two open-end halves, and the looped crossing."""
    name = f"loop-exchange[w={width}]"
    rng = random.Random(seed)
    ring = _Ring(GENERIC)
    a = ring.a
    # looped crossing: factor sigma(a z) + sigma(a^2) times the plain U-turn
    for zval in [a.inverse()] + [ring.const(v) for v in random_values(rng, trials)]:
        net = Network(["u1", "u2", "d"], [(("u1", False), ("d", False), ("u2", False), ("d", True), zval)])
        for b1, b2 in itertools.product((False, True), repeat=2):
            got = net.state_sum({"u1": b1, "u2": b2}, ring)
            want = sigma(a * zval) + sigma(a * a) if b1 != b2 else ring.const(0)
            if got != want:
                return _mismatch(name + " looped-crossing", got, want, {"z": zval, "u1": int(b1), "u2": int(b2)})
    for _ in range(trials):
        xv, yv, *cv = random_values(rng, 2 + width)
        x, y = ring.const(xv), ring.const(yv)
        cols = [ring.const(c) for c in cv]
        assign = {"x": xv, "y": yv, **{f"c{j}": c for j, c in enumerate(cv)}}
        loop_factor = sigma(a * a) + sigma(x * y.inverse())
        den = sigma(a * a * y * x.inverse())
        xy_loop, bnd = _strip([x, y], cols, "loop")
        yx_loop, _ = _strip([y, x], cols, "loop")
        xy_open, bnd_open = _strip([x, y], cols, "open")
        yx_open, _ = _strip([y, x], cols, "open")
        C = width
        for bits in itertools.product((False, True), repeat=2 * width):
            fixed = {"h0_0": True, "h1_0": True}
            fixed.update(zip(bnd[2:], bits))
            lhs = den * xy_loop.state_sum(fixed, ring)
            rhs = loop_factor * yx_loop.state_sum(fixed, ring)
            if lhs != rhs:
                return _mismatch(name + " u-turn", lhs, rhs, assign)
            # right ends: (top out, bottom in) is boucle_a, the reverse is boucle_b
            for top_out in (True, False):
                same = dict(fixed, **{f"h1_{C}": top_out, f"h0_{C}": not top_out})
                flip = dict(fixed, **{f"h1_{C}": not top_out, f"h0_{C}": top_out})
                lhs = den * xy_open.state_sum(same, ring)
                rhs = (sigma(x * y.inverse()) * yx_open.state_sum(flip, ring)
                       + sigma(a * a) * yx_open.state_sum(same, ring))
                if lhs != rhs:
                    return _mismatch(name + " open-ends", lhs, rhs, dict(assign, top_out=int(top_out)))
            # plain line exchange: both right ends pointing back in
            ends = dict(fixed, **{f"h0_{C}": False, f"h1_{C}": False})
            lhs, rhs = xy_open.state_sum(ends, ring), yx_open.state_sum(ends, ring)
            if lhs != rhs:
                return _mismatch(name + " line-exchange", lhs, rhs, assign)
    return CheckResult(name, True, detail=f"{trials} random tuples, all column boundaries")


# -- partition-function plumbing -------------------------------------------------


def _model_z(ctx, boundary, N, values, tag=None):
    model = build_model(boundary, N)
    if len(values) != len(model.slots):
        raise ValueError(f"{boundary}: expected {len(model.slots)} values, got {len(values)}")
    assign = dict(zip(model.slots, values))
    if tag is None:
        return partition_function(model, assign, ctx)
    return partition_resolved(model, tag, assign, ctx)


def _compare(name, lhs, rhs, assign) -> CheckResult | None:
    if lhs != rhs:
        return _mismatch(name, lhs, rhs, assign)
    return None


# -- symmetries ---------------------------------------------------------------------


def _variable_sets(boundary: Boundary, N: int) -> list:
    """Index groups (0-based, into the X vector) within which the function is symmetric."""
    if boundary is Boundary.DWBC:
        return [list(range(N)), list(range(N, 2 * N))]
    if boundary is Boundary.HT_ODD:
        return [list(range(N)), list(range(N, 2 * N))]
    if boundary is Boundary.HT_EVEN:
        return [list(range(N - 1)), list(range(N - 1, 2 * N - 1))]
    k = 2 * N - 1 if boundary is Boundary.QT else 2 * N
    return [list(range(k))]


def check_symmetry(boundary, N: int, which: str = "set-wise", seed: int = 0, trials: int = 2) -> CheckResult:
    if isinstance(boundary, str):
        boundary = Boundary(boundary)
    name = f"symmetry[{which}, {boundary.value}, N={N}]"
    rng = random.Random(seed)
    model = build_model(boundary, N)
    nslots = len(model.slots)
    nx = nslots - (0 if boundary is Boundary.DWBC else 2)
    if which == "set-wise":
        ctx = GENERIC
        for _ in range(trials):
            vals = random_values(rng, nslots)
            base = _model_z(ctx, boundary, N, vals)
            for group in _variable_sets(boundary, N):
                for i, j in zip(group, group[1:]):
                    sw = list(vals)
                    sw[i], sw[j] = sw[j], sw[i]
                    bad = _compare(name, base, _model_z(ctx, boundary, N, sw), dict(zip(model.slots, vals)))
                    if bad:
                        bad.detail = f"swap {model.slots[i]} <-> {model.slots[j]}"
                        return bad
        return CheckResult(name, True)
    if which == "xy":
        if boundary is not Boundary.QQT:
            raise ValueError("plain x/y symmetry is stated for the qQT model only")
        for _ in range(trials):
            vals = random_values(rng, nslots)
            sw = vals[:nx] + [vals[nx + 1], vals[nx]]
            bad = _compare(name, _model_z(GENERIC, boundary, N, vals), _model_z(GENERIC, boundary, N, sw),
                           dict(zip(model.slots, vals)))
            if bad:
                return bad
        return CheckResult(name, True)
    if which == "pseudo-xy":
        if boundary not in (Boundary.QT, Boundary.HT_EVEN):
            raise ValueError("pseudo-symmetry is stated for the QT and even HT models")
        ring = _Ring(GENERIC)
        a = ring.a
        for _ in range(trials):
            vals = random_values(rng, nslots)
            x, y = ring.const(vals[nx]), ring.const(vals[nx + 1])
            sw = vals[:nx] + [vals[nx + 1], vals[nx]]
            lhs = sigma(a * a * y * x.inverse()) * _model_z(GENERIC, boundary, N, vals)
            rhs = (sigma(a * a) + sigma(x * y.inverse())) * _model_z(GENERIC, boundary, N, sw)
            bad = _compare(name, lhs, rhs, dict(zip(model.slots, vals)))
            if bad:
                return bad
        return CheckResult(name, True)
    if which == "full-omega6":
        if boundary is not Boundary.DWBC:
            raise ValueError("full symmetry at a = w6 is stated for the DWBC model")
        vals = random_values(rng, nslots)
        base = _model_z(OMEGA6, boundary, N, vals)
        for perm in itertools.permutations(range(nslots)):
            pv = [vals[k] for k in perm]
            bad = _compare(name, base, _model_z(OMEGA6, boundary, N, pv), dict(zip(model.slots, vals)))
            if bad:
                bad.detail = f"permutation {perm}"
                return bad
        return CheckResult(name, True, detail=f"{len(list(itertools.permutations(range(nslots))))} permutations")
    raise ValueError(f"unknown symmetry check {which!r}")


# -- prefactors --------------------------------------------------------------------------


class PrefactorKind(enum.Enum):
    A = "A"
    ABAR = "Abar"
    AH1 = "AH1"
    ABAR_H1 = "AbarH1"
    AH0 = "AH0"
    ABAR_H0 = "AbarH0"
    AQ = "AQ"
    ABAR_Q = "AbarQ"


def _arity(kind: PrefactorKind, n: int):
    """(size parameter, expected number of X values) for a prefactor over ``n`` values."""
    if kind in (PrefactorKind.A, PrefactorKind.ABAR, PrefactorKind.AH1, PrefactorKind.ABAR_H1):
        if n % 2:
            raise ValueError(f"{kind.value} needs an even number (2N) of values, got {n}")
        return n // 2
    if kind in (PrefactorKind.AH0, PrefactorKind.ABAR_H0):
        if n % 2 == 0:
            raise ValueError(f"{kind.value} needs an odd number (2N-1) of values, got {n}")
        return (n + 1) // 2
    return n + 1  # AQ / AbarQ over X_{m-1}: m


def prefactor(kind, X: Sequence, ctx: WeightContext = GENERIC, compact: bool = False) -> LaurentPoly:
    """Product of weights fixed by a specialization.

    ``X`` is the whole vector (x_1, ..., x_k). A and Abar
    distinguish x_{N+1}, AH1/AbarH1 and AQ/AbarQ distinguish x_1, AH0/AbarH0
    distinguish x_N. ``compact`` selects the shorter product valid at a = w6.
    """
    if isinstance(kind, str):
        kind = PrefactorKind(kind)
    if compact and ctx.regime is not Regime.OMEGA6:
        raise ValueError("the compact forms only hold at a = w6")
    vars: list = []
    for v in X:
        if isinstance(v, LaurentPoly):
            vars += [u for u in v.vars if u not in vars]
    ring = _Ring(ctx, vars)
    xs = [None] + [v.extend(ring.vars) if isinstance(v, LaurentPoly) else ring.const(v) for v in X]
    a = ring.a
    N = _arity(kind, len(X))
    s = sigma
    k_all = range(1, len(X) + 1)

    def q(i, j):
        return xs[i] * xs[j].inverse()

    if kind in (PrefactorKind.A, PrefactorKind.ABAR):
        c = N + 1
        if compact:
            t = (lambda k: q(k, c)) if kind is PrefactorKind.A else (lambda k: q(c, k))
            return s(a) * ring.prod(s(a * t(k)) for k in k_all if k not in (1, c))
        if kind is PrefactorKind.A:
            return ring.prod([s(a * q(k, c)) for k in range(2, N + 1)]
                             + [s(a * a * q(c, k)) for k in range(N + 1, 2 * N + 1)])
        return ring.prod([s(a * q(c, k)) for k in range(2, N + 1)]
                         + [s(a * a * q(k, c)) for k in range(N + 1, 2 * N + 1)])
    if kind in (PrefactorKind.AH1, PrefactorKind.ABAR_H1):
        if compact:
            t = (lambda k: q(k, 1)) if kind is PrefactorKind.AH1 else (lambda k: q(1, k))
            return ring.prod(s(a * t(k)) for k in k_all)
        if kind is PrefactorKind.AH1:
            return ring.prod([s(a * a * q(1, k)) for k in range(1, N + 1)]
                             + [s(a * q(k, 1)) for k in range(N + 1, 2 * N + 1)])
        return ring.prod([s(a * a * q(k, 1)) for k in range(1, N + 1)]
                         + [s(a * q(1, k)) for k in range(N + 1, 2 * N + 1)])
    if kind in (PrefactorKind.AH0, PrefactorKind.ABAR_H0):
        c = N
        if compact:
            t = (lambda k: q(k, c)) if kind is PrefactorKind.AH0 else (lambda k: q(c, k))
            return ring.prod(s(a * t(k)) for k in k_all)
        if kind is PrefactorKind.AH0:
            return ring.prod([s(a * q(k, c)) for k in range(1, N)]
                             + [s(a * a * q(c, k)) for k in range(N, 2 * N)])
        return ring.prod([s(a * q(c, k)) for k in range(1, N)]
                         + [s(a * a * q(k, c)) for k in range(N, 2 * N)])
    # quarter-turn prefactors run over k = 1 .. m-1, x_1 included
    if kind is PrefactorKind.AQ:
        if compact:
            return ring.prod(s(a * q(k, 1)) ** 2 for k in k_all)
        return ring.prod(s(a * a * q(1, k)) * s(a * q(k, 1)) for k in k_all)
    if compact:
        return ring.prod(s(a * q(1, k)) ** 2 for k in k_all)
    return ring.prod(s(a * a * q(k, 1)) * s(a * q(1, k)) for k in k_all)


def check_prefactor_compaction(seed: int = 0, trials: int = 100, max_n: int = 2) -> CheckResult:
    """Generic prefactors evaluated at a = w6 against their compact forms."""
    rng = random.Random(seed)
    name = "prefactor-compaction"
    for kind in PrefactorKind:
        for t in range(trials):
            N = 1 + t % max_n
            n = {PrefactorKind.AH0: 2 * N - 1, PrefactorKind.ABAR_H0: 2 * N - 1,
                 PrefactorKind.AQ: 2 * N, PrefactorKind.ABAR_Q: 2 * N}.get(kind, 2 * N)
            X = random_values(rng, n)
            full = prefactor(kind, X, OMEGA6)
            short = prefactor(kind, X, OMEGA6, compact=True)
            if full != short:
                return _mismatch(f"{name}[{kind.value}]", full, short, {f"x{i + 1}": v for i, v in enumerate(X)})
    return CheckResult(name, True, detail=f"{trials} tuples per kind")


def check_prefactor_cancellation(N: int = 1, seed: int = 0, trials: int = 20) -> CheckResult:
    """The two products identities used to pass from size 4N to 4N+2 (and back) at a = w6."""
    rng = random.Random(seed)
    ring = _Ring(OMEGA6)
    a = ring.a
    name = f"prefactor-cancellation[N={N}]"
    for _ in range(trials):
        X = random_values(rng, 2 * N + 1)
        xv, X2 = X[-1], X[:-1]
        i = rng.randrange(2 * N)
        x, xi = ring.const(xv), ring.const(X2[i])
        rest = X2[:i] + X2[i + 1:]
        # A for size N+1: x_i is the distinguished variable, x joins the others;
        # the specialized first variable does not enter the product
        others = rest + [xv]
        dwbc_vec = [1] + others[:N] + [X2[i]] + others[N:]
        ht_vec = [X2[i]] + rest
        assign = {f"x{k + 1}": v for k, v in enumerate(X2)} | {"x": xv, "i": i + 1}
        lhs = prefactor("A", dwbc_vec, OMEGA6) * prefactor("AH1", ht_vec, OMEGA6)
        rhs = sigma(a * x * xi.inverse()) * prefactor("AQ", ht_vec, OMEGA6)
        if lhs != rhs:
            return _mismatch(name + " A.AH1", lhs, rhs, assign)
        lhs = prefactor("Abar", dwbc_vec, OMEGA6) * prefactor("AbarH1", ht_vec, OMEGA6)
        rhs = sigma(a * xi * x.inverse()) * prefactor("AbarQ", ht_vec, OMEGA6)
        if lhs != rhs:
            return _mismatch(name + " Abar.AbarH1", lhs, rhs, assign)
    return CheckResult(name, True)


# -- specializations ----------------------------------------------------------------


SPECIALIZATIONS = ("Z-bax", "Z-ax", "ZHT-1", "ZHT-2", "ZHT-3", "ZHT-4",
                   "ZQT-1", "ZQT-2", "diag-QT", "diag-HT")

# (tag on the specialized side, tag on the smaller side), fixed by the checks
TAG_PAIRS = {
    "ZHT-1": [("downright", "down"), ("upleft", "up")],
    "ZHT-2": [("downright", "up"), ("upleft", "down")],
    "ZHT-3": [("up", "downright"), ("down", "upleft")],
    "ZHT-4": [("up", "upleft"), ("down", "downright")],
    "ZQT-1/qt": [("conv", "upleft"), ("div", "downright")],
    "ZQT-1/qqt": [("downright", "conv"), ("upleft", "div")],
    "ZQT-2/qt": [("conv", "downright"), ("div", "upleft")],
    "ZQT-2/qqt": [("downright", "div"), ("upleft", "conv")],
}


def _specialization_sides(which: str, N: int, vals: list, ring: _Ring, big: str = "qqt"):
    """(lhs(tag), rhs(tag), tag pairs) as callables for one specialization."""
    ctx = ring.ctx
    a, ab = ring.a, ring.a.inverse()
    xs = [None] + [ring.const(v) for v in vals]
    Zf = lambda b, n, v, t=None: _model_z(ctx, b, n, v, t)
    if which in ("Z-bax", "Z-ax"):
        X = xs[1:2 * N + 1]
        rest = [xs[k] for k in range(2, 2 * N + 1) if k != N + 1]
        x1 = (ab if which == "Z-bax" else a) * xs[N + 1]
        kind = "Abar" if which == "Z-bax" else "A"
        pre = prefactor(kind, X, ctx)
        return (lambda t: Zf("dwbc", N, [x1] + X[1:]),
                lambda t: pre * Zf("dwbc", N - 1, rest), [(None, None)])
    if which in ("ZHT-1", "ZHT-2"):
        X = xs[1:2 * N + 1]
        x = xs[2 * N + 1]
        if which == "ZHT-1":
            pre = prefactor("AH1", X, ctx)
            return (lambda t: Zf("ht_odd", N, X + [x, a * xs[1]], t),
                    lambda t: pre * Zf("ht_even", N, X[1:] + [xs[1], x], t), TAG_PAIRS[which])
        pre = prefactor("AbarH1", X, ctx)
        return (lambda t: Zf("ht_odd", N, X + [x, ab * xs[1]], t),
                lambda t: pre * Zf("ht_even", N, X[1:] + [x, xs[1]], t), TAG_PAIRS[which])
    if which in ("ZHT-3", "ZHT-4"):
        X = xs[1:2 * N]
        x = xs[2 * N]
        rest = [xs[k] for k in range(1, 2 * N) if k != N]
        if which == "ZHT-3":
            pre = sigma(a * x * xs[N].inverse()) * prefactor("AH0", X, ctx)
            return (lambda t: Zf("ht_even", N, X + [x, a * xs[N]], t),
                    lambda t: pre * Zf("ht_odd", N - 1, rest + [x, xs[N]], t), TAG_PAIRS[which])
        y = x
        pre = sigma(a * xs[N] * y.inverse()) * prefactor("AbarH0", X, ctx)
        return (lambda t: Zf("ht_even", N, X + [ab * xs[N], y], t),
                lambda t: pre * Zf("ht_odd", N - 1, rest + [y, xs[N]], t), TAG_PAIRS[which])
    if which in ("ZQT-1", "ZQT-2"):
        # size 2m = 4N+2 (qQT -> QT) or 2m = 4N (QT -> qQT of size 4N-2)
        if big == "qqt":
            m, small, sN = 2 * N + 1, "qt", N
        else:
            m, small, sN = 2 * N, "qqt", N - 1
        X = xs[1:m]
        other = xs[m]
        pairs = TAG_PAIRS[f"{which}/{big}"]
        if which == "ZQT-1":
            y = other
            pre = sigma(a * xs[1] * y.inverse()) * prefactor("AbarQ", X, ctx)
            return (lambda t: Zf(big, N, X + [ab * xs[1], y], t),
                    lambda t: pre * Zf(small, sN, X[1:] + [y, xs[1]], t), pairs)
        x = other
        pre = sigma(a * x * xs[1].inverse()) * prefactor("AQ", X, ctx)
        return (lambda t: Zf(big, N, X + [x, a * xs[1]], t),
                lambda t: pre * Zf(small, sN, X[1:] + [xs[1], x], t), pairs)
    if which == "diag-QT":
        X = xs[1:2 * N + 1]
        y = xs[2 * N + 1]
        pre = sigma(a) * ring.prod(sigma(a * xs[k] * y.inverse()) * sigma(a * a * y * xs[k].inverse())
                                   for k in range(1, 2 * N + 1))
        return (lambda t: Zf("qqt", N, X + [a * y, y]),
                lambda t: pre * Zf("qt", N, X[:-1] + [xs[2 * N], xs[2 * N]]), [(None, None)])
    if which == "diag-HT":
        X = xs[1:2 * N + 1]
        y = xs[2 * N + 1]
        pre = ring.prod([sigma(a * xs[k] * y.inverse()) for k in range(1, N + 1)]
                        + [sigma(a * a * y * xs[k].inverse()) for k in range(N + 1, 2 * N + 1)])
        rest = [xs[k] for k in range(1, 2 * N + 1) if k != N]
        return (lambda t: Zf("ht_odd", N, X + [a * y, y]),
                lambda t: pre * Zf("ht_even", N, rest + [xs[N], xs[N]]), [(None, None)])
    raise ValueError(f"unknown specialization {which!r}; choose from {', '.join(SPECIALIZATIONS)}")


def check_specialization(which: str, N: int = 1, seed: int = 0, trials: int = 20,
                         regime: Regime = Regime.GENERIC, big: str = "qqt") -> CheckResult:
    """Specialized partition function equals prefactor times the smaller one, tag by tag."""
    name = f"specialization[{which}, N={N}" + (f", {big}" if which.startswith("ZQT") else "") + "]"
    rng = random.Random(seed)
    ring = _Ring(WeightContext(regime))
    for _ in range(trials):
        vals = random_values(rng, 2 * N + 2)
        lhs_f, rhs_f, pairs = _specialization_sides(which, N, vals, ring, big)
        assign = {f"v{k + 1}": v for k, v in enumerate(vals)}
        if pairs[0][0] is not None:
            pairs = [(None, None)] + pairs
        for tl, tr in pairs:
            bad = _compare(name + (f" {tl}/{tr}" if tl else ""), lhs_f(tl), rhs_f(tr), assign)
            if bad:
                return bad
    return CheckResult(name, True, detail=f"{trials} random tuples")


# -- product identities -------------------------------------------------------------------


MAIN = ("main1", "main2", "resolved-1", "resolved-2", "resolved-3", "resolved-4")

_RESOLVED = {
    "resolved-1": ("qt", "conv", "up"),
    "resolved-2": ("qt", "div", "down"),
    "resolved-3": ("qqt", "downright", "downright"),
    "resolved-4": ("qqt", "upleft", "upleft"),
}

# half-width in x of each resolved identity, as a function of N
HALF_WIDTH = {"resolved-1": lambda N: 2 * N - 1, "resolved-2": lambda N: 2 * N - 2,
              "resolved-3": lambda N: 2 * N, "resolved-4": lambda N: 2 * N - 1}


def _main_sides(which: str, N: int, X: list, x, y, ring: _Ring):
    ctx = ring.ctx
    sa = sigma(ring.a)
    big = "qt" if which == "main1" or _RESOLVED.get(which, ("",))[0] == "qt" else "qqt"
    tq = th = None
    if which in _RESOLVED:
        _, tq, th = _RESOLVED[which]
    if big == "qt":
        Xk = X[:2 * N - 1]
        lhs = sa * _model_z(ctx, "qt", N, Xk + [x, y], tq)
        rhs = (_model_z(ctx, "ht_even", N, Xk + [x, y], th)
               * _model_z(ctx, "dwbc", N, Xk + [x]) * _model_z(ctx, "dwbc", N, Xk + [y]))
    else:
        Xk = X[:2 * N]
        lhs = sa * _model_z(ctx, "qqt", N, Xk + [x, y], tq)
        rhs = (_model_z(ctx, "ht_odd", N, Xk + [x, y], th)
               * _model_z(ctx, "dwbc", N, Xk) * _model_z(ctx, "dwbc", N + 1, Xk + [x, y]))
    return lhs, rhs


def check_main_theorem(which: str, N: int = 1, mode: str = "symbolic-x", seed: int = 0,
                       trials: int = 3) -> CheckResult:
    """sigma(a) times the QT-side function against the product side, at a = w6."""
    if which not in MAIN:
        raise ValueError(f"unknown identity {which!r}; choose from {', '.join(MAIN)}")
    name = f"main[{which}, N={N}, {mode}]"
    rng = random.Random(seed)
    if mode == "symbolic-x":
        ring = _Ring(OMEGA6, ("x",))
        for _ in range(trials):
            vals = random_values(rng, 2 * N + 1)
            X, y = [ring.const(v) for v in vals[:-1]], ring.const(vals[-1])
            lhs, rhs = _main_sides(which, N, X, ring.var("x"), y, ring)
            bad = _compare(name, lhs, rhs, {f"x{k + 1}": v for k, v in enumerate(vals[:-1])} | {"y": vals[-1]})
            if bad:
                return bad
            if which in HALF_WIDTH:
                h = HALF_WIDTH[which](N)
                if not lhs.is_centered("x") or lhs.half_width("x") != h:
                    return CheckResult(name, False, {"lhs": lhs.to_text(), "expected_half_width": h},
                                       "half-width mismatch")
        return CheckResult(name, True, detail=f"{trials} random tuples")
    if mode == "random-points":
        ring = _Ring(OMEGA6)
        h = 2 * N  # largest half-width in x among the functions involved
        for _ in range(trials):
            vals = random_values(rng, 2 * N + 1)
            points = random_values(rng, 2 * h + 1, avoid=vals)
            X, y = [ring.const(v) for v in vals[:-1]], ring.const(vals[-1])
            for xv in points:
                lhs, rhs = _main_sides(which, N, X, ring.const(xv), y, ring)
                bad = _compare(name, lhs, rhs, {f"x{k + 1}": v for k, v in enumerate(vals[:-1])}
                               | {"y": vals[-1], "x": xv})
                if bad:
                    return bad
        return CheckResult(name, True, detail=f"{2 * h + 1} points per tuple, {trials} tuples")
    raise ValueError(f"unknown mode {mode!r}")


def check_half_widths(N: int = 1, seed: int = 0, regime: Regime = Regime.GENERIC) -> CheckResult:
    """Resolved QT-side and HT-side functions are centered in x with the stated half-widths and parities."""
    name = f"half-widths[N={N}, {regime.value}]"
    rng = random.Random(seed)
    ring = _Ring(WeightContext(regime), ("x",))
    vals = random_values(rng, 2 * N + 1)
    X, y = [ring.const(v) for v in vals[:-1]], ring.const(vals[-1])
    x = ring.var("x")
    found = {}
    for which, (big, tq, th) in _RESOLVED.items():
        h = HALF_WIDTH[which](N)
        if big == "qt":
            parts = [("qt", tq), ("ht_even", th)]
            args = X[:2 * N - 1] + [x, y]
        else:
            parts = [("qqt", tq), ("ht_odd", th)]
            args = X[:2 * N] + [x, y]
        for b, t in parts:
            f = _model_z(ring.ctx, b, N, args, t)
            even, odd = f.parity_split("x")
            # HT-side parts carry an extra factor centered of half-width h_x of the DWBC factors
            ok_center = f.is_centered("x")
            hw = f.half_width("x")
            parity_ok = (odd.is_zero() if hw % 2 == 0 else even.is_zero())
            found[f"{b}/{t}"] = hw
            if not ok_center or not parity_ok:
                return CheckResult(name, False, {"function": f"{b}/{t}", "poly": f.to_text()},
                                   "not centered or mixed parity")
            if b in ("qt", "qqt") and hw != h:
                return CheckResult(name, False, {"function": f"{b}/{t}", "half_width": hw, "expected": h})
    return CheckResult(name, True, detail=", ".join(f"{k}={v}" for k, v in found.items()))


# -- counting relations ---------------------------------------------------------------


# the four product relations, keyed by the size of the big matrix
COUNTING_RELATIONS = {1: "qt(4N)", 2: "qt(4N-1)", 3: "qt(4N+1)", 4: "qqt(4N+2)"}


def check_counting(eq: int, N: int) -> CheckResult:
    """Count of the big class against the product of HT and unrestricted counts; ``eq`` picks the relation 1-4."""
    U, HT, QT = SymmetryClass.UNRESTRICTED, SymmetryClass.HALF_TURN, SymmetryClass.QUARTER_TURN
    if eq not in COUNTING_RELATIONS:
        raise ValueError(f"unknown counting relation {eq}")
    name = f"counting[{COUNTING_RELATIONS[eq]}, N={N}]"
    if eq == 1:
        lhs, rhs = count(4 * N, QT), count(2 * N, HT) * count(N, U) ** 2
    elif eq == 2:
        lhs, rhs = count(4 * N - 1, QT), count(2 * N - 1, HT) * count(N, U) ** 2
    elif eq == 3:
        lhs, rhs = count(4 * N + 1, QT), count(2 * N + 1, HT) * count(N, U) ** 2
    else:
        lhs = count(4 * N + 2, SymmetryClass.QUASI_QUARTER_TURN)
        rhs = count(2 * N + 1, HT) * count(N, U) * count(N + 1, U)
    if lhs != rhs:
        return CheckResult(name, False, {"lhs": lhs, "rhs": rhs})
    return CheckResult(name, True, detail=f"{lhs} = {rhs}")


def check_no_qt_of_size_4n2(N: int) -> CheckResult:
    n = 4 * N + 2
    c = count(n, SymmetryClass.QUARTER_TURN)
    return CheckResult(f"no-qt[n={n}]", c == 0, None if c == 0 else {"count": c})


# -- suites ---------------------------------------------------------------------------------


SUITES = ("all", "yb", "symmetry", "spec", "main", "counting")


def run_suite(suite: str = "all", max_n: int = 1, seed: int = 0) -> list:
    """Run a named group of checks and return their results in a fixed order."""
    if suite not in SUITES:
        raise ValueError(f"unknown suite {suite!r}; choose from {', '.join(SUITES)}")
    Ns = list(range(1, max_n + 1))
    out: list = []
    want = (lambda s: suite in ("all", s))
    if want("counting"):
        for N in Ns:
            out += [check_counting(e, N) for e in (1, 2, 3, 4)]
            out.append(check_no_qt_of_size_4n2(N))
    if want("yb"):
        out.append(check_yang_baxter())
        out.append(check_loop_exchange(2, seed))
    if want("symmetry"):
        for N in Ns:
            for b in ("dwbc", "ht_odd", "ht_even", "qt", "qqt"):
                out.append(check_symmetry(b, N, "set-wise", seed))
            out.append(check_symmetry("qqt", N, "xy", seed))
            out.append(check_symmetry("qt", N, "pseudo-xy", seed))
            out.append(check_symmetry("ht_even", N, "pseudo-xy", seed))
        out.append(check_symmetry("dwbc", 2, "full-omega6", seed))
    if want("spec"):
        for N in Ns:
            for which in SPECIALIZATIONS:
                if which.startswith("ZQT"):
                    for big in ("qqt", "qt"):
                        out.append(check_specialization(which, N, seed, trials=5, big=big))
                else:
                    out.append(check_specialization(which, N, seed, trials=5))
        out.append(check_prefactor_compaction(seed, trials=20, max_n=max(Ns)))
        for N in Ns:
            out.append(check_prefactor_cancellation(N, seed, trials=5))
    if want("main"):
        for N in Ns:
            for which in MAIN:
                out.append(check_main_theorem(which, N, "symbolic-x", seed, trials=1))
            out.append(check_main_theorem("main2", N, "random-points", seed, trials=1))
            out.append(check_half_widths(N, seed))
    return out
