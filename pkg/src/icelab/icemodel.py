"""Square-ice models attached to the symmetry classes and their partition functions.

A model lists the tetravalent vertices of a fundamental domain of the n x n
grid, each with the names of the two line slots crossing there. Ice states of
a model are obtained from the matrices of the matching symmetry class through
the ASM <-> ice bijection, so the state sum is taken over enumerated matrices.
"""
from __future__ import annotations

import enum
import os
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Mapping, Sequence

import numpy as np

from .asm import SymmetryClass, asm_array
from .exactalg import (
    OMEGA,
    FieldError,
    FieldTag,
    LaurentPoly,
    coerce_scalar,
    sigma,
)

# -- vertex kinds -------------------------------------------------------------


class VertexKind(enum.Enum):
    """The six ice orientations at a crossing, plus the divalent vertex."""

    PLUS = "plus"          # horizontal arrows in, vertical out; entry +1
    MINUS = "minus"        # horizontal out, vertical in; entry -1
    ZERO_LEFT_UP = "zlu"   # arrows <- and ^ : weight sigma(a p)
    ZERO_RIGHT_DOWN = "zrd"  # -> and v : sigma(a p)
    ZERO_RIGHT_UP = "zru"  # -> and ^ : sigma(a / p)
    ZERO_LEFT_DOWN = "zld"  # <- and v : sigma(a / p)
    DIVALENT = "div"

    @property
    def entry(self) -> int | None:
        return {"plus": 1, "minus": -1, "div": None}.get(self.value, 0)


# class indices used in vectorized state sums
PM, AP, AQ = 0, 1, 2  # sigma(a^2), sigma(a p), sigma(a / p)

_KIND_CLASS = {
    VertexKind.PLUS: PM, VertexKind.MINUS: PM,
    VertexKind.ZERO_LEFT_UP: AP, VertexKind.ZERO_RIGHT_DOWN: AP,
    VertexKind.ZERO_RIGHT_UP: AQ, VertexKind.ZERO_LEFT_DOWN: AQ,
}


class Regime(enum.Enum):
    GENERIC = "generic"   # a is a Laurent variable over Q
    OMEGA6 = "omega6"     # a = exp(i pi/3), coefficients in Q(w)


@dataclass(frozen=True)
class WeightContext:
    regime: Regime = Regime.GENERIC

    @property
    def field(self) -> FieldTag:
        return FieldTag.RATIONAL if self.regime is Regime.GENERIC else FieldTag.CYCLOTOMIC

    def base_vars(self) -> tuple:
        return ("a",) if self.regime is Regime.GENERIC else ()

    def a(self, vars: Sequence[str]) -> LaurentPoly:
        if self.regime is Regime.GENERIC:
            return LaurentPoly.variable("a", self.field, vars)
        return LaurentPoly.constant(OMEGA, self.field, vars)


GENERIC = WeightContext(Regime.GENERIC)
OMEGA6 = WeightContext(Regime.OMEGA6)


def as_monomial(value, ctx: WeightContext, vars: Sequence[str] = ()) -> LaurentPoly:
    """Coerce a slot value (scalar, fraction text, or single-term polynomial) to a term."""
    if isinstance(value, LaurentPoly):
        if value.field is not ctx.field:
            value = value.to_field(ctx.field)
        if len(value.terms) != 1:
            raise FieldError("a line parameter must be a single invertible term")
        return value
    if isinstance(value, str):
        value = Fraction(value)
    c = coerce_scalar(value, ctx.field)
    if not c:
        raise ZeroDivisionError("line parameters must be nonzero")
    return LaurentPoly.constant(c, ctx.field, vars)


def vertex_weight(kind: VertexKind, param, ctx: WeightContext = GENERIC) -> LaurentPoly:
    """Weight of a vertex of ``kind`` whose parameter is ``param``."""
    if kind is VertexKind.DIVALENT:
        return LaurentPoly.constant(1, ctx.field, ctx.base_vars())
    p = as_monomial(param, ctx)
    vars = tuple(ctx.base_vars()) + tuple(v for v in p.vars if v not in ctx.base_vars())
    p = p.extend(vars)
    a = ctx.a(vars)
    cls = _KIND_CLASS[kind]
    if cls == PM:
        return sigma(a * a)
    if cls == AP:
        return sigma(a * p)
    return sigma(a * p.inverse())


# -- ASM <-> ice ----------------------------------------------------------------


@dataclass(frozen=True)
class IceState:
    """Edge orientations of the full n x n grid.

    ``h[i][k]`` is the horizontal edge of row i left of column k (k = n is the
    right boundary), +1 pointing right. ``v[k][j]`` is the vertical edge of
    column j above row k (k = n is the bottom boundary), +1 pointing up.
    """

    n: int
    h: tuple
    v: tuple

    def vertex_kind(self, i: int, j: int) -> VertexKind:
        left, right = self.h[i][j], self.h[i][j + 1]
        up, down = self.v[i][j], self.v[i + 1][j]
        # in/out relative to the vertex
        l_in, r_in = left == 1, right == -1
        u_in, d_in = up == -1, down == 1
        if l_in and r_in and not u_in and not d_in:
            return VertexKind.PLUS
        if not l_in and not r_in and u_in and d_in:
            return VertexKind.MINUS
        if l_in == r_in or u_in == d_in:
            raise ValueError(f"ice rule violated at ({i}, {j})")
        hr = left == 1
        vu = up == 1
        if not hr and vu:
            return VertexKind.ZERO_LEFT_UP
        if hr and not vu:
            return VertexKind.ZERO_RIGHT_DOWN
        if hr and vu:
            return VertexKind.ZERO_RIGHT_UP
        return VertexKind.ZERO_LEFT_DOWN

    def satisfies_ice_rule(self) -> bool:
        for i in range(self.n):
            for j in range(self.n):
                ins = (self.h[i][j] == 1) + (self.h[i][j + 1] == -1) + (self.v[i][j] == -1) + (self.v[i + 1][j] == 1)
                if ins != 2:
                    return False
        return True

    def odd_crossings(self) -> bool:
        """Each line crosses an odd number of +-1 vertices exactly when its two end arrows differ."""
        n = self.n
        for i in range(n):
            nz = sum(self.vertex_kind(i, j).entry != 0 for j in range(n))
            if nz % 2 != (self.h[i][0] != self.h[i][n]):
                return False
        for j in range(n):
            nz = sum(self.vertex_kind(i, j).entry != 0 for i in range(n))
            if nz % 2 != (self.v[0][j] != self.v[n][j]):
                return False
        return True

    def has_dwbc(self) -> bool:
        n = self.n
        return (all(self.h[i][0] == 1 and self.h[i][n] == -1 for i in range(n))
                and all(self.v[0][j] == 1 and self.v[n][j] == -1 for j in range(n)))


def asm_to_ice(m) -> IceState:
    n = len(m)
    h = []
    for i in range(n):
        row, s = [], 0
        for k in range(n + 1):
            row.append(1 if s == 0 else -1)
            if k < n:
                s += m[i][k]
        h.append(tuple(row))
    v = []
    colsum = [0] * n
    for k in range(n + 1):
        v.append(tuple(1 if colsum[j] == 0 else -1 for j in range(n)))
        if k < n:
            for j in range(n):
                colsum[j] += m[k][j]
    return IceState(n, tuple(h), tuple(v))


def ice_to_asm(state: IceState):
    n = state.n
    return tuple(tuple(state.vertex_kind(i, j).entry for j in range(n)) for i in range(n))


# -- models -------------------------------------------------------------------


class Boundary(enum.Enum):
    DWBC = "dwbc"
    HT_EVEN = "ht_even"
    HT_ODD = "ht_odd"
    QT = "qt"
    QQT = "qqt"


TAGS = {
    Boundary.QT: ("conv", "div"),
    Boundary.QQT: ("upleft", "downright"),
    Boundary.HT_EVEN: ("up", "down"),
    Boundary.HT_ODD: ("upleft", "downright"),
}

# tag taken when the relevant row partial sum vanishes, then the other one
_ZERO_TAG = {
    Boundary.QT: ("conv", "div"),
    Boundary.QQT: ("downright", "upleft"),
    Boundary.HT_EVEN: ("up", "down"),
    Boundary.HT_ODD: ("downright", "upleft"),
}


@dataclass(frozen=True)
class VertexSlot:
    i: int          # matrix row (0 = top)
    j: int          # matrix column
    row: str        # slot name of the horizontal line
    col: str        # slot name of the vertical line


@dataclass(frozen=True)
class IceModel:
    """A quotient square-ice model.

    ``N`` is the size parameter (DWBC size N, HT size 2N or
    2N+1, QT size 4N, qQT size 4N+2); ``n`` is the matrix size.
    """

    boundary: Boundary
    N: int
    n: int
    cls: SymmetryClass
    slots: tuple
    vertices: tuple
    divalents: tuple = ()
    arcs: tuple = ()
    junction: tuple | None = None
    # (matrix row, number of leading columns) whose partial sum decides the tag
    tag_row: tuple | None = None

    @property
    def n_vertices(self) -> int:
        return len(self.vertices)

    def tags(self) -> tuple:
        return TAGS.get(self.boundary, ())

    def tag_of(self, m) -> str | None:
        if self.tag_row is None:
            return None
        i, width = self.tag_row
        # partial sum 0 means the distinguished edge points right, into the turn
        zero_tag, other = _ZERO_TAG[self.boundary]
        return zero_tag if sum(m[i][:width]) == 0 else other


def _xs(k):
    return [f"x{i}" for i in range(1, k + 1)]


def build_model(boundary, N: int) -> IceModel:
    """Build the model for ``boundary`` with size parameter ``N``."""
    if isinstance(boundary, str):
        boundary = Boundary(boundary)
    if N < 0 or (N == 0 and boundary in (Boundary.HT_EVEN, Boundary.QT)):
        raise ValueError(f"invalid size parameter N={N} for {boundary.value}")
    verts = []
    if boundary is Boundary.DWBC:
        n = N
        slots = tuple(_xs(2 * N))
        for i in range(n):
            g = n - i
            for j in range(n):
                verts.append(VertexSlot(i, j, f"x{g}", f"x{N + 1 + j}"))
        return IceModel(boundary, N, n, SymmetryClass.UNRESTRICTED, slots, tuple(verts))

    if boundary is Boundary.HT_EVEN:
        n = 2 * N
        slots = tuple(_xs(2 * N - 1)) + ("x", "y")

        def rname(g):
            if g <= N - 1:
                return f"x{g}"
            if g == N:
                return "x"
            if g == N + 1:
                return "y"
            return f"x{2 * N + 1 - g}"

        for i in range(n):
            for j in range(N):
                verts.append(VertexSlot(i, j, rname(n - i), f"x{N + j}"))
        arcs = tuple((n - g, n - (2 * N + 1 - g)) for g in range(1, N + 1))
        return IceModel(boundary, N, n, SymmetryClass.HALF_TURN, slots, tuple(verts),
                        arcs=arcs, junction=("uturn", N), tag_row=(n - N, N))

    if boundary is Boundary.HT_ODD:
        n = 2 * N + 1
        slots = tuple(_xs(2 * N)) + ("x", "y")

        def rname(g):
            if g <= N:
                return f"x{g}"
            if g == N + 1:
                return "x"
            return f"x{2 * N + 2 - g}"

        for i in range(n):
            g = n - i
            for j in range(N):
                verts.append(VertexSlot(i, j, rname(g), f"x{N + 1 + j}"))
            if g <= N:
                verts.append(VertexSlot(i, N, rname(g), "y"))
        arcs = tuple((n - g, n - (2 * N + 2 - g)) for g in range(1, N + 1))
        return IceModel(boundary, N, n, SymmetryClass.HALF_TURN, slots, tuple(verts),
                        arcs=arcs, junction=("center", N), tag_row=(n - (N + 1), N))

    if boundary in (Boundary.QT, Boundary.QQT):
        L = 2 * N if boundary is Boundary.QT else 2 * N + 1
        n = 2 * L
        k = L - 1
        slots = tuple(_xs(k)) + ("x", "y")
        for g in range(1, L + 1):
            i = n - g
            for j in range(L):
                if g == L and j == L - 1:
                    continue  # the x/y turning point
                rn = f"x{g}" if g < L else "x"
                cn = f"x{j + 1}" if j + 1 < L else "y"
                verts.append(VertexSlot(i, j, rn, cn))
        cls = SymmetryClass.QUARTER_TURN if boundary is Boundary.QT else SymmetryClass.QUASI_QUARTER_TURN
        divalents = tuple(range(1, L)) if boundary is Boundary.QT else tuple(range(1, L))
        arcs = tuple((g, g) for g in range(1, L))
        return IceModel(boundary, N, n, cls, slots, tuple(verts), divalents=divalents,
                        arcs=arcs, junction=("corner", L), tag_row=(n - L, L - 1))
    raise ValueError(f"unknown boundary {boundary!r}")


def model_for_size(boundary, n: int) -> IceModel:
    """Build a model from the matrix size instead of the size parameter; "ht" picks the parity."""
    if isinstance(boundary, str):
        boundary = Boundary.HT_EVEN if boundary == "ht" else Boundary(boundary)
    if boundary is Boundary.DWBC:
        return build_model(boundary, n)
    if boundary in (Boundary.HT_EVEN, Boundary.HT_ODD):
        boundary = Boundary.HT_EVEN if n % 2 == 0 else Boundary.HT_ODD
        return build_model(boundary, n // 2)
    if boundary is Boundary.QT:
        if n % 4:
            raise ValueError(f"QT model needs size 4N, got {n}")
        return build_model(boundary, n // 4)
    if n % 4 != 2:
        raise ValueError(f"qQT model needs size 4N+2, got {n}")
    return build_model(boundary, n // 4)


# -- state sums ---------------------------------------------------------------


@lru_cache(maxsize=64)
def _states(n: int, cls: SymmetryClass) -> np.ndarray:
    if n == 0:
        return np.zeros((1, 0, 0), dtype=np.int8)  # the empty grid has one state
    return asm_array(n, cls)


@lru_cache(maxsize=64)
def _classes(model: IceModel):
    """Per-state vertex classes (S x V) and tags for ``model``."""
    M = _states(model.n, model.cls)
    S = M.shape[0]
    if S == 0:
        return np.zeros((0, len(model.vertices)), dtype=np.int8), np.array([], dtype=object)
    rowpre = np.cumsum(M, axis=2, dtype=np.int16) - M   # sum strictly left
    colpre = np.cumsum(M, axis=1, dtype=np.int16) - M   # sum strictly above
    I = np.array([v.i for v in model.vertices], dtype=np.intp)
    J = np.array([v.j for v in model.vertices], dtype=np.intp)
    ent = M[:, I, J]
    hr = rowpre[:, I, J] == 0     # horizontal arrow points right
    vu = colpre[:, I, J] == 0     # vertical arrow points up
    cls = np.where(ent != 0, PM, np.where(hr != vu, AP, AQ)).astype(np.int8)
    if model.tag_row is not None:
        i, width = model.tag_row
        s = M[:, i, :width].sum(axis=1)
        zero_tag, other = _ZERO_TAG[model.boundary]
        tags = np.where(s == 0, zero_tag, other)
    else:
        tags = np.array([None] * S, dtype=object)
    return cls, tags


def state_count(model: IceModel) -> int:
    return int(_states(model.n, model.cls).shape[0])


def iter_states(model: IceModel):
    """Yield (matrix, IceState) pairs for every state of ``model``."""
    for m in _states(model.n, model.cls):
        mm = tuple(tuple(int(v) for v in r) for r in m)
        yield mm, asm_to_ice(mm)


def symbolic_limit() -> int:
    """How many free variables (besides a) a partition function may carry; ICELAB_SYMBOLIC overrides."""
    return int(os.environ.get("ICELAB_SYMBOLIC", "2"))


def _resolve_assignment(model: IceModel, assign: Mapping, ctx: WeightContext):
    missing = [s for s in model.slots if s not in assign]
    if missing:
        raise KeyError(f"missing line parameters: {', '.join(missing)}")
    unknown = [s for s in assign if s not in model.slots]
    if unknown:
        raise KeyError(f"unknown line slots for {model.boundary.value}: {', '.join(map(str, unknown))}")
    vars = list(ctx.base_vars())
    for s in model.slots:
        val = assign[s]
        if isinstance(val, LaurentPoly):
            used = [v for v, k in zip(val.vars, next(iter(val.terms))) if k] if val.terms else []
            for v in used:
                if v not in vars:
                    vars.append(v)
    vars = tuple(vars)
    free = [v for v in vars if v not in ctx.base_vars()]
    if len(free) > symbolic_limit():
        raise ValueError(f"too many symbolic slots ({', '.join(free)}); limit is {symbolic_limit()}")
    def norm(v):
        return v.drop_unused() if isinstance(v, LaurentPoly) else v

    return {s: as_monomial(norm(assign[s]), ctx, vars).extend(vars) for s in model.slots}, vars


def _weight_table(model: IceModel, params: Mapping, vars, ctx: WeightContext):
    """Distinct weight values and the (V x 3) table of their ids."""
    a = ctx.a(vars)
    values: list = []
    index: dict = {}

    def intern(w):
        k = index.get(w)
        if k is None:
            k = index[w] = len(values)
            values.append(w)
        return k

    pm = intern(sigma(a * a))
    table = np.zeros((len(model.vertices), 3), dtype=np.int32)
    cache = {}
    for t, vs in enumerate(model.vertices):
        key = (vs.row, vs.col)
        if key not in cache:
            p = params[vs.row] * params[vs.col].inverse()
            ap = a * p
            cache[key] = (intern(sigma(ap)), intern(sigma(a * p.inverse())))
        table[t] = (pm, *cache[key])
    return values, table


def _state_sum(model: IceModel, assign: Mapping, ctx: WeightContext, tag: str | None) -> LaurentPoly:
    params, vars = _resolve_assignment(model, assign, ctx)
    cls, tags = _classes(model)
    if tag is not None:
        if tag not in model.tags():
            raise ValueError(f"tag {tag!r} is not valid for {model.boundary.value}; use one of {model.tags()}")
        cls = cls[tags == tag]
    zero = LaurentPoly.zero(ctx.field, vars)
    if cls.shape[0] == 0:
        return zero
    values, table = _weight_table(model, params, vars, ctx)
    D = len(values)
    S, V = cls.shape
    ids = table[np.arange(V)[None, :], cls]          # S x V value ids
    flat = (np.arange(S, dtype=np.int64)[:, None] * D + ids).ravel()
    counts = np.bincount(flat, minlength=S * D).reshape(S, D)
    uniq, mult = np.unique(counts, axis=0, return_counts=True)
    # nested Horner over the weight values: columns with few distinct exponents first
    order = sorted(range(D), key=lambda d: len(np.unique(uniq[:, d])))
    uniq = uniq[:, order]
    values = [values[d] for d in order]
    if ctx.field is FieldTag.RATIONAL:
        return _horner_integer(uniq, mult, values, vars)
    powers: dict = {}

    def power(d, e):
        key = (d, e)
        if key not in powers:
            powers[key] = values[d] ** e
        return powers[key]

    def horner(rows, mults, d):
        if d == D:
            return LaurentPoly.constant(int(mults.sum()), ctx.field, vars)
        out = zero
        col = rows[:, d]
        for e in np.unique(col):
            sel = col == e
            inner = horner(rows[sel], mults[sel], d + 1)
            out = out + (inner * power(d, int(e)) if e else inner)
        return out

    return horner(uniq, mult, 0)


# Over Q the state sum is accumulated with integer coefficients: weight d is
# written W_d / den_d and every term is scaled by the common denominator.


def _int_mul(f: dict, g: dict) -> dict:
    out: dict = {}
    for e1, c1 in f.items():
        for e2, c2 in g.items():
            e = tuple(a + b for a, b in zip(e1, e2))
            out[e] = out.get(e, 0) + c1 * c2
    return {e: c for e, c in out.items() if c}


def _int_add(f: dict, g: dict) -> dict:
    out = dict(f)
    for e, c in g.items():
        out[e] = out.get(e, 0) + c
    return {e: c for e, c in out.items() if c}


def _horner_integer(rows, mults, values, vars) -> LaurentPoly:
    D = len(values)
    dens, nums = [], []
    for w in values:
        den = 1
        for c in w.terms.values():
            den = den * c.denominator // gcd(den, c.denominator)
        dens.append(den)
        nums.append({e: int(c * den) for e, c in w.terms.items()})
    top = rows.max(axis=0) if len(rows) else np.zeros(D, dtype=int)
    powers: dict = {}
    unit = {(0,) * len(vars): 1}

    def factor(d, e):
        # W_d^e * den_d^(top_d - e)
        key = (d, e)
        if key not in powers:
            f = unit
            for _ in range(e):
                f = _int_mul(f, nums[d])
            scale = dens[d] ** (int(top[d]) - e)
            powers[key] = {k: c * scale for k, c in f.items()}
        return powers[key]

    def horner(rows, mults, d):
        if d == D:
            return {(0,) * len(vars): int(mults.sum())}
        out: dict = {}
        col = rows[:, d]
        for e in np.unique(col):
            sel = col == e
            out = _int_add(out, _int_mul(horner(rows[sel], mults[sel], d + 1), factor(d, int(e))))
        return out

    total = horner(rows, mults, 0)
    common = 1
    for d in range(D):
        common *= dens[d] ** int(top[d])
    return LaurentPoly(FieldTag.RATIONAL, vars, {e: Fraction(c, common) for e, c in total.items()})


def partition_function(model: IceModel, assign: Mapping, ctx: WeightContext = GENERIC) -> LaurentPoly:
    """Exact weighted state sum of ``model`` under the line parameters ``assign``."""
    return _state_sum(model, assign, ctx, None)


def partition_resolved(model: IceModel, tag: str, assign: Mapping, ctx: WeightContext = GENERIC) -> LaurentPoly:
    """State sum restricted to states whose distinguished x/y edge has orientation ``tag``."""
    return _state_sum(model, assign, ctx, tag)


def symbolic(name: str, ctx: WeightContext = GENERIC) -> LaurentPoly:
    return LaurentPoly.variable(name, ctx.field, (name,))


def monomial(ctx: WeightContext = GENERIC, coeff=1, **exps) -> LaurentPoly:
    """Single term such as ``monomial(a=-1, x1=1)`` for a^-1 x1."""
    if ctx.regime is Regime.OMEGA6 and "a" in exps:
        k = exps.pop("a")
        coeff = coerce_scalar(coeff, ctx.field) * (OMEGA ** k)
    vars = tuple(sorted(exps))
    return LaurentPoly.monomial(ctx.field, vars, coeff, **exps)


def state_weight(model: IceModel, m, assign: Mapping, ctx: WeightContext = GENERIC) -> LaurentPoly:
    """Weight of one state, computed vertex by vertex from the ice picture."""
    params, vars = _resolve_assignment(model, assign, ctx)
    ice = asm_to_ice(m)
    out = LaurentPoly.constant(1, ctx.field, vars)
    for vs in model.vertices:
        p = params[vs.row] * params[vs.col].inverse()
        out = out * vertex_weight(ice.vertex_kind(vs.i, vs.j), p, ctx).extend(vars)
    return out
