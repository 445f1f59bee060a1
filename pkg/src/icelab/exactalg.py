"""Exact coefficient fields and multivariate Laurent polynomials.

Two coefficient fields are supported: the rationals (``fractions.Fraction``)
and the cyclotomic field Q(w) with w = exp(i*pi/3), stored as ``p + q*w``
with the relation ``w**2 = w - 1``.
"""
from __future__ import annotations

import enum
from fractions import Fraction
from typing import Iterable, Mapping, Sequence, Union


class FieldTag(enum.Enum):
    RATIONAL = "rational"
    CYCLOTOMIC = "cyclotomic"


class FieldError(ValueError):
    """Raised on mixed-field arithmetic or non-invertible operands."""


def _frac(v) -> Fraction:
    if isinstance(v, Fraction):
        return v
    if isinstance(v, int):
        return Fraction(v)
    if isinstance(v, str):
        return Fraction(v)
    raise TypeError(f"cannot make a rational from {v!r}")


def _fmt_frac(f: Fraction) -> str:
    return f"{f.numerator}/{f.denominator}"


class CyclotomicNumber:
    """Element p + q*w of Q(w), w a primitive sixth root of unity."""

    __slots__ = ("p", "q")

    def __init__(self, p=0, q=0):
        self.p = _frac(p)
        self.q = _frac(q)

    @classmethod
    def omega(cls) -> "CyclotomicNumber":
        return cls(0, 1)

    @classmethod
    def coerce(cls, v) -> "CyclotomicNumber":
        if isinstance(v, CyclotomicNumber):
            return v
        return cls(_frac(v), 0)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.q == 0 and self.p == other
        if not isinstance(other, CyclotomicNumber):
            return NotImplemented
        return self.p == other.p and self.q == other.q

    def __hash__(self):
        if self.q == 0:
            return hash(self.p)
        return hash((self.p, self.q))

    def __bool__(self):
        return bool(self.p) or bool(self.q)

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            return CyclotomicNumber(self.p + other, self.q)
        if not isinstance(other, CyclotomicNumber):
            return NotImplemented
        return CyclotomicNumber(self.p + other.p, self.q + other.q)

    __radd__ = __add__

    def __neg__(self):
        return CyclotomicNumber(-self.p, -self.q)

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            return CyclotomicNumber(self.p - other, self.q)
        if not isinstance(other, CyclotomicNumber):
            return NotImplemented
        return CyclotomicNumber(self.p - other.p, self.q - other.q)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return CyclotomicNumber(self.p * other, self.q * other)
        if not isinstance(other, CyclotomicNumber):
            return NotImplemented
        p, q, r, s = self.p, self.q, other.p, other.q
        # (p + qw)(r + sw) with w^2 = w - 1
        return CyclotomicNumber(p * r - q * s, p * s + q * r + q * s)

    __rmul__ = __mul__

    def norm(self) -> Fraction:
        return self.p * self.p + self.p * self.q + self.q * self.q

    def inverse(self) -> "CyclotomicNumber":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("inverse of zero in Q(w)")
        # conjugate of w is 1 - w
        return CyclotomicNumber((self.p + self.q) / n, -self.q / n)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division by zero in Q(w)")
            return CyclotomicNumber(self.p / other, self.q / other)
        if not isinstance(other, CyclotomicNumber):
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result = CyclotomicNumber(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __repr__(self):
        return f"CyclotomicNumber({self.p}, {self.q})"

    def to_text(self) -> str:
        if self.q == 0:
            return _fmt_frac(self.p)
        return f"{_fmt_frac(self.p)}{'+' if self.q >= 0 else '-'}{_fmt_frac(abs(self.q))}*w"

    def __complex__(self):
        import cmath

        w = cmath.exp(1j * cmath.pi / 3)
        return complex(float(self.p)) + float(self.q) * w


OMEGA = CyclotomicNumber.omega()

Scalar = Union[Fraction, CyclotomicNumber]


def field_of(v) -> FieldTag:
    if isinstance(v, CyclotomicNumber):
        return FieldTag.CYCLOTOMIC
    return FieldTag.RATIONAL


def coerce_scalar(v, field: FieldTag) -> Scalar:
    if field is FieldTag.CYCLOTOMIC:
        return CyclotomicNumber.coerce(v)
    if isinstance(v, CyclotomicNumber):
        if v.q != 0:
            raise FieldError(f"{v.to_text()} is not rational")
        return v.p
    return _frac(v)


def field_zero(field: FieldTag) -> Scalar:
    return CyclotomicNumber(0) if field is FieldTag.CYCLOTOMIC else Fraction(0)


def field_one(field: FieldTag) -> Scalar:
    return CyclotomicNumber(1) if field is FieldTag.CYCLOTOMIC else Fraction(1)


def field_arith(op: str, u, v):
    """Apply ``op`` in {add, sub, mul, div} to two field elements."""
    if isinstance(u, CyclotomicNumber) or isinstance(v, CyclotomicNumber):
        u = CyclotomicNumber.coerce(u)
        v = CyclotomicNumber.coerce(v)
    else:
        u, v = _frac(u), _frac(v)
    if op == "add":
        return u + v
    if op == "sub":
        return u - v
    if op == "mul":
        return u * v
    if op == "div":
        if not v:
            raise ZeroDivisionError("division by zero")
        return u / v
    raise ValueError(f"unknown field operation {op!r}")


def format_scalar(c: Scalar) -> str:
    if isinstance(c, CyclotomicNumber):
        return c.to_text()
    return _fmt_frac(c)


class LaurentPoly:
    """Multivariate Laurent polynomial over one exact field.

    ``terms`` maps exponent tuples (one integer per variable, in the order of
    ``vars``) to nonzero coefficients. Instances are treated as immutable.
    """

    __slots__ = ("field", "vars", "terms", "_hash")

    def __init__(self, field: FieldTag, vars: Sequence[str], terms: Mapping | None = None):
        self.field = field
        self.vars = tuple(vars)
        if len(set(self.vars)) != len(self.vars):
            raise ValueError(f"duplicate variable names in {self.vars}")
        clean = {}
        nv = len(self.vars)
        for e, c in (terms or {}).items():
            e = tuple(int(k) for k in e)
            if len(e) != nv:
                raise ValueError(f"exponent {e} does not match variables {self.vars}")
            c = coerce_scalar(c, field)
            if c:
                clean[e] = c
        self.terms = clean
        self._hash = None

    # -- construction -------------------------------------------------
    @classmethod
    def zero(cls, field: FieldTag, vars: Sequence[str] = ()) -> "LaurentPoly":
        return cls(field, vars)

    @classmethod
    def constant(cls, c, field: FieldTag, vars: Sequence[str] = ()) -> "LaurentPoly":
        return cls(field, vars, {(0,) * len(tuple(vars)): c})

    @classmethod
    def monomial(cls, field: FieldTag, vars: Sequence[str], coeff=1, **exps: int) -> "LaurentPoly":
        vars = tuple(vars)
        for name in exps:
            if name not in vars:
                raise KeyError(f"unknown variable {name!r}")
        return cls(field, vars, {tuple(exps.get(v, 0) for v in vars): coeff})

    @classmethod
    def variable(cls, name: str, field: FieldTag, vars: Sequence[str]) -> "LaurentPoly":
        return cls.monomial(field, vars, 1, **{name: 1})

    # -- structure ----------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def constant_value(self) -> Scalar:
        """Coefficient of the constant term if the polynomial is constant."""
        if not self.terms:
            return field_zero(self.field)
        if len(self.terms) == 1:
            (e, c), = self.terms.items()
            if not any(e):
                return c
        raise ValueError("polynomial is not constant")

    def extend(self, vars: Sequence[str]) -> "LaurentPoly":
        """Re-express over a variable universe containing ``self.vars``."""
        vars = tuple(vars)
        if vars == self.vars:
            return self
        missing = [v for v in self.vars if v not in vars]
        if missing:
            # dropping is allowed only for variables that never occur
            for v in missing:
                k = self.vars.index(v)
                if any(e[k] for e in self.terms):
                    raise ValueError(f"variable {v!r} occurs and cannot be dropped")
        idx = [self.vars.index(v) if v in self.vars else None for v in vars]
        terms = {tuple(e[k] if k is not None else 0 for k in idx): c for e, c in self.terms.items()}
        out = LaurentPoly.__new__(LaurentPoly)
        out.field, out.vars, out.terms, out._hash = self.field, vars, terms, None
        return out

    def _align(self, other: "LaurentPoly"):
        if not isinstance(other, LaurentPoly):
            other = LaurentPoly.constant(other, self.field, self.vars)
        if self.field is not other.field:
            raise FieldError(f"mixed-field arithmetic: {self.field.value} vs {other.field.value}")
        if self.vars == other.vars:
            return self, other
        universe = list(self.vars) + [v for v in other.vars if v not in self.vars]
        return self.extend(universe), other.extend(universe)

    def _new(self, terms) -> "LaurentPoly":
        out = LaurentPoly.__new__(LaurentPoly)
        out.field, out.vars, out.terms, out._hash = self.field, self.vars, terms, None
        return out

    # -- ring operations ----------------------------------------------
    def __add__(self, other):
        f, g = self._align(other)
        terms = dict(f.terms)
        for e, c in g.terms.items():
            s = terms.get(e)
            if s is None:
                terms[e] = c
            else:
                s = s + c
                if s:
                    terms[e] = s
                else:
                    del terms[e]
        return f._new(terms)

    __radd__ = __add__

    def __neg__(self):
        return self._new({e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        f, g = self._align(other)
        return f + (-g)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, LaurentPoly):
            c = coerce_scalar(other, self.field)
            if not c:
                return self._new({})
            return self._new({e: v * c for e, v in self.terms.items()})
        f, g = self._align(other)
        terms: dict = {}
        for e1, c1 in f.terms.items():
            for e2, c2 in g.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = terms.get(e)
                terms[e] = c1 * c2 if s is None else s + c1 * c2
        return f._new({e: c for e, c in terms.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result = LaurentPoly.constant(1, self.field, self.vars)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def inverse(self) -> "LaurentPoly":
        """Inverse of a single term with invertible coefficient."""
        if len(self.terms) != 1:
            raise FieldError("only single-term Laurent polynomials are invertible")
        (e, c), = self.terms.items()
        if isinstance(c, CyclotomicNumber):
            inv = c.inverse()
        else:
            inv = 1 / c
        return self._new({tuple(-k for k in e): inv})

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, CyclotomicNumber)):
            other = LaurentPoly.constant(other, self.field, self.vars)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        if self.field is not other.field:
            return False
        try:
            f, g = self._align(other)
        except FieldError:
            return False
        return f.terms == g.terms

    def __hash__(self):
        if self._hash is None:
            used = [i for i, v in enumerate(self.vars) if any(e[i] for e in self.terms)]
            key = frozenset(
                (tuple(sorted((self.vars[i], e[i]) for i in used if e[i])), c) for e, c in self.terms.items()
            )
            self._hash = hash((self.field, key))
        return self._hash

    # -- structural operations ----------------------------------------
    def _index(self, var: str) -> int:
        try:
            return self.vars.index(var)
        except ValueError:
            raise KeyError(f"unknown variable {var!r}; have {self.vars}") from None

    def degrees(self, var: str) -> tuple[int, int]:
        if not self.terms:
            raise ValueError("degree of the zero polynomial")
        k = self._index(var)
        ex = [e[k] for e in self.terms]
        return min(ex), max(ex)

    def half_width(self, var: str) -> int:
        return self.degrees(var)[1]

    def is_centered(self, var: str) -> bool:
        lo, hi = self.degrees(var)
        return lo == -hi

    def parity_split(self, var: str) -> tuple["LaurentPoly", "LaurentPoly"]:
        k = self._index(var)
        even = {e: c for e, c in self.terms.items() if e[k] % 2 == 0}
        odd = {e: c for e, c in self.terms.items() if e[k] % 2}
        return self._new(even), self._new(odd)

    def substitute(self, var: str, value) -> "LaurentPoly":
        """Evaluate ``var`` at an invertible scalar or single-term polynomial."""
        k = self._index(var)
        if isinstance(value, LaurentPoly):
            if value.field is not self.field:
                raise FieldError("substitution value lives in another field")
            if len(value.terms) != 1:
                raise FieldError("substitution value must be a single invertible term")
        else:
            c = coerce_scalar(value, self.field)
            if not c:
                raise ZeroDivisionError(f"cannot substitute 0 for {var!r}")
            value = LaurentPoly.constant(c, self.field, ())
        rest = self.vars[:k] + self.vars[k + 1:]
        universe = list(rest) + [v for v in value.vars if v not in rest]
        value = value.extend(universe)
        inv = value.inverse()
        pos_cache = {0: LaurentPoly.constant(1, self.field, universe)}
        acc: dict = {}
        for e, c in self.terms.items():
            d = e[k]
            if d not in pos_cache:
                pos_cache[d] = value ** d if d > 0 else inv ** (-d)
            base = e[:k] + e[k + 1:]
            base = base + (0,) * (len(universe) - len(base))
            for e2, c2 in pos_cache[d].terms.items():
                key = tuple(a + b for a, b in zip(base, e2))
                acc[key] = acc.get(key, 0) + c * c2
        return LaurentPoly(self.field, universe, acc)

    def substitute_many(self, values: Mapping[str, object]) -> "LaurentPoly":
        f = self
        for var, val in values.items():
            if var in f.vars:
                f = f.substitute(var, val)
        return f

    def rename(self, mapping: Mapping[str, str]) -> "LaurentPoly":
        """Permute/rename variables (used for symmetry checks)."""
        new = tuple(mapping.get(v, v) for v in self.vars)
        if len(set(new)) != len(new):
            raise ValueError("renaming must stay injective")
        out = LaurentPoly.__new__(LaurentPoly)
        out.field, out.vars, out.terms, out._hash = self.field, new, dict(self.terms), None
        return out

    def to_field(self, field: FieldTag) -> "LaurentPoly":
        return LaurentPoly(field, self.vars, {e: coerce_scalar(c, field) for e, c in self.terms.items()})

    def drop_unused(self) -> "LaurentPoly":
        used = [v for i, v in enumerate(self.vars) if any(e[i] for e in self.terms)]
        return self.extend(used)

    # -- text ---------------------------------------------------------
    def to_text(self) -> str:
        """Canonical text: terms sorted by exponent vector, ``coeff*x^e`` joined by ' + '."""
        if not self.terms:
            return "0"
        f = self.drop_unused()
        order = sorted(f.vars)
        idx = [f.vars.index(v) for v in order]
        rows = []
        for e, c in f.terms.items():
            key = tuple(e[i] for i in idx)
            mono = "*".join(f"{order[j]}^{key[j]}" for j in range(len(order)) if key[j])
            coeff = format_scalar(c)
            rows.append((key, f"({coeff})" + (f"*{mono}" if mono else "")))
        rows.sort()
        return " + ".join(r for _, r in rows)

    def __repr__(self):
        return f"LaurentPoly({self.to_text()})"

    def __str__(self):
        return self.to_text()


def poly_arith(op: str, f: LaurentPoly, g: LaurentPoly | None = None) -> LaurentPoly:
    if op == "add":
        return f + g
    if op == "sub":
        return f - g
    if op == "mul":
        return f * g
    if op == "neg":
        return -f
    raise ValueError(f"unknown polynomial operation {op!r}")


def sigma(u):
    """u - 1/u for an invertible field element or a single Laurent term."""
    if isinstance(u, LaurentPoly):
        if len(u.terms) != 1:
            raise FieldError("sigma needs a single invertible term")
        return u - u.inverse()
    if isinstance(u, CyclotomicNumber):
        return u - u.inverse()
    u = _frac(u)
    if u == 0:
        raise ZeroDivisionError("sigma(0) is undefined")
    return u - 1 / u


def parity_split(f: LaurentPoly, var: str):
    return f.parity_split(var)


def half_width(f: LaurentPoly, var: str) -> int:
    return f.half_width(var)


def is_centered(f: LaurentPoly, var: str) -> bool:
    return f.is_centered(var)


def substitute(f: LaurentPoly, var: str, value) -> LaurentPoly:
    return f.substitute(var, value)


def evaluate_omega(f: LaurentPoly, var: str = "a") -> LaurentPoly:
    """Send a rational polynomial in ``var`` to Q(w) with ``var`` -> w."""
    g = f.to_field(FieldTag.CYCLOTOMIC)
    if var not in g.vars:
        return g
    return g.substitute(var, OMEGA)


def product(factors: Iterable, field: FieldTag, vars: Sequence[str] = ()) -> LaurentPoly:
    out = LaurentPoly.constant(1, field, vars)
    for f in factors:
        out = out * f
    return out
