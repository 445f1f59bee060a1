"""Alternating sign matrices, their symmetry classes, and enumeration.

Matrices are plain tuples of row tuples with entries in {-1, 0, 1}; index
(0, 0) is the top-left entry.
"""
from __future__ import annotations

import enum
import os
from functools import lru_cache
from typing import Iterator, Sequence

import numpy as np

Matrix = tuple  # tuple[tuple[int, ...], ...]


class SymmetryClass(enum.Enum):
    UNRESTRICTED = "u"
    HALF_TURN = "ht"
    QUARTER_TURN = "qt"
    QUASI_QUARTER_TURN = "qqt"

    @classmethod
    def parse(cls, text: str) -> "SymmetryClass":
        key = text.strip().lower()
        aliases = {
            "u": cls.UNRESTRICTED, "unrestricted": cls.UNRESTRICTED, "asm": cls.UNRESTRICTED,
            "ht": cls.HALF_TURN, "halfturn": cls.HALF_TURN, "half-turn": cls.HALF_TURN,
            "qt": cls.QUARTER_TURN, "quarterturn": cls.QUARTER_TURN, "quarter-turn": cls.QUARTER_TURN,
            "qqt": cls.QUASI_QUARTER_TURN, "quasiquarterturn": cls.QUASI_QUARTER_TURN,
            "quasi-quarter-turn": cls.QUASI_QUARTER_TURN,
        }
        try:
            return aliases[key]
        except KeyError:
            raise ValueError(f"unknown symmetry class {text!r}") from None


class CenterPattern(enum.Enum):
    MINUS_PAIR = (0, -1, -1, 0)
    PLUS_PAIR = (1, 0, 0, 1)


class BudgetExceeded(RuntimeError):
    """Requested size is beyond the configured enumeration budget."""


DEFAULT_BUDGET = {"unrestricted": 7, "symmetric": 12}


def budget() -> dict:
    """Size budgets, optionally overridden by ICELAB_BUDGET.

    Accepted forms: ``"9"`` (both limits) or ``"unrestricted=8,symmetric=14"``.
    """
    out = dict(DEFAULT_BUDGET)
    raw = os.environ.get("ICELAB_BUDGET", "").strip()
    if not raw:
        return out
    if raw.isdigit():
        return {k: int(raw) for k in out}
    for part in raw.split(","):
        key, _, val = part.partition("=")
        key = key.strip().lower()
        if key not in out or not val.strip().isdigit():
            raise ValueError(f"bad ICELAB_BUDGET entry {part!r}")
        out[key] = int(val)
    return out


def _check_budget(n: int, cls: SymmetryClass) -> None:
    if n < 1:
        raise ValueError(f"size must be positive, got {n}")
    b = budget()
    limit = b["unrestricted"] if cls is SymmetryClass.UNRESTRICTED else b["symmetric"]
    if n > limit:
        raise BudgetExceeded(f"size {n} exceeds the {cls.value} enumeration budget {limit} (set ICELAB_BUDGET)")


def as_matrix(rows: Sequence[Sequence[int]]) -> Matrix:
    return tuple(tuple(int(v) for v in r) for r in rows)


def _shape_check(m) -> int:
    n = len(m)
    if n == 0:
        raise ValueError("empty matrix")
    for r in m:
        if len(r) != n:
            raise ValueError("matrix is not square")
        for v in r:
            if v not in (-1, 0, 1):
                raise ValueError(f"entry {v!r} not in {{-1, 0, 1}}")
    return n


def _line_ok(line) -> bool:
    s = 0
    for v in line:
        s += v
        if s not in (0, 1):
            return False
    return s == 1


def validate(m) -> bool:
    """True iff ``m`` is an ASM (partial sums of every row/column in {0,1}, total 1)."""
    n = _shape_check(m)
    if not all(_line_ok(r) for r in m):
        return False
    return all(_line_ok([m[i][j] for i in range(n)]) for j in range(n))


def alternates(m) -> bool:
    """Direct form of the axioms: nonzero entries alternate, start with +1, sum to 1."""
    n = _shape_check(m)
    lines = [list(r) for r in m] + [[m[i][j] for i in range(n)] for j in range(n)]
    for line in lines:
        nz = [v for v in line if v]
        if not nz or nz[0] != 1 or sum(nz) != 1:
            return False
        if any(a == b for a, b in zip(nz, nz[1:])):
            return False
    return True


def rotate_quarter(m) -> Matrix:
    """Quarter-turn: entry (i, j) moves to (j, n-1-i)."""
    n = len(m)
    out = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            out[j][n - 1 - i] = m[i][j]
    return as_matrix(out)


def rotate_half(m) -> Matrix:
    n = len(m)
    return tuple(tuple(m[n - 1 - i][n - 1 - j] for j in range(n)) for i in range(n))


def _central_cells(n: int):
    c = n // 2 - 1
    return ((c, c), (c, c + 1), (c + 1, c), (c + 1, c + 1))


def center_pattern(m) -> CenterPattern | None:
    n = len(m)
    if n % 4 != 2:
        return None
    block = tuple(m[i][j] for i, j in _central_cells(n))
    for p in CenterPattern:
        if p.value == block:
            return p
    return None


def is_member(m, cls: SymmetryClass) -> bool:
    n = len(m)
    if cls is SymmetryClass.UNRESTRICTED:
        return True
    if cls is SymmetryClass.HALF_TURN:
        return tuple(map(tuple, m)) == rotate_half(m)
    if cls is SymmetryClass.QUARTER_TURN:
        return tuple(map(tuple, m)) == rotate_quarter(m)
    if n % 4 != 2 or center_pattern(m) is None:
        return False
    r = rotate_quarter(m)
    central = set(_central_cells(n))
    return all(m[i][j] == r[i][j] for i in range(n) for j in range(n) if (i, j) not in central)


# ---------------------------------------------------------------------------
# generic orbit-constrained search


def _orbits(n: int, cls: SymmetryClass):
    """Orbits of cells as (cells, allowed value tuples), in row-major order of representatives."""
    seen = set()
    out = []
    central = set(_central_cells(n)) if cls is SymmetryClass.QUASI_QUARTER_TURN else set()
    if central:
        cells = tuple(sorted(central))
        out.append((cells, (CenterPattern.MINUS_PAIR.value, CenterPattern.PLUS_PAIR.value)))
        seen |= central
    for i in range(n):
        for j in range(n):
            if (i, j) in seen:
                continue
            orb = [(i, j)]
            if cls is SymmetryClass.HALF_TURN:
                orb.append((n - 1 - i, n - 1 - j))
            elif cls in (SymmetryClass.QUARTER_TURN, SymmetryClass.QUASI_QUARTER_TURN):
                a, b = i, j
                for _ in range(3):
                    a, b = b, n - 1 - a
                    orb.append((a, b))
            cells = tuple(sorted(set(orb)))
            seen.update(cells)
            out.append((cells, tuple((v,) * len(cells) for v in (0, 1, -1))))
    out.sort(key=lambda o: o[0][0])
    return out


def _partial_ok(vals) -> bool:
    s = 0
    for v in vals:
        if v is None:
            break
        s += v
        if s not in (0, 1):
            return False
    else:
        return s == 1
    s = 0
    for v in reversed(vals):
        if v is None:
            break
        s += v
        if s not in (0, 1):
            return False
    return True


def search(n: int, cls: SymmetryClass) -> Iterator[Matrix]:
    """Orbit-constrained depth-first search; the reference enumerator."""
    if cls is SymmetryClass.QUARTER_TURN and n % 4 == 2:
        return
    if cls is SymmetryClass.QUASI_QUARTER_TURN and n % 4 != 2:
        return
    orbits = _orbits(n, cls)
    grid = [[None] * n for _ in range(n)]

    def lines_ok(cells) -> bool:
        rows = {i for i, _ in cells}
        cols = {j for _, j in cells}
        for i in rows:
            if not _partial_ok(grid[i]):
                return False
        for j in cols:
            if not _partial_ok([grid[i][j] for i in range(n)]):
                return False
        return True

    def rec(k):
        if k == len(orbits):
            yield tuple(tuple(r) for r in grid)
            return
        cells, choices = orbits[k]
        for vals in choices:
            for (i, j), v in zip(cells, vals):
                grid[i][j] = v
            if lines_ok(cells):
                yield from rec(k + 1)
        for i, j in cells:
            grid[i][j] = None

    yield from rec(0)


# ---------------------------------------------------------------------------
# row-automaton generation for the unrestricted and half-turn classes


@lru_cache(maxsize=None)
def _rows_from(state: tuple) -> tuple:
    """All ASM rows compatible with column partial sums ``state`` (bits, from the top)."""
    n = len(state)
    out = []

    def rec(j, s, row):
        if j == n:
            if s == 1:
                out.append(tuple(row))
            return
        row.append(0)
        rec(j + 1, s, row)
        row.pop()
        if s == 0 and state[j] == 0:
            row.append(1)
            rec(j + 1, 1, row)
            row.pop()
        elif s == 1 and state[j] == 1:
            row.append(-1)
            rec(j + 1, 0, row)
            row.pop()

    rec(0, 0, [])
    return tuple((r, tuple(c + v for c, v in zip(state, r))) for r in out)


def _ht_middle_ok(state, row) -> bool:
    n = len(state)
    if any(row[j] != row[n - 1 - j] for j in range(n)):
        return False
    return all(state[j] + row[j] + state[n - 1 - j] == 1 for j in range(n))


def _automaton(n: int, cls: SymmetryClass):
    """(levels, accept(state), middle-row rule or None) for U / HT generation."""
    if cls is SymmetryClass.UNRESTRICTED:
        return n, (lambda s: all(s)), None
    half = n // 2
    if n % 2 == 0:
        return half, (lambda s: all(s[j] + s[n - 1 - j] == 1 for j in range(n))), None
    return half, None, _ht_middle_ok


def _automaton_count(n: int, cls: SymmetryClass) -> int:
    levels, accept, middle = _automaton(n, cls)

    @lru_cache(maxsize=None)
    def ways(k, state):
        if k == levels:
            if middle is not None:
                return sum(1 for r, _ in _rows_from(state) if middle(state, r))
            return 1 if accept(state) else 0
        return sum(ways(k + 1, nxt) for _, nxt in _rows_from(state))

    return ways(0, (0,) * n)


def _automaton_enumerate(n: int, cls: SymmetryClass) -> Iterator[Matrix]:
    levels, accept, middle = _automaton(n, cls)

    @lru_cache(maxsize=None)
    def alive(k, state) -> bool:
        if k == levels:
            if middle is not None:
                return any(middle(state, r) for r, _ in _rows_from(state))
            return accept(state)
        return any(alive(k + 1, nxt) for _, nxt in _rows_from(state))

    def finish(top):
        rows = list(top)
        if cls is SymmetryClass.UNRESTRICTED:
            return tuple(rows)
        bottom = [tuple(reversed(r)) for r in reversed(top)]
        return tuple(rows + bottom)

    def rec(k, state, top):
        if k == levels:
            if middle is not None:
                for r, _ in _rows_from(state):
                    if middle(state, r):
                        yield _with_middle(top, r)
            else:
                yield finish(top)
            return
        for r, nxt in _rows_from(state):
            if alive(k + 1, nxt):
                top.append(r)
                yield from rec(k + 1, nxt, top)
                top.pop()

    def _with_middle(top, mid):
        bottom = [tuple(reversed(r)) for r in reversed(top)]
        return tuple(list(top) + [mid] + bottom)

    yield from rec(0, (0,) * n, [])


def _automaton_array(n: int, cls: SymmetryClass) -> np.ndarray:
    """Same matrices as ``_automaton_enumerate``, in the same order, as an int8 array."""
    levels, accept, middle = _automaton(n, cls)

    @lru_cache(maxsize=None)
    def tails(k, state) -> np.ndarray:
        # remaining rows k.. for every completion from ``state`` (middle row included)
        if k == levels:
            if middle is not None:
                rows = [r for r, _ in _rows_from(state) if middle(state, r)]
                return np.asarray(rows, dtype=np.int8).reshape(len(rows), 1, n)
            return np.zeros((1 if accept(state) else 0, 0, n), dtype=np.int8)
        parts = []
        for r, nxt in _rows_from(state):
            sub = tails(k + 1, nxt)
            if len(sub):
                head = np.broadcast_to(np.asarray(r, dtype=np.int8), (len(sub), 1, n))
                parts.append(np.concatenate([head, sub], axis=1))
        if not parts:
            return np.zeros((0, levels - k + (middle is not None), n), dtype=np.int8)
        return np.concatenate(parts)

    top = tails(0, (0,) * n)
    if cls is SymmetryClass.UNRESTRICTED:
        return top
    upper = top[:, :levels]
    lower = upper[:, ::-1, ::-1]
    return np.concatenate([top, lower], axis=1)


def asm_array(n: int, cls: SymmetryClass = SymmetryClass.UNRESTRICTED) -> np.ndarray:
    """All class members as an (S, n, n) int8 array, in enumeration order."""
    _check_budget(n, cls)
    if cls in (SymmetryClass.UNRESTRICTED, SymmetryClass.HALF_TURN):
        return _automaton_array(n, cls)
    mats = list(search(n, cls))
    return np.asarray(mats, dtype=np.int8).reshape(len(mats), n, n)


def _sort_key(m):
    # enumeration order: row-major, entries ordered 0 < 1 < -1
    rank = {0: 0, 1: 1, -1: 2}
    return tuple(rank[v] for r in m for v in r)


def enumerate_asms(n: int, cls: SymmetryClass = SymmetryClass.UNRESTRICTED) -> Iterator[Matrix]:
    """Yield every ASM of size ``n`` in class ``cls`` exactly once, in canonical order."""
    _check_budget(n, cls)
    if cls in (SymmetryClass.UNRESTRICTED, SymmetryClass.HALF_TURN):
        # row-automaton order is already row-major with entries tried (0, 1, -1)
        yield from _automaton_enumerate(n, cls)
    else:
        yield from search(n, cls)


def count(n: int, cls: SymmetryClass = SymmetryClass.UNRESTRICTED) -> int:
    """Number of ASMs of size ``n`` in ``cls``.

    Unrestricted and half-turn counts come from a memoized transfer count and
    never materialize matrices; the quarter-turn classes are counted by search.
    """
    if n < 1:
        raise ValueError(f"size must be positive, got {n}")
    if cls in (SymmetryClass.UNRESTRICTED, SymmetryClass.HALF_TURN):
        return _automaton_count(n, cls)
    _check_budget(n, cls)
    return sum(1 for _ in search(n, cls))


def to_json(m) -> dict:
    return {"n": len(m), "rows": [list(r) for r in m]}


def from_json(obj) -> Matrix:
    rows = obj["rows"]
    m = as_matrix(rows)
    if obj.get("n", len(m)) != len(m):
        raise ValueError("declared size does not match rows")
    _shape_check(m)
    return m


QQT_SAMPLES = (  # the two size-6 examples, one per central pattern
    as_matrix([
        [0, 0, 0, 1, 0, 0],
        [0, 0, 1, 0, 0, 0],
        [1, 0, 0, -1, 1, 0],
        [0, 1, -1, 0, 0, 1],
        [0, 0, 0, 1, 0, 0],
        [0, 0, 1, 0, 0, 0],
    ]),
    as_matrix([
        [0, 0, 1, 0, 0, 0],
        [0, 1, -1, 0, 1, 0],
        [0, 0, 1, 0, -1, 1],
        [1, -1, 0, 1, 0, 0],
        [0, 1, 0, -1, 1, 0],
        [0, 0, 0, 1, 0, 0],
    ]),
)
