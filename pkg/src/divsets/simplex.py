"""Exact two-phase simplex over the rationals with Bland's rule.

Rows may be ``=``, ``<=`` or ``>=``; variables are nonnegative unless listed
as free. Infeasibility is reported with a Farkas vector ``y`` over the
original rows, checkable by :func:`check_farkas`:

* ``y . A_j <= 0`` for every nonnegative column, ``= 0`` for free columns,
* ``y_i <= 0`` on ``<=`` rows and ``y_i >= 0`` on ``>=`` rows,
* ``y . b > 0``.

Any ``x`` satisfying the rows would give ``0 >= (y.A) x`` (with the sign
rules) ``>= y.b > 0``, so the system has no solution.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from gmpy2 import mpq

EQ, LE, GE = "=", "<=", ">="


@dataclass
class LpProblem:
    names: list[str]
    rows: list[list]  # dense coefficient rows, exact numbers
    rhs: list
    senses: list[str] = None
    free: frozenset[int] = frozenset()
    objective: list | None = None  # minimized when present
    row_labels: list[str] | None = None

    def __post_init__(self):
        if self.senses is None:
            self.senses = [EQ] * len(self.rows)
        if not (len(self.rows) == len(self.rhs) == len(self.senses)):
            raise ValueError("rows, rhs and senses must have equal length")
        for row in self.rows:
            if len(row) != len(self.names):
                raise ValueError("row width does not match the variable count")
        for s in self.senses:
            if s not in (EQ, LE, GE):
                raise ValueError(f"bad sense {s!r}")
        if self.row_labels is None:
            self.row_labels = [f"r{i}" for i in range(len(self.rows))]

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), len(self.names)

    def residuals(self, x: Sequence) -> list:
        return [sum(mpq(a) * mpq(v) for a, v in zip(row, x)) - mpq(b) for row, b in zip(self.rows, self.rhs)]

    def is_feasible_point(self, x: Sequence) -> bool:
        for j, v in enumerate(x):
            if j not in self.free and v < 0:
                return False
        for res, s in zip(self.residuals(x), self.senses):
            if (s == EQ and res != 0) or (s == LE and res > 0) or (s == GE and res < 0):
                return False
        return True

    def dump(self) -> str:
        """Plain-text listing of the problem, one constraint per line."""
        lines = []
        if self.objective is not None:
            lines.append("minimize " + _linear(self.objective, self.names))
        for lab, row, s, b in zip(self.row_labels, self.rows, self.senses, self.rhs):
            lines.append(f"{lab}: {_linear(row, self.names)} {s} {b}")
        nonneg = [nm for j, nm in enumerate(self.names) if j not in self.free]
        if nonneg:
            lines.append("nonneg: " + " ".join(nonneg))
        return "\n".join(lines)


def _linear(coeffs, names) -> str:
    terms = [f"{c}*{nm}" for c, nm in zip(coeffs, names) if c]
    return " + ".join(terms) if terms else "0"


INFEASIBLE, OPTIMAL, UNBOUNDED = "infeasible", "optimal", "unbounded"


@dataclass
class LpOutcome:
    status: str
    x: list | None = None
    value: object = None
    farkas: list | None = None
    duals: list | None = None
    pivots: int = 0
    trace: list = field(default_factory=list, repr=False)

    @property
    def feasible(self) -> bool:
        return self.status != INFEASIBLE


def check_farkas(p: LpProblem, y: Sequence) -> bool:
    """Exact replay of an infeasibility certificate."""
    if len(y) != len(p.rows):
        return False
    y = [mpq(v) for v in y]
    for i, s in enumerate(p.senses):
        if (s == LE and y[i] > 0) or (s == GE and y[i] < 0):
            return False
    for j in range(len(p.names)):
        col = sum(y[i] * mpq(p.rows[i][j]) for i in range(len(p.rows)) if p.rows[i][j])
        if j in p.free:
            if col != 0:
                return False
        elif col > 0:
            return False
    return sum(yi * mpq(b) for yi, b in zip(y, p.rhs)) > 0


class _Tableau:
    """Dense tableau for min c.x, Ax = b >= 0, x >= 0 with artificial basis."""

    def __init__(self, A, b, n_struct):
        self.m = len(A)
        self.n = n_struct
        width = n_struct + self.m
        self.T = []
        for i, (row, bi) in enumerate(zip(A, b)):
            art = [mpq(0)] * self.m
            art[i] = mpq(1)
            self.T.append(list(row) + art + [bi])
        self.basis = [n_struct + i for i in range(self.m)]
        self.width = width
        self.pivots = 0

    def pivot(self, r, c):
        T = self.T
        prow = T[r]
        pv = prow[c]
        if pv != 1:
            inv = 1 / pv
            prow = [a * inv if a else a for a in prow]
            T[r] = prow
        nz = [j for j, a in enumerate(prow) if a]
        for i in range(self.m):
            if i != r:
                f = T[i][c]
                if f:
                    row = T[i]
                    for j in nz:
                        row[j] -= f * prow[j]
        self.basis[r] = c
        self.pivots += 1

    def reduced_costs(self, cost):
        # cost has length width; rc_j = c_j - c_B B^-1 A_j
        rc = list(cost) + [mpq(0)]
        for i, bv in enumerate(self.basis):
            cb = cost[bv]
            if cb:
                row = self.T[i]
                for j in range(self.width + 1):
                    if row[j]:
                        rc[j] -= cb * row[j]
        return rc

    def run(self, cost, allowed, max_pivots):
        """Bland's rule on columns in ``allowed``; returns OPTIMAL or UNBOUNDED."""
        rc = self.reduced_costs(cost)
        while True:
            if self.pivots >= max_pivots:
                raise PivotLimit(self.pivots)
            enter = next((j for j in allowed if rc[j] < 0), None)
            if enter is None:
                return OPTIMAL, rc
            best = None
            for i in range(self.m):
                a = self.T[i][enter]
                if a > 0:
                    ratio = self.T[i][-1] / a
                    key = (ratio, self.basis[i])
                    if best is None or key < best[0]:
                        best = (key, i)
            if best is None:
                return UNBOUNDED, (rc, enter)
            r = best[1]
            self.pivot(r, enter)
            # update reduced costs with the new pivot row
            f = rc[enter]
            prow = self.T[r]
            for j in range(self.width + 1):
                if prow[j]:
                    rc[j] -= f * prow[j]


class PivotLimit(RuntimeError):
    pass


def _standardize(p: LpProblem):
    """Columns: originals (free split into +/-), then slacks. Returns A, b, flips, colmap."""
    m = len(p.rows)
    cols = []  # (original index, sign) or ("slack", row)
    for j in range(len(p.names)):
        cols.append((j, 1))
        if j in p.free:
            cols.append((j, -1))
    slack_rows = [i for i, s in enumerate(p.senses) if s != EQ]
    for i in slack_rows:
        cols.append(("slack", i))
    A = []
    b = []
    flips = []
    for i in range(m):
        row = []
        for c in cols:
            if c[0] == "slack":
                if c[1] == i:
                    row.append(mpq(1) if p.senses[i] == LE else mpq(-1))
                else:
                    row.append(mpq(0))
            else:
                row.append(mpq(p.rows[i][c[0]]) * c[1])
        bi = mpq(p.rhs[i])
        if bi < 0:
            row = [-a for a in row]
            bi = -bi
            flips.append(True)
        else:
            flips.append(False)
        A.append(row)
        b.append(bi)
    return A, b, flips, cols


def solve(p: LpProblem, max_pivots: int = 200000) -> LpOutcome:
    """Exact phase-1/phase-2 simplex. Deterministic given the input order."""
    A, b, flips, cols = _standardize(p)
    m, N = len(A), len(cols)
    if m == 0:
        x = [mpq(0)] * len(p.names)
        if p.objective is not None and any(
            (c < 0 and j not in p.free) or (c != 0 and j in p.free) for j, c in enumerate(p.objective)
        ):
            return LpOutcome(UNBOUNDED, x)
        return LpOutcome(OPTIMAL, x, mpq(0), duals=[])
    tab = _Tableau(A, b, N)
    phase1 = [mpq(0)] * N + [mpq(1)] * m
    _, rc = tab.run(phase1, range(N), max_pivots)
    w = -rc[-1]
    if w > 0:
        # duals of phase 1: y_i = c_art_i - rc_art_i
        y = [1 - rc[N + i] for i in range(m)]
        y = [-yi if fl else yi for yi, fl in zip(y, flips)]
        return LpOutcome(INFEASIBLE, farkas=y, pivots=tab.pivots)
    # drive artificials out of the basis
    keep = list(range(m))
    for i in range(m):
        if tab.basis[i] >= N:
            c = next((j for j in range(N) if tab.T[i][j] != 0), None)
            if c is not None:
                tab.pivot(i, c)
    redundant = [i for i in range(m) if tab.basis[i] >= N]
    if redundant:
        keep = [i for i in range(m) if i not in redundant]
    cost = [mpq(0)] * (N + m)
    if p.objective is not None:
        for k, c in enumerate(cols):
            if c[0] != "slack":
                cost[k] = mpq(p.objective[c[0]]) * c[1]
    status, info = tab.run(cost, range(N), max_pivots)
    xs = [mpq(0)] * N
    for i in keep:
        if tab.basis[i] < N:
            xs[tab.basis[i]] = tab.T[i][-1]
    x = [mpq(0)] * len(p.names)
    for k, c in enumerate(cols):
        if c[0] != "slack":
            x[c[0]] += xs[k] * c[1]
    if status == UNBOUNDED:
        return LpOutcome(UNBOUNDED, x, pivots=tab.pivots)
    rc = info
    value = sum(cost[k] * xs[k] for k in range(N))
    # y_i = c_art_i - rc_art_i with c_art = 0 in phase 2
    y = [-rc[N + i] for i in range(m)]
    y = [-yi if fl else yi for yi, fl in zip(y, flips)]
    return LpOutcome(OPTIMAL, x, value, duals=y, pivots=tab.pivots)


def to_fraction(v) -> Fraction:
    v = mpq(v)
    return Fraction(int(v.numerator), int(v.denominator))
