"""Linear programming over the MacWilliams identities for q^r-divisible sets.

Formulations
------------
``build_lp_m``
    The first ``m`` identities for one dimension ``k`` with the dual counts
    as explicit variables (A_0 = A'_0 = 1, A'_1 = A'_2 = 0).
``reduced_lp``
    The first four identities with ``q^(k-3)`` and ``q^(k-3) A'_3`` relaxed to
    independent variables and a shift ``z`` measuring how negative the
    cheapest solution has to be. No sweep over ``k`` is needed.
``lp_infinity``
    All identities, with the dual counts eliminated through Krawtchouk
    polynomials. The dimension only enters through ``S = sum A_w = q^k - 1``;
    the feasible ``S`` form an interval, so two or three slices decide every
    ``k`` at once. Rows are added lazily (most of the ``n`` rows are slack).
``five_identity_power_check``
    First five identities with the scale ``x = q^(k-4)`` kept as a variable.
    When the system pins ``x`` to a value that is not a power of ``q`` the
    length is impossible.
"""

from __future__ import annotations

import logging
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Callable, Iterable, Sequence

from gmpy2 import mpq, mpz

from .criteria import LP_INFEASIBLE, Q_POWER, ExclusionCertificate, ResidualOracle
from .qbase import DivisibilityParams
from .simplex import EQ, GE, INFEASIBLE, LE, OPTIMAL, UNBOUNDED, LpOutcome, LpProblem, PivotLimit, check_farkas, solve

log = logging.getLogger(__name__)


def solve_feasibility(p: LpProblem, max_pivots: int = 200000) -> LpOutcome:
    """Feasibility only (any objective on ``p`` is ignored)."""
    q = LpProblem(p.names, p.rows, p.rhs, p.senses, p.free, None, p.row_labels)
    return solve(q, max_pivots)


def check_dual_bound(p: LpProblem, y: Sequence) -> mpq | None:
    """Lower bound on min c.x certified by dual vector ``y``, or None if ``y`` is not dual feasible."""
    if p.objective is None or len(y) != len(p.rows):
        return None
    y = [mpq(v) for v in y]
    for i, s in enumerate(p.senses):
        if (s == LE and y[i] > 0) or (s == GE and y[i] < 0):
            return None
    for j in range(len(p.names)):
        col = sum(y[i] * mpq(p.rows[i][j]) for i in range(len(p.rows)) if p.rows[i][j])
        c = mpq(p.objective[j])
        if j in p.free:
            if col != c:
                return None
        elif col > c:
            return None
    return sum(yi * mpq(b) for yi, b in zip(y, p.rhs))


def grid_weights(params: DivisibilityParams, n: int, forbidden: Iterable[int] = ()) -> list[int]:
    forbidden = set(forbidden)
    d = params.delta
    stray = sorted(w for w in forbidden if w % d or not 0 < w <= n)
    if stray:
        warnings.warn(f"ignoring forbidden weights off the grid: {stray}", stacklevel=3)
    return [i * d for i in range(1, n // d + 1) if i * d not in forbidden]


# ---------------------------------------------------------------------------
# LP_m with explicit dual variables


def build_lp_m(params: DivisibilityParams, n: int, k: int, m: int, forbidden: Iterable[int] = ()) -> LpProblem:
    q = params.q
    W = grid_weights(params, n, forbidden)
    duals = list(range(3, n + 1))
    names = [f"A{w}" for w in W] + [f"B{j}" for j in duals]
    rows, rhs, labels = [], [], []
    for nu in range(min(m, n + 1)):
        scale = Fraction(q) ** (k - nu)
        row = [comb(n - w, nu) for w in W]
        # dual side: scale * (C(n, n-nu) B_0 + sum_j C(n-j, n-nu) B_j)
        row += [-scale * comb(n - j, n - nu) if j <= nu else 0 for j in duals]
        rows.append(row)
        rhs.append(scale * comb(n, n - nu) - comb(n, nu))
        labels.append(f"nu{nu}")
    return LpProblem(names, rows, rhs, row_labels=labels)


# ---------------------------------------------------------------------------
# reduced LP


@dataclass
class ReducedLpResult:
    outcome: LpOutcome
    problem: LpProblem

    @property
    def excludes(self) -> bool:
        o = self.outcome
        return o.status == INFEASIBLE or (o.status == OPTIMAL and o.value > 0)


def build_reduced_lp(params: DivisibilityParams, n: int, forbidden: Iterable[int] = ()) -> LpProblem:
    """Variables are shifted by z so that everything is nonnegative."""
    q = params.q
    W = grid_weights(params, n, forbidden)
    names = [f"A{w}" for w in W] + ["x", "y", "z"]
    rows, rhs, labels = [], [], []
    for nu in range(4):
        a = [comb(n - w, nu) for w in W]
        ycoef = q ** (3 - nu) * comb(n, nu)
        xcoef = 1 if nu == 3 else 0
        # sum a_w (A'_w - z) - ycoef (y' - z) - xcoef (x' - z) = -C(n, nu)
        zcoef = -sum(a) + ycoef + xcoef
        rows.append(a + [-xcoef, -ycoef, zcoef])
        rhs.append(-comb(n, nu))
        labels.append(f"nu{nu}")
    obj = [0] * (len(W) + 2) + [1]
    return LpProblem(names, rows, rhs, objective=obj, row_labels=labels)


def reduced_lp(params: DivisibilityParams, n: int, forbidden: Iterable[int] = ()) -> ReducedLpResult:
    p = build_reduced_lp(params, n, forbidden)
    return ReducedLpResult(solve(p), p)


# ---------------------------------------------------------------------------
# star variant


def star_forbidden_weights(params: DivisibilityParams, n: int, residual_excluded: ResidualOracle) -> list[int]:
    """Weights w whose hyperplane section (n - w points) is impossible one level down."""
    d = params.delta
    return [i * d for i in range(1, n // d + 1) if residual_excluded(n - i * d)]


# ---------------------------------------------------------------------------
# LP_infinity via Krawtchouk rows


class KrawtchoukRows:
    """K_j(w) for j = 0..n and a fixed list of weights, computed on demand."""

    def __init__(self, n: int, q: int, weights: Sequence[int]):
        self.n, self.q = n, q
        self.weights = list(weights)
        self._cols: dict[int, list] = {}

    def column(self, w: int) -> list:
        col = self._cols.get(w)
        if col is None:
            col = _kraw_column(self.n, self.q, w)
            self._cols[w] = col
        return col

    def row(self, j: int) -> list:
        return [int(self.column(w)[j]) for w in self.weights]

    def rhs(self, j: int) -> int:
        # sum_w A_w K_j(w) = q^k B_j - K_j(0)
        return -int(self.column(0)[j])


def _kraw_column(n: int, q: int, x: int) -> list:
    out = [mpz(1)]
    if n == 0:
        return out
    out.append(mpz((q - 1) * n - q * x))
    for j in range(1, n):
        nxt = ((q - 1) * (n - j) + j - q * x) * out[j] - (q - 1) * (n - j + 1) * out[j - 1]
        out.append(nxt // (j + 1))
    return out


@dataclass
class SliceResult:
    s: int
    feasible: bool
    rows: list[int]
    farkas: list | None = None
    point: list | None = None


@dataclass
class LpInfinityResult:
    params: DivisibilityParams
    n: int
    forbidden: list[int]
    excluded: bool
    smin: mpq | None = None
    feasible_k: int | None = None
    cuts: list[SliceResult] = field(default_factory=list)
    empty: SliceResult | None = None
    lp_solves: int = 0


class _RowPool:
    """Lazy constraint generation over the rows j = 1..n."""

    def __init__(self, kr: KrawtchoukRows, initial: int = 6, batch: int = 4):
        self.kr = kr
        n = kr.n
        self.active = list(range(1, min(n, initial) + 1))
        self.batch = batch

    def problem(self, s: int | None, objective: list | None) -> LpProblem:
        kr = self.kr
        rows, rhs, senses, labels = [], [], [], []
        for j in self.active:
            rows.append(kr.row(j))
            rhs.append(kr.rhs(j))
            senses.append(EQ if j <= 2 else GE)
            labels.append(f"K{j}")
        if s is not None:
            rows.append([1] * len(kr.weights))
            rhs.append(s)
            senses.append(EQ)
            labels.append("S")
        names = [f"A{w}" for w in kr.weights]
        return LpProblem(names, rows, rhs, senses, objective=objective, row_labels=labels)

    def violated(self, x: Sequence) -> list[int]:
        kr = self.kr
        den = mpz(1)
        for v in x:
            den = den * mpq(v).denominator // _gcd(den, mpq(v).denominator)
        a = [mpz(mpq(v) * den) for v in x]
        support = [(w, av) for w, av in zip(kr.weights, a) if av]
        active = set(self.active)
        out = []
        cols = [(kr.column(w), av) for w, av in support]
        base = kr.column(0)
        for j in range(3, kr.n + 1):
            if j in active:
                continue
            tot = den * base[j]
            for col, av in cols:
                tot += av * col[j]
            if tot < 0:
                out.append(j)
                if len(out) >= self.batch:
                    break
        return out


def _gcd(a, b):
    from gmpy2 import gcd

    return gcd(a, b)


def _solve_with_generation(pool: _RowPool, s, objective, max_rounds, counter):
    while True:
        p = pool.problem(s, objective)
        out = solve(p)
        counter[0] += 1
        if out.status == INFEASIBLE:
            return out, p
        if out.status == UNBOUNDED:
            return out, p
        extra = pool.violated(out.x)
        if not extra:
            return out, p
        pool.active = sorted(set(pool.active) | set(extra))
        max_rounds -= 1
        if max_rounds <= 0:
            raise PivotLimit("row generation did not converge")


def lp_infinity(
    params: DivisibilityParams,
    n: int,
    forbidden: Iterable[int] = (),
    k_range: Iterable[int] | None = None,
    max_rounds: int = 400,
) -> LpInfinityResult:
    """Decide LP_infinity for every k in ``k_range`` (default 1..n) at once."""
    q = params.q
    forbidden = sorted(set(forbidden))
    W = grid_weights(params, n, forbidden)
    ks = sorted(set(k_range)) if k_range is not None else list(range(1, n + 1))
    targets = [(k, q**k - 1) for k in ks]
    res = LpInfinityResult(params, n, forbidden, excluded=False)
    kr = KrawtchoukRows(n, q, W)
    pool = _RowPool(kr)
    counter = [0]
    if not W:
        # only the zero word: all identities fix S = 0, impossible for k >= 1
        res.excluded = all(s != 0 for _, s in targets)
        res.smin = mpq(0)
        return res
    obj = [1] * len(W)
    out, p = _solve_with_generation(pool, None, obj, max_rounds, counter)
    if out.status == INFEASIBLE:
        res.excluded = True
        res.empty = SliceResult(None, False, list(pool.active), [Fraction(int(v.numerator), int(v.denominator)) for v in out.farkas])
        res.lp_solves = counter[0]
        return res
    smin = out.value
    res.smin = smin
    below = [(k, s) for k, s in targets if s < smin]
    above = [(k, s) for k, s in targets if s >= smin]
    if below:
        k, s = below[-1]
        sl = _slice(pool, s, max_rounds, counter)
        if sl.feasible:  # cannot happen: s < min S
            raise AssertionError("slice below the minimum is feasible")
        res.cuts.append(sl)
    if above:
        k, s = above[0]
        sl = _slice(pool, s, max_rounds, counter)
        if sl.feasible:
            res.feasible_k = k
            res.lp_solves = counter[0]
            return res
        res.cuts.append(sl)
    res.excluded = True
    res.lp_solves = counter[0]
    return res


def _slice(pool: _RowPool, s: int, max_rounds, counter) -> SliceResult:
    out, p = _solve_with_generation(pool, s, None, max_rounds, counter)
    if out.status == INFEASIBLE:
        farkas = [Fraction(int(v.numerator), int(v.denominator)) for v in out.farkas]
        return SliceResult(s, False, [j for j in pool.active], farkas)
    return SliceResult(s, True, list(pool.active), point=out.x)


def _slice_problem(params, n, forbidden, rows, s) -> LpProblem:
    W = grid_weights(params, n, forbidden)
    kr = KrawtchoukRows(n, params.q, W)
    pool = _RowPool(kr)
    pool.active = list(rows)
    return pool.problem(s, None)


def replay_lp_infinity(cert: ExclusionCertificate) -> bool:
    d = cert.data
    p, n = cert.params, cert.n
    forbidden = d.get("forbidden", [])
    ks = d.get("k_range") or list(range(1, n + 1))
    if d.get("empty"):
        e = d["empty"]
        return check_farkas(_slice_problem(p, n, forbidden, e["rows"], None), e["farkas"])
    lo, hi = None, None
    for cut in d["cuts"]:
        prob = _slice_problem(p, n, forbidden, cut["rows"], cut["s"])
        y = cut["farkas"]
        if not check_farkas(prob, y):
            return False
        ys = Fraction(y[-1])
        if ys > 0:  # certifies S < s
            hi = cut["s"] if hi is None else min(hi, cut["s"])
        elif ys < 0:  # certifies S > s
            lo = cut["s"] if lo is None else max(lo, cut["s"])
        else:
            return True  # the rows alone are infeasible
    q = p.q
    for k in ks:
        s = q**k - 1
        if (lo is None or s > lo) and (hi is None or s < hi):
            return False
    return True


# ---------------------------------------------------------------------------
# five identities with the scale pinned


@dataclass
class FiveIdentityResult:
    names: list[str]
    forced_zero: list[str]
    combination: list | None  # nonnegative combination showing the forced zeros
    solution: dict | None
    x: Fraction | None
    status: str


def build_five_identity_system(params: DivisibilityParams, n: int) -> LpProblem:
    """Variables A_w (grid), x = q^(k-4), y = x B_3, z = x B_4; all nonnegative."""
    q = params.q
    W = grid_weights(params, n)
    names = [f"A{w}" for w in W] + ["x", "y", "z"]
    rows, rhs = [], []
    for nu in range(5):
        row = [comb(n - w, nu) for w in W]
        xc = q ** (4 - nu) * comb(n, nu)
        yc = {3: q, 4: n - 3}.get(nu, 0)
        zc = 1 if nu == 4 else 0
        rows.append(row + [-xc, -yc, -zc])
        rhs.append(-comb(n, nu))
    return LpProblem(names, rows, rhs, row_labels=[f"nu{nu}" for nu in range(5)])


def _is_power(x: Fraction, q: int) -> bool:
    if x <= 0:
        return False
    num, den = x.numerator, x.denominator
    if den != 1 and num != 1:
        return False
    v = den if num == 1 else num
    while v % q == 0:
        v //= q
    return v == 1


def five_identity_analysis(params: DivisibilityParams, n: int) -> FiveIdentityResult:
    p = build_five_identity_system(params, n)
    names = p.names
    nv = len(names)
    forced = []
    for j in range(nv):
        obj = [0] * nv
        obj[j] = -1
        out = solve(LpProblem(p.names, p.rows, p.rhs, objective=obj))
        if out.status == INFEASIBLE:
            return FiveIdentityResult(names, [], None, None, None, "infeasible")
        if out.status == OPTIMAL and out.value == 0:
            forced.append(j)
    combo = None
    if forced:
        obj = [-1 if j in forced else 0 for j in range(nv)]
        out = solve(LpProblem(p.names, p.rows, p.rhs, objective=obj))
        # dual y: y.A <= c, y.b = 0; so -y gives a combination with coefficients >= 1 on forced
        combo = [Fraction(int((-v).numerator), int((-v).denominator)) for v in out.duals]
    free_idx = [j for j in range(nv) if j not in forced]
    sol = _unique_solution(p, free_idx)
    if sol is None:
        return FiveIdentityResult(names, [names[j] for j in forced], combo, None, None, "underdetermined")
    full = {names[j]: Fraction(0) for j in forced}
    full.update({names[j]: v for j, v in zip(free_idx, sol)})
    return FiveIdentityResult(names, [names[j] for j in forced], combo, full, full["x"], "unique")


def _unique_solution(p: LpProblem, cols: list[int]) -> list[Fraction] | None:
    """Exact solve restricted to ``cols``; None unless the solution is unique."""
    M = [[Fraction(p.rows[i][j]) for j in cols] + [Fraction(p.rhs[i])] for i in range(len(p.rows))]
    ncol = len(cols)
    piv_cols = []
    r = 0
    for c in range(ncol):
        piv = next((i for i in range(r, len(M)) if M[i][c] != 0), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        pv = M[r][c]
        M[r] = [a / pv for a in M[r]]
        for i in range(len(M)):
            if i != r and M[i][c] != 0:
                f = M[i][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[r])]
        piv_cols.append(c)
        r += 1
    if any(all(a == 0 for a in row[:-1]) and row[-1] != 0 for row in M):
        return None
    if len(piv_cols) < ncol:
        return None
    return [M[i][-1] for i in range(ncol)]


def five_identity_power_check(params: DivisibilityParams, n: int) -> ExclusionCertificate | None:
    res = five_identity_analysis(params, n)
    if res.status != "unique" or _is_power(res.x, params.q):
        return None
    sol = {k: v for k, v in res.solution.items() if v}
    return ExclusionCertificate(
        Q_POWER,
        params,
        n,
        {"x": res.x, "solution": sol, "forced_zero": res.forced_zero, "combination": res.combination},
    )


def replay_five_identity(cert: ExclusionCertificate) -> bool:
    d = cert.data
    p = build_five_identity_system(cert.params, cert.n)
    names = p.names
    if sorted(set(d["solution"]) | set(d["forced_zero"])) != sorted(names):
        return False
    y = [Fraction(v) for v in d["combination"]] if d["combination"] is not None else [Fraction(0)] * len(p.rows)
    # the combination has zero right-hand side and nonnegative coefficients,
    # strictly positive on every forced variable
    if sum(yi * b for yi, b in zip(y, p.rhs)) != 0:
        return False
    for j, nm in enumerate(names):
        c = sum(yi * p.rows[i][j] for i, yi in enumerate(y))
        if c < 0 or (nm in d["forced_zero"] and c <= 0):
            return False
    free_idx = [j for j, nm in enumerate(names) if nm not in d["forced_zero"]]
    sol = _unique_solution(p, free_idx)
    if sol is None:
        return False
    got = {names[j]: v for j, v in zip(free_idx, sol)}
    if any(got[k] != Fraction(v) for k, v in d["solution"].items()):
        return False
    return got["x"] == Fraction(d["x"]) and not _is_power(got["x"], cert.params.q)


# ---------------------------------------------------------------------------
# classification entry point


PLAIN, STAR = "plain", "star"


def lp_classify(
    params: DivisibilityParams,
    n: int,
    mode: str = STAR,
    residual_excluded: ResidualOracle | None = None,
    k_range: Iterable[int] | None = None,
    use_reduced: bool = True,
) -> ExclusionCertificate | None:
    """Reduced LP first, then LP_infinity over every k; None when a k survives."""
    if mode == STAR:
        if residual_excluded is None:
            raise ValueError("star mode needs a residual oracle")
        forbidden = star_forbidden_weights(params, n, residual_excluded)
    else:
        forbidden = []
    if use_reduced:
        red = reduced_lp(params, n, forbidden)
        if red.excludes:
            o = red.outcome
            data = {"formulation": "reduced", "forbidden": forbidden, "mode": mode}
            if o.status == INFEASIBLE:
                data["farkas"] = [_frac(v) for v in o.farkas]
            else:
                data["bound"] = _frac(o.value)
                data["duals"] = [_frac(v) for v in o.duals]
            return ExclusionCertificate(LP_INFEASIBLE, params, n, data)
    ks = sorted(set(k_range)) if k_range is not None else None
    res = lp_infinity(params, n, forbidden, ks)
    if not res.excluded:
        return None
    data = {"formulation": "lp_infinity", "forbidden": forbidden, "mode": mode}
    if ks is not None:
        data["k_range"] = ks
    if res.empty is not None:
        data["empty"] = {"rows": res.empty.rows, "farkas": res.empty.farkas}
    else:
        data["cuts"] = [{"s": c.s, "rows": c.rows, "farkas": c.farkas} for c in res.cuts]
    return ExclusionCertificate(LP_INFEASIBLE, params, n, data)


def lp_classify_per_k(
    params: DivisibilityParams, n: int, forbidden: Iterable[int] = (), k_range: Iterable[int] | None = None
) -> tuple[bool, dict[int, LpOutcome]]:
    """Reference path: LP_infinity with explicit dual variables, one LP per k."""
    outcomes = {}
    for k in k_range if k_range is not None else range(1, n + 1):
        out = solve_feasibility(build_lp_m(params, n, k, n + 1, forbidden))
        outcomes[k] = out
        if out.feasible:
            return False, outcomes
    return True, outcomes


def _frac(v) -> Fraction:
    v = mpq(v)
    return Fraction(int(v.numerator), int(v.denominator))


def replay_certificate(cert: ExclusionCertificate) -> bool:
    if cert.kind == Q_POWER:
        return replay_five_identity(cert)
    if cert.kind != LP_INFEASIBLE:
        return False
    d = cert.data
    if d["formulation"] == "reduced":
        p = build_reduced_lp(cert.params, cert.n, d["forbidden"])
        if "farkas" in d:
            return check_farkas(LpProblem(p.names, p.rows, p.rhs, p.senses), d["farkas"])
        bound = check_dual_bound(p, d["duals"])
        return bound is not None and bound > 0 and bound == mpq(d["bound"].numerator, d["bound"].denominator)
    if d["formulation"] == "lp_infinity":
        return replay_lp_infinity(cert)
    return False
