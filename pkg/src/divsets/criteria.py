"""Closed-form exclusion criteria for q^r-divisible point sets.

Every criterion returns an :class:`ExclusionCertificate` (or None). A
certificate stores just enough integers to re-run its arithmetic, see
:func:`replay`.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterator

from .qbase import DivisibilityParams, theta

CARDINALITY_ONE = "CardinalityOne"
INTERVAL_THEOREM = "IntervalTheorem"
FIRST_MOMENT = "FirstMoment"
TAU_NEGATIVE = "TauNegative"
TAU_ZERO = "TauZero"
FOURTH_IDENTITY = "FourthIdentity"
AVERAGE_RESIDUAL = "AverageResidual"
LP_INFEASIBLE = "LpInfeasible"
Q_POWER = "QPowerCertificate"
EXTERNAL = "External"

KINDS = (
    CARDINALITY_ONE,
    INTERVAL_THEOREM,
    FIRST_MOMENT,
    TAU_NEGATIVE,
    TAU_ZERO,
    FOURTH_IDENTITY,
    AVERAGE_RESIDUAL,
    LP_INFEASIBLE,
    Q_POWER,
    EXTERNAL,
)

# c -> True when c is known to be impossible one level down (q^(r-1))
ResidualOracle = Callable[[int], bool]


@dataclass(frozen=True, eq=False)
class ExclusionCertificate:
    kind: str
    params: DivisibilityParams
    n: int
    data: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown certificate kind {self.kind!r}")

    def __eq__(self, other):
        if not isinstance(other, ExclusionCertificate):
            return NotImplemented
        return self.to_dict() == other.to_dict()

    def __repr__(self):
        return f"{self.kind}({self.detail()})"

    def detail(self) -> str:
        parts = []
        for key, val in self.data.items():
            if isinstance(val, (list, tuple)) and len(val) > 8:
                val = f"<{len(val)} entries>"
            parts.append(f"{key}={val}")
        return " ".join(parts)

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "q": self.params.q,
            "r": self.params.r,
            "n": self.n,
            "data": _jsonable(self.data),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "ExclusionCertificate":
        return cls(d["kind"], DivisibilityParams(d["q"], d["r"]), d["n"], _unjson(d["data"]))

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":"))


def _jsonable(x):
    if isinstance(x, Fraction):
        return {"frac": str(x)}
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    return x


def _unjson(x):
    if isinstance(x, dict):
        if set(x) == {"frac"}:
            return Fraction(x["frac"])
        return {k: _unjson(v) for k, v in x.items()}
    if isinstance(x, list):
        return [_unjson(v) for v in x]
    return x


# ---------------------------------------------------------------------------
# individual criteria


def exclude_cardinality_one(params: DivisibilityParams, n: int = 1) -> ExclusionCertificate | None:
    """A single point: every hyperplane would have to contain it."""
    if n != 1:
        return None
    return ExclusionCertificate(CARDINALITY_ONE, params, 1)


def representable(n: int, params: DivisibilityParams) -> tuple[int, int] | None:
    """(a, b) with n = a*[r+1]_q + b*q^(r+1), or None."""
    flat = theta(params.r + 1, params.q)
    aff = params.q ** (params.r + 1)
    for a in range(n // flat + 1):
        if (n - a * flat) % aff == 0:
            return a, (n - a * flat) // aff
    return None


def excluded_intervals_small(params: DivisibilityParams) -> list[tuple[int, int, int, int]]:
    """The (a, b, lo, hi) gaps below r*q^(r+1) left by flats and affine spaces."""
    q, r = params.q, params.r
    th = theta(r + 1, q)
    out = []
    for a in range(r):
        for b in range(q - 1):
            s = a * (q - 1) + b
            lo, hi = s * th + a + 1, (s + 1) * th - 1
            if lo <= hi:
                out.append((a, b, lo, hi))
    return out


def interval_theorem(params: DivisibilityParams, n: int) -> ExclusionCertificate | None:
    q, r = params.q, params.r
    if n < 1 or n > r * q ** (r + 1):
        return None
    for a, b, lo, hi in excluded_intervals_small(params):
        if lo <= n <= hi:
            return ExclusionCertificate(INTERVAL_THEOREM, params, n, {"a": a, "b": b, "lo": lo, "hi": hi})
    return None


def first_moment(params: DivisibilityParams, n: int) -> ExclusionCertificate | None:
    """Only hyperplane types u, u+D, ..., n available: needs (q-1)u < mD."""
    if n < 1:
        return None
    u, m = n % params.delta, n // params.delta
    if (params.q - 1) * u >= m * params.delta and (u, m) != (0, 0):
        return ExclusionCertificate(FIRST_MOMENT, params, n, {"u": u, "m": m})
    return None


def tau(q: int, u: int, delta: int, m: int) -> int:
    return (
        m * (m - q) * delta**2
        + (q * q * u - 2 * m * q * u + m * q + 2 * m * u - q * u - m) * delta
        + (q - 1) ** 2 * u * u
        + (q - 1) * u
    )


def tau_m_range(params: DivisibilityParams) -> range:
    """m values for which tau can be nonpositive."""
    return range(1, (params.q * params.delta + 2) // 4 + 1)


def tau_criterion(params: DivisibilityParams, n: int) -> ExclusionCertificate | None:
    if n < 1:
        return None
    q, d = params.q, params.delta
    for m in tau_m_range(params):
        u = n - m * d
        if u < 0:
            break
        t = tau(q, u, d, m)
        if t < 0:
            return ExclusionCertificate(TAU_NEGATIVE, params, n, {"u": u, "m": m, "tau": t})
        if t == 0 and m >= 2:
            return ExclusionCertificate(TAU_ZERO, params, n, {"u": u, "m": m})
    return None


def fourth_identity_terms(q: int, delta: int, n: int, t: int) -> tuple[int, int]:
    """(h, g2) for the combination of the first four MacWilliams identities."""
    D = delta
    h = (
        D * D * q * q * t * t
        + D * D * q * q * t
        - 2 * D * n * q * q * t
        - D * n * q * q
        + 2 * D * n * q * t
        + n * n * q * q
        + D * n * q
        - 2 * n * n * q
        + n * n
        + n * q
        - n
    )
    g2 = h - (2 * D * q * t + D * q - 2 * n * q + 2 * n + q - 2)
    return h, g2


def fourth_identity(params: DivisibilityParams, n: int, t: int) -> ExclusionCertificate | None:
    if t < 0:
        raise ValueError("t must be nonnegative")
    if n < 1:
        return None
    d = params.delta
    if t * d <= n <= (t + 1) * d:
        return None
    h, g2 = fourth_identity_terms(params.q, d, n, t)
    if h >= 0 and g2 < 0:
        return ExclusionCertificate(FOURTH_IDENTITY, params, n, {"t": t, "h": h, "g2": g2})
    return None


def fourth_identity_t_max(params: DivisibilityParams) -> int:
    q, d = params.q, params.delta
    # floor((qD-2)/4 + 1/D + 1/(4qD)) with exact rationals
    return math.floor(Fraction(q * d - 2, 4) + Fraction(1, d) + Fraction(1, 4 * q * d))


def fourth_identity_sweep(params: DivisibilityParams, n: int) -> ExclusionCertificate | None:
    for t in range(fourth_identity_t_max(params) + 1):
        cert = fourth_identity(params, n, t)
        if cert is not None:
            return cert
    return None


def residual_candidates(params: DivisibilityParams, n: int) -> list[int]:
    """Possible sizes of a smallest hyperplane section of an n-set."""
    q, r = params.q, params.r
    a, b = divmod(n, q ** (r + 1))
    top = (a - 1) * q**r + b
    start = n % q**r
    return list(range(start, top + 1, q**r)) if top >= 0 else []


def average_residual(params: DivisibilityParams, n: int, residual_excluded: ResidualOracle) -> ExclusionCertificate | None:
    if n < 1:
        return None
    cands = residual_candidates(params, n)
    if all(residual_excluded(c) for c in cands):
        return ExclusionCertificate(AVERAGE_RESIDUAL, params, n, {"candidates": cands})
    return None


def external(params: DivisibilityParams, n: int, citation: str) -> ExclusionCertificate:
    return ExclusionCertificate(EXTERNAL, params, n, {"citation": citation})


# ---------------------------------------------------------------------------
# cascade and replay


def analytic_cascade(
    params: DivisibilityParams, n: int, residual_excluded: ResidualOracle | None = None
) -> ExclusionCertificate | None:
    """Cheap criteria in order; the first one that fires is returned."""
    for crit in (exclude_cardinality_one, interval_theorem, first_moment, tau_criterion, fourth_identity_sweep):
        cert = crit(params, n)
        if cert is not None:
            return cert
    if residual_excluded is not None:
        return average_residual(params, n, residual_excluded)
    return None


def iter_criteria(params: DivisibilityParams, n: int) -> Iterator[ExclusionCertificate]:
    """Every analytic certificate that applies (not just the first)."""
    for crit in (exclude_cardinality_one, interval_theorem, first_moment, tau_criterion, fourth_identity_sweep):
        cert = crit(params, n)
        if cert is not None:
            yield cert


def replay(cert: ExclusionCertificate, residual_excluded: ResidualOracle | None = None) -> bool:
    """Recompute a certificate from its stored integers; True iff it still excludes."""
    p, n, d = cert.params, cert.n, cert.data
    k = cert.kind
    if k == CARDINALITY_ONE:
        return n == 1
    if k == INTERVAL_THEOREM:
        th = theta(p.r + 1, p.q)
        a, b = d["a"], d["b"]
        if not (0 <= a <= p.r - 1 and 0 <= b <= p.q - 2):
            return False
        s = a * (p.q - 1) + b
        return s * th + a + 1 <= n <= (s + 1) * th - 1 and n <= p.r * p.q ** (p.r + 1)
    if k == FIRST_MOMENT:
        u, m = d["u"], d["m"]
        return u + m * p.delta == n and u >= 0 and (p.q - 1) * u >= m * p.delta and (u, m) != (0, 0)
    if k in (TAU_NEGATIVE, TAU_ZERO):
        u, m = d["u"], d["m"]
        if u + m * p.delta != n or m < 1 or u < 0:
            return False
        t = tau(p.q, u, p.delta, m)
        return t < 0 if k == TAU_NEGATIVE else (t == 0 and m >= 2)
    if k == FOURTH_IDENTITY:
        c = fourth_identity(p, n, d["t"])
        return c is not None and c.data == d
    if k == AVERAGE_RESIDUAL:
        if list(d["candidates"]) != residual_candidates(p, n):
            return False
        if residual_excluded is None:
            return True  # structure only; the oracle is not available
        return all(residual_excluded(c) for c in d["candidates"])
    if k in (LP_INFEASIBLE, Q_POWER):
        from . import lp

        return lp.replay_certificate(cert)
    if k == EXTERNAL:
        return bool(d.get("citation"))
    return False
