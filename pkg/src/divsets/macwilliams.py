"""Weight distributions, the MacWilliams transform and the standard equations.

Everything here is exact: integers for primal counts, ``Fraction`` for dual
counts (a non-code input may produce non-integral duals, which are flagged
rather than rejected).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Mapping, Sequence

from .qbase import theta


@dataclass(frozen=True)
class WeightDistribution:
    """Counts ``A[i]`` of codewords of weight ``i`` for ``0 <= i <= n``."""

    n: int
    A: tuple[int, ...]
    k: int | None = None

    def __post_init__(self):
        if len(self.A) != self.n + 1:
            raise ValueError(f"need {self.n + 1} coefficients, got {len(self.A)}")
        if any(a < 0 for a in self.A):
            raise ValueError("weight counts must be nonnegative")

    @classmethod
    def from_mapping(cls, n: int, counts: Mapping[int, int], k: int | None = None):
        A = [0] * (n + 1)
        for i, a in counts.items():
            if not 0 <= i <= n:
                raise ValueError(f"weight {i} outside [0, {n}]")
            A[i] += a
        return cls(n, tuple(A), k)

    @property
    def support(self) -> dict[int, int]:
        return {i: a for i, a in enumerate(self.A) if a}

    def total(self) -> int:
        return sum(self.A)

    def __str__(self):
        return format_distribution(self.support)


@dataclass(frozen=True)
class DualDistribution:
    n: int
    A: tuple[Fraction, ...]
    nonintegral: tuple[int, ...] = field(default=())
    negative: tuple[int, ...] = field(default=())

    @property
    def is_genuine(self) -> bool:
        """True when every entry is a nonnegative integer."""
        return not self.nonintegral and not self.negative

    @property
    def support(self) -> dict[int, Fraction]:
        return {i: a for i, a in enumerate(self.A) if a}

    def as_ints(self) -> tuple[int, ...]:
        if self.nonintegral:
            raise ValueError(f"non-integral entries at {self.nonintegral}")
        return tuple(int(a) for a in self.A)


def format_distribution(support: Mapping[int, object]) -> str:
    """Render ``{0: 1, 4: 7}`` as ``0^1 4^7``."""
    return " ".join(f"{i}^{a}" for i, a in sorted(support.items()))


def parse_distribution(text: str) -> dict[int, int]:
    """Inverse of :func:`format_distribution`; accepts ``i^a`` or ``i^{a}``."""
    out: dict[int, int] = {}
    for tok in text.replace(",", " ").split():
        w, _, a = tok.partition("^")
        a = a.strip("{}") or "1"
        out[int(w)] = out.get(int(w), 0) + int(a)
    return out


def krawtchouk(n: int, q: int, k: int, x: int) -> int:
    """K_k(x) = sum_j (-1)^j (q-1)^(k-j) C(x, j) C(n-x, k-j)."""
    if not 0 <= k <= n:
        raise ValueError("need 0 <= k <= n")
    return sum(
        (-1) ** j * (q - 1) ** (k - j) * comb(x, j) * comb(n - x, k - j)
        for j in range(k + 1)
    )


def krawtchouk_column(n: int, q: int, x: int) -> list[int]:
    """[K_0(x), ..., K_n(x)] via the three-term recurrence in the degree."""
    out = [1]
    if n == 0:
        return out
    out.append((q - 1) * n - q * x)
    for j in range(1, n):
        nxt = ((q - 1) * (n - j) + j - q * x) * out[j] - (q - 1) * (n - j + 1) * out[j - 1]
        out.append(nxt // (j + 1))
    return out


def macwilliams_transform(w: WeightDistribution, k: int, q: int) -> DualDistribution:
    """Solve the MacWilliams identities for the dual distribution.

    Identity ``nu`` introduces the dual count of weight ``nu`` with coefficient
    ``q^(k-nu)``, so the system is solved by forward substitution.
    """
    n = w.n
    if w.A[0] != 1:
        raise ValueError("primal distribution must have A_0 = 1")
    dual: list[Fraction] = []
    for nu in range(n + 1):
        lhs = sum(comb(n - j, nu) * w.A[j] for j in range(n - nu + 1))
        scale = Fraction(q) ** (k - nu)
        known = sum(comb(n - j, n - nu) * dual[j] for j in range(nu))
        dual.append(Fraction(lhs) / scale - known)
    nonint = tuple(i for i, a in enumerate(dual) if a.denominator != 1)
    neg = tuple(i for i, a in enumerate(dual) if a < 0)
    return DualDistribution(n, tuple(dual), nonint, neg)


def macwilliams_krawtchouk(w: WeightDistribution, k: int, q: int) -> DualDistribution:
    """Closed-form transform, A_j^perp = q^-k sum_i A_i K_j(i). Cross-check only."""
    n = w.n
    acc = [0] * (n + 1)
    for i, a in enumerate(w.A):
        if a:
            for j, kv in enumerate(krawtchouk_column(n, q, i)):
                acc[j] += a * kv
    size = Fraction(q) ** k
    dual = tuple(Fraction(c) / size for c in acc)
    nonint = tuple(i for i, a in enumerate(dual) if a.denominator != 1)
    neg = tuple(i for i, a in enumerate(dual) if a < 0)
    return DualDistribution(n, dual, nonint, neg)


def dual_as_primal(d: DualDistribution, k: int) -> WeightDistribution:
    return WeightDistribution(d.n, d.as_ints(), k)


@dataclass(frozen=True)
class LinearEquation:
    coeffs: tuple[int, ...]
    rhs: int

    def evaluate(self, values: Sequence[int]) -> int:
        return sum(c * v for c, v in zip(self.coeffs, values))

    def holds(self, values: Sequence[int]) -> bool:
        return self.evaluate(values) == self.rhs


def standard_equations(n: int, v: int, q: int) -> tuple[LinearEquation, LinearEquation, LinearEquation]:
    """Hyperplane counting identities on the spectrum (a_0, ..., a_n)."""
    if n < 0 or v < 2:
        raise ValueError("need n >= 0 and v >= 2")
    idx = range(n + 1)
    return (
        LinearEquation(tuple(1 for _ in idx), theta(v, q)),
        LinearEquation(tuple(i for i in idx), n * theta(v - 1, q)),
        LinearEquation(tuple(comb(i, 2) for i in idx), comb(n, 2) * theta(v - 2, q)),
    )


def spectrum_to_distribution(a: Sequence[int], q: int, k: int | None = None) -> WeightDistribution:
    """A_i = (q-1) a_{n-i} for i > 0, A_0 = 1 (spanning point sets)."""
    n = len(a) - 1
    A = [1] + [(q - 1) * a[n - i] for i in range(1, n + 1)]
    return WeightDistribution(n, tuple(A), k)
