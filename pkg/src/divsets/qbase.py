"""Exact q-analog arithmetic and the (q, r) parameter types."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache


def _factor_prime_power(q: int) -> tuple[int, int] | None:
    if q < 2:
        return None
    p = 2
    while p * p <= q:
        if q % p == 0:
            break
        p += 1
    else:
        return q, 1
    e = 0
    while q % p == 0:
        q //= p
        e += 1
    return (p, e) if q == 1 else None


def is_prime_power(q: int) -> bool:
    return _factor_prime_power(q) is not None


@dataclass(frozen=True)
class PrimePower:
    p: int
    e: int

    def __post_init__(self):
        if self.e < 1 or _factor_prime_power(self.p) != (self.p, 1):
            raise ValueError(f"not a prime power: {self.p}^{self.e}")

    @property
    def q(self) -> int:
        return self.p**self.e

    @classmethod
    def from_int(cls, q: int) -> "PrimePower":
        pe = _factor_prime_power(q)
        if pe is None:
            raise ValueError(f"{q} is not a prime power")
        return cls(*pe)

    def __int__(self):
        return self.q


@dataclass(frozen=True)
class DivisibilityParams:
    """The regime q^r: point sets whose hyperplane sizes agree mod ``delta``."""

    q: int
    r: int
    delta: int = field(init=False)

    def __post_init__(self):
        if not is_prime_power(self.q):
            raise ValueError(f"q={self.q} is not a prime power")
        if self.r < 0:
            raise ValueError("r must be nonnegative")
        object.__setattr__(self, "delta", self.q**self.r)

    @property
    def field(self) -> PrimePower:
        return PrimePower.from_int(self.q)

    def lower(self) -> "DivisibilityParams":
        """Parameters for hyperplane sections (one exponent less)."""
        if self.r == 0:
            raise ValueError("r=0 has no lower level")
        return DivisibilityParams(self.q, self.r - 1)

    def __str__(self):
        return f"q={self.q} r={self.r}"


@lru_cache(maxsize=4096)
def gaussian_binomial(v: int, k: int, q: int) -> int:
    """Number of k-dimensional subspaces of F_q^v."""
    if q < 2:
        raise ValueError("q must be at least 2")
    if k < 0 or v < 0:
        raise ValueError("v and k must be nonnegative")
    if k > v:
        return 0
    num = den = 1
    for i in range(k):
        num *= q ** (v - i) - 1
        den *= q ** (k - i) - 1
    return num // den


def theta(v: int, q: int) -> int:
    """Point count of PG(v-1, q), i.e. [v choose 1]_q."""
    return gaussian_binomial(v, 1, q) if v > 0 else 0


def frobenius_upper_bound(params: DivisibilityParams) -> int:
    """Coin-problem bound from flats [r+1]_q and affine spaces q^(r+1)."""
    if params.r < 1:
        raise ValueError("r must be at least 1")
    a = theta(params.r + 1, params.q)
    b = params.q ** (params.r + 1)
    return a * b - a - b
