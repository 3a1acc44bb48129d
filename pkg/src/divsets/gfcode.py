"""Finite fields, generator matrices, weight distributions and hole spectra.

Field elements are the integers ``0..q-1``; the digit ``d`` stands for the
polynomial whose base-``p`` expansion of ``d`` gives its coefficients, reduced
modulo the lexicographically least monic irreducible of degree ``e``.
"""

from __future__ import annotations

import itertools
import warnings
from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .macwilliams import WeightDistribution
from .qbase import PrimePower, theta

DEFAULT_ENUMERATION_CAP = 2**26


class ResourceError(RuntimeError):
    """An exhaustive enumeration would exceed the configured budget."""


class MatrixFormatError(ValueError):
    pass


def _poly_digits(d: int, p: int, e: int) -> list[int]:
    out = []
    for _ in range(e):
        out.append(d % p)
        d //= p
    return out


def _is_irreducible(coeffs: list[int], p: int) -> bool:
    # coeffs: low-to-high, monic of degree e; brute-force root/factor search is
    # enough for the tiny fields used here
    e = len(coeffs) - 1
    if e == 1:
        return True
    for d in range(1, e // 2 + 1):
        for low in itertools.product(range(p), repeat=d):
            divisor = list(low) + [1]
            rem = list(coeffs)
            for shift in range(e - d, -1, -1):
                c = rem[shift + d]
                if c:
                    for i, dc in enumerate(divisor):
                        rem[shift + i] = (rem[shift + i] - c * dc) % p
            if not any(rem[:d]):
                return False
    return True


def least_irreducible(p: int, e: int) -> tuple[int, ...]:
    """Lexicographically least monic irreducible of degree e (low-to-high)."""
    for tail in itertools.product(range(p), repeat=e):
        coeffs = list(reversed(tail)) + [1]
        # lexicographic on (c_{e-1}, ..., c_0)
        if e > 1 and coeffs[0] == 0:
            continue
        if _is_irreducible(coeffs, p):
            return tuple(coeffs)
    raise AssertionError("no irreducible polynomial found")


@dataclass(frozen=True, eq=False)
class FiniteField:
    p: int
    e: int
    modulus: tuple[int, ...]
    add: np.ndarray = field(repr=False)
    mul: np.ndarray = field(repr=False)
    neg: np.ndarray = field(repr=False)
    inv: np.ndarray = field(repr=False)

    @property
    def q(self) -> int:
        return self.p**self.e

    @property
    def prime(self) -> bool:
        return self.e == 1


@lru_cache(maxsize=None)
def finite_field(q: int) -> FiniteField:
    pp = PrimePower.from_int(q)
    p, e = pp.p, pp.e
    modulus = least_irreducible(p, e) if e > 1 else (0, 1)
    digits = [_poly_digits(d, p, e) for d in range(q)]

    def encode(c):
        return sum(ci * p**i for i, ci in enumerate(c))

    add = np.zeros((q, q), dtype=np.int64)
    mul = np.zeros((q, q), dtype=np.int64)
    for a in range(q):
        for b in range(q):
            add[a, b] = encode([(x + y) % p for x, y in zip(digits[a], digits[b])])
            prod = [0] * (2 * e - 1)
            for i, x in enumerate(digits[a]):
                for j, y in enumerate(digits[b]):
                    prod[i + j] = (prod[i + j] + x * y) % p
            for top in range(2 * e - 2, e - 1, -1):
                c = prod[top]
                if c:
                    for i in range(e + 1):
                        prod[top - e + i] = (prod[top - e + i] - c * modulus[i]) % p
            mul[a, b] = encode(prod[:e])
    neg = np.array([int(np.where(add[a] == 0)[0][0]) for a in range(q)])
    inv = np.zeros(q, dtype=np.int64)
    for a in range(1, q):
        inv[a] = int(np.where(mul[a] == 1)[0][0])
    for t in (add, mul, neg, inv):
        t.setflags(write=False)
    return FiniteField(p, e, modulus, add, mul, neg, inv)


@dataclass(frozen=True, eq=False)
class GeneratorMatrix:
    q: int
    entries: np.ndarray  # k x n, field-element indices

    def __post_init__(self):
        if self.entries.ndim != 2:
            raise ValueError("generator matrix must be two-dimensional")
        if self.entries.size and (self.entries.min() < 0 or self.entries.max() >= self.q):
            raise ValueError("entries outside [0, q-1]")

    @property
    def k(self) -> int:
        return self.entries.shape[0]

    @property
    def n(self) -> int:
        return self.entries.shape[1]

    @property
    def field(self) -> FiniteField:
        return finite_field(self.q)

    @classmethod
    def from_rows(cls, rows, q: int) -> "GeneratorMatrix":
        return cls(q, np.array(rows, dtype=np.int64).reshape(len(rows), -1))

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(int(x) for x in self.entries[:, j])


def parse_matrix(text: str | bytes, q: int) -> GeneratorMatrix:
    """Read rows of digits; blank lines and lines starting with ``#`` are skipped."""
    if isinstance(text, bytes):
        text = text.decode("ascii")
    if q > 10:
        raise MatrixFormatError("single-digit format supports q <= 10 only")
    rows = []
    for lineno, line in enumerate(text.splitlines(), 1):
        s = line.strip()
        if not s or s.startswith("#"):
            continue
        s = "".join(s.split())
        if not s.isdigit():
            raise MatrixFormatError(f"line {lineno}: non-digit characters")
        row = [int(c) for c in s]
        bad = [d for d in row if d >= q]
        if bad:
            raise MatrixFormatError(f"line {lineno}: digit {bad[0]} out of range for q={q}")
        rows.append(row)
    if not rows:
        raise MatrixFormatError("empty matrix")
    widths = {len(r) for r in rows}
    if len(widths) != 1:
        raise MatrixFormatError(f"ragged rows (lengths {sorted(widths)})")
    return GeneratorMatrix.from_rows(rows, q)


def normalize(vec, F: FiniteField) -> tuple[int, ...] | None:
    """Scale so the first nonzero coordinate is 1; None for the zero vector."""
    for x in vec:
        if x:
            s = F.inv[x]
            return tuple(int(F.mul[s, y]) for y in vec)
    return None


@dataclass(frozen=True)
class PointSet:
    q: int
    v: int
    points: frozenset[tuple[int, ...]]
    zero_columns: int = 0
    repeated: int = 0

    @property
    def n(self) -> int:
        return len(self.points)

    @property
    def full_length(self) -> bool:
        return self.zero_columns == 0

    @property
    def projective(self) -> bool:
        return self.repeated == 0

    def sorted_points(self) -> list[tuple[int, ...]]:
        return sorted(self.points)


def columns_to_pointset(g: GeneratorMatrix) -> PointSet:
    F = g.field
    seen: Counter = Counter()
    zeros = 0
    for j in range(g.n):
        pt = normalize(g.column(j), F)
        if pt is None:
            zeros += 1
        else:
            seen[pt] += 1
    repeated = sum(c - 1 for c in seen.values())
    return PointSet(g.q, g.k, frozenset(seen), zeros, repeated)


def all_points(v: int, q: int) -> np.ndarray:
    """Canonical representatives of PG(v-1, q), one per row."""
    rows = []
    for lead in range(v):
        for tail in itertools.product(range(q), repeat=v - lead - 1):
            rows.append((0,) * lead + (1,) + tail)
    return np.array(rows, dtype=np.int64).reshape(len(rows), v)


def row_reduce(m: np.ndarray, F: FiniteField) -> np.ndarray:
    """Reduced row echelon form with zero rows dropped."""
    m = m.copy()
    rows, cols = m.shape
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if m[i, c]), None)
        if piv is None:
            continue
        m[[r, piv]] = m[[piv, r]]
        m[r] = F.mul[F.inv[m[r, c]], m[r]]
        for i in range(rows):
            if i != r and m[i, c]:
                f = F.neg[m[i, c]]
                m[i] = F.add[m[i], F.mul[f, m[r]]]
        r += 1
        if r == rows:
            break
    return m[:r]


def rank(g: GeneratorMatrix) -> int:
    return row_reduce(g.entries, g.field).shape[0]


def _gf2_weights(rows: np.ndarray) -> Counter:
    masks = [int("".join(str(int(b)) for b in row), 2) for row in rows]
    counts: Counter = Counter()
    word = 0
    counts[0] += 1
    for i in range(1, 2 ** len(masks)):
        # Gray code: flip the row at the lowest set bit of i
        word ^= masks[(i & -i).bit_length() - 1]
        counts[bin(word).count("1")] += 1
    return counts


def _span_weights(rows: np.ndarray, F: FiniteField, chunk: int = 1 << 16) -> Counter:
    k, n = rows.shape
    q = F.q
    counts: Counter = Counter()
    if F.prime:
        coeff_iter = itertools.product(range(q), repeat=k)
        while True:
            block = np.array(list(itertools.islice(coeff_iter, chunk)), dtype=np.int64)
            if block.size == 0:
                break
            words = (block.reshape(-1, k) @ rows) % q
            w = np.count_nonzero(words, axis=1)
            counts.update(dict(zip(*np.unique(w, return_counts=True))))
        return Counter({int(a): int(b) for a, b in counts.items()})
    # table-driven accumulation for extension fields
    words = np.zeros((1, n), dtype=np.int64)
    for i in range(k):
        scaled = F.mul[np.arange(q)[:, None], rows[i][None, :]]  # q x n
        words = F.add[words[:, None, :], scaled[None, :, :]].reshape(-1, n)
    w = np.count_nonzero(words, axis=1)
    return Counter({int(a): int(b) for a, b in zip(*np.unique(w, return_counts=True))})


def weight_distribution(g: GeneratorMatrix, cap: int = DEFAULT_ENUMERATION_CAP) -> WeightDistribution:
    """Exact weight distribution of the row space of ``g``."""
    F = g.field
    basis = row_reduce(g.entries, F)
    k = basis.shape[0]
    if k < g.k:
        warnings.warn(f"generator matrix has rank {k} < {g.k}; using its row space", stacklevel=2)
    if g.q**k > cap:
        raise ResourceError(f"{g.q}^{k} codewords exceed the enumeration cap {cap}")
    if k == 0:
        counts = {0: 1}
    elif g.q == 2:
        counts = _gf2_weights(basis)
    else:
        counts = _span_weights(basis, F)
    return WeightDistribution.from_mapping(g.n, counts, k)


def _dot_zero_counts(hyper: np.ndarray, pts: np.ndarray, F: FiniteField) -> np.ndarray:
    if F.prime:
        return np.count_nonzero((hyper @ pts.T) % F.q == 0, axis=1)
    acc = np.zeros((hyper.shape[0], pts.shape[0]), dtype=np.int64)
    for c in range(hyper.shape[1]):
        acc = F.add[acc, F.mul[hyper[:, c][:, None], pts[:, c][None, :]]]
    return np.count_nonzero(acc == 0, axis=1)


@dataclass(frozen=True)
class HoleSpectrum:
    """``a[i]`` = number of hyperplanes meeting the set in exactly ``i`` points."""

    n: int
    v: int
    q: int
    a: tuple[int, ...]

    @property
    def support(self) -> dict[int, int]:
        return {i: c for i, c in enumerate(self.a) if c}

    def residues(self, delta: int) -> tuple[int, int]:
        """(u, m) with n = u + m*delta and 0 <= u < delta."""
        return self.n % delta, self.n // delta

    def is_divisible(self, delta: int) -> bool:
        return all((self.n - i) % delta == 0 for i in self.support)


def hole_spectrum(s: PointSet, cap: int = DEFAULT_ENUMERATION_CAP) -> HoleSpectrum:
    F = finite_field(s.q)
    nh = theta(s.v, s.q)
    if nh * max(s.n, 1) > cap:
        raise ResourceError(f"{nh} hyperplanes x {s.n} points exceed the cap {cap}")
    a = [0] * (s.n + 1)
    if s.v < 1:
        return HoleSpectrum(s.n, s.v, s.q, tuple(a))
    hyper = all_points(s.v, s.q)
    if s.n == 0:
        a[0] = nh
        return HoleSpectrum(0, s.v, s.q, tuple(a))
    pts = np.array(s.sorted_points(), dtype=np.int64)
    for start in range(0, nh, 1 << 14):
        counts = _dot_zero_counts(hyper[start : start + (1 << 14)], pts, F)
        for c, m in zip(*np.unique(counts, return_counts=True)):
            a[int(c)] += int(m)
    return HoleSpectrum(s.n, s.v, s.q, tuple(a))


def divisibility_exponent(w: WeightDistribution, q: int) -> int:
    """Largest r with q^r dividing every nonzero weight that occurs."""
    weights = [i for i, a in enumerate(w.A) if a and i > 0]
    if not weights:
        raise ValueError("distribution has no nonzero weights")
    r = 0
    while all(i % q ** (r + 1) == 0 for i in weights):
        r += 1
    return r


def restrict_to_hyperplane(s: PointSet, normal) -> PointSet:
    """Points of ``s`` on the hyperplane x.normal = 0, in coordinates of that hyperplane."""
    F = finite_field(s.q)
    normal = np.asarray(normal, dtype=np.int64)
    pts = [p for p in s.points if _dot(p, normal, F) == 0]
    # on the hyperplane the pivot coordinate is a linear function of the others,
    # so dropping it is an isomorphism onto F_q^(v-1)
    piv = int(np.nonzero(normal)[0][0])
    coords = [tuple(int(p[c]) for c in range(s.v) if c != piv) for p in pts]
    out = {normalize(c, F) for c in coords}
    return PointSet(s.q, s.v - 1, frozenset(out))


def _dot(p, normal, F: FiniteField) -> int:
    acc = 0
    for x, y in zip(p, normal):
        acc = F.add[acc, F.mul[x, y]]
    return int(acc)


def pointset_from_points(points, q: int, v: int | None = None) -> PointSet:
    F = finite_field(q)
    pts = [normalize(p, F) for p in points]
    if any(p is None for p in pts):
        raise ValueError("zero vector is not a point")
    v = v if v is not None else len(pts[0])
    return PointSet(q, v, frozenset(pts), 0, len(pts) - len(set(pts)))


def pointset_matrix(s: PointSet) -> GeneratorMatrix:
    cols = s.sorted_points()
    return GeneratorMatrix(s.q, np.array(cols, dtype=np.int64).T.reshape(s.v, len(cols)))
