"""Which cardinalities admit a q^r-divisible point set.

The realizable side comes from explicit constructions, a small database of
sporadic examples and closure under disjoint unions. The excluded side comes
from :mod:`divsets.criteria` and :mod:`divsets.lp`. Everything else is Open.
"""

from __future__ import annotations

import hashlib
import json
import logging
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from importlib import resources
from math import isqrt
from pathlib import Path
from typing import Iterable

from . import criteria, lp
from .criteria import ExclusionCertificate
from .qbase import DivisibilityParams, frobenius_upper_bound, theta

log = logging.getLogger(__name__)

# witness kinds
FLAT = "Flat"
AFFINE = "Affine"
OVOID = "Ovoid"
PROJECTIVE_BASIS = "ProjectiveBasis"
CONE_LIFT_1 = "ConeLift1"
CONE_LIFT_0 = "ConeLift0"
SURGERY_1 = "Surgery1"
SURGERY_2 = "Surgery2"
QT4P1 = "QT4P1"
THREE_Q_CUBED = "ThreeQCubed"
BAER_SURGERY = "BaerSurgery"
DIRECT_SUM = "DirectSum"
SPORADIC = "Sporadic"
EXTERNAL = "External"
COMPLEMENT = "Complement"
ANY_SET = "AnySet"  # level r = 0, every set qualifies
EMPTY = "Empty"

REALIZABLE, EXCLUDED, OPEN = "realizable", "excluded", "open"

SPORADIC_DB_ENV = "DIVSETS_SPORADIC_DB"


@dataclass(frozen=True, eq=False)
class RealizabilityWitness:
    kind: str
    n: int
    children: tuple["RealizabilityWitness", ...] = ()
    meta: dict = field(default_factory=dict)
    dim: int | None = None  # a dimension the set is known to fit in

    def __repr__(self):
        if self.kind == DIRECT_SUM:
            return "+".join(repr(c) for c in self.children)
        extra = " ".join(f"{k}={v}" for k, v in self.meta.items())
        return f"{self.kind}({self.n}{' ' + extra if extra else ''})"

    def to_dict(self) -> dict:
        d = {"kind": self.kind, "n": self.n}
        if self.children:
            d["children"] = [c.to_dict() for c in self.children]
        if self.meta:
            d["meta"] = dict(self.meta)
        if self.dim is not None:
            d["dim"] = self.dim
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "RealizabilityWitness":
        kids = tuple(cls.from_dict(c) for c in d.get("children", ()))
        return cls(d["kind"], d["n"], kids, dict(d.get("meta", {})), d.get("dim"))

    def __eq__(self, other):
        return isinstance(other, RealizabilityWitness) and self.to_dict() == other.to_dict()

    def __hash__(self):
        return hash(json.dumps(self.to_dict(), sort_keys=True))


def witness_cardinality(w: RealizabilityWitness, params: DivisibilityParams) -> int:
    """Recompute the cardinality a witness claims from its parameters alone."""
    q, r = params.q, params.r
    m = w.meta
    k = w.kind
    if k == FLAT:
        return theta(r + 1, q)
    if k in (AFFINE, SURGERY_1):
        return q ** (r + 1)
    if k == OVOID:
        return q * q + 1
    if k == PROJECTIVE_BASIS:
        return m["v"] + 1
    if k == SURGERY_2:
        return theta(2 * r, q) + m["j"] * ((q - 1) * q**r - theta(r, q))
    if k == QT4P1:
        return q**4 + 1
    if k == THREE_Q_CUBED:
        return m.get("m", 2 * q * q - q - 1) * q + q**3 - 1
    if k == BAER_SURGERY:
        return m["n"]
    if k == CONE_LIFT_1:
        return q * m["base"] + 1
    if k == CONE_LIFT_0:
        return q * m["base"]
    if k == DIRECT_SUM:
        return sum(witness_cardinality(c, params) for c in w.children)
    if k == COMPLEMENT:
        return theta(m["v"], q) - m["base"]
    if k == EMPTY:
        return 0
    if k in (SPORADIC, EXTERNAL, ANY_SET):
        return w.n
    raise ValueError(f"unknown witness kind {k!r}")


# ---------------------------------------------------------------------------
# sporadic database


@dataclass(frozen=True)
class SporadicExample:
    q: int
    r: int
    n: int
    k: int | None
    kind: str  # "realizable" or "externally-excluded"
    provenance: str
    matrix_file: str | None = None


def _default_db_text() -> str:
    return resources.files("divsets").joinpath("data/sporadic.tsv").read_text()


def load_sporadic_db(path: str | os.PathLike | None = None) -> list[SporadicExample]:
    """Read the sporadic TSV; ``$DIVSETS_SPORADIC_DB`` overrides the packaged file."""
    path = path or os.environ.get(SPORADIC_DB_ENV)
    text = Path(path).read_text() if path else _default_db_text()
    out = []
    for lineno, line in enumerate(text.splitlines(), 1):
        if not line.strip() or line.startswith("#"):
            continue
        cols = line.split("\t")
        if len(cols) < 6:
            raise ValueError(f"sporadic db line {lineno}: expected at least 6 columns")
        q, r, n = int(cols[0]), int(cols[1]), int(cols[2])
        k = None if cols[3] in ("", "-") else int(cols[3])
        kind = cols[4]
        if kind not in ("realizable", "externally-excluded"):
            raise ValueError(f"sporadic db line {lineno}: bad kind {kind!r}")
        mfile = cols[6].strip() if len(cols) > 6 and cols[6].strip() else None
        out.append(SporadicExample(q, r, n, k, kind, cols[5], mfile))
    return out


def db_digest(path: str | os.PathLike | None = None) -> str:
    path = path or os.environ.get(SPORADIC_DB_ENV)
    text = Path(path).read_text() if path else _default_db_text()
    return hashlib.sha256(text.encode()).hexdigest()[:16]


def matrix_path(name: str):
    return resources.files("divsets").joinpath("data/matrices", name)


# ---------------------------------------------------------------------------
# generators


def _min_dim(n: int, q: int) -> int:
    """Smallest v whose projective space PG(v-1, q) holds n points."""
    v = 0
    while theta(v, q) < n:
        v += 1
    return v


def base_generators(
    params: DivisibilityParams,
    limit: int,
    lower_realizable: Iterable[int] | None = None,
    lower_witness=None,
    sporadic: Iterable[SporadicExample] = (),
) -> list[tuple[int, RealizabilityWitness]]:
    """Constructions of cardinality at most ``limit``, one witness per cardinality.

    ``lower_realizable`` lists realizable cardinalities one level down; they
    feed the two cone lifts. At r = 1 every cardinality qualifies.
    """
    q, r = params.q, params.r
    if r < 1:
        raise ValueError("generators are defined for r >= 1")
    cands: list[RealizabilityWitness] = [
        RealizabilityWitness(FLAT, theta(r + 1, q), dim=r + 1),
        RealizabilityWitness(AFFINE, q ** (r + 1), dim=r + 2),
    ]
    if r == 1 and q >= 3:
        cands.append(RealizabilityWitness(OVOID, q * q + 1, dim=4))
    if r == 1 and q == 2:
        cands += [RealizabilityWitness(PROJECTIVE_BASIS, v + 1, meta={"v": v}, dim=v) for v in (2, 3, 4)]
    step = (q - 1) * q**r - theta(r, q)
    for j in range(q**r + 2):
        cands.append(RealizabilityWitness(SURGERY_2, theta(2 * r, q) + j * step, meta={"j": j}))
    if r == 2:
        cands.append(RealizabilityWitness(QT4P1, q**4 + 1, dim=3 + 2 * q))
    # m*q + q^3 - 1 from a q-divisible m-set with m = -q-1 mod q^2; m = 2q^2 - q - 1 gives 3q^3 - q^2 - q - 1
    if r == 2:
        for m in sorted(lower_realizable or ()):
            if m % (q * q) == (q * q - q - 1) and 0 < m * q + q**3 - 1 <= limit:
                cands.append(RealizabilityWitness(THREE_Q_CUBED, m * q + q**3 - 1, meta={"m": m}))
    if q == 4 and r == 1:
        cands += [RealizabilityWitness(BAER_SURGERY, n, meta={"n": n}) for n in range(21, 25)]
    for ex in sporadic:
        if (ex.q, ex.r) == (q, r) and ex.kind == "realizable":
            meta = {"provenance": ex.provenance}
            if ex.matrix_file:
                meta["matrix"] = ex.matrix_file
            cands.append(RealizabilityWitness(SPORADIC, ex.n, meta=meta, dim=ex.k))
    # cone lifts from one level down
    mod = q**r
    res1 = theta(r, q) % mod
    if r == 1:
        bases = range(1, limit // q + 1)
    else:
        bases = sorted(b for b in (lower_realizable or ()) if 0 < b <= limit // q)
    for b in bases:
        child = None
        if r == 1:
            child = RealizabilityWitness(ANY_SET, b, dim=_min_dim(b, q))
        elif lower_witness is not None:
            child = lower_witness(b)
        cdim = child.dim + 1 if child is not None and child.dim is not None else None
        kids = (child,) if child is not None and r > 1 else ()
        if b % mod == res1 and q * b + 1 <= limit:
            cands.append(RealizabilityWitness(CONE_LIFT_1, q * b + 1, kids, {"base": b}, cdim))
        if b % mod == 0 and q * b <= limit:
            cands.append(RealizabilityWitness(CONE_LIFT_0, q * b, kids, {"base": b}, cdim))
    seen: dict[int, RealizabilityWitness] = {}
    for w in cands:
        if 0 < w.n <= limit and w.n not in seen:
            seen[w.n] = w
    return sorted(seen.items())


# ---------------------------------------------------------------------------
# closure under disjoint unions


@dataclass
class Closure:
    limit: int
    generators: dict[int, RealizabilityWitness]
    last: list[int]  # last[n] = generator used to reach n, 0 for n = 0, -1 if unreachable

    def __contains__(self, n: int) -> bool:
        return 0 <= n <= self.limit and self.last[n] >= 0

    @property
    def members(self) -> list[int]:
        return [n for n in range(self.limit + 1) if self.last[n] >= 0]

    def witness(self, n: int) -> RealizabilityWitness:
        if n not in self:
            raise KeyError(n)
        if n == 0:
            return RealizabilityWitness(EMPTY, 0, dim=0)
        if n in self.generators:
            return self.generators[n]
        parts = []
        while n > 0:
            g = self.last[n]
            parts.append(self.generators[g])
            n -= g
        dims = [p.dim for p in parts]
        dim = sum(dims) if all(d is not None for d in dims) else None
        return RealizabilityWitness(DIRECT_SUM, sum(p.n for p in parts), tuple(parts), dim=dim)


def semigroup_closure(generators, limit: int) -> Closure:
    """All sums of generators up to ``limit``.

    ``generators`` is either plain integers or (n, witness) pairs.
    """
    gens: dict[int, RealizabilityWitness] = {}
    for g in generators:
        n, w = (g, None) if isinstance(g, int) else g
        if n <= 0:
            raise ValueError("generators must be positive")
        if n <= limit and n not in gens:
            gens[n] = w or RealizabilityWitness(SPORADIC, n)
    order = sorted(gens)
    last = [-1] * (limit + 1)
    last[0] = 0
    for n in range(1, limit + 1):
        for g in order:
            if g > n:
                break
            if last[n - g] >= 0:
                last[n] = g
                break
    return Closure(limit, gens, last)


def is_multiset_length(params: DivisibilityParams, n: int) -> bool:
    return multiset_representation(params, n) is not None


def multiset_generators(params: DivisibilityParams) -> list[int]:
    q, r = params.q, params.r
    return [theta(r + 1 - i, q) * q**i for i in range(r + 1)]


def multiset_representation(params: DivisibilityParams, n: int) -> list[int] | None:
    """Coefficients a_i with n = sum a_i [r+1-i]_q q^i, or None."""
    if n < 0:
        return None
    gens = multiset_generators(params)
    c = semigroup_closure(gens, n)
    if n not in c:
        return None
    coeffs = [0] * len(gens)
    while n > 0:
        g = c.last[n]
        coeffs[gens.index(g)] += 1
        n -= g
    return coeffs


# ---------------------------------------------------------------------------
# ledger


@dataclass(frozen=True)
class Entry:
    status: str
    witness: RealizabilityWitness | None = None
    certificate: ExclusionCertificate | None = None
    note: str = ""

    def label(self) -> str:
        if self.witness is not None:
            return self.witness.kind
        if self.certificate is not None:
            return self.certificate.kind
        return "-"

    def detail(self) -> str:
        if self.witness is not None:
            return repr(self.witness)
        if self.certificate is not None:
            return self.certificate.detail()
        return self.note


@dataclass(frozen=True)
class ClassifyOptions:
    use_lp: bool = True
    star: bool = True
    use_reduced: bool = True
    use_five_identity: bool = True
    use_sporadic: bool = True
    use_external: bool = True
    k_cap: int | None = None  # only dimensions k <= k_cap in the LP
    jobs: int = 1
    db_path: str | None = None
    check_soundness: bool = True


@dataclass
class LengthLedger:
    params: DivisibilityParams
    N: int
    entries: dict[int, Entry]
    tail_realizable: bool = False  # every n > N is realizable
    provenance: dict = field(default_factory=dict)

    def status(self, n: int) -> str:
        if n < 0:
            raise ValueError("negative cardinality")
        if n > self.N:
            if self.tail_realizable:
                return REALIZABLE
            raise KeyError(f"n={n} beyond the ledger range {self.N}")
        return self.entries[n].status

    def __getitem__(self, n: int) -> Entry:
        return self.entries[n]

    def with_status(self, status: str) -> list[int]:
        return [n for n in sorted(self.entries) if self.entries[n].status == status]

    @property
    def realizable(self) -> list[int]:
        return self.with_status(REALIZABLE)

    @property
    def excluded(self) -> list[int]:
        return self.with_status(EXCLUDED)

    @property
    def open(self) -> list[int]:
        return self.with_status(OPEN)

    def is_excluded(self, n: int) -> bool:
        """Residual oracle: Open and out-of-range values count as possible."""
        if n < 0:
            return True
        if n > self.N:
            return False
        return self.entries[n].status == EXCLUDED

    def assert_sound(self):
        both = set(self.realizable) & set(self.excluded)
        if both:
            raise AssertionError(f"realizable and excluded at once: {sorted(both)}")


def _any_set_ledger(q: int, N: int) -> LengthLedger:
    p = DivisibilityParams(q, 0)
    entries = {n: Entry(REALIZABLE, RealizabilityWitness(ANY_SET, n, dim=_min_dim(n, q))) for n in range(N + 1)}
    return LengthLedger(p, N, entries, tail_realizable=True)


_CACHE: dict[tuple, LengthLedger] = {}


def clear_cache():
    _CACHE.clear()


def default_limit(params: DivisibilityParams) -> int:
    """Past this bound flats and affine spaces alone cover everything."""
    return frobenius_upper_bound(params)


def classify(params: DivisibilityParams, N: int | None = None, options: ClassifyOptions | None = None) -> LengthLedger:
    """Decide every cardinality 0..N (default: the coin-problem bound)."""
    options = options or ClassifyOptions()
    if params.r == 0:
        return _any_set_ledger(params.q, N or 0)
    bound = default_limit(params)
    N = bound if N is None else N
    key = (params.q, params.r, options)
    hit = _CACHE.get(key)
    if hit is not None and hit.N >= N:
        return _restrict(hit, N, bound)
    ledger = _classify(params, N, options, bound)
    _CACHE[key] = ledger
    return ledger


def _restrict(led: LengthLedger, N: int, bound: int) -> LengthLedger:
    if led.N == N:
        return led
    entries = {n: e for n, e in led.entries.items() if n <= N}
    return LengthLedger(led.params, N, entries, N >= bound, dict(led.provenance))


def _lower_ledger(params: DivisibilityParams, N: int, options: ClassifyOptions) -> LengthLedger:
    low = params.lower()
    if low.r == 0:
        return _any_set_ledger(params.q, N)
    return classify(low, min(N, default_limit(low)), options)


def _classify(params: DivisibilityParams, N: int, options: ClassifyOptions, bound: int) -> LengthLedger:
    q, r = params.q, params.r
    lower_n = max(N - params.delta, N // q, 0)
    lower = _lower_ledger(params, lower_n, options)
    db = load_sporadic_db(options.db_path) if (options.use_sporadic or options.use_external) else []
    spor = [e for e in db if e.kind == "realizable"] if options.use_sporadic else []
    ext = {e.n: e for e in db if e.kind == "externally-excluded" and (e.q, e.r) == (q, r)} if options.use_external else {}

    lower_real = [c for c in range(N // q + 1) if c > lower.N or lower.status(c) == REALIZABLE]

    def lower_witness(c):
        return lower[c].witness if c <= lower.N else None

    gens = base_generators(params, N, lower_real, lower_witness, spor)
    clo = semigroup_closure(gens, N)

    entries: dict[int, Entry] = {}
    pending = []
    for n in range(N + 1):
        if n in clo:
            entries[n] = Entry(REALIZABLE, clo.witness(n))
            if options.check_soundness and n > 0:
                cert = criteria.analytic_cascade(params, n, lower.is_excluded)
                if cert is not None:
                    raise AssertionError(f"{params} n={n}: realizable yet {cert!r}")
            continue
        cert = criteria.analytic_cascade(params, n, lower.is_excluded)
        if cert is not None:
            entries[n] = Entry(EXCLUDED, certificate=cert)
        elif n in ext:
            entries[n] = Entry(EXCLUDED, certificate=criteria.external(params, n, ext[n].provenance))
        else:
            pending.append(n)

    lower_excl = frozenset(c for c in range(lower.N + 1) if lower.is_excluded(c))
    jobs = [(q, r, n, lower_excl, options) for n in pending]
    if options.jobs > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(options.jobs) as ex:
            results = list(ex.map(_decide_hard, jobs, chunksize=1))
    else:
        results = [_decide_hard(j) for j in jobs]
    for n, ent in zip(pending, results):
        entries[n] = ent

    led = LengthLedger(
        params,
        N,
        entries,
        tail_realizable=N >= bound,
        provenance={
            "lower_limit": lower.N,
            "sporadic_db": db_digest(options.db_path) if db else None,
            "options": {k: v for k, v in vars(options).items() if k != "jobs"},
        },
    )
    led.assert_sound()
    return led


def _decide_hard(job) -> Entry:
    """The expensive tail of the cascade for one cardinality."""
    q, r, n, lower_excl, options = job
    params = DivisibilityParams(q, r)
    if options.use_five_identity:
        cert = lp.five_identity_power_check(params, n)
        if cert is not None:
            return Entry(EXCLUDED, certificate=cert)
    if options.use_lp:
        mode = lp.STAR if options.star else lp.PLAIN
        ks = range(1, min(n, options.k_cap) + 1) if options.k_cap else None
        try:
            cert = lp.lp_classify(params, n, mode, lower_excl.__contains__, ks, options.use_reduced)
        except lp.PivotLimit:
            return Entry(OPEN, note="pivot budget exhausted")
        if cert is not None:
            return Entry(EXCLUDED, certificate=cert)
    return Entry(OPEN, note="no criterion applies")


# ---------------------------------------------------------------------------
# derived quantities


@dataclass(frozen=True)
class FrobeniusResult:
    value: int | None
    reason: str = ""
    open_values: tuple[int, ...] = ()


def frobenius_number(ledger: LengthLedger) -> FrobeniusResult:
    """Largest non-realizable cardinality, if the ledger pins it down."""
    bound = default_limit(ledger.params)
    if ledger.N < bound:
        return FrobeniusResult(None, f"ledger stops at {ledger.N} below the bound {bound}")
    bad = [n for n in range(1, bound + 1) if ledger.status(n) != REALIZABLE]
    opens = tuple(n for n in bad if ledger.status(n) == OPEN)
    if not bad:
        return FrobeniusResult(0 if ledger.params.r >= 0 else None)
    if ledger.status(bad[-1]) == OPEN:
        return FrobeniusResult(None, "largest candidate is open", opens)
    return FrobeniusResult(bad[-1], "", opens)


def exclusion_runs(ledger: LengthLedger) -> list[tuple[int, int]]:
    runs = []
    start = None
    for n in range(ledger.N + 1):
        ex = ledger.entries[n].status == EXCLUDED
        if ex and start is None:
            start = n
        if not ex and start is not None:
            runs.append((start, n - 1))
            start = None
    if start is not None:
        runs.append((start, ledger.N))
    return runs


def format_intervals(runs: Iterable[tuple[int, int]]) -> str:
    return ", ".join(f"[{a},{b}]" for a, b in runs)


def exclusion_intervals(ledger: LengthLedger) -> str:
    return format_intervals(exclusion_runs(ledger))


def partial_spread_bound(q: int, v: int, t: int, ledger: LengthLedger | None = None) -> int:
    """Largest m whose hole count [v]_q - m [t]_q survives the q^(t-1) ledger."""
    if not (v > t >= 2):
        raise ValueError("need v > t >= 2")
    params = DivisibilityParams(q, t - 1)
    tv, tt = theta(v, q), theta(t, q)
    m = tv // tt
    if ledger is None:
        ledger = classify(params)
    while m >= 0:
        holes = tv - m * tt
        if holes > ledger.N and not ledger.tail_realizable:
            raise ValueError(f"hole count {holes} outside the ledger range")
        if not ledger.is_excluded(holes):
            return m
        m -= 1
    raise AssertionError("unreachable: zero partial spread always exists")


def drake_freeman_bound(q: int, v: int, t: int) -> int:
    """Upper bound on a partial t-spread in F_q^v for v = kt + r, 0 < r < t."""
    r = v % t
    if r == 0:
        raise ValueError("needs t not dividing v")
    if v <= t:
        raise ValueError("needs v > t")
    D = 1 + 4 * q**t * (q**t - q**r)
    c = 2 * q**t - 2 * q**r + 1
    floor_theta = (isqrt(D) - c) // 2
    # bracket: floor_theta is the floor of (sqrt(D) - c) / 2
    return (q**v - q**r) // (q**t - 1) - floor_theta - 1


# ---------------------------------------------------------------------------
# persistence


def ledger_to_tsv(ledger: LengthLedger) -> str:
    p = ledger.params
    lines = [
        f"# q={p.q} r={p.r} N={ledger.N} tail_realizable={int(ledger.tail_realizable)}",
        "# n\tstatus\tcertificate-or-witness\tdetail",
    ]
    for n in range(ledger.N + 1):
        e = ledger.entries[n]
        lines.append(f"{n}\t{e.status}\t{e.label()}\t{e.detail()}")
    return "\n".join(lines) + "\n"


def ledger_from_tsv(text: str) -> LengthLedger:
    """Statuses and labels only; full certificates live in the JSON mirror."""
    head = text.splitlines()[0].lstrip("# ").split()
    meta = dict(kv.split("=") for kv in head)
    params = DivisibilityParams(int(meta["q"]), int(meta["r"]))
    entries = {}
    for line in text.splitlines():
        if not line or line.startswith("#"):
            continue
        n, status, label, detail = (line.split("\t") + [""] * 4)[:4]
        if status == REALIZABLE:
            entries[int(n)] = Entry(status, RealizabilityWitness(label, int(n)), note=detail)
        else:
            entries[int(n)] = Entry(status, note=f"{label} {detail}".strip())
    return LengthLedger(params, int(meta["N"]), entries, meta["tail_realizable"] == "1")


def ledger_to_json(ledger: LengthLedger) -> str:
    p = ledger.params
    rows = []
    for n in range(ledger.N + 1):
        e = ledger.entries[n]
        row = {"n": n, "status": e.status}
        if e.witness is not None:
            row["witness"] = e.witness.to_dict()
        if e.certificate is not None:
            row["certificate"] = e.certificate.to_dict()
        if e.note:
            row["note"] = e.note
        rows.append(row)
    doc = {
        "q": p.q,
        "r": p.r,
        "N": ledger.N,
        "tail_realizable": ledger.tail_realizable,
        "provenance": ledger.provenance,
        "entries": rows,
    }
    return json.dumps(doc, sort_keys=True, indent=1)


def ledger_from_json(text: str) -> LengthLedger:
    doc = json.loads(text)
    params = DivisibilityParams(doc["q"], doc["r"])
    entries = {}
    for row in doc["entries"]:
        w = RealizabilityWitness.from_dict(row["witness"]) if "witness" in row else None
        c = ExclusionCertificate.from_dict(row["certificate"]) if "certificate" in row else None
        entries[row["n"]] = Entry(row["status"], w, c, row.get("note", ""))
    return LengthLedger(params, doc["N"], entries, doc["tail_realizable"], doc.get("provenance", {}))


def summary(ledger: LengthLedger) -> str:
    lines = [exclusion_intervals(ledger)]
    if ledger.open:
        runs = _runs_of(ledger.open)
        lines.append("open: " + ", ".join(str(a) if a == b else f"[{a},{b}]" for a, b in runs))
    return "\n".join(lines)


def _runs_of(values: list[int]) -> list[tuple[int, int]]:
    runs = []
    for v in values:
        if runs and runs[-1][1] == v - 1:
            runs[-1] = (runs[-1][0], v)
        else:
            runs.append((v, v))
    return runs


# ---------------------------------------------------------------------------
# dimension profile


def dimension_profile(params: DivisibilityParams, v: int, ledger: LengthLedger | None = None) -> set[int]:
    """Cardinalities with a known q^r-divisible witness inside PG(v-1, q).

    Uses generator witnesses that carry a dimension, disjoint unions whose
    dimensions add up to at most v, and complements within PG(v-1, q).
    """
    q = params.q
    top = theta(v, q)
    ledger = ledger or classify(params, top)
    base = {}
    for n in range(1, min(top, ledger.N) + 1):
        e = ledger.entries[n]
        if e.status == REALIZABLE and e.witness is not None:
            for w in _leaves(e.witness):
                if w.dim is not None and w.dim <= v:
                    base.setdefault(w.n, w.dim)
                    base[w.n] = min(base[w.n], w.dim)
    # reach[d] = cardinalities realizable in dimension exactly d by direct sums
    reach: dict[int, set[int]] = {0: {0}}
    for d in range(1, v + 1):
        cur = set()
        for g, gd in base.items():
            if gd <= d:
                for m in reach.get(d - gd, ()):
                    if m + g <= top:
                        cur.add(m + g)
        reach[d] = cur
    found = set().union(*reach.values())
    if v >= params.r + 1:
        found |= {top - n for n in found}
    return found


def _leaves(w: RealizabilityWitness):
    if w.kind == DIRECT_SUM:
        for c in w.children:
            yield from _leaves(c)
    else:
        yield w
