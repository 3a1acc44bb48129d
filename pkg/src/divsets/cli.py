"""Command-line entry point: ``divsets <subcommand> ...``."""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from . import gfcode, lengths
from .lengths import ClassifyOptions
from .macwilliams import WeightDistribution, format_distribution, macwilliams_transform, parse_distribution
from .qbase import DivisibilityParams, frobenius_upper_bound


@dataclass(frozen=True)
class RunConfig:
    command: str
    q: int = 2
    r: int = 1
    N: int | None = None
    mode: str = "lp-star"  # criteria-only | lp | lp-star
    k_cap: int | None = None
    fmt: str = "text"
    output: str | None = None
    db: str | None = None
    jobs: int = 1
    external: bool = True

    def __post_init__(self):
        DivisibilityParams(self.q, self.r)  # validates q
        if self.command == "classify" and self.r < 1:
            raise ValueError("r must be at least 1")
        if self.N is not None and self.N < 1:
            raise ValueError("N must be at least 1")

    def options(self) -> ClassifyOptions:
        return ClassifyOptions(
            use_lp=self.mode != "criteria-only",
            star=self.mode == "lp-star",
            use_five_identity=self.mode != "criteria-only",
            use_external=self.external,
            k_cap=self.k_cap,
            jobs=self.jobs,
            db_path=self.db,
        )


def golden_path(q: int, r: int):
    return resources.files("divsets").joinpath(f"data/golden/q{q}_r{r}.txt")


def render(ledger: lengths.LengthLedger, fmt: str) -> str:
    if fmt == "tsv":
        return lengths.ledger_to_tsv(ledger)
    if fmt == "json":
        return lengths.ledger_to_json(ledger) + "\n"
    return lengths.summary(ledger) + "\n"


def cmd_classify(cfg: RunConfig, expect: str | None = None, out=None) -> int:
    out = out or sys.stdout
    params = DivisibilityParams(cfg.q, cfg.r)
    ledger = lengths.classify(params, cfg.N, cfg.options())
    text = render(ledger, cfg.fmt)
    if cfg.output:
        Path(cfg.output).write_text(text)
        if cfg.fmt != "text":
            out.write(lengths.summary(ledger) + "\n")
    else:
        out.write(text)
    if expect is not None:
        want = (Path(expect).read_text() if expect != "golden" else golden_path(cfg.q, cfg.r).read_text()).strip()
        got = lengths.exclusion_intervals(ledger)
        if got != want:
            out.write(f"MISMATCH\n  expected: {want}\n  got:      {got}\n")
            return 2
        out.write("match\n")
    return 0


def cmd_verify_matrix(path: str, q: int, expected_r: int | None = None, out=None) -> int:
    out = out or sys.stdout
    g = gfcode.parse_matrix(Path(path).read_bytes(), q)
    s = gfcode.columns_to_pointset(g)
    w = gfcode.weight_distribution(g)
    e = gfcode.divisibility_exponent(w, q)
    out.write(f"n={g.n} k={gfcode.rank(g)} projective={s.projective} full_length={s.full_length}\n")
    out.write(f"distribution: {_braced(w)}\n")
    out.write(f"divisibility exponent: {e}\n")
    if expected_r is not None and (e < expected_r or not s.projective or not s.full_length):
        out.write(f"FAIL: expected a projective full-length q^{expected_r}-divisible set\n")
        return 2
    return 0


def _braced(w: WeightDistribution) -> str:
    return " ".join(f"{i}^{{{a}}}" if a > 9 else f"{i}^{a}" for i, a in sorted(w.support.items()))


def cmd_frobenius(q: int, r: int, external: bool = True, out=None) -> int:
    out = out or sys.stdout
    params = DivisibilityParams(q, r)
    led = lengths.classify(params, frobenius_upper_bound(params), ClassifyOptions(use_external=external))
    res = lengths.frobenius_number(led)
    if res.value is None:
        shown = ", ".join(map(str, res.open_values[:20]))
        more = " ..." if len(res.open_values) > 20 else ""
        out.write(f"undetermined (open: {shown}{more})\n")
    else:
        out.write(f"{res.value}\n")
    return 0


def cmd_spread_bound(q: int, v: int, t: int, out=None) -> int:
    out = out or sys.stdout
    m = lengths.partial_spread_bound(q, v, t)
    out.write(f"divisibility bound: {m}\n")
    try:
        out.write(f"Drake-Freeman bound: {lengths.drake_freeman_bound(q, v, t)}\n")
    except ValueError as exc:
        out.write(f"Drake-Freeman bound: n/a ({exc})\n")
    return 0


def cmd_multiset(q: int, r: int, n: int, out=None) -> int:
    out = out or sys.stdout
    params = DivisibilityParams(q, r)
    rep = lengths.multiset_representation(params, n)
    gens = lengths.multiset_generators(params)
    if rep is None:
        out.write("false\n")
        return 1
    terms = " + ".join(f"{a}*{g}" for a, g in zip(rep, gens) if a) or "0"
    out.write(f"true: {n} = {terms}\n")
    return 0


def cmd_macwilliams(path: str, k: int, q: int, n: int | None = None, out=None) -> int:
    out = out or sys.stdout
    counts = parse_distribution(Path(path).read_text())
    n = n if n is not None else max(counts)
    w = WeightDistribution.from_mapping(n, counts, k)
    d = macwilliams_transform(w, k, q)
    out.write(format_distribution(d.support) + "\n")
    if not d.is_genuine:
        out.write(f"not a code distribution: nonintegral at {list(d.nonintegral)}, negative at {list(d.negative)}\n")
        return 1
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="divsets", description="lengths of q^r-divisible point sets")
    sub = ap.add_subparsers(dest="command", required=True)

    c = sub.add_parser("classify", help="decide every cardinality up to --max")
    c.add_argument("--q", type=int, required=True)
    c.add_argument("--r", type=int, required=True)
    c.add_argument("--max", type=int, default=None, help="default: the coin-problem bound")
    c.add_argument("--mode", choices=["criteria-only", "lp", "lp-star"], default="lp-star")
    c.add_argument("--k-cap", type=int, default=None)
    c.add_argument("--format", choices=["text", "tsv", "json"], default="text")
    c.add_argument("--output", "-o")
    c.add_argument("--db", help="sporadic database TSV (overrides the packaged one)")
    c.add_argument("--jobs", type=int, default=1)
    c.add_argument("--no-external", action="store_true", help="ignore externally excluded entries")
    c.add_argument("--expect", help="interval file to compare against, or 'golden'")

    v = sub.add_parser("verify-matrix", help="weight distribution and divisibility of a generator matrix")
    v.add_argument("file")
    v.add_argument("--q", type=int, required=True)
    v.add_argument("--r", type=int, default=None)

    f = sub.add_parser("frobenius")
    f.add_argument("--q", type=int, required=True)
    f.add_argument("--r", type=int, required=True)
    f.add_argument("--no-external", action="store_true")

    s = sub.add_parser("spread-bound")
    s.add_argument("--q", type=int, required=True)
    s.add_argument("--v", type=int, required=True)
    s.add_argument("--t", type=int, required=True)

    m = sub.add_parser("multiset")
    m.add_argument("--q", type=int, required=True)
    m.add_argument("--r", type=int, required=True)
    m.add_argument("n", type=int)

    w = sub.add_parser("macwilliams", help="dual distribution of a file like '0^1 4^7'")
    w.add_argument("file")
    w.add_argument("--q", type=int, required=True)
    w.add_argument("--k", type=int, required=True)
    w.add_argument("--n", type=int, default=None)
    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "classify":
        cfg = RunConfig(
            "classify",
            args.q,
            args.r,
            args.max,
            args.mode,
            args.k_cap,
            args.format,
            args.output,
            args.db,
            args.jobs,
            not args.no_external,
        )
        return cmd_classify(cfg, args.expect)
    if args.command == "verify-matrix":
        return cmd_verify_matrix(args.file, args.q, args.r)
    if args.command == "frobenius":
        return cmd_frobenius(args.q, args.r, not args.no_external)
    if args.command == "spread-bound":
        return cmd_spread_bound(args.q, args.v, args.t)
    if args.command == "multiset":
        return cmd_multiset(args.q, args.r, args.n)
    if args.command == "macwilliams":
        return cmd_macwilliams(args.file, args.k, args.q, args.n)
    return 1


if __name__ == "__main__":
    sys.exit(main())
