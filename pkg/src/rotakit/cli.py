"""``rotakit`` command line: corpus generation, chain reports, verification and searches.

Bodies are given as polygon files or as built-in shapes: ``regular:M``,
``circle:N`` or ``sector:M:INDEX`` (the INDEX-th corpus sector body of degree M).
Exit status is 0 on success, 1 when an invariant is violated and 2 on bad input.
"""

from __future__ import annotations

import argparse
import logging
import operator
import os
import re
import sys
from collections import Counter
from dataclasses import dataclass
from pathlib import Path

from rotakit.errors import InputError, InvariantViolation, RotakitError
from rotakit.generators import (
    circle_polygon,
    generate_corpus,
    load_entry,
    modified_sector_body,
    random_sector_profile,
    read_manifest,
    regular_polygon,
    tolerance_for,
    write_corpus,
)
from rotakit.geometry import ANALYTIC, GENERATED, ConvexBody, Tolerance, load_body
from rotakit.partitions import chain_report, standard_partition
from rotakit.report import (
    CHAIN_FIELDS,
    SEARCH_FIELDS,
    SUMMARY_FIELDS,
    SWEEP_FIELDS,
    VIOLATION_FIELDS,
    chain_rows,
    format_csv,
    render_svg,
    search_row,
    sweep_rows,
    write_csv,
)
from rotakit.search import chord_partition, search_min_dM, sweep_center_chords
from rotakit.symmetry import detect_symmetry
from rotakit.verify import CHECKS, Violation, verify_body

log = logging.getLogger("rotakit")

COMMANDS = ("gen", "analyze", "chain", "verify", "search2", "searchk", "render")
EXIT_OK, EXIT_VIOLATION, EXIT_INPUT = 0, 1, 2
CORPUS_ENV = "ROTAKIT_CORPUS"


@dataclass
class RunConfig:
    command: str
    inputs: tuple[Path | str, ...] = ()
    output: Path | None = None
    tol: Tolerance | None = None
    seed: int = 42
    n_samples: int = 10_000
    n_angles: int = 360
    ks: tuple[int, ...] = ()
    svg: Path | None = None
    filter: str | None = None
    corpus: Path | None = None

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise ValueError(f"unknown command {self.command!r}")
        self.inputs = tuple(i if _is_builtin(str(i)) else Path(i).resolve() for i in self.inputs)
        for name in ("output", "svg", "corpus"):
            value = getattr(self, name)
            if value is not None:
                setattr(self, name, Path(value).resolve())


# tolerances and body loading

def parse_tol(text: str) -> Tolerance:
    """``analytic``, ``generated`` or ``EPS_GEOM,EPS_DM``."""
    named = {"analytic": ANALYTIC, "generated": GENERATED}
    if text.lower() in named:
        return named[text.lower()]
    try:
        g, d = (float(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad tolerance {text!r}; use analytic, generated or EPS_GEOM,EPS_DM")
    try:
        return Tolerance(g, d)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc))


_BUILTIN = re.compile(r"^(regular|circle|sector):(\d+)(?::(\d+))?$")


def _is_builtin(text: str) -> bool:
    return bool(_BUILTIN.match(text))


def load_input(spec, tol: Tolerance | None, seed: int = 42) -> tuple[str, ConvexBody, Tolerance]:
    """Resolve a body argument to (label, body, tolerance)."""
    m = _BUILTIN.match(str(spec))
    if m:
        kind, a, b = m.group(1), int(m.group(2)), m.group(3)
        if kind == "regular":
            return f"regular_m{a:03d}", regular_polygon(a), tol or ANALYTIC
        if kind == "circle":
            return f"circle_n{a}", circle_polygon(a), tol or ANALYTIC
        index = int(b or 0)
        body = modified_sector_body(random_sector_profile(a, index, seed))
        return f"sector_m{a:02d}_{index:03d}", body, tol or GENERATED
    path = Path(spec)
    if tol is None:
        tol = _tolerance_from_manifest(path)
    if tol is not None:
        return path.stem, load_body(path, tol), tol
    # unknown provenance: exact tolerance first, sampled-body tolerance as fallback
    body = load_body(path, ANALYTIC)
    try:
        detect_symmetry(body, ANALYTIC)
        return path.stem, body, ANALYTIC
    except RotakitError:
        log.info("%s: no symmetry at analytic tolerance, retrying with generated", path.name)
        return path.stem, load_body(path, GENERATED), GENERATED


def _tolerance_from_manifest(path: Path) -> Tolerance | None:
    manifest = path.parent / "manifest.csv"
    if not manifest.exists():
        return None
    for row in read_manifest(path.parent):
        if row["body_id"] == path.stem:
            return tolerance_for(row["generator"])
    return None


# corpus filters

_OPS = {
    "==": operator.eq, "!=": operator.ne, ">=": operator.ge,
    "<=": operator.le, ">": operator.gt, "<": operator.lt,
}
_FILTER_FIELDS = {"chi": int, "kC": int, "generator": str, "body_id": str}
_TERM = re.compile(r"^\s*(\w+)\s*(==|!=|>=|<=|>|<)\s*([\w.-]+)\s*$")


def parse_filter(expr: str | None):
    """Comma-separated conjunction of ``field op value`` over chi, kC, generator, body_id."""
    if not expr:
        return lambda row: True
    terms = []
    for part in expr.split(","):
        m = _TERM.match(part)
        if not m:
            raise InputError(f"bad filter term {part!r}")
        name, op, raw = m.groups()
        if name not in _FILTER_FIELDS:
            raise InputError(f"unknown filter field {name!r}; use one of {sorted(_FILTER_FIELDS)}")
        try:
            value = _FILTER_FIELDS[name](raw)
        except ValueError:
            raise InputError(f"filter value {raw!r} is not valid for {name}") from None
        terms.append((name, _OPS[op], value))
    return lambda row: all(fn(row[name], value) for name, fn, value in terms)


def _corpus_rows(cfg: RunConfig):
    """Yield (row, body-or-exception) in body_id order."""
    keep = parse_filter(cfg.filter)
    if cfg.corpus is not None and not (cfg.corpus / "manifest.csv").exists():
        log.info("no corpus at %s; generating it", cfg.corpus)
        write_corpus(generate_corpus(master_seed=cfg.seed), cfg.corpus)
    if cfg.corpus is None:
        for e in sorted(generate_corpus(master_seed=cfg.seed), key=lambda e: e.body_id):
            row = {"body_id": e.body_id, "generator": e.generator, "parameters": e.params, "kC": e.kC, "chi": e.chi}
            if keep(row):
                yield row, e.body
        return
    for row in sorted(read_manifest(cfg.corpus), key=lambda r: r["body_id"]):
        if not keep(row):
            continue
        try:
            yield row, load_entry(cfg.corpus, row)
        except (RotakitError, OSError) as exc:
            yield row, exc


# commands

def _emit(text: str, path: Path | None) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        path.write_text(text, encoding="utf-8", newline="")


def cmd_gen(cfg: RunConfig) -> int:
    out = cfg.output or cfg.corpus or Path("corpus").resolve()
    entries = generate_corpus(master_seed=cfg.seed)
    write_corpus(entries, out)
    print(f"wrote {len(entries)} bodies to {out}")
    return EXIT_OK


def cmd_analyze(cfg: RunConfig) -> int:
    for spec in cfg.inputs:
        label, body, tol = load_input(spec, cfg.tol, cfg.seed)
        prof = detect_symmetry(body, tol)
        print(
            f"{label}: n={body.n} area={body.area:.12g} r={body.inradius:.12g} R={body.circumradius:.12g} "
            f"kC={prof.max_degree} chi={prof.min_degree} divisors={','.join(map(str, prof.divisors))}"
        )
    return EXIT_OK


def cmd_chain(cfg: RunConfig) -> int:
    rows = []
    for spec in cfg.inputs:
        label, body, tol = load_input(spec, cfg.tol, cfg.seed)
        report = chain_report(body, tol)
        rows += chain_rows(label, report)
        if cfg.svg is not None:
            parts = [standard_partition(body, e.k, tol) for e in report.entries]
            notes = [f"P_{e.k}: d_M = {e.dM:.6f}" for e in report.entries]
            cfg.svg.write_text(render_svg(body, parts, notes), encoding="utf-8")
    _emit(format_csv(rows, CHAIN_FIELDS), cfg.output)
    return EXIT_OK


def cmd_verify(cfg: RunConfig) -> int:
    chain, violations = [], []
    checked = Counter()
    bad_input = False
    n_bodies = 0
    for row, body in _corpus_rows(cfg):
        n_bodies += 1
        if isinstance(body, Exception):
            bad_input = True
            violations.append(Violation(row["body_id"], "load", f"{type(body).__name__}: {body}"))
            continue
        res = verify_body(row["body_id"], body, tolerance_for(row["generator"]), row["kC"], row["chi"])
        checked += res.checked
        violations += res.violations
        if res.report is not None:
            chain += chain_rows(row["body_id"], res.report)
    fail_counts = Counter(v.check for v in violations)
    summary = [
        {"check": c, "checked": checked[c], "violations": fail_counts[c]}
        for c in CHECKS + (("load",) if fail_counts["load"] else ())
    ]
    if cfg.output is not None:
        cfg.output.mkdir(parents=True, exist_ok=True)
        write_csv(chain, cfg.output / "chain_reports.csv", CHAIN_FIELDS)
        write_csv(summary, cfg.output / "summary.csv", SUMMARY_FIELDS)
        write_csv([vars(v) for v in violations], cfg.output / "violations.csv", VIOLATION_FIELDS)
    print(f"bodies checked: {n_bodies}")
    for s in summary:
        print(f"  {s['check']:<22} checked {s['checked']:>5}  violations {s['violations']}")
    if violations:
        print("violations:")
        for v in violations:
            print(f"  {v.body_id}  {v.check}  {v.message}")
    if bad_input:
        return EXIT_INPUT
    return EXIT_VIOLATION if violations else EXIT_OK


def cmd_search2(cfg: RunConfig) -> int:
    rows = []
    for spec in cfg.inputs:
        label, body, tol = load_input(spec, cfg.tol, cfg.seed)
        sweep = sweep_center_chords(body, cfg.n_angles, tol)
        print(
            f"{label}: standard chord d_M={sweep.standard_dM:.12g} best d_M={sweep.best_dM:.12g} "
            f"at angle {sweep.best_angle:.12g}",
            file=sys.stderr if cfg.output is None else sys.stdout,
        )
        rows += sweep_rows(sweep)
        if cfg.svg is not None:
            parts = [chord_partition(body, sweep.profile[0, 0]), chord_partition(body, sweep.best_angle)]
            notes = [f"standard chord: {sweep.standard_dM:.6f}", f"best chord: {sweep.best_dM:.6f}"]
            cfg.svg.write_text(render_svg(body, parts, notes), encoding="utf-8")
    _emit(format_csv(rows, SWEEP_FIELDS), cfg.output)
    return EXIT_OK


def cmd_searchk(cfg: RunConfig) -> int:
    rows = []
    for spec in cfg.inputs:
        label, body, tol = load_input(spec, cfg.tol, cfg.seed)
        ks = cfg.ks or tuple(k for k in detect_symmetry(body, tol).divisors if k >= 3)
        for k in ks:
            res = search_min_dM(body, k, cfg.n_samples, cfg.seed, tol)
            rows.append(search_row(label, k, cfg.n_samples, cfg.seed, res))
    _emit(format_csv(rows, SEARCH_FIELDS), cfg.output)
    return EXIT_OK


def cmd_render(cfg: RunConfig) -> int:
    label, body, tol = load_input(cfg.inputs[0], cfg.tol, cfg.seed)
    parts = [standard_partition(body, k, tol) for k in cfg.ks]
    svg = render_svg(body, parts, [f"{label} P_{k}" for k in cfg.ks] or [label])
    _emit(svg, cfg.svg or cfg.output)
    return EXIT_OK


HANDLERS = {
    "gen": cmd_gen, "analyze": cmd_analyze, "chain": cmd_chain, "verify": cmd_verify,
    "search2": cmd_search2, "searchk": cmd_searchk, "render": cmd_render,
}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="rotakit", description=__doc__.splitlines()[0])
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, inputs: str | None = "+"):
        if inputs:
            sp.add_argument("inputs", nargs=inputs, help="polygon file or regular:M, circle:N, sector:M:INDEX")
        sp.add_argument("--tol", type=parse_tol, default=None, help="analytic, generated or EPS_GEOM,EPS_DM")
        sp.add_argument("--seed", type=int, default=42)
        sp.add_argument("-o", "--output", type=Path, default=None)

    common(sub.add_parser("gen", help="write the seeded corpus"), inputs=None)
    common(sub.add_parser("analyze", help="symmetry profile, r and R"))
    sp = sub.add_parser("chain", help="d_M of the standard partition per divisor")
    common(sp)
    sp.add_argument("--svg", type=Path, default=None)
    sp = sub.add_parser("verify", help="run every invariant over the corpus")
    common(sp, inputs=None)
    sp.add_argument("--filter", default=None, help="e.g. 'chi>=7' or 'generator==sector,kC==45'")
    sp = sub.add_parser("search2", help="sweep center chords of a 2-symmetric body")
    common(sp)
    sp.add_argument("--angles", type=int, default=360)
    sp.add_argument("--svg", type=Path, default=None)
    sp = sub.add_parser("searchk", help="random fan partitions against the standard one")
    common(sp)
    sp.add_argument("-k", type=int, action="append", default=None)
    sp.add_argument("--samples", type=int, default=10_000)
    sp = sub.add_parser("render", help="SVG of standard partitions")
    common(sp, inputs=1)
    sp.add_argument("-k", type=int, action="append", default=None)
    sp.add_argument("--svg", type=Path, default=None)
    for name in ("gen", "verify"):
        sub.choices[name].add_argument("--corpus", type=Path, default=os.environ.get(CORPUS_ENV))
    return p


def config_from_args(args: argparse.Namespace) -> RunConfig:
    return RunConfig(
        command=args.command,
        inputs=tuple(getattr(args, "inputs", None) or ()),
        output=args.output,
        tol=args.tol,
        seed=args.seed,
        n_samples=getattr(args, "samples", 10_000),
        n_angles=getattr(args, "angles", 360),
        ks=tuple(getattr(args, "k", None) or ()),
        svg=getattr(args, "svg", None),
        filter=getattr(args, "filter", None),
        corpus=getattr(args, "corpus", None),
    )


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    try:
        return HANDLERS[args.command](config_from_args(args))
    except InvariantViolation as exc:
        print(f"invariant violated: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_VIOLATION
    except (InputError, OSError, ValueError) as exc:
        print(f"input error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
