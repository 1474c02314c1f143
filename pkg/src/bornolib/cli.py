"""Command-line entry point.

Exit status: 0 when every verdict is ok, 1 on an axiom or property violation
or a broken precondition, 2 on unreadable or invalid input.
"""

from __future__ import annotations

import argparse
import os
import sys
from dataclasses import dataclass, field

from . import io
from .bornology import check_bornology, generate_bornology, pullback_bornology
from .core import Verdict
from .errors import BornoError, BudgetZero, HypothesisNotMet, ParseError
from .geometry import (TOL, exact_cover_optimum, metric_size, min_enclosing_ball,
                       size_relation_check, diameter)
from .monk import (METHODS, constrained_monk_exact, constrained_monk_gonzalez,
                   greatest_maxitive_below, monk_table)
from .report import Sink
from .sizes import check_size_function, is_total, tabulate
from .suites import SUITES, battery, run_suite
from .topology import (is_closed_size, is_weakly_outer_continuous, verify_compact_proposition,
                       verify_theorem_oc)

#: Default seed, overridden by ``BORNOLIB_SEED`` and then by ``--seed``.
DEFAULT_SEED = 725822

COMMANDS = ("check-bornology", "generate", "pullback", "check-size", "monk", "constrained-monk",
            "greatest-maxitive", "topology-verify", "geometry", "relations", "fuzz")


@dataclass
class RunConfig:
    command: str
    inputs: dict = field(default_factory=dict)
    seed: int = DEFAULT_SEED
    k: int | None = None
    format: str = "text"
    tolerance: float = TOL
    options: dict = field(default_factory=dict)


def _default_seed() -> int:
    raw = os.environ.get("BORNOLIB_SEED")
    if raw is None:
        return DEFAULT_SEED
    try:
        return int(raw, 0)
    except ValueError:
        raise ParseError(f"BORNOLIB_SEED is not an integer: {raw!r}") from None


def _subset(universe, text: str | None):
    if text is None:
        return None
    labels = [x.strip() for x in text.split(",") if x.strip()]
    try:
        return universe.subset(*labels)
    except BornoError as exc:
        raise ParseError(str(exc)) from None


def _budget(cfg: RunConfig) -> int:
    k = 1 if cfg.k is None else cfg.k
    if k < 1:
        raise BudgetZero("--k must be at least 1")
    return k


def _verdict_row(sink: Sink, check: str, verdict: Verdict, **extra) -> bool:
    sink.row(check=check, ok=verdict.ok, violation=verdict.kind,
             witness=list(verdict.witness), **extra)
    if not verdict.ok:
        sink.note(f"{check}: {verdict}")
    return verdict.ok


def _size_input(cfg: RunConfig):
    """The size function named by ``--size`` or by ``--cloud`` with ``--kind``."""
    if cfg.inputs.get("size"):
        return io.size_from(io.read_json(cfg.inputs["size"]))
    if cfg.inputs.get("cloud"):
        cloud = io.load_cloud(cfg.inputs["cloud"])
        return metric_size(cloud, cfg.options.get("kind") or "alpha")
    raise ParseError("a size function is required (--size, or --cloud with --kind)")


# --------------------------------------------------------------------------
# commands
# --------------------------------------------------------------------------

def _check_bornology(cfg, sink):
    fam = io.family_from(io.read_json(cfg.inputs["family"]))
    return 0 if _verdict_row(sink, "bornology", check_bornology(fam), members=len(fam)) else 1


def _members(sink, fam):
    for m in fam:
        sink.row(subset=m)


def _generate(cfg, sink):
    fam = generate_bornology(io.family_from(io.read_json(cfg.inputs["family"])))
    _members(sink, fam)
    sink.note(f"{len(fam)} bounded subsets")
    return 0


def _pullback(cfg, sink):
    f = io.map_from(io.read_json(cfg.inputs["map"]))
    fam = pullback_bornology(f, io.family_from(io.read_json(cfg.inputs["family"])))
    _members(sink, fam)
    sink.note(f"{len(fam)} bounded subsets")
    return 0 if check_bornology(fam) else 1


def _check_size(cfg, sink):
    table = io.size_from(io.read_json(cfg.inputs["size"]), validate=False)
    verdict = check_size_function(table)
    ok = _verdict_row(sink, "size-function", verdict,
                      total=is_total(table) if verdict.ok else None)
    return 0 if ok else 1


def _targets(s, subset_text):
    one = _subset(s.universe, subset_text)
    if one is not None:
        return [one]
    s.universe.require_enumerable(16)
    return [s.universe.wrap(m) for m in range(1 << s.universe.n)]


def _monk(cfg, sink):
    s = _size_input(cfg)
    table = tabulate(s)
    monk = monk_table(table, cfg.options.get("method") or "closed_form")
    for a in _targets(table, cfg.options.get("subset")):
        row = {"subset": a, "rho": table(a), "monk": monk(a)}
        for k in range(1, (cfg.k or 0) + 1):
            row[f"monk_{k}"] = constrained_monk_exact(s, a, k)
        sink.row(**row)
    return 0


def _constrained(cfg, sink):
    s = _size_input(cfg)
    a = _subset(s.universe, cfg.options.get("subset"))
    if a is None:
        a = s.universe.wrap(s.universe.full)
    cloud = getattr(s, "cloud", None)
    for k in range(1, _budget(cfg) + 1):
        row = {"k": k, "exact": constrained_monk_exact(s, a, k)}
        if cloud is not None and cfg.options.get("approx"):
            approx = constrained_monk_gonzalez(cloud, a, k, s.kind)
            row["approx"] = approx
            row["ratio"] = approx / row["exact"] if row["exact"] > 0 else None
        sink.row(**row)
    return 0


def _greatest(cfg, sink):
    s = _size_input(cfg)
    nu = greatest_maxitive_below(s)
    for label, value in zip(s.universe.labels, nu.profile):
        sink.row(element=label, profile=value)
    table = tabulate(s)
    agrees = bool((nu.as_table().values == monk_table(table).values).all())
    ok = agrees and nu.is_below(table)
    sink.note("maxitive measure below the size, equal to the monk: " + ("ok" if ok else "FAILED"))
    return 0 if ok else 1


def _topology_verify(cfg, sink):
    t = io.topology_from(io.read_json(cfg.inputs["topology"]))
    s = io.size_from(io.read_json(cfg.inputs["size"]))
    if s.universe != t.universe:
        raise ParseError("topology and size table must share a universe")
    neighborhood = cfg.options.get("neighborhood") or "interior"
    closed = is_closed_size(t, s)
    woc = is_weakly_outer_continuous(t, s)
    _verdict_row(sink, "closed", closed)
    _verdict_row(sink, "weakly-outer-continuous", woc)
    ok = True
    if closed:
        ok &= _verdict_row(sink, "monk-closed", is_closed_size(t, monk_table(s)))
    report = verify_compact_proposition(t, s)
    first = report.violations[0]["subset"] if report.violations else None
    sink.row(check="compact-proposition", ok=report.ok, violation=None if report.ok else "compact",
             witness=[first] if first is not None else [], equality_checked=report.weakly_outer_continuous)
    ok &= report.ok
    try:
        thm = verify_theorem_oc(t, s, neighborhood)
    except HypothesisNotMet:
        sink.row(check="theorem", ok=None, violation="hypothesis not met", witness=[])
    else:
        for name, item in (("theorem-item1", thm.item1), ("theorem-item2", thm.item2),
                           ("theorem-item3", thm.item3)):
            if item is None:
                sink.row(check=name, ok=None, violation="skipped: size not total", witness=[])
            else:
                ok &= _verdict_row(sink, name, item)
    return 0 if ok else 1


def _geometry(cfg, sink):
    cloud = io.load_cloud(cfg.inputs["cloud"])
    sub = _subset(cloud.universe, cfg.options.get("subset"))
    center, radius = min_enclosing_ball(cloud, sub)
    sink.row(points=len(cloud.indices(sub)), dim=cloud.dim, diameter=diameter(cloud, sub),
             radius=radius, center=[float(c) for c in center])
    return 0


def _relations(cfg, sink):
    cloud = io.load_cloud(cfg.inputs["cloud"])
    sub = _subset(cloud.universe, cfg.options.get("subset"))
    tol = cfg.tolerance
    rep = size_relation_check(cloud, sub, tol)
    ok = rep.ok
    for k in range(1, _budget(cfg) + 1):
        a = exact_cover_optimum(cloud, sub, k, "alpha")
        b = exact_cover_optimum(cloud, sub, k, "beta")
        chain = a <= b + tol and b <= 2 * a + tol
        ok &= chain
        sink.row(k=k, alpha=a, beta=b, two_alpha=2 * a,
                 approx_alpha=constrained_monk_gonzalez(cloud, sub, k, "alpha") if cloud.indices(sub) else 0.0,
                 approx_beta=constrained_monk_gonzalez(cloud, sub, k, "beta") if cloud.indices(sub) else 0.0,
                 chain=chain)
    sink.note("chain ok" if ok else "chain VIOLATED")
    return 0 if ok else 1


def _fuzz(cfg, sink):
    name = cfg.options.get("suite") or "all"
    names = battery() if name == "all" else [name]
    count = cfg.options.get("n") or 100
    failed_any = False
    summaries = []
    for suite_name in names:
        passed = failed = 0
        first = None
        for record in run_suite(suite_name, count, cfg.seed, cfg.options.get("max_universe")):
            if record["ok"]:
                passed += 1
            else:
                failed += 1
                first = first or record
            if sink.fmt == "json-lines":
                sink.row(**record)
        failed_any |= failed > 0
        summaries.append(dict(suite=suite_name, passed=passed, failed=failed,
                              first_counterexample=None if first is None else first["instance"]))
    for summary in summaries:
        if sink.fmt == "json-lines":
            sink.row(summary=True, **summary)
        else:
            sink.row(**summary)
    return 1 if failed_any else 0


HANDLERS = {
    "check-bornology": _check_bornology, "generate": _generate, "pullback": _pullback,
    "check-size": _check_size, "monk": _monk, "constrained-monk": _constrained,
    "greatest-maxitive": _greatest, "topology-verify": _topology_verify,
    "geometry": _geometry, "relations": _relations, "fuzz": _fuzz,
}


def run(cfg: RunConfig, out=None) -> int:
    """Execute one command, writing the report to ``out``; returns the exit status."""
    sink = Sink(cfg.format, out)
    try:
        return HANDLERS[cfg.command](cfg, sink)
    finally:
        sink.flush()


# --------------------------------------------------------------------------
# argument parsing
# --------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json-lines"), default="text")
    common.add_argument("--seed", type=lambda x: int(x, 0), default=None,
                        help=f"random seed (default: $BORNOLIB_SEED or {DEFAULT_SEED})")
    common.add_argument("--tol", type=float, default=TOL, help="absolute comparison tolerance")

    parser = argparse.ArgumentParser(prog="bornolib", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def cmd(name, help_text):
        return sub.add_parser(name, parents=[common], help=help_text)

    p = cmd("check-bornology", "check the bornology axioms on a family")
    p.add_argument("--family", required=True)
    p = cmd("generate", "smallest bornology containing a base family")
    p.add_argument("--family", required=True)
    p = cmd("pullback", "pull a bornology back along a map")
    p.add_argument("--map", required=True)
    p.add_argument("--family", required=True)
    p = cmd("check-size", "check the size-function axioms on a table")
    p.add_argument("--size", required=True)

    def size_args(p):
        p.add_argument("--size")
        p.add_argument("--cloud")
        p.add_argument("--kind", choices=("alpha", "beta"))
        p.add_argument("--subset", help="comma-separated labels")

    p = cmd("monk", "monk (and constrained monks with --k) of subsets")
    size_args(p)
    p.add_argument("--all", action="store_true", help="every subset (the default)")
    p.add_argument("--k", type=int)
    p.add_argument("--method", choices=METHODS)
    p = cmd("constrained-monk", "monk with at most k cover members")
    size_args(p)
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--approx", action="store_true", help="add the farthest-first value")
    p = cmd("greatest-maxitive", "greatest maxitive measure below a size")
    size_args(p)
    p = cmd("topology-verify", "closedness, outer continuity, compact proposition, theorem")
    p.add_argument("--topology", required=True)
    p.add_argument("--size", required=True)
    p.add_argument("--neighborhood", choices=("interior", "open"))
    p = cmd("geometry", "diameter and minimum enclosing ball of a cloud")
    p.add_argument("--cloud", required=True)
    p.add_argument("--subset")
    p = cmd("relations", "radius/diameter chain and its k-constrained shadow")
    p.add_argument("--cloud", required=True)
    p.add_argument("--subset")
    p.add_argument("--k", type=int, default=1)
    p = cmd("fuzz", "run randomised property suites")
    p.add_argument("--suite", default="all", choices=["all", *SUITES])
    p.add_argument("--n", type=int, default=100)
    p.add_argument("--max-universe", type=int)
    return parser


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    options = {}
    inputs = {}
    for key, value in vars(ns).items():
        if key in ("command", "format", "seed", "tol", "k"):
            continue
        if key in ("family", "map", "size", "cloud", "topology"):
            inputs[key] = value
        else:
            options[key] = value
    seed = ns.seed if ns.seed is not None else _default_seed()
    return RunConfig(ns.command, inputs, seed, getattr(ns, "k", None), ns.format, ns.tol, options)


def main(argv=None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    try:
        return run(config_from_args(ns))
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except BornoError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
