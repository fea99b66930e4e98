"""Command line driver exposing every pipeline stage.

Subcommands mirror the stages in dependency order: ``qybe`` checks braid
consistency of a named R-matrix, ``contract`` transports the deformed
family along a schedule file and compares against the triangular target,
``relations`` derives the exchange table and verifies the recorded
relation set plus confluence, ``hopf`` runs the coalgebra checks on the
derived presentation and its quotient, and ``all`` chains everything
into one aggregated report.

Reports render as deterministic JSON (sorted keys, schema_version field)
or a text summary.  Exit codes: 0 all checks pass, 1 a verification
failed, 2 bad usage or configuration.  The environment variable
JFORGE_MAX_STEPS overrides the rewrite step bound.
"""

from __future__ import annotations

import argparse
import os
import sys

from .contraction import (
    Schedule,
    contraction_report,
    extract_sector,
    probe_divergence,
    schedule_digest,
    standard_schedule,
)
from .errors import GrammarError, JforgeError, ScheduleError
from .grammar import parse, serialize
from .hopf import (
    LAYOUT_Q,
    check_antipode_axiom,
    check_bialgebra,
    coaction_covariance,
    delta_centrality,
    hopf_ideal_check,
    qdet_checks,
)
from .report import CheckReport
from .rmat import (
    four_param_deformed_r3,
    jordanian_r2,
    jordanian_r3,
    qybe_check,
    twist_2x2,
    twist_3x3,
    twist_probe_3x3,
    two_param_deformed_r2,
)
from .rtt import LAYOUT_3, DerivedAlgebra, resolve_convention, rtt_zero_report, verify_reference

MATRICES = {
    "rq2": two_param_deformed_r2,
    "rq3": four_param_deformed_r3,
    "rj2": jordanian_r2,
    "rj3": jordanian_r3,
}

# contraction lanes: source family, twist, asserted target (None = probe)
LANES = {
    "g": (two_param_deformed_r2, twist_2x2, jordanian_r2),
    "bigg": (four_param_deformed_r3, twist_3x3, jordanian_r3),
    "gprime": (four_param_deformed_r3, twist_probe_3x3, None),
}

HOPF_GROUPS = ("bialgebra", "hopf-ideal", "antipode", "qdet",
               "delta-centrality", "coaction")


class UsageError(JforgeError):
    """Configuration problem that should exit with status 2."""


def _bindings(pairs) -> dict:
    out = {}
    for item in pairs or ():
        name, eq, expr = item.partition("=")
        if not eq or not name.isidentifier():
            raise UsageError(f"--set expects NAME=EXPR, got {item!r}")
        try:
            out[name] = parse(expr)
        except GrammarError as exc:
            raise UsageError(f"--set {name}: {exc}") from exc
    return out


def _max_steps():
    raw = os.environ.get("JFORGE_MAX_STEPS")
    if raw is None:
        return None
    try:
        return int(raw)
    except ValueError as exc:
        raise UsageError(f"JFORGE_MAX_STEPS must be an integer, got {raw!r}") from exc


def _load_schedule(path) -> tuple:
    """(schedule, sha256 hex) from an explicit path or the bundled file."""
    if path is None:
        from importlib.resources import files

        resource = files("jforge").joinpath("data/jordanian_gl3.schedule")
        with resource.open("rb") as fh:
            import hashlib

            digest = hashlib.sha256(fh.read()).hexdigest()
        return standard_schedule(), digest
    if not os.path.exists(path):
        raise UsageError(f"schedule file not found: {path}")
    return Schedule.load(path), schedule_digest(path)


def _emit(report: CheckReport, args) -> int:
    text = report.to_json() if args.format == "json" else report.to_text()
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
        good = sum(1 for c in report.checks if c.passed)
        print(f"{report.tool}: {good}/{len(report.checks)} checks passed "
              f"-> {args.output}")
    else:
        print(text)
    return 0 if report.passed else 1


def _algebra(args, bindings) -> DerivedAlgebra:
    convention = args.convention
    scores = None
    if convention == "auto":
        convention, scores = resolve_convention(bindings=bindings)
    alg = DerivedAlgebra(convention=convention, bindings=bindings,
                         max_steps=_max_steps())
    alg.resolution_scores = scores
    return alg


# -- subcommands -------------------------------------------------------------

def cmd_qybe(args) -> int:
    bindings = _bindings(args.set)
    rmat = MATRICES[args.matrix]()
    if bindings:
        rmat = rmat.substitute(bindings)
    report = qybe_check(rmat, name=args.matrix)
    report.metadata["matrix"] = args.matrix
    return _emit(report, args)


def cmd_contract(args) -> int:
    bindings = _bindings(args.set)
    schedule, digest = _load_schedule(args.schedule)
    source, twist, target = LANES[args.contraction_matrix]
    tm = source()
    if bindings:
        tm = tm.substitute(bindings)
    if target is None:
        # exploratory lane: record the limit behaviour, assert nothing
        report = CheckReport("contract")
        records = probe_divergence(tm, twist(), schedule)
        report.add("probe-recorded", True, note="no target asserted",
                   records=records)
    else:
        goal = target()
        if bindings:
            goal = goal.substitute(bindings)
        result, report = contraction_report(tm, twist(), schedule, goal)
        if result is not None:
            report.metadata["result_matrix"] = result.to_dict()
    report.metadata["lane"] = args.contraction_matrix
    report.metadata["schedule_sha256"] = digest
    return _emit(report, args)


def cmd_relations(args) -> int:
    bindings = _bindings(args.set)
    alg = _algebra(args, bindings)
    report = CheckReport("relations")
    report.extend(verify_reference(alg))
    report.extend(rtt_zero_report(alg))
    report.extend(alg.confluence(args.max_degree))
    report.metadata["convention"] = alg.convention
    if alg.resolution_scores:
        report.metadata["convention_scores"] = {
            k: v["score"] for k, v in alg.resolution_scores.items()}
    report.metadata["table"] = alg.to_dict()
    return _emit(report, args)


def _hopf_report(alg: DerivedAlgebra, groups, braiding: bool) -> CheckReport:
    q = alg.quotient()
    report = CheckReport("hopf")
    if "bialgebra" in groups:
        full = check_bialgebra(alg.system, LAYOUT_3)
        for c in full.checks:
            report.add("full:" + c.name, c.passed, ms=c.ms, **c.details)
        report.extend(check_bialgebra(q.system, LAYOUT_Q))
    if "hopf-ideal" in groups:
        report.extend(hopf_ideal_check(alg))
    if "antipode" in groups:
        report.extend(check_antipode_axiom(q))
    if "qdet" in groups:
        report.extend(qdet_checks(q))
    if "delta-centrality" in groups:
        report.extend(delta_centrality(alg))
    if "coaction" in groups:
        report.extend(coaction_covariance(q, braiding=braiding))
    return report


def cmd_hopf(args) -> int:
    bindings = _bindings(args.set)
    groups = tuple(args.check) if args.check else HOPF_GROUPS
    unknown = set(groups) - set(HOPF_GROUPS)
    if unknown:
        raise UsageError(f"unknown --check group(s): {sorted(unknown)}; "
                         f"choose from {list(HOPF_GROUPS)}")
    alg = _algebra(args, bindings)
    report = _hopf_report(alg, groups, braiding=not args.no_braiding)
    report.metadata["convention"] = alg.convention
    report.metadata["braiding"] = not args.no_braiding
    return _emit(report, args)


def cmd_all(args) -> int:
    bindings = _bindings(args.set)
    report = CheckReport("all")

    for name in ("rq2", "rq3", "rj2", "rj3"):
        rmat = MATRICES[name]()
        if bindings:
            rmat = rmat.substitute(bindings)
        report.extend(qybe_check(rmat, name=name))

    # contract stage failures must not block the later stages
    try:
        schedule, digest = _load_schedule(args.schedule)
        source, twist, target = LANES[args.contraction_matrix]
        tm = source()
        if bindings:
            tm = tm.substitute(bindings)
        if target is None:
            records = probe_divergence(tm, twist(), schedule)
            report.add("contract:probe-recorded", True,
                       note="no target asserted", records=records)
        else:
            goal = target()
            if bindings:
                goal = goal.substitute(bindings)
            _result, stage = contraction_report(tm, twist(), schedule, goal)
            for c in stage.checks:
                report.add("contract:" + c.name, c.passed, ms=c.ms, **c.details)
        report.metadata["schedule_sha256"] = digest
    except (UsageError, ScheduleError) as exc:
        report.add("contract:schedule-loads", False, error=str(exc))

    alg = _algebra(args, bindings)
    for stage in (verify_reference(alg), rtt_zero_report(alg),
                  alg.confluence(args.max_degree)):
        for c in stage.checks:
            report.add("relations:" + c.name, c.passed, ms=c.ms, **c.details)
    report.metadata["convention"] = alg.convention

    stage = _hopf_report(alg, HOPF_GROUPS, braiding=not args.no_braiding)
    for c in stage.checks:
        report.add("hopf:" + c.name, c.passed, ms=c.ms, **c.details)
    return _emit(report, args)


# -- argument plumbing -------------------------------------------------------

def _common(sub):
    sub.add_argument("--set", action="append", metavar="NAME=EXPR",
                     help="bind a parameter to an expression (repeatable)")
    sub.add_argument("--format", choices=("json", "text"), default="text")
    sub.add_argument("--output", metavar="PATH",
                     help="write the report to PATH instead of stdout")


def _algebraic(sub):
    sub.add_argument("--convention", choices=("plain", "transposed", "auto"),
                     default="plain",
                     help="exchange-identity reading (auto = resolve and record)")
    sub.add_argument("--max-degree", type=int, default=3, metavar="N",
                     help="overlap word bound for the confluence check (>= 3)")


def _contractish(sub):
    sub.add_argument("--schedule", metavar="PATH",
                     help="schedule file (default: the bundled one)")
    sub.add_argument("--contraction-matrix", choices=tuple(LANES),
                     default="bigg", help="which twist lane to run")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="jforge",
        description="Construct, contract and verify triangular "
                    "quantum-group structures.")
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("qybe", help="braid-consistency check of one R-matrix")
    p.add_argument("--matrix", choices=tuple(MATRICES), default="rj3")
    _common(p)
    p.set_defaults(func=cmd_qybe)

    p = subs.add_parser("contract", help="run the singular-limit transport")
    _contractish(p)
    _common(p)
    p.set_defaults(func=cmd_contract)

    p = subs.add_parser("relations", help="derive and verify the exchange table")
    _algebraic(p)
    _common(p)
    p.set_defaults(func=cmd_relations)

    p = subs.add_parser("hopf", help="coalgebra checks on the derived algebra")
    _algebraic(p)
    p.add_argument("--check", action="append", metavar="NAME",
                   help=f"run only the named group(s); one of {list(HOPF_GROUPS)}")
    p.add_argument("--no-braiding", action="store_true",
                   help="drop the cross-relation braiding in the coaction "
                        "check (negative control)")
    _common(p)
    p.set_defaults(func=cmd_hopf)

    p = subs.add_parser("all", help="full pipeline, one aggregated report")
    _contractish(p)
    _algebraic(p)
    p.add_argument("--no-braiding", action="store_true")
    _common(p)
    p.set_defaults(func=cmd_all)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "max_degree", 3) < 3:
        parser.exit(2, "jforge: --max-degree must be at least 3\n")
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"jforge: {exc}", file=sys.stderr)
        return 2
    except ScheduleError as exc:
        print(f"jforge: {exc}", file=sys.stderr)
        return 2
    except JforgeError as exc:
        print(f"jforge: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
