"""Command-line front end.

Exit codes: 0 on success, 2 on parse/validation failures, 3 when a census
or audit command's verified claim fails (a finding that contradicts what
the command exists to confirm).
"""

from __future__ import annotations

import argparse
import json
import math
import sys
import time
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import catalog, modelfile
from .census import census_222, census_symmetric
from .errors import NonlocalityError, ShapeMismatch, TooLarge
from .hardy import (
    all_star_cells,
    chen_check,
    chen_generate,
    find_npartite_witnesses,
)
from .hierarchy import classify, classify_support
from .models import (
    DEFAULT_EPSILON,
    DEFAULT_TOLERANCE,
    PossibilityModel,
    ProbabilityModel,
    collapse,
    is_no_signalling,
)
from .quantum import (
    HardyFamilyParams,
    ProjectiveQubitMeasurement,
    born_model,
    ghz_model,
    ghz_rule,
    hardy_family_model,
    phi_plus_state,
)
from .report import analyze_model, round12
from .searches import bell_anomaly_search, hardy_scan


def _emit(args, payload: dict, text: str) -> None:
    if args.json:
        body = json.dumps(payload, indent=2, sort_keys=True)
    else:
        body = text
    if args.out:
        Path(args.out).write_text(body + "\n", encoding="utf-8")
    else:
        print(body)


def _emit_model(args, model) -> None:
    body = modelfile.dumps(model)
    if args.out:
        Path(args.out).write_text(body + "\n", encoding="utf-8")
    else:
        print(body)


def _fmt(value) -> str:
    return f"{float(value):.12g}"


# -- generate ----------------------------------------------------------------


def _parse_angles(text: str) -> list[float]:
    try:
        values = [float(part) for part in text.split(",") if part != ""]
    except ValueError as exc:
        raise ValueError(f"bad --angles list: {exc}") from exc
    if len(values) < 8 or len(values) % 4 != 0:
        raise ValueError(
            "--angles needs theta,phi pairs, the same number per side "
            "(at least 8 numbers; first half is the first site)"
        )
    return values


def _parse_stars(text: str, outcome_count: int):
    if text == "all":
        return None
    if text == "none":
        return ()
    cells = []
    for part in text.split(","):
        if not part:
            continue
        try:
            i, j = part.split("-")
            cells.append((int(i), int(j)))
        except ValueError as exc:
            raise ValueError(f"bad star cell {part!r}; use i-j with 0-based rows") from exc
    return tuple(cells)


def cmd_generate(args) -> int:
    name = args.model
    if name == "pr-box":
        model = catalog.pr_box()
    elif name == "hardy-support":
        model = catalog.hardy_support()
    elif name == "table-iv-d":
        model = catalog.table_iv_d()
    elif name == "table-iv-d-uniform":
        model = catalog.table_iv_d_uniform()
    elif name == "ghz-mermin":
        model = catalog.ghz_mermin_possibilistic()
    elif name == "deterministic":
        model = catalog.deterministic_example()
    elif name == "ghz":
        model = ghz_model(args.n)
    elif name == "ghz-parity":
        model = catalog.ghz_parity_model(args.n)
    elif name == "hardy-family":
        if args.t is None:
            raise ValueError("hardy-family needs --t")
        model, _ = hardy_family_model(HardyFamilyParams(args.t))
    elif name == "bell":
        if not args.angles:
            raise ValueError("bell needs --angles")
        values = _parse_angles(args.angles)
        half = len(values) // 2
        sites = []
        for chunk in (values[:half], values[half:]):
            sites.append(
                [
                    ProjectiveQubitMeasurement(chunk[i], chunk[i + 1] % (2 * math.pi))
                    for i in range(0, len(chunk), 2)
                ]
            )
        model = born_model(phi_plus_state(), sites)
    elif name == "chen":
        stars = _parse_stars(args.stars, args.l)
        model = chen_generate(args.l, stars)
    else:
        raise ValueError(f"unknown model {name!r}")
    _emit_model(args, model)
    return 0


# -- analysis ----------------------------------------------------------------


def cmd_analyze(args) -> int:
    model = modelfile.load(args.path)
    report = analyze_model(model, epsilon=args.epsilon)
    _emit(args, report.to_dict(), report.to_text())
    return 0


def cmd_classify(args) -> int:
    model = modelfile.load(args.path)
    if isinstance(model, ProbabilityModel):
        level = classify(model, epsilon=args.epsilon)
    else:
        level = classify_support(model)
    _emit(args, {"schema": 1, "level": level.name}, f"level: {level.name}")
    return 0


def cmd_collapse(args) -> int:
    model = modelfile.load(args.path)
    if isinstance(model, PossibilityModel):
        raise ShapeMismatch("collapse expects a probability model")
    _emit_model(args, collapse(model, args.epsilon))
    return 0


def cmd_check_ns(args) -> int:
    model = modelfile.load(args.path)
    possibilistic = (
        is_no_signalling(model)
        if isinstance(model, PossibilityModel)
        else is_no_signalling(collapse(model, args.epsilon))
    )
    probabilistic = (
        is_no_signalling(model, DEFAULT_TOLERANCE)
        if isinstance(model, ProbabilityModel)
        else None
    )
    payload = {
        "schema": 1,
        "no_signalling": {
            "possibilistic": possibilistic,
            "probabilistic": probabilistic,
        },
    }
    text = f"possibilistic no-signalling: {possibilistic}"
    if probabilistic is not None:
        text += f"\nprobabilistic no-signalling: {probabilistic}"
    _emit(args, payload, text)
    return 0


def cmd_chen(args) -> int:
    model = modelfile.load(args.path)
    if isinstance(model, ProbabilityModel):
        model = collapse(model, args.epsilon)
    result = chen_check(model)
    if result is None:
        _emit(args, {"schema": 1, "pattern": None}, "staircase pattern: absent")
        return 0
    pattern, witnesses = result
    payload = {
        "schema": 1,
        "pattern": {
            "outcome_count": pattern.outcome_count,
            "stars": [list(cell) for cell in pattern.star_cells],
        },
        "witness_count": len(witnesses),
    }
    text = (
        f"staircase pattern: found\nstars: {list(pattern.star_cells)}\n"
        f"verified witnesses: {len(witnesses)}"
    )
    _emit(args, payload, text)
    return 0


# -- censuses, audits, searches ----------------------------------------------


def cmd_census_222(args) -> int:
    start = time.perf_counter()
    report = census_222()
    elapsed = time.perf_counter() - start
    payload = {
        "schema": 1,
        "scanned": report.scanned,
        "valid": report.valid,
        "no_signalling": report.no_signalling,
        "local": report.local,
        "logical": report.logical,
        "strong": report.strong,
        "strong_isomorphism_classes": len(report.strong_classes),
        "strong_class_is_pr_box": report.ok,
    }
    text = "\n".join(
        [
            f"tables scanned:            {report.scanned}",
            f"valid supports:            {report.valid}",
            f"no-signalling supports:    {report.no_signalling}",
            f"  local:                   {report.local}",
            f"  logically nonlocal:      {report.logical}",
            f"  strongly nonlocal:       {report.strong}",
            f"strong isomorphism classes: {len(report.strong_classes)}",
            f"strong class is the PR box: {report.ok}",
            f"elapsed seconds:           {elapsed:.3f}",
        ]
    )
    _emit(args, payload, text)
    return 0 if report.ok else 3


def cmd_census_symmetric(args) -> int:
    report = census_symmetric()
    payload = {
        "schema": 1,
        "scanned": report.scanned,
        "symmetric_supports": report.symmetric,
        "local": report.local,
        "logical": report.logical,
        "strong": report.strong,
        "logical_isomorphism_classes": len(report.logical_classes),
        "strong_isomorphism_classes": len(report.strong_classes),
        "classes_match_expected": report.ok,
    }
    text = "\n".join(
        [
            f"tables scanned:        {report.scanned}",
            f"symmetric supports:    {report.symmetric}",
            f"  local:               {report.local}",
            f"  logically nonlocal:  {report.logical}",
            f"  strongly nonlocal:   {report.strong}",
            f"logical non-strong isomorphism classes: {len(report.logical_classes)}",
            f"strong isomorphism classes:             {len(report.strong_classes)}",
            f"classes match expected supports:        {report.ok}",
        ]
    )
    _emit(args, payload, text)
    return 0 if report.ok else 3


def cmd_bell_anomaly(args) -> int:
    report = bell_anomaly_search(
        samples=args.samples,
        restarts=args.restarts,
        seed=args.seed,
        epsilon=args.epsilon,
    )
    ok = report.nonlocal_count == 0 and report.symmetry_failures == 0
    payload = {
        "schema": 1,
        "samples": report.samples,
        "restarts": report.restarts,
        "seed": report.seed,
        "logically_nonlocal_models": report.nonlocal_count,
        "symmetry_failures": report.symmetry_failures,
        "symmetry_pass_rate": round12(report.symmetry_pass_rate),
        "best_adversarial_objective": round12(report.best_objective),
        "best_angles": [round12(a) for a in report.best_angles],
    }
    text = "\n".join(
        [
            f"samples:                    {report.samples}",
            f"logically nonlocal models:  {report.nonlocal_count}",
            f"symmetry pass rate:         {_fmt(report.symmetry_pass_rate)}",
            f"adversarial restarts:       {report.restarts}",
            f"best adversarial objective: {_fmt(report.best_objective)}",
        ]
    )
    _emit(args, payload, text)
    return 0 if ok else 3


def cmd_ghz_audit(args) -> int:
    n = args.n
    if not 2 <= n <= 12:
        raise TooLarge(f"audit supports 2..12 qubits, got {n}")
    model = ghz_model(n)
    scenario = model.scenario
    max_deviation = 0.0
    for context in scenario.contexts():
        row = model.table[context]
        for index, outcome in enumerate(scenario.joint_outcomes(context)):
            _, probability = ghz_rule(n, context, outcome)
            max_deviation = max(max_deviation, abs(row[index] - float(probability)))
    rule_ok = max_deviation <= 1e-9

    support = collapse(model, args.epsilon)
    witnesses = find_npartite_witnesses(support)
    all_y = tuple([1] * n)
    ally_bases = {w.base_outcome for w in witnesses if w.base_context == all_y}
    ally_witnesses = [w for w in witnesses if w.base_context == all_y]
    certainty = sum(model.probability(all_y, outcome) for outcome in sorted(ally_bases))
    probabilities = sorted(
        {round12(model.probability(w.base_context, w.base_outcome)) for w in witnesses}
    )
    expect_witnesses = n % 4 == 3
    verdict_ok = (bool(witnesses) == expect_witnesses) and (
        not expect_witnesses or abs(certainty - 1.0) <= 1e-9
    )
    payload = {
        "schema": 1,
        "n": n,
        "rule_born_max_deviation": round12(max_deviation),
        "rule_matches_born": rule_ok,
        "witnesses_total": len(witnesses),
        "witnesses_at_all_y": len(ally_witnesses),
        "certainty_at_all_y": round12(certainty),
        "witness_probabilities": probabilities,
        "expected_witnesses": expect_witnesses,
        "verdict_ok": verdict_ok,
    }
    text = "\n".join(
        [
            f"qubits:                     {n}",
            f"counting rule == Born rule: {rule_ok} (max deviation {_fmt(max_deviation)})",
            f"n-partite witnesses:        {len(witnesses)} total, "
            f"{len(ally_witnesses)} based at the all-Y context",
            f"certainty at all-Y:         {_fmt(certainty)}",
            f"witnesses expected (n mod 4 == 3): {expect_witnesses}",
            f"verdict consistent:         {verdict_ok}",
        ]
    )
    _emit(args, payload, text)
    return 0 if (rule_ok and verdict_ok) else 3


def cmd_hardy_scan(args) -> int:
    if args.steps < 3:
        raise ValueError("--steps must be at least 3")
    start = time.perf_counter()
    report = hardy_scan(args.steps)
    elapsed = time.perf_counter() - start
    payload = {
        "schema": 1,
        "steps": report.steps,
        "best_t": round12(report.best_t),
        "max_paradoxical_probability": round12(report.best_probability),
        "evaluations": report.evaluations,
    }
    text = "\n".join(
        [
            f"grid steps:                  {report.steps}",
            f"argmax t:                    {_fmt(report.best_t)}",
            f"max paradoxical probability: {_fmt(report.best_probability)}",
            f"model evaluations:           {report.evaluations}",
            f"elapsed seconds:             {elapsed:.3f}",
        ]
    )
    _emit(args, payload, text)
    return 0


# -- wiring -------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--epsilon",
        type=float,
        default=DEFAULT_EPSILON,
        help="possibilistic collapse threshold (default 1e-9)",
    )
    common.add_argument("--seed", type=int, default=0, help="seed for randomized commands")
    common.add_argument("--json", action="store_true", help="emit a JSON report")
    common.add_argument("--out", default=None, help="write output to this file")

    parser = argparse.ArgumentParser(
        prog="nonlocality",
        description="Analyze, classify, and generate Bell-scenario empirical models.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", parents=[common], help="emit a model file")
    p.add_argument(
        "model",
        choices=[
            "pr-box",
            "hardy-support",
            "table-iv-d",
            "table-iv-d-uniform",
            "ghz-mermin",
            "deterministic",
            "ghz",
            "ghz-parity",
            "hardy-family",
            "bell",
            "chen",
        ],
    )
    p.add_argument("--n", type=int, default=3, help="qubit count for ghz models")
    p.add_argument("--t", type=float, default=None, help="family parameter in (0, pi/2)")
    p.add_argument("--angles", default=None, help="theta,phi,... first half per site")
    p.add_argument("--l", type=int, default=3, help="outcome count for chen")
    p.add_argument("--stars", default="all", help="star cells i-j,... or all/none")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("analyze", parents=[common], help="full analysis report")
    p.add_argument("path")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("classify", parents=[common], help="hierarchy level only")
    p.add_argument("path")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("collapse", parents=[common], help="possibilistic collapse")
    p.add_argument("path")
    p.set_defaults(func=cmd_collapse)

    p = sub.add_parser("check-ns", parents=[common], help="no-signalling verdicts")
    p.add_argument("path")
    p.set_defaults(func=cmd_check_ns)

    p = sub.add_parser("chen", parents=[common], help="detect the staircase pattern")
    p.add_argument("path")
    p.set_defaults(func=cmd_chen)

    p = sub.add_parser("census-222", parents=[common], help="sweep all (2,2,2) supports")
    p.set_defaults(func=cmd_census_222)

    p = sub.add_parser(
        "census-symmetric", parents=[common], help="sweep symmetric (2,2,2) supports"
    )
    p.set_defaults(func=cmd_census_symmetric)

    p = sub.add_parser(
        "bell-anomaly", parents=[common], help="entangled-pair paradox search"
    )
    p.add_argument("--samples", type=int, default=1000)
    p.add_argument("--restarts", type=int, default=20)
    p.set_defaults(func=cmd_bell_anomaly)

    p = sub.add_parser("ghz-audit", parents=[common], help="GHZ model audit")
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=cmd_ghz_audit)

    p = sub.add_parser("hardy-scan", parents=[common], help="family parameter scan")
    p.add_argument("--steps", type=int, default=1000)
    p.set_defaults(func=cmd_hardy_scan)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except NonlocalityError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
