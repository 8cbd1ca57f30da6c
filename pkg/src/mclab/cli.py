"""Command-line front end.

Subcommands:
  reproduce <fixture>      run a named exact certificate fixture
  check                    run property suites against expectations
  fixedpoint <spec.json>   verify a mapping and solve for its fixed point
  nested <family.json>     find a common point of a nested ball family

Exit codes: 0 success or expected outcome, 1 property or solver failure,
2 usage or configuration error.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .config import RunConfig, load_config
from .convexsets import MidConvention
from .errors import ConfigError, DomainEscape, MclabError, SolverFailure
from .fixedpoint import (
    HybridParams,
    find_fixed_point,
    mapping_from_json,
    verify_hybrid,
)
from .fixtures import FIXTURES
from .nested import cantor_point, common_point, family_from_json, max_violation
from .properties import (
    check_homogeneity,
    check_menger_convex,
    check_property,
)
from .reports import fmt_value, write_reports
from .sampling import SamplePlan
from .spaces import space_from_id
from .verdicts import PropertyVerdict

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2

_CONVENTIONS = {"fromx": MidConvention.FROM_X, "fromy": MidConvention.FROM_Y}


def _plan_from_config(cfg: RunConfig, count=None) -> SamplePlan:
    return SamplePlan(
        count=count or cfg.sample_count,
        seed=cfg.seed,
        coord_denominator=cfg.coord_denominator,
        t_denominator=cfg.t_denominator,
    )


def cmd_reproduce(args, cfg: RunConfig) -> int:
    if args.fixture not in FIXTURES:
        print(f"unknown fixture {args.fixture!r}; known: {sorted(FIXTURES)}")
        return EXIT_USAGE
    report = FIXTURES[args.fixture]()
    payload = {"config": cfg.resolved(), "report": report.to_json()}
    lines = [f"# Fixture {report.name}", "", report.description, ""]
    for c in report.claims:
        mark = "PASS" if c.ok else "FAIL"
        lines.append(f"- [{mark}] {c.label}: {fmt_value(c.lhs)} vs {fmt_value(c.rhs)}")
    lines.append("")
    lines.append(f"Overall: {'PASS' if report.ok else 'FAIL'}")
    write_reports(cfg.out_dir, f"reproduce-{report.name}", payload, "\n".join(lines) + "\n")
    print(f"{report.name}: {'PASS' if report.ok else 'FAIL'}")
    return EXIT_OK if report.ok else EXIT_FAIL


def _parse_expectations(text: str | None):
    out = {}
    if not text:
        return out
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        if "=" not in part:
            raise ConfigError(f"bad expectation {part!r}; use prop=holds|fails|refused")
        name, value = part.split("=", 1)
        value = value.strip().lower()
        if value not in ("holds", "fails", "refused"):
            raise ConfigError(f"bad expected outcome {value!r}")
        out[name.strip()] = value
    return out


def cmd_check(args, cfg: RunConfig) -> int:
    try:
        space = space_from_id(args.space)
    except MclabError as exc:
        print(f"config error: {exc}")
        return EXIT_USAGE
    conv = _CONVENTIONS[cfg.convention]
    expectations = _parse_expectations(args.expect)
    plan = _plan_from_config(cfg)
    prop_list = [p.strip() for p in args.props.split(",") if p.strip()]
    verdicts: list[PropertyVerdict] = []
    for prop in prop_list:
        if prop == "menger":
            verdicts.append(
                check_menger_convex(
                    space, plan, resolution=cfg.grid_resolution, tol=cfg.tol
                )
            )
        elif prop == "homogeneity":
            verdicts.append(check_homogeneity(space, plan, tol=cfg.tol))
        elif prop in ("A", "B", "Bprime", "Bdoubleprime", "C"):
            verdicts.append(
                check_property(
                    space,
                    prop,
                    conv=conv,
                    plan=plan,
                    diam_tol=cfg.diam_tol,
                    tol=cfg.tol,
                    resolution=cfg.grid_resolution,
                )
            )
        else:
            print(f"unknown property {prop!r}")
            return EXIT_USAGE
    ok = True
    lines = [f"# Property suite on {space.id}", ""]
    entries = []
    for v in verdicts:
        expected = expectations.get(v.property, "holds")
        matched = v.outcome == expected
        ok = ok and matched
        mark = "PASS" if matched else "FAIL"
        lines.append(
            f"- [{mark}] {v.property}: {v.outcome} (expected {expected}), "
            f"samples={v.samples}"
        )
        entry = v.to_json()
        entry["space"] = space.id
        entry["expected"] = expected
        entry["matched"] = matched
        entry["seed"] = cfg.seed
        entries.append(entry)
    payload = {"config": cfg.resolved(), "space": space.id, "reports": entries}
    lines.append("")
    lines.append(f"Overall: {'PASS' if ok else 'FAIL'}")
    write_reports(cfg.out_dir, f"check-{space.id}", payload, "\n".join(lines) + "\n")
    print(f"check {space.id}: {'PASS' if ok else 'FAIL'}")
    return EXIT_OK if ok else EXIT_FAIL


def cmd_fixedpoint(args, cfg: RunConfig) -> int:
    try:
        with open(args.spec, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        print(f"cannot read mapping spec: {exc}")
        return EXIT_USAGE
    space = space_from_id(data.get("space", "vec2-p2"))
    try:
        spec = mapping_from_json(data, space.dim)
        params = HybridParams(
            Fraction(str(data.get("alpha", 1))), Fraction(str(data.get("beta", 0)))
        )
        x0 = tuple(float(c) for c in data.get("x0", (0.0,) * space.dim))
    except (MclabError, KeyError, ValueError) as exc:
        print(f"bad mapping spec: {exc}")
        return EXIT_USAGE
    plan = _plan_from_config(cfg, count=min(cfg.sample_count, 2000))
    payload = {"config": cfg.resolved(), "space": space.id}
    verdict = verify_hybrid(space, spec, params, plan, tol=cfg.tol)
    payload["hybrid"] = verdict.to_json()
    if not verdict.holds:
        write_reports(
            cfg.out_dir,
            "fixedpoint",
            payload,
            f"# Fixed point\n\nHybrid inequality fails; witness recorded.\n",
        )
        print("fixedpoint: hybrid inequality FAILS")
        return EXIT_FAIL
    try:
        result = find_fixed_point(
            space,
            spec,
            params,
            x0,
            orbit_n=cfg.fp_orbit_n,
            window=cfg.fp_window,
            tol=cfg.fp_tol,
            budget=cfg.fp_budget,
            rmax=cfg.fp_rmax,
        )
    except (SolverFailure, DomainEscape) as exc:
        payload["error"] = str(exc)
        write_reports(
            cfg.out_dir,
            "fixedpoint",
            payload,
            f"# Fixed point\n\nSolver failed: {exc}\n",
        )
        print(f"fixedpoint: {exc}")
        return EXIT_FAIL
    payload["result"] = {
        "point": list(result.point),
        "residual": result.residual,
        "f_value": result.f_value,
        "orbit_radius": result.orbit_radius,
        "evaluations": result.evaluations,
        "converged": result.converged,
    }
    md = (
        "# Fixed point\n\n"
        f"- point: {fmt_value(result.point)}\n"
        f"- residual: {fmt_value(result.residual)}\n"
        f"- functional value: {fmt_value(result.f_value)}\n"
        f"- orbit radius: {fmt_value(result.orbit_radius)}\n"
        f"- converged: {result.converged}\n"
    )
    write_reports(cfg.out_dir, "fixedpoint", payload, md)
    print(
        f"fixedpoint: residual={result.residual:.3g} "
        f"{'OK' if result.converged else 'NOT CONVERGED'}"
    )
    return EXIT_OK if result.converged else EXIT_FAIL


def cmd_nested(args, cfg: RunConfig) -> int:
    try:
        with open(args.family, "r", encoding="utf-8") as fh:
            data = json.load(fh)
        family = family_from_json(data)
    except (OSError, json.JSONDecodeError, MclabError) as exc:
        print(f"cannot read family: {exc}")
        return EXIT_USAGE
    space = space_from_id(args.space)
    payload = {"config": cfg.resolved(), "space": space.id}
    try:
        if args.cantor:
            point = cantor_point(space, family, tol=cfg.fp_tol)
        else:
            point = common_point(space, family, tol=cfg.fp_tol)
    except (SolverFailure, MclabError) as exc:
        payload["error"] = str(exc)
        cert = getattr(exc, "certificate", None)
        if cert:
            payload["certificate"] = cert
        write_reports(
            cfg.out_dir, "nested", payload, f"# Nested family\n\nFailed: {exc}\n"
        )
        print(f"nested: {exc}")
        return EXIT_FAIL
    violation, _ = max_violation(space, family, point)
    payload["result"] = {"point": list(point), "max_violation": violation}
    md = (
        "# Nested family\n\n"
        f"- common point: {fmt_value(point)}\n"
        f"- max constraint violation: {fmt_value(violation)}\n"
    )
    write_reports(cfg.out_dir, "nested", payload, md)
    print(f"nested: common point found, violation={violation:.3g}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="JSON config file")
    common.add_argument("--seed", type=int, help="RNG seed override")
    common.add_argument("--out", help="output directory for reports")
    mode = common.add_mutually_exclusive_group()
    mode.add_argument("--exact", action="store_true", help="force exact arithmetic")
    mode.add_argument("--float", dest="float_mode", action="store_true")

    parser = argparse.ArgumentParser(
        prog="mclab",
        description="metric-convexity laboratory: certificates, property suites, fixed points",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("reproduce", parents=[common], help="run a named certificate fixture")
    p.add_argument("fixture")

    p = sub.add_parser(
        "check", parents=[common], help="run property checkers against expectations"
    )
    p.add_argument("--space", required=True, help="space id, e.g. vec3-p2")
    p.add_argument(
        "--props",
        default="menger,A,B,Bprime,Bdoubleprime,C",
        help="comma list from menger,A,B,Bprime,Bdoubleprime,C,homogeneity",
    )
    p.add_argument("--expect", help="expected outcomes, e.g. A=fails,C=fails")

    p = sub.add_parser("fixedpoint", parents=[common], help="verify a mapping and solve")
    p.add_argument("spec", help="mapping spec JSON file")

    p = sub.add_parser(
        "nested", parents=[common], help="common point of a nested ball family"
    )
    p.add_argument("family", help="family JSON file")
    p.add_argument("--space", default="vec2-p2")
    p.add_argument("--cantor", action="store_true", help="require vanishing diameters")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    overrides = {"seed": args.seed, "out_dir": args.out}
    if args.exact:
        overrides["exact"] = True
    elif args.float_mode:
        overrides["exact"] = False
    try:
        cfg = load_config(args.config, overrides)
    except ConfigError as exc:
        print(f"config error: {exc}")
        return EXIT_USAGE
    try:
        if args.command == "reproduce":
            return cmd_reproduce(args, cfg)
        if args.command == "check":
            return cmd_check(args, cfg)
        if args.command == "fixedpoint":
            return cmd_fixedpoint(args, cfg)
        if args.command == "nested":
            return cmd_nested(args, cfg)
    except ConfigError as exc:
        print(f"config error: {exc}")
        return EXIT_USAGE
    return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
