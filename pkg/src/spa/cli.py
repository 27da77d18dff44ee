"""Command line driver.

    spa policy <file> [--principal P] [--goal G] [--full]
    spa check  <file> [--principal P] [--goal G] [--format checker|table]
    spa solve  <file>

``check`` exits 0 when no attack line was emitted, 1 when at least one
was, and 2 on usage or parse problems.  The environment variable
``SPA_PROFILE`` overrides the scenario's profile directive.
"""

from __future__ import annotations

import argparse
import os
import sys

from .entailment import RuleProfile, profile_from_name
from .generic_scsp import GenericScspError, solve_text
from .reports import render_checker, render_table, run_check, run_policy_report
from .scenario import ScenarioError
from .scenario_parser import ScenarioParseError, parse_scenario

EXIT_OK = 0
EXIT_ATTACK = 1
EXIT_ERROR = 2


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="spa", description="soft-constraint security protocol analyzer"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    policy = sub.add_parser("policy", help="settled policy-run levels per principal")
    policy.add_argument("file")
    policy.add_argument("--principal")
    policy.add_argument(
        "--goal",
        choices=["confidentiality", "authentication", "all"],
        default="confidentiality",
    )
    policy.add_argument(
        "--full", action="store_true", help="also list unknown-level rows"
    )

    check = sub.add_parser("check", help="compare the trace against the policy run")
    check.add_argument("file")
    check.add_argument("--principal")
    check.add_argument(
        "--goal",
        choices=["confidentiality", "authentication", "all"],
        default="confidentiality",
    )
    check.add_argument("--format", choices=["checker", "table"], default="checker")

    solve = sub.add_parser("solve", help="solve a generic soft constraint problem")
    solve.add_argument("file")
    return parser


def _read(path: str) -> str:
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _profile_override() -> RuleProfile | None:
    name = os.environ.get("SPA_PROFILE")
    return profile_from_name(name) if name else None


def main(argv: list[str] | None = None, out=None) -> int:
    out = out if out is not None else sys.stdout
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_ERROR if exc.code else EXIT_OK
    try:
        if args.command == "solve":
            out.write(solve_text(_read(args.file)))
            return EXIT_OK
        scenario = parse_scenario(_read(args.file), name=args.file)
        profile = _profile_override()
        if args.command == "policy":
            out.write(
                run_policy_report(
                    scenario,
                    goal=args.goal,
                    principal=args.principal,
                    full=args.full,
                    profile=profile,
                )
            )
            return EXIT_OK
        report = run_check(
            scenario, goal=args.goal, principal=args.principal, profile=profile
        )
        renderer = render_checker if args.format == "checker" else render_table
        out.write(renderer(report))
        return EXIT_ATTACK if report.attack_found else EXIT_OK
    except (
        OSError,
        ValueError,
        ScenarioError,
        ScenarioParseError,
        GenericScspError,
    ) as exc:
        print(f"spa: error: {exc}", file=sys.stderr)
        return EXIT_ERROR


def console_main() -> None:
    raise SystemExit(main())


if __name__ == "__main__":
    console_main()
