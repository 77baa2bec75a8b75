"""Command-line entrypoint.

    python main.py analyze --input corpus:e8h --all
    python main.py lattice classify --input form.json
    python main.py monodromy build -g 2 -d 4
    python main.py monodromy verify branch.json
    python main.py plan pair --f11 5 --f12 5 --f22 0
    python main.py selfcheck
"""

from __future__ import annotations

import argparse
import logging
import sys

from algorithms import monodromy, planner
from algorithms.classify import classify
from algorithms.selfcheck import run_selfcheck as run_checks
from core import config as cfg
from core.errors import CovermapError, InputError, PlanError, SearchExhausted
from model.manifold import BaseManifold
from utils import io, render

logger = logging.getLogger("covermap")


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from exc


def _add_output(parser: argparse.ArgumentParser) -> None:
    group = parser.add_mutually_exclusive_group()
    group.add_argument("--json", dest="output", action="store_const", const="json")
    group.add_argument("--text", dest="output", action="store_const", const="text")
    parser.set_defaults(output="text")


class CovermapParser(argparse.ArgumentParser):
    """Usage errors become InputError so they exit like any other invalid input."""

    def error(self, message: str):
        raise InputError("", f"{self.prog}: {message}")


def build_parser() -> argparse.ArgumentParser:
    parser = CovermapParser(prog="covermap", description="Branched covering feasibility for 4-manifolds")
    parser.add_argument("--log-level", default=None, help=f"logging level (default {cfg.LOG_LEVEL})")
    sub = parser.add_subparsers(dest="command", required=True)

    analyze = sub.add_parser("analyze", help="decide which standard manifolds the input covers")
    analyze.add_argument("--input", required=True, help="JSON file or corpus:NAME")
    target = analyze.add_mutually_exclusive_group()
    target.add_argument("--base", action="append", help="base tag, e.g. CP2 or sum:2,1 (repeatable)")
    target.add_argument("--all", action="store_true", help="every base up to --max-sum summands")
    analyze.add_argument("--max-sum", type=int, default=cfg.DEFAULT_MAX_SUM)
    analyze.add_argument("--embedded", action="store_true", help="show embedded-branch witnesses in the table")
    _add_output(analyze)

    lattice = sub.add_parser("lattice", help="lattice tools")
    lattice_sub = lattice.add_subparsers(dest="action", required=True)
    classify_p = lattice_sub.add_parser("classify", help="canonical form with its change of basis")
    classify_p.add_argument("--input", required=True)
    _add_output(classify_p)

    mono = sub.add_parser("monodromy", help="branch data of simple coverings of S2")
    mono_sub = mono.add_subparsers(dest="action", required=True)
    build = mono_sub.add_parser("build", help="stabilized 2-fold covering of a genus-g surface")
    build.add_argument("-g", "--genus", type=int, required=True)
    build.add_argument("-d", "--degree", type=int, required=True)
    _add_output(build)
    check = mono_sub.add_parser("verify", help="check a branch data file")
    check.add_argument("path", nargs="?", help="branch data JSON file or corpus:NAME")
    check.add_argument("--input", help="same as the positional path")
    _add_output(check)

    plan = sub.add_parser("plan", help="coverings of manifold pairs")
    plan_sub = plan.add_subparsers(dest="action", required=True)
    surface = plan_sub.add_parser("surface", help="(M; F) over (CP2; CP1)")
    surface.add_argument("--self", dest="f_self", type=int, required=True, help="F.F")
    surface.add_argument("--genus", type=int)
    _add_output(surface)
    pair = plan_sub.add_parser("pair", help="(M; F1, F2) over an S2-bundle over S2")
    for name in ("f11", "f12", "f22"):
        pair.add_argument(f"--{name}", type=int, required=True)
    _add_output(pair)
    three = plan_sub.add_parser("three-manifold", help="(M; N) over (S4; S3) or (S3xS1; S3)")
    three.add_argument("--degree", type=int, required=True)
    three.add_argument("--non-disconnecting", action="store_true")
    three.add_argument("--into-sphere", action="store_true", help="target (S4; S3) for non-disconnecting N")
    _add_output(three)
    link = plan_sub.add_parser("link", help="(M; F) over (S4; T_k)")
    link.add_argument("--self-intersections", type=_int_list, required=True)
    link.add_argument("--genera", type=_int_list, required=True)
    link.add_argument("--degree", type=int, required=True)
    link.add_argument("--restriction-degrees", type=_int_list, required=True)
    link.add_argument("--single-sphere", action="store_true", help="target (S4; S2) with d = 4k")
    _add_output(link)

    selfcheck = sub.add_parser("selfcheck", help="verify the built-in constants")
    _add_output(selfcheck)
    return parser


def run_analyze(args) -> int:
    inv = io.parse_invariants(io.read_document(args.input))
    if args.base:
        ctx = planner.PlannerContext(inv)
        reports = [planner.decide(inv, BaseManifold.parse(tag), ctx) for tag in args.base]
    else:
        reports = planner.decide_all(inv, args.max_sum)
    if args.output == "json":
        print(render.dumps(render.report_document(inv, reports)))
    else:
        form = inv.form
        print(f"rank {form.rank}, signature ({form.signature_pos},{form.signature_neg}), {form.parity}, b1 = {inv.b1}")
        print(render.report_table(reports, embedded=args.embedded))
    return cfg.EXIT_INCONCLUSIVE if any(r.inconclusive for r in reports) else cfg.EXIT_OK


def run_classify(args) -> int:
    form = io.parse_form(io.read_document(args.input))
    classification = classify(form)
    if args.output == "json":
        print(render.dumps(render.classification_document(classification)))
    else:
        print(render.classification_text(classification))
    return cfg.EXIT_OK


def run_monodromy(args) -> int:
    if args.action == "build":
        data = monodromy.stabilized_two_fold(args.genus, args.degree)
    else:
        if (args.path is None) == (args.input is None):
            raise InputError("input", "give the branch data file either positionally or with --input")
        data = io.parse_branch_data(io.read_document(args.path or args.input))
    check = monodromy.verify(data)
    if args.output == "json":
        print(render.dumps(render.branch_document(data, check)))
    else:
        print(render.branch_text(data, check))
    return cfg.EXIT_OK if check.ok else cfg.EXIT_INVALID


def run_plan(args) -> int:
    if args.action == "surface":
        plan = planner.plan_surface(args.f_self, args.genus)
    elif args.action == "pair":
        plan = planner.plan_surface_pair(args.f11, args.f12, args.f22)
    elif args.action == "three-manifold":
        plan = planner.plan_3manifold(not args.non_disconnecting, args.degree, args.into_sphere)
    else:
        plan = planner.plan_trivialized_link(
            len(args.self_intersections),
            args.self_intersections,
            args.genera,
            args.degree,
            args.restriction_degrees,
            args.single_sphere,
        )
    if args.output == "json":
        print(render.dumps({"schema": cfg.REPORT_SCHEMA, "plan": plan.to_dict()}))
    else:
        print(render.plan_text(plan))
    return cfg.EXIT_OK


def run_selfcheck(args) -> int:
    tracker = run_checks()
    if args.output == "json":
        print(render.dumps({"summary": tracker.summary(), "checks": tracker.lines()}))
    else:
        print("\n".join(tracker.lines()))
    return cfg.EXIT_OK if tracker.ok else cfg.EXIT_INVALID


COMMANDS = {
    "analyze": run_analyze,
    "lattice": run_classify,
    "monodromy": run_monodromy,
    "plan": run_plan,
    "selfcheck": run_selfcheck,
}


def main(argv: list[str] | None = None) -> int:
    try:
        cfg.load_environment()
        args = build_parser().parse_args(argv)
        level = cfg.log_level(args.log_level or cfg.LOG_LEVEL, "--log-level")
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return cfg.EXIT_INVALID
    logging.basicConfig(level=level, format=cfg.LOG_FORMAT, stream=sys.stderr)
    try:
        return COMMANDS[args.command](args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return cfg.EXIT_INVALID
    except SearchExhausted as exc:
        print(f"inconclusive: {exc}", file=sys.stderr)
        return cfg.EXIT_INCONCLUSIVE
    except PlanError as exc:
        print(f"not covered: {exc}", file=sys.stderr)
        return cfg.EXIT_INVALID
    except CovermapError as exc:
        logger.error("%s", exc)
        print(f"error: {exc}", file=sys.stderr)
        return cfg.EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
