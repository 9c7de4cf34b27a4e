#!/usr/bin/env python3
# multiphase.py: derive, check and inspect field theories written as .thy files
import argparse
import logging
import os
import shutil
import sys
from typing import List, Optional

from i18n import i18n
from src import __version__
from src.checks import run_suites
from src.constants import (
    DEFAULT_SAMPLES,
    DEFAULT_SEED,
    DEFAULT_TOL,
    EXIT_OK,
    EXIT_USAGE,
    EXIT_VERIFICATION_FAILED,
    SHIPPED_THEORIES,
    SUITES,
)
from src.display.report import Report, check_report, derive_report, dumps, noether_report, to_structured, write_report
from src.display.text import render_report
from src.dsl import THEORY_DIR, ElaborationError, load_theory
from src.models import Theory
from src.numverify import SamplePlan
from src.symcore import MultiphaseError

logger = logging.getLogger("multiphase")


# =================== Helpers ===================

def error(message: str):
    print(message, file=sys.stderr)


def resolve_path(path: str) -> str:
    """The path itself, or the shipped theory file of that name."""
    if os.path.exists(path):
        return path
    shipped = os.path.join(THEORY_DIR, os.path.basename(path))
    if os.path.exists(shipped):
        return shipped
    stem = os.path.splitext(os.path.basename(path))[0]
    if stem in SHIPPED_THEORIES:
        return os.path.join(THEORY_DIR, SHIPPED_THEORIES[stem])
    return path


def load(args: argparse.Namespace) -> Optional[Theory]:
    path = resolve_path(args.theory)
    try:
        return load_theory(path)
    except OSError as e:
        error(i18n.t("cli.cannot_read", path=args.theory, reason=e.strerror or str(e)))
    except ElaborationError as e:
        for d in e.diagnostics:
            error(d.format(args.theory))
        error(i18n.t("cli.diagnostic_count", count=len(e.diagnostics)))
    return None


def plan_from(args: argparse.Namespace) -> SamplePlan:
    return SamplePlan(n_samples=args.samples, tol=args.tol, seed=args.seed)


def emit(report: Report, args: argparse.Namespace) -> int:
    """Print or write a report in the requested format."""
    report.settings = {"samples": args.samples, "tol": args.tol, "seed": args.seed}
    if args.format == "structured":
        doc = to_structured(report)
        if args.out:
            if not write_report(doc, args.out):
                error(i18n.t("cli.cannot_write", path=args.out))
                return EXIT_USAGE
            print(i18n.t("cli.written", path=args.out))
            return EXIT_OK
        print(dumps(doc))
        return EXIT_OK
    text = render_report(report)
    if args.out:
        try:
            with open(args.out, "w", encoding="utf-8") as f:
                f.write(text + "\n")
        except (OSError, ValueError) as e:
            error(i18n.t("cli.cannot_write", path=args.out) + f": {e}")
            return EXIT_USAGE
        print(i18n.t("cli.written", path=args.out))
        return EXIT_OK
    print(text)
    return EXIT_OK


# =================== Commands ===================

def cmd_derive(args: argparse.Namespace) -> int:
    theory = load(args)
    if theory is None:
        return EXIT_USAGE
    return emit(derive_report(theory), args)


def cmd_noether(args: argparse.Namespace) -> int:
    theory = load(args)
    if theory is None:
        return EXIT_USAGE
    if not theory.generators:
        error(i18n.t("cli.no_generators", theory=theory.name))
        return EXIT_USAGE
    name = args.generator or next(iter(theory.generators))
    if name not in theory.generators:
        error(i18n.t("cli.unknown_generator", name=name, available=", ".join(theory.generators)))
        return EXIT_USAGE
    report = noether_report(theory, theory.generator(name), seed=args.seed)
    return emit(report, args)


def cmd_check(args: argparse.Namespace) -> int:
    theory = load(args)
    if theory is None:
        return EXIT_USAGE
    generators = [args.generator] if args.generator else None
    if args.generator and args.generator not in theory.generators:
        error(i18n.t("cli.unknown_generator", name=args.generator,
                     available=", ".join(theory.generators)))
        return EXIT_USAGE
    suite_report = run_suites(theory, args.suite or ["all"], plan_from(args), generators)
    status = emit(check_report(suite_report), args)
    if status != EXIT_OK:
        return status
    for r in suite_report.failures():
        error(i18n.t("cli.check_failed", suite=r.suite, name=r.name, detail=r.detail))
    return EXIT_OK if suite_report.passed else EXIT_VERIFICATION_FAILED


def cmd_examples(args: argparse.Namespace) -> int:
    if args.emit:
        try:
            os.makedirs(args.emit, exist_ok=True)
            for filename in SHIPPED_THEORIES.values():
                shutil.copyfile(os.path.join(THEORY_DIR, filename), os.path.join(args.emit, filename))
        except (OSError, ValueError) as e:
            error(i18n.t("cli.cannot_write", path=args.emit) + f": {e}")
            return EXIT_USAGE
        print(i18n.t("cli.emitted", count=len(SHIPPED_THEORIES), path=args.emit))
        return EXIT_OK
    for theory_id, filename in SHIPPED_THEORIES.items():
        print(f"{theory_id:24} {os.path.join(THEORY_DIR, filename)}")
    return EXIT_OK


# =================== Entry point ===================

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--samples", type=int, default=DEFAULT_SAMPLES, help="sample points per numeric check")
    common.add_argument("--tol", type=float, default=DEFAULT_TOL, help="numeric tolerance")
    common.add_argument("--seed", type=int, default=DEFAULT_SEED, help="random seed")
    common.add_argument("--format", choices=["text", "structured"], default="text")
    common.add_argument("--out", default="", help="write the report to this file")
    common.add_argument("--verbose", action="store_true", help="debug logging")
    common.add_argument("--lang", default="", help="message language (locales/<lang>.json)")

    ap = argparse.ArgumentParser(prog="multiphase", description="Covariant field theory engine")
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = ap.add_subparsers(dest="cmd", required=True)

    d = sub.add_parser("derive", parents=[common], help="Legendre transform, Cartan form, field equations")
    d.add_argument("theory", help=".thy file or shipped theory name")
    d.set_defaults(func=cmd_derive)

    n = sub.add_parser("noether", parents=[common], help="momentum map and Noether current of a generator")
    n.add_argument("theory")
    n.add_argument("--generator", default="", help="generator name (default: the first declared)")
    n.set_defaults(func=cmd_noether)

    c = sub.add_parser("check", parents=[common], help="run invariant suites")
    c.add_argument("theory")
    c.add_argument("--suite", action="append", choices=SUITES + ["all"],
                   help="suite to run (repeatable; default: all)")
    c.add_argument("--generator", default="", help="restrict generator-based suites to one generator")
    c.set_defaults(func=cmd_check)

    e = sub.add_parser("examples", parents=[common], help="list or write the shipped theory files")
    e.add_argument("--emit", default="", metavar="DIR", help="copy the shipped files into DIR")
    e.set_defaults(func=cmd_examples)
    return ap


def configure(args: argparse.Namespace):
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr)
    if args.lang:
        i18n.load(args.lang)


def main(argv: Optional[List[str]] = None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        configure(args)
    except (OSError, ValueError) as e:
        error(str(e))
        return EXIT_USAGE
    if args.samples < 1 or args.tol <= 0:
        ap.error(i18n.t("cli.bad_plan"))
    try:
        return args.func(args)
    except MultiphaseError as e:
        error(f"{i18n.t(e.key, default=type(e).__name__)}: {e}")
        return EXIT_VERIFICATION_FAILED


if __name__ == "__main__":
    sys.exit(main())
