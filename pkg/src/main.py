"""``flexion`` command line: verify named identities, show components, run GIFF series operations."""
import argparse
import logging
import os
import sys
from fractions import Fraction

import yaml

from . import __version__
from .bimould import ExactBackend
from .giff import (
    Derivation,
    PowerSeries,
    ReFamily,
    dilator,
    giff_coproduct,
    giff_exp,
    giff_log,
    ps_compose,
    ps_inverse,
    secondary,
)
from .ratfun import canonical_string
from .units import Primary, UnitError, get_unit, primary
from .utils import ensure_dirs, load_config, setup_logging
from .verify import CheckSpec, Status, UnknownCheck, reports_to_json, resolve_names, run_suite

logger = logging.getLogger(__name__)

EXIT_OK, EXIT_FAILED, EXIT_USAGE = 0, 1, 2

PRIMARY_NAMES = tuple(p.value for p in Primary)
SECONDARY_NAMES = ("ess", "oss", "dess", "doss")
GIFF_OPS = ("compose", "inverse", "exp", "log", "dilator", "coproduct")


class UsageError(ValueError):
    """Command-line input that parses but cannot be acted on."""


def build_parser():
    parser = argparse.ArgumentParser(prog="flexion", description="Exact flexion calculus engine")
    parser.add_argument("--config", default="config.yaml", help="Path to config.yaml")
    parser.add_argument("--log-level", default=None, help="Override logging.level from the config")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    verify = sub.add_parser("verify", help="Run named identity checks")
    verify.add_argument("--check", required=True, help="Check name, or 'all'")
    verify.add_argument("--unit", default=None, help="polar-u, polar-v or custom:PATH")
    verify.add_argument("--backend", choices=("exact", "eval"), default=None)
    verify.add_argument("--max-length", type=int, default=None)
    verify.add_argument("--points", type=int, default=None)
    verify.add_argument("--seed", type=int, default=None)
    verify.add_argument("--prime", type=int, default=None, help="Evaluation modulus (overrides FLEXION_PRIME)")
    verify.add_argument("--gaxit-form", choices=("sigma", "blocks"), default=None)
    verify.add_argument("--jobs", type=int, default=None)
    verify.add_argument("--report", nargs="?", const="", default=None,
                        help="Write a JSON report (to paths.reports_dir when no path is given)")
    verify.add_argument("--timings", dest="timings", action="store_true", default=None,
                        help="Record wall_ms (default unless --report is given)")
    verify.add_argument("--no-timings", dest="timings", action="store_false", default=None,
                        help="Write wall_ms as null")
    verify.add_argument("--no-progress", action="store_true")

    show = sub.add_parser("show", help="Print one exact component")
    show.add_argument("--bimould", required=True,
                      help="ez|es|oz|os|ess|oss|dess|doss|re:<r>|dro:<r>")
    show.add_argument("--unit", default=None)
    show.add_argument("--length", type=int, default=None)
    show.add_argument("--factored", action="store_true")

    giff = sub.add_parser("giff", help="Operations on formal diffeomorphisms")
    giff.add_argument("--op", required=True, choices=GIFF_OPS)
    giff.add_argument("--coeffs", default="", help="Comma list a_1, a_2, ... (eps_1, eps_2, ... for exp)")
    giff.add_argument("--coeffs2", default="", help="Second series for compose")
    giff.add_argument("--order", type=int, required=True)
    return parser


# ---------------------------------------------------------------------------
# verify

def build_specs(args, cfg):
    vcfg = cfg.get("verify", {})
    lengths = vcfg.get("lengths", {})

    def pick(flag, key, default):
        return flag if flag is not None else vcfg.get(key, default)

    prime = args.prime
    if prime is None and cfg.get("field", {}).get("prime"):
        prime = int(cfg["field"]["prime"])
    common = dict(
        unit=pick(args.unit, "unit", "polar-u"),
        backend=pick(args.backend, "backend", "eval"),
        max_length=args.max_length,
        points=int(pick(args.points, "points", 16)),
        seed=int(pick(args.seed, "seed", 7)),
        max_resamples=int(vcfg.get("max_resamples", 64)),
        degree_bound=int(vcfg.get("degree_bound", 2)),
        gaxit_form=pick(args.gaxit_form, "gaxit_form", "sigma"),
        series_order=int(cfg.get("series", {}).get("order", 12)),
        prime=prime,
        tier_lengths=tuple((tier, int(lengths.get(tier, default)))
                           for tier, default in (("cheap", 6), ("series", 5), ("heavy", 4))),
        timings=args.timings if args.timings is not None else args.report is None,
    )
    if common["backend"] not in ("exact", "eval"):
        raise UsageError(f"unknown backend {common['backend']!r}")
    if args.max_length is not None and args.max_length < 1:
        raise UsageError("--max-length must be at least 1")
    get_unit(common["unit"])
    return [CheckSpec(check=name, **common) for name in resolve_names(args.check)]


def _report_path(args, cfg):
    if args.report:
        return args.report
    reports_dir = cfg.get("paths", {}).get("reports_dir", "./output/reports")
    return os.path.join(reports_dir, f"verify_{args.check}.json")


def cmd_verify(args, cfg):
    specs = build_specs(args, cfg)
    jobs = int(args.jobs if args.jobs is not None else cfg.get("verify", {}).get("jobs", 1))
    logger.info(f"Running {len(specs)} check(s) with {jobs} job(s)")
    reports = run_suite(specs, jobs=jobs, progress=not args.no_progress)

    for report in reports:
        line = f"{report.check:<30} {report.status.value:<8} L={report.max_length}"
        if report.wall_ms is not None:
            line += f" {report.wall_ms:.0f} ms"
        if report.witness:
            line += f"  first mismatch: {report.witness['label']} (r={report.witness['r']})"
        elif report.reason:
            line += f"  {report.reason}"
        print(line)

    if args.report is not None:
        path = _report_path(args, cfg)
        ensure_dirs(os.path.dirname(os.path.abspath(path)))
        with open(path, "w") as f:
            f.write(reports_to_json(reports) + "\n")
        logger.info(f"Report written to {path}")

    failed = [r.check for r in reports if r.status is Status.FAIL]
    skipped = [r.check for r in reports if r.status is Status.SKIPPED]
    if skipped:
        logger.warning(f"Skipped: {', '.join(skipped)}")
    if failed:
        logger.error(f"Failed: {', '.join(failed)}")
    if failed or skipped:
        return EXIT_FAILED
    print(f"✅ {len(reports)} check(s) passed")
    return EXIT_OK


# ---------------------------------------------------------------------------
# show

def show_component(name, unit, length=None, factored=False):
    """Canonical string of one exact component of a named bimould."""
    if length is not None and length < 0:
        raise UsageError("--length must be non-negative")
    if ":" in name:
        kind, _, index = name.partition(":")
        if kind not in ("re", "dro") or not index.isdigit() or int(index) < 1:
            raise UsageError(f"expected re:<r> or dro:<r>, got {name!r}")
        index = int(index)
        length = index if length is None else length
        family = ReFamily(unit, ExactBackend(max(length, index)))
        X = family.re(index) if kind == "re" else family.dro(index)
    else:
        length = 2 if length is None else length
        backend = ExactBackend(max(length, 1))
        if name in PRIMARY_NAMES:
            X = primary(unit, name, backend)
        elif name in SECONDARY_NAMES:
            X = secondary(ReFamily(unit, backend), name)
        else:
            raise UsageError(f"unknown bimould {name!r}")
    return canonical_string(X.component(length), factored=factored)


def cmd_show(args, cfg):
    unit = get_unit(args.unit or cfg.get("verify", {}).get("unit", "polar-u"))
    print(show_component(args.bimould, unit, args.length, args.factored))
    return EXIT_OK


# ---------------------------------------------------------------------------
# giff

def parse_coeffs(text):
    try:
        return [Fraction(part.strip()) for part in text.split(",") if part.strip()]
    except (ValueError, ZeroDivisionError) as e:
        raise UsageError(f"cannot read coefficient list {text!r}: {e}") from e


def format_coeffs(values):
    return ",".join(f"{Fraction(c).numerator}/{Fraction(c).denominator}" for c in values)


def giff_op(op, coeffs, coeffs2, order):
    """Result lines of one GIFF operation on explicit coefficient lists."""
    if order < 1:
        raise UsageError("--order must be at least 1")
    if op == "coproduct":
        return [f"{term.r} | {','.join(str(m) for m in term.parts)}" for term in giff_coproduct(order)]
    if op == "exp":
        eps = (list(coeffs) + [0] * order)[:order]
        return [format_coeffs(giff_exp(Derivation(tuple(eps))).coeffs[1:])]
    f = PowerSeries.from_tail(coeffs, order)
    if op == "compose":
        result = ps_compose(f, PowerSeries.from_tail(coeffs2, order)).coeffs[1:]
    elif op == "inverse":
        result = ps_inverse(f).coeffs[1:]
    elif op == "log":
        result = giff_log(f).coeffs
    elif op == "dilator":
        result = dilator(f).coeffs
    else:
        raise UsageError(f"unknown giff operation {op!r}")
    return [format_coeffs(result)]


def cmd_giff(args, cfg):
    for line in giff_op(args.op, parse_coeffs(args.coeffs), parse_coeffs(args.coeffs2), args.order):
        print(line)
    return EXIT_OK


COMMANDS = {"verify": cmd_verify, "show": cmd_show, "giff": cmd_giff}


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        cfg = load_config(args.config)
    except (OSError, yaml.YAMLError) as e:
        print(f"Cannot load configuration {args.config}: {e}", file=sys.stderr)
        return EXIT_USAGE
    setup_logging(cfg, args.log_level)
    # Nested bimould evaluators recurse once per operator layer
    sys.setrecursionlimit(max(sys.getrecursionlimit(), 20000))
    try:
        return COMMANDS[args.command](args, cfg)
    except UnknownCheck as e:
        logger.error(f"Unknown check {e.args[0]!r}")
    except (UnitError, UsageError, ValueError) as e:
        logger.error(str(e))
    return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
