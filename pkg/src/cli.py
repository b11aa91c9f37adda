"""Command-line front end.

Machine mode prints a ``LABEL`` line where one applies, then one
``CHECK``/``NOTE`` line per assertion sorted by id, and nothing else on
stdout. Exit codes: 0 all checks pass, 1 a check failed, 2 unreadable input,
3 a budget was exceeded, 4 a precondition was not met.
"""

import argparse
import logging
import sys

import pandas as pd

from .algebra_core import LABEL_DISPLAY, product_algebra
from .algebra_loader import AlgebraLoader, emit_algebra
from .catalog import CATALOG, EXCLUDED, build
from .chain_ring import ring_tables
from .exceptions import (AlgebraError, BudgetExceededError, InvalidTableError, NotSemiLowError,
                         ParseError, PreconditionError)
from .utils import (get_config, print_error, print_info, print_section_header, print_success, print_warning,
                    setup_logging)
from .verification_engine import VerificationEngine

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_PARSE = 2
EXIT_BUDGET = 3
EXIT_PRECONDITION = 4


def _members(text):
    return [int(v) for v in text.replace(",", " ").split()]


def _parse_args(argv):
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", default="config/config.yaml", help="YAML configuration file")
    common.add_argument("--window", type=int, help="ring claims are checked on |x| <= window*u")
    common.add_argument("--seed", type=int, help="seed for every sampled check")
    common.add_argument("--budget", type=int, help="random words in the segment closure check")
    common.add_argument("--machine", action="store_true", help="deterministic CHECK/NOTE lines only")
    common.add_argument("--report", action="store_true", help="also write a JSON report")
    common.add_argument("--log-level", help="overrides logging.level")

    parser = argparse.ArgumentParser(prog="mvp-verify", description="Finite MV-algebras with product")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", parents=[common], help="strongest variety of the tower")
    p.add_argument("source", help="algebra file or catalog:<expression>")
    p.add_argument("--exhaustive", action="store_true", help="evaluate every axiom, keep every witness")

    for name, text in (("ideals", "ideal lattice with flags"),
                       ("spectrum", "prime spectra and the subdirect embedding"),
                       ("ring-table", "addition and multiplication of the pair ring on a window"),
                       ("verify-equivalence", "round trips between the algebra and its ring"),
                       ("verify", "every stage that applies")):
        p = sub.add_parser(name, parents=[common], help=text)
        p.add_argument("source", help="algebra file or catalog:<expression>")

    p = sub.add_parser("quotient", parents=[common], help="quotient by an ideal")
    p.add_argument("source", help="algebra file or catalog:<expression>")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--ideal", type=_members, help="members, e.g. 0,1")
    group.add_argument("--generators", type=_members, help="generators of the ideal")

    p = sub.add_parser("verify-coextensive", parents=[common], help="idempotent splits and pushouts")
    p.add_argument("source", nargs="?", help="algebra file or catalog:<expression>")
    p.add_argument("--left", help="first factor A of C = AxB")
    p.add_argument("--right", help="second factor B of C = AxB")
    p.add_argument("--probes", nargs="+", help="catalog expressions of probe algebras")

    p = sub.add_parser("catalog", parents=[common], help="named example algebras")
    p.add_argument("action", choices=["list", "emit", "check"])
    p.add_argument("name", nargs="?", help="catalog expression for emit")
    p.add_argument("--output", help="write the emitted algebra to this file")

    return parser.parse_args(argv)


def _configure(args):
    config = get_config(args.config)
    for key, value in (("window", args.window), ("seed", args.seed), ("word_budget", args.budget)):
        if value is not None:
            config['verification'][key] = value
    level = args.log_level or config['logging']['level']
    setup_logging(level, config['logging'].get('file'), config['logging'].get('format'))
    return config


def _emit(report, args, label=None, table=None):
    if args.machine:
        if label is not None:
            print(f"LABEL {label}")
        for line in report.to_lines():
            print(line)
        return
    print_section_header(report.name)
    if label is not None:
        print_info(f"LABEL {label}")
    if table is not None:
        print(table.to_string())
    if report.checks:
        print(report.to_frame().to_string(index=False))
    for note in sorted(report.notes, key=lambda n: n.id):
        print(note.line())
    if report.passed:
        print_success(f"{len(report.checks)} checks passed")
    else:
        print_error(f"{len(report.failures)} of {len(report.checks)} checks failed")


def _finish(engine, report, args, label=None, table=None):
    _emit(report, args, label, table)
    if args.report:
        engine.save_report(report)
    return EXIT_OK if report.passed else EXIT_FAILED


def cmd_classify(args, engine, loader):
    A = loader.load(args.source)
    verdict, report = engine.run_classification(A, exhaustive=args.exhaustive)
    return _finish(engine, report, args, LABEL_DISPLAY[verdict.label])


def cmd_ideals(args, engine, loader):
    A = loader.load(args.source)
    _, report = engine.run_ideals(A)
    table = None if args.machine else pd.DataFrame(report.facts['ideals'])
    return _finish(engine, report, args, table=table)


def cmd_spectrum(args, engine, loader):
    A = loader.load(args.source)
    _, report = engine.run_spectrum(A)
    return _finish(engine, report, args)


def cmd_quotient(args, engine, loader):
    A = loader.load(args.source)
    factor, _, report = engine.run_quotient(A, members=args.ideal, generators=args.generators)
    code = _finish(engine, report, args)
    if not args.machine:
        print(emit_algebra(factor), end="")
    return code


def cmd_ring_table(args, engine, loader):
    A = loader.load(args.source)
    add, mul = ring_tables(A, bound=args.window or 1)
    if args.machine:
        for label, frame in (("ADD", add), ("MUL", mul)):
            for row in frame.index:
                print(f"{label} {row} " + " ".join(frame.loc[row]))
        return EXIT_OK
    print_section_header(f"{A.name}# addition")
    print(add.to_string())
    print_section_header(f"{A.name}# multiplication")
    print(mul.to_string())
    return EXIT_OK


def cmd_verify_equivalence(args, engine, loader):
    A = loader.load(args.source)
    report = engine.run_equivalence(A)
    return _finish(engine, report, args)


def cmd_verify(args, engine, loader):
    A = loader.load(args.source)
    verdict, report = engine.run_complete_verification(A)
    return _finish(engine, report, args, LABEL_DISPLAY[verdict.label])


def cmd_verify_coextensive(args, engine, loader):
    probes = [build(name) for name in args.probes] if args.probes else None
    if args.left or args.right:
        if not (args.left and args.right):
            raise PreconditionError("--left and --right go together")
        A, B = loader.load(args.left), loader.load(args.right)
        C = product_algebra(A, B)
        report = engine.run_pushout(A, B, C, tuple(C.elements), probes)
    elif args.source:
        report = engine.run_coextensivity(loader.load(args.source), probes)
    else:
        raise PreconditionError("give an algebra or --left/--right")
    return _finish(engine, report, args)


def cmd_catalog(args, engine, loader):
    if args.action == "list":
        for entry in CATALOG:
            print(f"{entry.name} {LABEL_DISPLAY[entry.label]}")
        if not args.machine:
            for name, reason in EXCLUDED.items():
                print_warning(f"excluded: {name} ({reason})")
        return EXIT_OK
    if args.action == "emit":
        if not args.name:
            raise PreconditionError("catalog emit needs a name")
        algebra = build(args.name)
        if args.output:
            loader.write_file(algebra, args.output)
            if not args.machine:
                print_success(f"{algebra.name} written to {args.output}")
        else:
            print(emit_algebra(algebra), end="")
        return EXIT_OK
    return _finish(engine, engine.run_catalog_check(), args)


COMMANDS = {
    "classify": cmd_classify,
    "ideals": cmd_ideals,
    "spectrum": cmd_spectrum,
    "quotient": cmd_quotient,
    "ring-table": cmd_ring_table,
    "verify-equivalence": cmd_verify_equivalence,
    "verify": cmd_verify,
    "verify-coextensive": cmd_verify_coextensive,
    "catalog": cmd_catalog,
}


def main(argv=None):
    args = _parse_args(argv)
    config = _configure(args)
    engine = VerificationEngine(config)
    loader = AlgebraLoader(config)
    try:
        return COMMANDS[args.command](args, engine, loader)
    except (ParseError, InvalidTableError) as e:
        logger.debug(f"❌ {e}")
        print(f"ERROR parse {e}", file=sys.stderr)
        return EXIT_PARSE
    except BudgetExceededError as e:
        logger.debug(f"❌ {e}")
        print(f"ERROR budget {e}", file=sys.stderr)
        return EXIT_BUDGET
    except (PreconditionError, NotSemiLowError, AlgebraError) as e:
        logger.debug(f"❌ {e}")
        print(f"ERROR precondition {e}", file=sys.stderr)
        return EXIT_PRECONDITION


if __name__ == "__main__":
    sys.exit(main())
