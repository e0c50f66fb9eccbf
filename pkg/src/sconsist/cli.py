"""Command line interface.

Subcommands: check (full s-consistency analysis), decompose (difference
decomposition only), limit (continuous limit of one expression) and nf
(difference or differential Janet normal form of one expression).

Exit codes: 0 success (and s-consistent for check), 1 completed but not
s-consistent, 2 resource limit exceeded, 3 input error.
"""

from __future__ import annotations

import argparse
import sys

from . import difference, differential, frontend, limit as limit_mod, sconsistency
from .difference import DecompositionLimitError, Trace
from .frontend import ParseError
from .reduction import is_passive, janet_normal_form
from .ring import RingError

EXIT_OK = 0
EXIT_NOT_SCONSISTENT = 1
EXIT_RESOURCE = 2
EXIT_INPUT = 3


def _add_common(sub):
    sub.add_argument("input", help="session file, or - for stdin")
    sub.add_argument("--json", action="store_true", help="emit a JSON report")
    sub.add_argument("--max-taylor-order", type=int, default=12)
    sub.add_argument("--step-limit", type=int, default=2000)
    sub.add_argument("--trace", metavar="FILE", help="write a decomposition trace log")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sconsist",
        description="strong-consistency analysis of finite difference approximations",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("check", help="run the full s-consistency check")
    _add_common(p)
    p.add_argument("--all-witnesses", action="store_true",
                   help="report every failing equation instead of the first")
    p.add_argument("--trust-simple", action="store_true",
                   help="accept an 'unknown' simplicity verdict for the pde system")

    p = subs.add_parser("decompose", help="difference decomposition only")
    _add_common(p)

    p = subs.add_parser("limit", help="continuous limit of one difference expression")
    _add_common(p)
    p.add_argument("--expr", required=True, help="difference expression")

    p = subs.add_parser("nf", help="Janet normal form of one expression")
    _add_common(p)
    p.add_argument("--expr", required=True)
    p.add_argument("--ring", choices=("fda", "pde"), default="fda")
    return parser


def _read_session(args):
    if args.input == "-":
        text = sys.stdin.read()
    else:
        with open(args.input, "r", encoding="utf-8") as fh:
            text = fh.read()
    return frontend.parse(text)


def _emit(doc, args, trace):
    print(frontend.report(doc, "json" if args.json else "text"))
    if args.trace and trace is not None:
        with open(args.trace, "w", encoding="utf-8") as fh:
            for line in trace.render_lines():
                fh.write(line + "\n")


def _base_doc(command, config, **extra):
    doc = {
        "command": command,
        "config": config.to_json(),
        "systems": [],
        "dropped": 0,
        "overall": None,
    }
    doc.update(extra)
    return doc


def cmd_check(args) -> int:
    session = _read_session(args)
    config = session.config
    if not session.pde_equations or not session.fda_equations:
        print("error: check needs both a pde and an fda block", file=sys.stderr)
        return EXIT_INPUT
    trace = Trace() if args.trace else None
    S = differential.make_simple_system(
        session.pde_equations,
        config.pde_ranking,
        config.symbol_order,
        inequations=session.pde_inequations,
        trust=args.trust_simple,
    )
    if S.verdict != "yes" and not args.trust_simple:
        print(
            "error: the differential system's simplicity is "
            f"{S.verdict} ({'; '.join(S.reasons)}); pass --trust-simple to proceed",
            file=sys.stderr,
        )
        return EXIT_INPUT
    options = sconsistency.CheckOptions(
        all_witnesses=args.all_witnesses,
        max_taylor_order=args.max_taylor_order,
        step_limit=args.step_limit,
    )
    result = sconsistency.check(
        S, session.fda_equations, config.fda_ranking, config.symbol_order,
        options, trace,
    )
    doc = frontend.report_check(result, config)
    if S.verdict != "yes":
        doc["trusted_simplicity"] = S.verdict
    _emit(doc, args, trace)
    return EXIT_OK if result.overall else EXIT_NOT_SCONSISTENT


def cmd_decompose(args) -> int:
    session = _read_session(args)
    config = session.config
    if not session.fda_equations:
        print("error: decompose needs an fda block", file=sys.stderr)
        return EXIT_INPUT
    trace = Trace() if args.trace else None
    systems = difference.decompose(
        session.fda_equations,
        config.fda_ranking,
        config.symbol_order,
        inequations=session.fda_inequations,
        step_limit=args.step_limit,
        trace=trace,
    )
    doc = frontend.report_decompose(systems, config)
    _emit(doc, args, trace)
    return EXIT_OK


def cmd_limit(args) -> int:
    session = _read_session(args)
    config = session.config
    raw = frontend.expand_macros(args.expr, config)
    cleared, _ = frontend.clear_negative_shifts_and_denominators(raw, config)
    if cleared.is_zero:
        print("error: the expression is zero", file=sys.stderr)
        return EXIT_INPUT
    res = limit_mod.continuous_limit(cleared, args.max_taylor_order)
    doc = _base_doc(
        "limit",
        config,
        limit={"d": res.d, "f": frontend.render_poly(res.f, config)},
    )
    _emit(doc, args, None)
    return EXIT_OK


def cmd_nf(args) -> int:
    session = _read_session(args)
    config = session.config
    if args.ring == "fda":
        if not session.fda_equations:
            print("error: nf --ring fda needs an fda block", file=sys.stderr)
            return EXIT_INPUT
        flag, reduced = difference.auto_reduce(session.fda_equations, config.fda_ranking)
        if not flag:
            print("error: the fda system is not auto-reduced", file=sys.stderr)
            return EXIT_INPUT
        T = difference.janet_complete(
            reduced, config.fda_ranking, config.symbol_order
        )
        raw = frontend.expand_macros(args.expr, config)
        target, _ = frontend.clear_negative_shifts_and_denominators(raw, config)
        result = janet_normal_form(target, T, config.fda_ranking)
        passive = is_passive(T)
    else:
        if not session.pde_equations:
            print("error: nf --ring pde needs a pde block", file=sys.stderr)
            return EXIT_INPUT
        S = differential.make_simple_system(
            session.pde_equations,
            config.pde_ranking,
            config.symbol_order,
            inequations=session.pde_inequations,
            trust=True,
        )
        target = frontend.parse_differential_expression(args.expr, config)
        result = differential.janet_normal_form_diff(target, S)
        passive = True
    doc = _base_doc(
        "nf",
        config,
        nf=frontend.render_poly(result.normal_form, config),
        multiplier=frontend.render_poly(result.multiplier, config),
        passive=passive,
    )
    _emit(doc, args, None)
    return EXIT_OK


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    handlers = {
        "check": cmd_check,
        "decompose": cmd_decompose,
        "limit": cmd_limit,
        "nf": cmd_nf,
    }
    try:
        return handlers[args.command](args)
    except DecompositionLimitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        if args.trace and exc.trace is not None:
            with open(args.trace, "w", encoding="utf-8") as fh:
                for line in exc.trace.render_lines():
                    fh.write(line + "\n")
        return EXIT_RESOURCE
    except (ParseError, sconsistency.InputError, limit_mod.LimitError,
            differential.DifferentialError, difference.DifferenceError,
            RingError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
