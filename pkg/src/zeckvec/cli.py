"""Command-line front end.

Every command parses --c into a recurrence vector (strict mode unless the
command is a probe or --relaxed is given), computes with exact integers, and
writes files atomically.  Identical argv and seed produce byte-identical
output files.  Exit codes: 0 success (a budget-exceeded probe is a valid
result), 1 invalid input, 2 enumeration cap or search budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys

from . import analytics, bridge, normalize, representation
from .errors import (CapExceededError, InvalidRecurrenceError,
                     NonTerminationError, OracleExhaustedError, ZeckvecError)
from .fileio import atomic_write_text
from .recurrence import RecurrenceVector, scalar_term, vector_term

_KIND_LABEL = {
    representation.KIND_SATISFYING: "SR",
    representation.KIND_NEARLY_SATISFYING: "NSR",
    representation.KIND_OTHER: "Other",
}


class _CliError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def __init__(self, *args, **kwargs):
        super().__init__(*args, **kwargs)
        # let vector literals like -4,0 pass as option values
        self._negative_number_matcher = re.compile(r"^-\d[\d,-]*$")

    def error(self, message):
        raise _CliError(message)


def _enumeration_cap() -> int:
    raw = os.environ.get("ZECKVEC_CAP")
    if raw is None:
        return bridge.DEFAULT_ENUMERATION_CAP
    try:
        return int(raw)
    except ValueError:
        raise _CliError("ZECKVEC_CAP must be an integer, got %r" % raw)


def _recurrence(text: str, relaxed: bool) -> RecurrenceVector:
    try:
        coeffs = representation.parse_vector(text)
    except ValueError:
        raise _CliError("could not parse coefficients: %r" % text)
    return RecurrenceVector(coeffs, relaxed=relaxed)


def _parse_string(text: str) -> tuple:
    try:
        return representation.parse_coefficients(text)
    except ValueError as exc:
        raise _CliError(str(exc))


def _write_trace(path: str, trace: normalize.NormalizationTrace):
    lines = []
    for step in trace.steps:
        lines.append(json.dumps({
            "op": step.op,
            "pos": step.pos,
            "string": representation.format_coefficients(step.string),
            "G": step.mass,
            "count": step.count,
        }, sort_keys=True))
    atomic_write_text(path, "\n".join(lines) + ("\n" if lines else ""))


def _cmd_seq(args) -> int:
    c = _recurrence(args.c, relaxed=args.relaxed)
    if args.stop < args.start:
        raise _CliError("--to must be >= --from")
    for n in range(args.start, args.stop + 1):
        print(scalar_term(c, n))
    return 0


def _cmd_vec(args) -> int:
    c = _recurrence(args.c, relaxed=args.relaxed)
    if args.stop < args.start:
        raise _CliError("--to must be >= --from")
    for n in range(args.start, args.stop + 1):
        print("(%s)" % representation.format_vector(vector_term(c, n)))
    return 0


def _cmd_decompose(args) -> int:
    c = _recurrence(args.c, relaxed=False)
    v = representation.parse_vector(args.v)
    trace = normalize.NormalizationTrace() if args.trace else None
    result = normalize.decompose(c, v, trace=trace)
    print(representation.format_coefficients(result))
    if args.trace:
        _write_trace(args.trace, trace)
    return 0


def _cmd_verify(args) -> int:
    c = _recurrence(args.c, relaxed=args.relaxed)
    a = _parse_string(args.a)
    cls = representation.classify(c, a)
    value = representation.evaluate(c, a)
    print("kind: %s" % _KIND_LABEL[cls.kind])
    print("value: %s" % representation.format_vector(value))
    if cls.kind != representation.KIND_SATISFYING:
        result = representation.scan(c, representation.canonical(a))
        coeffs = c.coefficients
        have = representation.canonical(a)[result.fail_pos - 1]
        if have > coeffs[result.matched]:
            print("reason: element %d at position %d is too large (limit %d)"
                  % (have, result.fail_pos, coeffs[result.matched]))
        else:
            print("reason: full copy of the coefficients ending at position %d"
                  % result.fail_pos)
    if cls.kind == representation.KIND_NEARLY_SATISFYING:
        print("witness: %d" % cls.witness)
        print("first_overfilled: %d" % cls.first_overfilled)
        print("end_complete: %s" % ("true" if cls.end_complete else "false"))
    return 0


def _cmd_regions(args) -> int:
    c = _recurrence(args.c, relaxed=False)
    cap = _enumeration_cap()
    if args.csv:
        bridge.export_regions_csv(c, args.n, args.csv, cap=cap)
        print("wrote %s" % args.csv)
    if args.svg:
        if c.k != 3:
            print("svg skipped: rendering is planar only (k = 3); csv has the data",
                  file=sys.stderr)
        else:
            bridge.export_regions_svg(c, args.n, args.svg, cap=cap)
            print("wrote %s" % args.svg)
    if not args.csv and not args.svg:
        region = bridge.support_region(c, args.n, cap=cap)
        print("points: %d" % len(region))
    return 0


def _cmd_stats(args) -> int:
    c = _recurrence(args.c, relaxed=False)
    cap = _enumeration_cap()
    if args.n_max < args.n_min:
        raise _CliError("--n-max must be >= --n-min")
    stats = []
    for n in range(args.n_min, args.n_max + 1):
        if args.sample:
            stats.append(analytics.summand_distribution(
                c, n, mode="sampled", size=args.sample, seed=args.seed, cap=cap))
        else:
            stats.append(analytics.summand_distribution(c, n, mode="exact", cap=cap))
        s = stats[-1]
        print("n=%d mean=%.6g variance=%.6g skewness=%.6g excess_kurtosis=%.6g"
              % (s.n, s.mean, s.variance, s.skewness, s.excess_kurtosis))
    if len(stats) >= 3:
        report = analytics.gaussian_diagnostics(c, stats)
        print("mean fit: slope=%.6g intercept=%.6g r2=%.6g"
              % (report.mean_fit.slope, report.mean_fit.intercept,
                 report.mean_fit.r_squared))
        print("variance fit: slope=%.6g intercept=%.6g r2=%.6g"
              % (report.variance_fit.slope, report.variance_fit.intercept,
                 report.variance_fit.r_squared))
        if report.lekkerkerker:
            print("fibonacci mean slope: %.6g target %.6g deviation %.2g"
                  % (report.lekkerkerker["slope"], report.lekkerkerker["target"],
                     report.lekkerkerker["deviation"]))
    if args.json:
        analytics.export_stats_json(c, stats, args.json)
        print("wrote %s" % args.json)
    if args.csv:
        analytics.export_series_csv(stats, args.csv)
        print("wrote %s" % args.csv)
    return 0


def _cmd_minimality(args) -> int:
    c = _recurrence(args.c, relaxed=False)
    cap = _enumeration_cap()
    region = bridge.support_region(c, args.n, cap=cap)
    bound = args.bound if args.bound else args.n + c.k
    failures = 0
    for v in region.vectors():
        res = analytics.check_minimality(c, v, support_bound=bound)
        if not res.minimal:
            failures += 1
        print("v=(%s) sr_count=%d oracle_min=%d minimal=%s"
              % (representation.format_vector(v), res.sr_count, res.oracle_min,
                 "true" if res.minimal else "false"))
    print("summary: %d/%d minimal" % (len(region) - failures, len(region)))
    return 0


def _cmd_probe(args) -> int:
    c = _recurrence(args.c, relaxed=True)
    a = _parse_string(args.a)
    report = normalize.probe_termination(c, a, budget=args.budget)
    print("outcome: %s" % report.outcome)
    print("steps: %d" % report.steps)
    if report.terminated:
        print("final: %s" % representation.format_coefficients(report.result))
    else:
        print("reason: %s" % report.reason)
        print("last: %s" % representation.format_coefficients(report.last))
    print("max_support: %d" % report.max_support)
    head = [representation.format_coefficients(s) for s in report.trace.strings()[:3]]
    for idx, text in enumerate(head, 1):
        print("intermediate_%d: %s" % (idx, text))
    if report.suffix_period:
        block, reps = report.suffix_period
        print("repeating_block: %s x%d" % (representation.format_coefficients(block), reps))
    if args.trace:
        _write_trace(args.trace, report.trace)
    return 0


def _cmd_cover(args) -> int:
    c = _recurrence(args.c, relaxed=False)
    print(bridge.ball_coverage(c, args.r, cap=_enumeration_cap()))
    return 0


def _build_parser() -> _Parser:
    parser = _Parser(prog="zeckvec", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, relaxed_flag=False):
        p.add_argument("--c", required=True, help="recurrence coefficients, e.g. 2,1,1")
        if relaxed_flag:
            p.add_argument("--relaxed", action="store_true",
                           help="permit non weakly decreasing coefficients")

    p = sub.add_parser("seq", help="scalar terms, one per line")
    common(p, relaxed_flag=True)
    p.add_argument("--from", dest="start", type=int, required=True)
    p.add_argument("--to", dest="stop", type=int, required=True)
    p.set_defaults(func=_cmd_seq)

    p = sub.add_parser("vec", help="vector terms as tuples")
    common(p, relaxed_flag=True)
    p.add_argument("--from", dest="start", type=int, required=True)
    p.add_argument("--to", dest="stop", type=int, required=True)
    p.set_defaults(func=_cmd_vec)

    p = sub.add_parser("decompose", help="unique satisfying representation of a vector")
    common(p)
    p.add_argument("--v", required=True, help="target vector, e.g. -4,0")
    p.add_argument("--trace", help="write the rewriting steps as JSON lines")
    p.set_defaults(func=_cmd_decompose)

    p = sub.add_parser("verify", help="classify a coefficient string")
    common(p, relaxed_flag=True)
    p.add_argument("--a", required=True, help="coefficient string, e.g. 2,4,2,0,1")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("regions", help="export representable regions")
    common(p)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--csv")
    p.add_argument("--svg")
    p.set_defaults(func=_cmd_regions)

    p = sub.add_parser("stats", help="summand count distributions and growth fits")
    common(p)
    p.add_argument("--n-min", dest="n_min", type=int, required=True)
    p.add_argument("--n-max", dest="n_max", type=int, required=True)
    p.add_argument("--sample", type=int, help="sample size (exact sweep if omitted)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--json", help="write per-window records")
    p.add_argument("--csv", help="write the (n, mean, variance) series")
    p.set_defaults(func=_cmd_stats)

    p = sub.add_parser("minimality", help="compare string mass against the search oracle")
    common(p)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--bound", type=int)
    p.set_defaults(func=_cmd_minimality)

    p = sub.add_parser("probe", help="run the rewriting loop under a budget")
    common(p)
    p.add_argument("--a", required=True)
    p.add_argument("--budget", type=int, default=normalize.DEFAULT_BUDGET)
    p.add_argument("--trace", help="write the rewriting steps as JSON lines")
    p.set_defaults(func=_cmd_probe)

    p = sub.add_parser("cover", help="minimum region index covering a sup-norm ball")
    common(p)
    p.add_argument("--r", type=int, required=True)
    p.set_defaults(func=_cmd_cover)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except _CliError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 1
    except (InvalidRecurrenceError, ValueError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 1
    except (CapExceededError, OracleExhaustedError, NonTerminationError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2
    except ZeckvecError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
