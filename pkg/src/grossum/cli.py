"""Batch command-line surface over the whole package.

Each subcommand wraps one module operation with three output styles
(text, json, csv) and stable exit codes: 2 when input text does not
parse, 3 when a well-formed expression refuses to instantiate, and
for the dots judgement 0/1/4 mapping Holds/Fails/Inconclusive.  All
numeric JSON output is decimal strings, never binary floats, and a
fixed configuration always produces byte-identical output.
"""

import argparse
import csv
import io
import json
import os
import sys
from dataclasses import dataclass
from fractions import Fraction

from . import scalar as S
from .analysis import (
    QuadratureSpec,
    generic_integral,
    pi_reference,
    pi_root_formula,
    viete_product,
)
from .errors import EvaluationError, ExprSyntaxError
from .expr import Bindings, Parity, instantiate, to_string
from .parser import parse
from .series import (
    POWER_SUM_IDENTITIES,
    evens,
    evens_inside,
    geometric_closed_form,
    geometric_sum,
    naturals,
    odds,
    squares,
)
from .verdicts import (
    NSchedule,
    dot_equal,
    limit_estimate,
    parse_schedule,
    split_predicate,
    transfer_check,
)
from .zeta import euler_product_Z, truncated_zeta_ZZ

EXIT_OK = 0
EXIT_FAILS = 1
EXIT_SYNTAX = 2
EXIT_EVAL = 3
EXIT_INCONCLUSIVE = 4

_GAP_DIGITS = 16

_SET_BUILDERS = {
    "naturals": naturals,
    "evens": evens,
    "odds": odds,
    "squares": squares,
    "evens-inside": evens_inside,
}

_SEED_DOC = """\
Worked examples, one command per canonical computation:

  triangular number at G=100     grossum eval "sum(k, 1, G, k)" --G 100
  geometric closed form          grossum eval "(1-x^(G+1))/(1-x)" --G 5 --x 2
  parity collapse of (-1)^G      grossum eval "(-1)^G" --G 6 --parity even
  identity library               grossum sum --G 10
  generic sets and sizes         grossum set evens --G 8
  infinitesimal closeness        grossum dots "G*sin(1/G)" "1"
  divergent pair (exit 1)        grossum dots "(1+1/G)^G" "3"
  transfer-principle scan        grossum transfer "n^2 > 100*n" --window 1..200
  limit classification           grossum limit "(1+1/G)^G"
  finite Euler product           grossum zeta --s 2 --M 100
  doubly truncated zeta          grossum zeta --s 2 --M 2 --cap 2 --exact
  truncation sweep as CSV        grossum zeta --s 2 --M 3 --cap 0..16 --format csv
  generic Riemann sum            grossum integrate "exp(-(x^2/2))" --N 20
  pi by nested square roots      grossum pi --steps 20 --format csv
  pi by the cosine product       grossum pi --steps 20 --formula viete
"""


@dataclass(frozen=True)
class RunConfig:
    """Shared run parameters every subcommand receives."""

    precision: int
    schedule: NSchedule
    fmt: str
    out: str = None

    def __post_init__(self):
        S._check_precision(self.precision)
        if len(self.schedule.points()) < 4:
            raise ValueError("schedule must provide at least 4 points")


def _emit(text, config):
    data = text if text.endswith("\n") else text + "\n"
    if config.out:
        with open(config.out, "w") as fh:
            fh.write(data)
    else:
        sys.stdout.write(data)


def _csv_text(header, rows):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow(row)
    return buf.getvalue()


def _render(value, prec):
    """format_numeric, demoting exact values too wide to print whole."""
    if S.is_exact(value) and S._exact_digit_size(value) > 4 * prec:
        return S.format_numeric(S.to_precision(value, prec))
    return S.format_numeric(value)


def _gap_text(a, b, prec):
    """|a - b| as a short decimal string."""
    d = S.num_sub(a, b)
    if S.is_zero(d):
        return "0"
    return S.decimal_str(S.to_precision(S.modulus(d, prec), _GAP_DIGITS))


def _parse_parity(tag):
    if tag is None:
        return Parity.UNSPECIFIED
    return Parity.EVEN if tag == "even" else Parity.ODD


def _parse_range(text, what):
    """'7' -> [7]; '0..16' -> [0, 1, ..., 16]."""
    if ".." in text:
        lo_s, hi_s = text.split("..", 1)
        lo, hi = int(lo_s), int(hi_s)
        if hi < lo:
            raise ValueError(f"{what} range is empty: {text}")
        return list(range(lo, hi + 1))
    return [int(text)]


def _collect_vars(extras):
    """Turn leftover '--name value' pairs into a bindings dict."""
    out = {}
    i = 0
    while i < len(extras):
        tok = extras[i]
        if not tok.startswith("--") or len(tok) <= 2:
            raise ValueError(f"unexpected argument {tok!r}")
        name = tok[2:]
        if not name.isalpha() or not name.isascii():
            raise ValueError(f"binding name must be ASCII letters: {tok!r}")
        if i + 1 >= len(extras):
            raise ValueError(f"missing value for binding {tok!r}")
        out[name] = S.numeric_from_string(extras[i + 1])
        i += 2
    return out


def _no_extras(extras):
    if extras:
        raise ValueError(f"unexpected argument {extras[0]!r}")


# ----------------------------------------------------------------------
# subcommands
# ----------------------------------------------------------------------

def cmd_eval(args, config, extras):
    tree = parse(args.expr)
    binds = Bindings(
        grossone=args.G,
        vars=_collect_vars(extras),
        parity=_parse_parity(args.parity),
    )
    value = instantiate(tree, binds, precision=config.precision)
    shown = _render(value, config.precision)
    if config.fmt == "json":
        payload = {
            "expr": to_string(tree),
            "bindings": {k: str(v) for k, v in sorted(binds.vars.items())},
            "G": binds.grossone,
            "parity": binds.parity.name.lower(),
            "precision": config.precision,
            "value": shown,
        }
        _emit(json.dumps(payload, indent=2), config)
    elif config.fmt == "csv":
        _emit(_csv_text(["expr", "G", "precision", "value"],
                        [[to_string(tree), args.G, config.precision,
                          shown]]), config)
    else:
        lines = [f"expr: {to_string(tree)}"]
        if binds.grossone is not None:
            lines.append(f"G: {binds.grossone}")
        if binds.parity is not Parity.UNSPECIFIED:
            lines.append(f"parity: {binds.parity.name.lower()}")
        for name, val in sorted(binds.vars.items()):
            lines.append(f"{name}: {val}")
        lines.append(f"precision: {config.precision}")
        lines.append(f"value: {shown}")
        _emit("\n".join(lines), config)
    return EXIT_OK


def cmd_sum(args, config, extras):
    _no_extras(extras)
    x = S.numeric_from_string(args.x)
    pairs = [(name, *factory()) for name, factory in POWER_SUM_IDENTITIES]
    from .expr import con
    xe = con(x)
    pairs.append(
        ("geometric_base_x", geometric_sum(xe), geometric_closed_form(xe))
    )
    rows = []
    for name, lhs, rhs in pairs:
        row = {"name": name, "sum_form": to_string(lhs),
               "closed_form": to_string(rhs)}
        if args.G is not None:
            b = Bindings(grossone=args.G)
            row["lhs_at_G"] = _render(
                instantiate(lhs, b, precision=config.precision),
                config.precision)
            row["rhs_at_G"] = _render(
                instantiate(rhs, b, precision=config.precision),
                config.precision)
        rows.append(row)
    cols = list(rows[0].keys())
    if config.fmt == "json":
        _emit(json.dumps({"G": args.G, "identities": rows}, indent=2),
              config)
    elif config.fmt == "csv":
        _emit(_csv_text(cols, [[r[c] for c in cols] for r in rows]), config)
    else:
        lines = []
        for r in rows:
            lines.append(f"{r['name']}: {r['sum_form']} == {r['closed_form']}")
            if args.G is not None:
                lines.append(
                    f"  at G={args.G}: {r['lhs_at_G']} == {r['rhs_at_G']}")
        _emit("\n".join(lines), config)
    return EXIT_OK


def cmd_set(args, config, extras):
    _no_extras(extras)
    gset = _SET_BUILDERS[args.name]()
    parity = _parse_parity(args.parity)
    members = None
    if args.G is not None:
        members = gset.members(args.G, parity)
    if config.fmt == "json":
        payload = {
            "label": gset.label,
            "element": to_string(gset.element),
            "upper": to_string(gset.upper),
            "size": to_string(gset.size),
            "G": args.G,
            "members": members,
        }
        _emit(json.dumps(payload, indent=2), config)
    elif config.fmt == "csv":
        if members is None:
            raise ValueError("csv output for `set` needs --G")
        _emit(_csv_text(["k", "member"],
                        [[k + 1, v] for k, v in enumerate(members)]), config)
    else:
        lines = [
            f"set: {gset.label}",
            f"element: {to_string(gset.element)}",
            f"upper: {to_string(gset.upper)}",
            f"size: {to_string(gset.size)}",
        ]
        if members is not None:
            shown = " ".join(str(v) for v in members)
            lines.append(f"members at G={args.G}: {shown}")
        _emit("\n".join(lines), config)
    return EXIT_OK


def cmd_dots(args, config, extras):
    _no_extras(extras)
    lhs = parse(args.lhs)
    rhs = parse(args.rhs)
    verdict = dot_equal(lhs, rhs, schedule=config.schedule,
                        precision=config.precision)
    if config.fmt == "json":
        _emit(verdict.to_json(), config)
    elif config.fmt == "csv":
        _emit(_csv_text(["n", "value", "gap"],
                        [[t["n"], t["value"], t["gap"]]
                         for t in verdict.trace]), config)
    else:
        lines = [f"outcome: {verdict.outcome}"]
        if verdict.witness:
            parts = ", ".join(
                f"{k}={v}" for k, v in verdict.witness.items())
            lines.append(f"witness: {parts}")
        for t in verdict.trace:
            lines.append(f"  n={t['n']}  value={t['value']}  gap={t['gap']}")
        _emit("\n".join(lines), config)
    return {"Holds": EXIT_OK, "Fails": EXIT_FAILS}.get(
        verdict.outcome, EXIT_INCONCLUSIVE)


def cmd_transfer(args, config, extras):
    _no_extras(extras)
    lhs_s, op, rhs_s = split_predicate(args.predicate)
    lhs, rhs = parse(lhs_s), parse(rhs_s)
    if ".." not in args.window:
        raise ValueError("window must look like lo..hi")
    lo_s, hi_s = args.window.split("..", 1)
    report = transfer_check(lhs, op, rhs, int(lo_s), int(hi_s), var=args.var)
    if config.fmt == "json":
        _emit(report.to_json(), config)
    elif config.fmt == "csv":
        ces = ";".join(str(c) for c in report.counterexamples)
        _emit(_csv_text(
            ["predicate", "lo", "hi", "least_threshold", "counterexamples"],
            [[report.predicate, report.window[0], report.window[1],
              report.least_threshold, ces]]), config)
    else:
        lines = [
            f"predicate: {report.predicate}",
            f"window: {report.window[0]}..{report.window[1]}",
            f"least_threshold: {report.least_threshold}",
            f"counterexamples: "
            f"{' '.join(str(c) for c in report.counterexamples) or 'none'}",
        ]
        _emit("\n".join(lines), config)
    return EXIT_OK


def cmd_limit(args, config, extras):
    _no_extras(extras)
    tree = parse(args.expr)
    report = limit_estimate(tree, schedule=config.schedule,
                            precision=config.precision)
    if config.fmt == "json":
        _emit(report.to_json(), config)
    elif config.fmt == "csv":
        _emit(_csv_text(["n", "value"],
                        [[t["n"], t["value"]] for t in report.trace]),
              config)
    else:
        lines = [f"classification: {report.classification}"]
        if report.value is not None:
            lines.append(f"value: {_render(report.value, config.precision)}")
        for t in report.trace:
            lines.append(f"  n={t['n']}  value={t['value']}")
        _emit("\n".join(lines), config)
    return EXIT_OK


def cmd_zeta(args, config, extras):
    _no_extras(extras)
    s = S.numeric_from_string(args.s)
    exact = True if args.exact else None
    rows = []
    for M in _parse_range(args.M, "M"):
        reference = euler_product_Z(s, M, precision=config.precision,
                                    exact=exact)
        if args.cap is None:
            rows.append([M, "", S.format_numeric(s),
                         _render(reference, config.precision), ""])
            continue
        for cap in _parse_range(args.cap, "cap"):
            value = truncated_zeta_ZZ(s, M, cap,
                                      precision=config.precision,
                                      exact=exact)
            rows.append([M, cap, S.format_numeric(s),
                         _render(value, config.precision),
                         _gap_text(value, reference, config.precision)])
    header = ["M", "cap", "s", "value", "gap_to_reference"]
    if config.fmt == "json":
        payload = [dict(zip(header, r)) for r in rows]
        _emit(json.dumps(payload, indent=2), config)
    elif config.fmt == "csv":
        _emit(_csv_text(header, rows), config)
    else:
        lines = []
        for r in rows:
            head = f"M={r[0]} s={r[2]}" if r[1] == "" \
                else f"M={r[0]} cap={r[1]} s={r[2]}"
            tail = "" if r[4] == "" else f"  gap_to_reference={r[4]}"
            lines.append(f"{head}  value: {r[3]}{tail}")
        _emit("\n".join(lines), config)
    return EXIT_OK


def cmd_integrate(args, config, extras):
    _no_extras(extras)
    spec = QuadratureSpec(parse(args.expr), args.N, args.var)
    value = generic_integral(spec, precision=config.precision)
    shown = _render(value, config.precision)
    if config.fmt == "json":
        payload = {
            "integrand": to_string(spec.integrand),
            "N": spec.N,
            "nodes": spec.node_count,
            "precision": config.precision,
            "value": shown,
        }
        _emit(json.dumps(payload, indent=2), config)
    elif config.fmt == "csv":
        _emit(_csv_text(["N", "nodes", "value"],
                        [[spec.N, spec.node_count, shown]]), config)
    else:
        lines = [
            f"integrand: {to_string(spec.integrand)}",
            f"N: {spec.N} ({spec.node_count} nodes, step {spec.step})",
            f"value: {shown}",
        ]
        _emit("\n".join(lines), config)
    return EXIT_OK


def cmd_pi(args, config, extras):
    _no_extras(extras)
    if args.steps < 1:
        raise ValueError("--steps must be at least 1")
    formula = pi_root_formula if args.formula == "root" else viete_product
    ref = pi_reference(64)
    rows = []
    for k in range(1, args.steps + 1):
        value = formula(k, precision=config.precision)
        rows.append([k, _render(value, config.precision),
                     _gap_text(value, ref, config.precision)])
    header = ["K", "value", "abs_error_vs_reference"]
    if config.fmt == "json":
        payload = [dict(zip(header, r)) for r in rows]
        _emit(json.dumps(payload, indent=2), config)
    elif config.fmt == "csv":
        _emit(_csv_text(header, rows), config)
    else:
        lines = [f"K={r[0]}  value={r[1]}  abs_error={r[2]}" for r in rows]
        _emit("\n".join(lines), config)
    return EXIT_OK


_DISPATCH = {
    "eval": cmd_eval,
    "sum": cmd_sum,
    "set": cmd_set,
    "dots": cmd_dots,
    "transfer": cmd_transfer,
    "limit": cmd_limit,
    "zeta": cmd_zeta,
    "integrate": cmd_integrate,
    "pi": cmd_pi,
}


def _add_common(p, suppress):
    """Global flags, valid both before and after the subcommand.

    The subparser copies default to SUPPRESS so a flag given only at
    the top level is not clobbered back to its default.
    """
    d = argparse.SUPPRESS if suppress else None
    p.add_argument("--precision", type=int, default=d,
                   help="decimal digits (default: GROSSUM_PRECISION or 64)")
    p.add_argument("--schedule", default=d, metavar="lo..hi[:parity]",
                   help="instantiation ladder for dots/limit")
    p.add_argument("--format", choices=("text", "json", "csv"),
                   default=argparse.SUPPRESS if suppress else "text",
                   dest="fmt")
    p.add_argument("--out", default=d, help="write output to this file")


def _build_parser():
    top = argparse.ArgumentParser(
        prog="grossum",
        description="Generic-finite arithmetic: evaluate, judge, sweep.",
        allow_abbrev=False,
    )
    _add_common(top, suppress=False)
    top.add_argument("--seed-doc", action="store_true",
                     help="print a map of worked example commands and exit")
    sub = top.add_subparsers(dest="cmd")

    def add_parser(name, **kw):
        p = sub.add_parser(name, allow_abbrev=False, **kw)
        _add_common(p, suppress=True)
        return p

    p = add_parser("eval", help="instantiate an expression")
    p.add_argument("expr")
    p.add_argument("--G", type=int, default=None)
    p.add_argument("--parity", choices=("even", "odd"), default=None)

    p = add_parser("sum", help="the closed-form identity library")
    p.add_argument("--G", type=int, default=None)
    p.add_argument("--x", default="2",
                   help="base for the symbolic geometric row")

    p = add_parser("set", help="generic sets and their sizes")
    p.add_argument("name", choices=sorted(_SET_BUILDERS))
    p.add_argument("--G", type=int, default=None)
    p.add_argument("--parity", choices=("even", "odd"), default=None)

    p = add_parser("dots", help="infinitesimal-closeness judgement")
    p.add_argument("lhs")
    p.add_argument("rhs")
    p.add_argument("--parity", choices=("even", "odd"), default=None)

    p = add_parser("transfer", help="scan a predicate window")
    p.add_argument("predicate", help="e.g. 'n^2 > 100*n'")
    p.add_argument("--window", required=True, metavar="lo..hi")
    p.add_argument("--var", default="n")

    p = add_parser("limit", help="classify tail behavior")
    p.add_argument("expr")
    p.add_argument("--parity", choices=("even", "odd"), default=None)

    p = add_parser("zeta", help="Euler products, truncated or not")
    p.add_argument("--s", required=True)
    p.add_argument("--M", required=True, metavar="M or lo..hi")
    p.add_argument("--cap", default=None, metavar="cap or lo..hi")
    p.add_argument("--exact", action="store_true")

    p = add_parser("integrate", help="generic Riemann sum")
    p.add_argument("expr")
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--var", default="x")

    p = add_parser("pi", help="pi by roots or by the cosine product")
    p.add_argument("--steps", type=int, required=True)
    p.add_argument("--formula", choices=("root", "viete"), default="root")

    return top


def _config_from(args):
    precision = args.precision
    if precision is None:
        precision = int(os.environ.get("GROSSUM_PRECISION", "64"))
    parity = _parse_parity(getattr(args, "parity", None))
    if args.schedule is not None:
        schedule = parse_schedule(args.schedule, parity=parity)
    else:
        schedule = NSchedule(parity=parity)
    return RunConfig(precision=precision, schedule=schedule, fmt=args.fmt,
                     out=args.out)


def main(argv=None):
    parser = _build_parser()
    try:
        args, extras = parser.parse_known_args(argv)
    except SystemExit as ex:
        return ex.code
    if args.seed_doc:
        sys.stdout.write(_SEED_DOC)
        return EXIT_OK
    if args.cmd is None:
        parser.print_usage(sys.stderr)
        return EXIT_SYNTAX
    try:
        config = _config_from(args)
        return _DISPATCH[args.cmd](args, config, extras)
    except ExprSyntaxError as ex:
        print(f"syntax error: {ex}", file=sys.stderr)
        return EXIT_SYNTAX
    except EvaluationError as ex:
        print(f"evaluation error: {ex}", file=sys.stderr)
        return EXIT_EVAL
    except ValueError as ex:
        print(f"invalid arguments: {ex}", file=sys.stderr)
        return EXIT_SYNTAX


if __name__ == "__main__":
    sys.exit(main())
