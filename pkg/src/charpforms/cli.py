"""Command-line front end.

Every command prints one report.  The json form always has the keys
``command``, ``decided``, ``representative``, ``log``, ``precision`` (in that
order), then command-specific extras, then ``timing``.  Exit codes: 0 on
success, 2 when no decision procedure applies, 1 on errors.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from .checks import SUITES, run_suite
from .errors import DecisionUnavailable
from .forms import reduce_mod_exact
from .hp import RULE_NOTES, classify_top, hp1_class
from .parsing import (parse_element, parse_extension, parse_form, parse_ring, parse_series,
                      parse_series_polynomial, parse_tower)
from .trace import compose_traces
from .weierstrass import (artin_schreier_solve, hensel_lift, regularize, substitute_regularizing,
                          weierstrass_divide, weierstrass_prepare)

EXIT_OK, EXIT_ERROR, EXIT_UNDECIDED = 0, 1, 2


def _read(value: str | None, what: str) -> str:
    """The argument itself, or stdin when it is omitted or '-'."""
    if value is None or value == "-":
        text = sys.stdin.read().strip()
        if not text:
            raise ValueError(f"no {what} given (pass --{what} or pipe it on stdin)")
        return text
    return value


def _tower(args):
    return parse_tower(args.tower, args.precision)


def _ring(args):
    return parse_ring(args.ring) if args.precision is None else parse_ring(args.ring, args.precision)


def _log(rep, verbose: bool) -> list:
    if not verbose:
        return []
    return [dict(step.as_dict(), note=RULE_NOTES[step.rule]) for step in rep.log]


def report(command: str, decided=None, representative=None, log=None, precision=None, **extras) -> dict:
    out = {"command": command, "decided": decided, "representative": representative,
           "log": log or [], "precision": precision}
    out.update(extras)
    return out


# -- commands --------------------------------------------------------------------

def cmd_hp_class(args):
    tower = _tower(args)
    omega = parse_form(_read(args.form, "form"), tower)
    rep = classify_top(omega)
    out = report("hp-class", rep.decided_value, str(rep), _log(rep, args.verbose), tower.default_precision)
    if rep.decided_value is None:
        out["undecided"] = rep.undecided_reason
        return out, EXIT_UNDECIDED
    return out, EXIT_OK


def cmd_hp1_class(args):
    tower = _tower(args)
    a = parse_element(_read(args.element, "element"), tower)
    try:
        rep = hp1_class(a)
    except DecisionUnavailable as exc:
        out = report("hp1-class", None, str(a), [], tower.default_precision, undecided=str(exc))
        return out, EXIT_UNDECIDED
    out = report("hp1-class", rep.decided_value, str(rep.value), _log(rep, args.verbose), tower.default_precision)
    if rep.decided_value is None:
        out["undecided"] = rep.undecided_reason
    return out, EXIT_OK


def cmd_reduce_form(args):
    tower = _tower(args)
    cls = reduce_mod_exact(parse_form(_read(args.form, "form"), tower))
    return report("reduce-form", None, str(cls), [], tower.default_precision), EXIT_OK


def cmd_trace(args):
    tower = _tower(args)
    fields = [tower]
    for text in args.ext:
        fields.append(parse_extension(text, fields[-1]))
    omega = parse_form(_read(args.form, "form"), fields[-1])
    down = compose_traces(omega, *reversed(fields[1:]))
    extras = {"field": str(fields[-1])}
    if down.degree == tower.rank and tower.rank:
        extras["class"] = str(reduce_mod_exact(down))
    return report("trace", None, str(down), [], tower.default_precision, **extras), EXIT_OK


def cmd_wdiv(args):
    ring = _ring(args)
    f = parse_series(args.f, ring)
    g = parse_series(_read(args.g, "g"), ring)
    q, r = weierstrass_divide(g, f, args.k, args.schedule)
    return report("wdiv", None, {"q": str(q), "r": str(r)}, [], ring.D), EXIT_OK


def cmd_wprep(args):
    ring = _ring(args)
    prep = weierstrass_prepare(parse_series(_read(args.f, "f"), ring), args.schedule)
    rep = {"unit": str(prep.unit), "poly": str(prep.poly)}
    return report("wprep", None, rep, [], ring.D, k=prep.order), EXIT_OK


def cmd_wreg(args):
    ring = _ring(args)
    f = parse_series(_read(args.f, "f"), ring)
    exps, k = regularize(f)
    rep = {"exponents": list(exps), "regularized": str(substitute_regularizing(f, exps))}
    return report("wreg", None, rep, [], ring.D, k=k), EXIT_OK


def cmd_as_solve(args):
    ring = _ring(args)
    b = artin_schreier_solve(parse_series(_read(args.a, "a"), ring), args.order)
    return report("as-solve", None, str(b), [], ring.D if args.order is None else args.order), EXIT_OK


def cmd_hensel(args):
    ring = _ring(args)
    coeffs = parse_series_polynomial(_read(args.poly, "poly"), ring, args.var)
    x0 = parse_series(args.x0, ring)
    res = hensel_lift(coeffs, x0, args.order, history=True)
    log = [{"step": i, "valuation": v} for i, v in enumerate(res.valuations)] if args.verbose else []
    return report("hensel", None, str(res.root), log, ring.D if args.order is None else args.order), EXIT_OK


def cmd_check(args):
    tower = _tower(args)
    results = run_suite(args.suite, tower, args.trials, args.seed)
    passed = all(r.passed for r in results)
    out = report("check", passed, None, [], tower.default_precision, suite=args.suite,
                 results=[r.as_dict() for r in results])
    return out, EXIT_OK if passed else EXIT_ERROR


# -- argument parsing ---------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default="json")
    common.add_argument("--precision", type=int, default=None,
                        help="default Laurent precision (towers) or truncation D (series rings)")
    common.add_argument("--verbose", action="store_true", help="include the reduction log")

    parser = argparse.ArgumentParser(prog="charpforms", description="Forms, H_p classes and series in characteristic p.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, help_):
        sp = sub.add_parser(name, parents=[common], help=help_)
        sp.set_defaults(fn=fn)
        return sp

    sp = add("hp-class", cmd_hp_class, "decide the class of a top-degree form")
    sp.add_argument("--tower", required=True)
    sp.add_argument("--form")

    sp = add("hp1-class", cmd_hp1_class, "class of an element modulo x - x^p")
    sp.add_argument("--tower", required=True)
    sp.add_argument("--element")

    sp = add("reduce-form", cmd_reduce_form, "normal form of a top-degree form modulo exact forms")
    sp.add_argument("--tower", required=True)
    sp.add_argument("--form")

    sp = add("trace", cmd_trace, "trace a form down a chain of extensions")
    sp.add_argument("--tower", required=True)
    sp.add_argument("--ext", action="append", required=True,
                    help="'etale x: <poly>' or 'radicial a: <b>'; repeat to build a chain")
    sp.add_argument("--form")

    sp = add("wdiv", cmd_wdiv, "Weierstrass division g = q f + r")
    sp.add_argument("--ring", required=True)
    sp.add_argument("--f", required=True)
    sp.add_argument("--g")
    sp.add_argument("--k", type=int, default=None)
    sp.add_argument("--schedule", choices=("fixed-point", "neumann"), default="fixed-point")

    sp = add("wprep", cmd_wprep, "Weierstrass preparation f = u P")
    sp.add_argument("--ring", required=True)
    sp.add_argument("--f")
    sp.add_argument("--schedule", choices=("fixed-point", "neumann"), default="fixed-point")

    sp = add("wreg", cmd_wreg, "find X_i -> X_i + T^N_i making f regular")
    sp.add_argument("--ring", required=True)
    sp.add_argument("--f")

    sp = add("as-solve", cmd_as_solve, "solve b - b^p = a in the maximal ideal")
    sp.add_argument("--ring", required=True)
    sp.add_argument("--a")
    sp.add_argument("--order", type=int, default=None)

    sp = add("hensel", cmd_hensel, "lift a simple root by Newton iteration")
    sp.add_argument("--ring", required=True)
    sp.add_argument("--poly")
    sp.add_argument("--var", default="X", help="polynomial variable (default X)")
    sp.add_argument("--x0", required=True)
    sp.add_argument("--order", type=int, default=None)

    sp = add("check", cmd_check, "run a named property suite")
    sp.add_argument("suite", choices=sorted(SUITES))
    sp.add_argument("--tower", required=True)
    sp.add_argument("--trials", type=int, default=100)
    sp.add_argument("--seed", type=int, default=0)
    return parser


def format_text(out: dict) -> str:
    lines = [f"{out['command']}"]
    for key, value in out.items():
        if key in ("command", "log"):
            continue
        if isinstance(value, dict):
            lines.append(f"{key}:")
            for k, v in value.items():
                lines.append(f"  {k}: {v}")
        elif isinstance(value, list):
            lines.append(f"{key}:")
            lines.extend(f"  {item}" for item in value)
        else:
            lines.append(f"{key}: {value}")
    if out["log"]:
        lines.append("log:")
        for step in out["log"]:
            lines.append("  " + ", ".join(f"{k}={v}" for k, v in step.items()))
    return "\n".join(lines)


def render(out: dict, fmt: str) -> str:
    return json.dumps(out, indent=2) if fmt == "json" else format_text(out)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    start = time.perf_counter()
    try:
        out, code = args.fn(args)
    except (ValueError, ArithmeticError, KeyError, TypeError, NotImplementedError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    out["timing"] = round(time.perf_counter() - start, 6)
    print(render(out, args.format))
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
