"""Command-line entry point: count, enumerate, zfun, verify.

Exit codes: 0 success, 1 a check failed, 2 usage error, 3 size budget
exceeded, 4 input/output failure.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import re
import sys
from fractions import Fraction

from .asm import BudgetExceeded, SymmetryClass, count, enumerate_asms, to_json
from .exactalg import OMEGA, LaurentPoly, format_scalar
from .icemodel import (
    Boundary,
    Regime,
    WeightContext,
    model_for_size,
    partition_function,
    partition_resolved,
)
from .identities import SUITES, run_suite

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_BUDGET, EXIT_IO = 0, 1, 2, 3, 4


class UsageError(Exception):
    pass


# -- polynomial I/O -----------------------------------------------------------------------

_FACTOR = re.compile(r"^([A-Za-z_][A-Za-z_0-9]*)(?:\^(-?\d+))?$")


def parse_value(text: str, ctx: WeightContext, symbols=()) -> LaurentPoly:
    """Parse a slot value: a product of rationals, ``a`` and declared symbols, e.g. ``1/2*a^-1*x``."""
    field = ctx.field
    coeff = Fraction(1)
    exps: dict = {}
    for part in text.replace(" ", "").split("*"):
        if not part:
            raise UsageError(f"empty factor in {text!r}")
        m = _FACTOR.match(part)
        if m:
            name, e = m.group(1), int(m.group(2) or 1)
            if name != "a" and name not in symbols:
                raise UsageError(f"unknown symbol {name!r} in {text!r} (declare it with --symbolic)")
            exps[name] = exps.get(name, 0) + e
            continue
        try:
            coeff *= Fraction(part)
        except (ValueError, ZeroDivisionError):
            raise UsageError(f"cannot parse factor {part!r} in {text!r}") from None
    if coeff == 0:
        raise UsageError(f"slot value {text!r} is zero")
    c = coeff
    ka = exps.pop("a", 0)
    if ctx.regime is Regime.OMEGA6:
        c = OMEGA ** ka * coeff
    elif ka:
        exps["a"] = ka
    vars = tuple(sorted(exps))
    return LaurentPoly.monomial(field, vars, c, **exps)


def poly_to_json(f: LaurentPoly) -> dict:
    """{"field", "vars", "terms": [{"exponents", "coeff"}], "text"} with terms in canonical order."""
    terms = [{"exponents": list(e), "coeff": format_scalar(c)} for e, c in sorted(f.terms.items())]
    return {"field": f.field.value, "vars": list(f.vars), "terms": terms, "text": f.to_text()}


# -- output helpers -----------------------------------------------------------------------


def _emit(text: str, path: str | None) -> None:
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _csv(rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerows(rows)
    return buf.getvalue()


def _dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


# -- subcommands ------------------------------------------------------------------------------


def _parse_class(text: str) -> SymmetryClass:
    try:
        return SymmetryClass.parse(text)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def cmd_count(args) -> int:
    cls = _parse_class(args.cls)
    c = count(args.size, cls)
    if args.format == "json":
        _emit(_dumps({"class": cls.value, "n": args.size, "count": c}), args.output)
    elif args.format == "csv":
        _emit(_csv([["class", "n", "count"], [cls.value, args.size, c]]), args.output)
    else:
        _emit(f"{c}\n", args.output)
    return EXIT_OK


def cmd_enumerate(args) -> int:
    cls = _parse_class(args.cls)
    mats = list(enumerate_asms(args.size, cls))
    if args.limit is not None:
        mats = mats[:args.limit]
    if args.format == "json":
        _emit(_dumps({"class": cls.value, "n": args.size, "count": len(mats),
                      "matrices": [to_json(m) for m in mats]}), args.output)
    elif args.format == "csv":
        n = args.size
        head = ["index"] + [f"m{i}_{j}" for i in range(n) for j in range(n)]
        _emit(_csv([head] + [[k] + [v for r in m for v in r] for k, m in enumerate(mats)]), args.output)
    else:
        blocks = ["\n".join(" ".join(f"{v:2d}" for v in r) for r in m) for m in mats]
        _emit("\n\n".join(blocks) + ("\n" if blocks else ""), args.output)
    return EXIT_OK


_MODEL_NAMES = {"dwbc": Boundary.DWBC, "ht": Boundary.HT_EVEN, "qt": Boundary.QT, "qqt": Boundary.QQT}


def cmd_zfun(args) -> int:
    ctx = WeightContext(Regime(args.regime))
    try:
        model = model_for_size(_MODEL_NAMES[args.model], args.size)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    symbols = tuple(args.symbolic or ())
    assign: dict = {}
    for item in args.param or ():
        if "=" not in item:
            raise UsageError(f"--param expects name=value, got {item!r}")
        name, value = item.split("=", 1)
        assign[name.strip()] = parse_value(value, ctx, symbols)
    for name in symbols:
        if name in model.slots and name not in assign:
            assign[name] = LaurentPoly.variable(name, ctx.field, (name,))
    missing = [s for s in model.slots if s not in assign]
    extra = [s for s in assign if s not in model.slots]
    if missing or extra:
        msg = []
        if missing:
            msg.append(f"missing slots: {', '.join(missing)}")
        if extra:
            msg.append(f"unknown slots: {', '.join(extra)}")
        raise UsageError(f"{'; '.join(msg)} (model slots: {', '.join(model.slots)})")
    try:
        if args.tag:
            value = partition_resolved(model, args.tag, assign, ctx)
        else:
            value = partition_function(model, assign, ctx)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if args.format == "json":
        _emit(_dumps({"model": model.boundary.value, "n": model.n, "regime": ctx.regime.value,
                      "tag": args.tag, "slots": {s: assign[s].to_text() for s in model.slots},
                      "value": poly_to_json(value)}), args.output)
    elif args.format == "csv":
        rows = [list(value.vars) + ["coeff"]]
        rows += [list(e) + [format_scalar(c)] for e, c in sorted(value.terms.items())]
        _emit(_csv(rows), args.output)
    else:
        _emit(value.to_text() + "\n", args.output)
    return EXIT_OK


def cmd_verify(args) -> int:
    results = run_suite(args.suite, args.max_n, args.seed)
    report = [r.to_dict() for r in results]
    ok = all(r.passed for r in results)
    if args.report:
        with open(args.report, "w", encoding="utf-8") as fh:
            fh.write(_dumps(report))
    if args.format == "json":
        _emit(_dumps(report), args.output)
    elif args.format == "csv":
        _emit(_csv([["name", "status", "detail"]] + [[r.name, r.status, r.detail] for r in results]), args.output)
    else:
        lines = [f"{r.status.upper():4s}  {r.name}" + (f"  ({r.detail})" if r.detail else "") for r in results]
        for r in results:
            if not r.passed:
                lines.append(f"witness for {r.name}: {json.dumps(r.witness, sort_keys=True)}")
        lines.append(f"{sum(r.passed for r in results)}/{len(results)} checks passed")
        _emit("\n".join(lines) + "\n", args.output)
    return EXIT_OK if ok else EXIT_FAIL


# -- parser ------------------------------------------------------------------------------------


def _positive(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError(f"must be positive, got {v}")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="icelab", description="Symmetric ASMs, square-ice partition functions and their identities.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, fmt="text"):
        sp.add_argument("--format", choices=("text", "json", "csv"), default=fmt)
        sp.add_argument("--output", "-o", help="write to this file instead of stdout")

    sp = sub.add_parser("count", help="number of ASMs of a size in a symmetry class")
    sp.add_argument("--class", dest="cls", default="u", help="u | ht | qt | qqt")
    sp.add_argument("--size", type=_positive, required=True)
    common(sp)
    sp.set_defaults(func=cmd_count)

    sp = sub.add_parser("enumerate", help="list the ASMs of a size in a symmetry class")
    sp.add_argument("--class", dest="cls", default="u", help="u | ht | qt | qqt")
    sp.add_argument("--size", type=_positive, required=True)
    sp.add_argument("--limit", type=_positive)
    common(sp)
    sp.set_defaults(func=cmd_enumerate)

    sp = sub.add_parser("zfun", help="exact partition function of an ice model")
    sp.add_argument("--model", choices=tuple(_MODEL_NAMES), required=True)
    sp.add_argument("--size", type=_positive, required=True, help="matrix size n")
    sp.add_argument("--param", action="append", metavar="NAME=VALUE")
    sp.add_argument("--symbolic", action="append", metavar="NAME", help="leave this slot as a variable")
    sp.add_argument("--regime", choices=("generic", "omega6"), default="generic")
    sp.add_argument("--tag", help="restrict to one orientation of the x/y edge")
    common(sp)
    sp.set_defaults(func=cmd_zfun)

    sp = sub.add_parser("verify", help="run a verification suite")
    sp.add_argument("--suite", choices=SUITES, default="all")
    sp.add_argument("--max-n", type=_positive, default=1)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--report", help="also write the JSON report here")
    common(sp, "json")
    sp.set_defaults(func=cmd_verify)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args)
    except UsageError as exc:
        sys.stderr.write(f"icelab: error: {exc}\n")
        return EXIT_USAGE
    except BudgetExceeded as exc:
        sys.stderr.write(f"icelab: budget exceeded: {exc}\n")
        return EXIT_BUDGET
    except OSError as exc:
        sys.stderr.write(f"icelab: I/O error: {exc}\n")
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
