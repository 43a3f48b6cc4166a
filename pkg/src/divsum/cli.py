"""``divsum`` command line: sum a series, print its tables, or rerun a historical reproduction.

Rationals cross the boundary as ``num/den`` strings.  Exit status is 0 on
success, 1 when a computation raises (one diagnostic line on stderr) and 2 on
usage errors.  Reproduction mismatches only set the report's mismatch flag.
"""

from __future__ import annotations

import argparse
import sys
from decimal import Decimal
from fractions import Fraction
from typing import Optional, Sequence

from . import borel_quadrature as bq
from . import cf_engine as cf
from . import difference_engine as de
from .report import MethodResult, Report
from .repro import SECTIONS, run_section
from .series_core import FactorialFamily, format_rational, generate_terms, to_rational

DEFAULT_PEELS = de.WALLIS_PEEL_SCHEDULE
DEFAULT_TRANSFORM_TERMS = 10
DEFAULT_LEVELS = 40
DEFAULT_TABLE_ROWS = 10


class UsageError(Exception):
    pass


def _rational(text: str) -> Fraction:
    try:
        return to_rational(text)
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a rational 'num/den': {text!r} ({exc})")


def _rational_list(text: str) -> tuple:
    items = [s for s in text.replace(" ", "").split(",") if s]
    if not items:
        raise argparse.ArgumentTypeError("empty coefficient list")
    return tuple(_rational(s) for s in items)


def _int_list(text: str) -> tuple:
    try:
        return tuple(int(s) for s in text.split(",") if s.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _closure(text: str) -> str:
    if text in ("auto", "none"):
        return text
    key, _, val = text.partition("=")
    if key in ("a", "n") and val.isdigit():
        return text
    raise argparse.ArgumentTypeError("closure must be auto, none, a=N or n=N")


# ---------------------------------------------------------------------------
# configuration


class SeriesConfig:
    """Either a factorial family or an explicit coefficient list, plus method settings."""

    def __init__(self, args: argparse.Namespace):
        family_flags = [v for v in (args.p, args.q, args.m, args.x) if v is not None]
        if args.coeffs is not None and family_flags:
            raise UsageError("give either --coeffs or the family flags --p/--q/--m/--x, not both")
        self.coefficients = args.coeffs
        self.family: Optional[FactorialFamily] = None
        if self.coefficients is None:
            one = Fraction(1)
            self.family = FactorialFamily(
                args.p if args.p is not None else one,
                args.q if args.q is not None else one,
                args.m if args.m is not None else one,
                args.x if args.x is not None else one,
            )
        self.args = args

    def terms(self, count: int) -> tuple:
        if self.family is not None:
            return generate_terms(self.family, count)
        return self.coefficients


def _family_label(family: FactorialFamily) -> dict:
    return {k: format_rational(getattr(family, k)) for k in ("p", "q", "m", "x")}


# ---------------------------------------------------------------------------
# sum


def _sum_transform(cfg: SeriesConfig) -> MethodResult:
    args = cfg.args
    if cfg.family is not None:
        terms = cfg.terms(args.depth or DEFAULT_TRANSFORM_TERMS)
        peels = args.peels if args.peels is not None else DEFAULT_PEELS
    else:
        terms = cfg.terms(0)
        if args.depth:
            terms = terms[: args.depth]
        peels = args.peels if args.peels is not None else (0,)
    run = de.iterated_transform(terms, peels)
    last = run.stages[-1].output
    # the dropped remainder is of the order of the last term kept
    error = abs(last[-1]) if len(last) > 1 else Fraction(0)
    return MethodResult(
        "transform",
        float(run.value),
        float(error),
        format_rational(run.value),
        {"terms": len(terms), "peels": list(peels)},
    )


def _pick_closure(family: FactorialFamily, levels: int, choice: str) -> Optional[cf.TailClosure]:
    if choice == "none":
        return None
    if choice != "auto":
        key, val = choice.split("=")
        return cf.tail_closure_paired(int(val)) if key == "a" else cf.tail_closure_single(int(val))
    nxt = cf.factorial_cf(family, levels + 4).partial[levels:]
    if any(v.denominator != 1 for v in nxt):
        return None
    a0, a1, a2, a3 = (int(v) for v in nxt)
    if a0 == a1 and a2 == a3 == a0 + 1 and a0 + 1 >= 2:
        return cf.tail_closure_paired(a0 + 1)
    if a1 == a0 + 1 and a2 == a0 + 2 and a0 >= 1:
        return cf.tail_closure_single(a0)
    return None


def _sum_cf(cfg: SeriesConfig) -> MethodResult:
    args = cfg.args
    if cfg.family is not None:
        levels = args.levels or DEFAULT_LEVELS
        closure = _pick_closure(cfg.family, levels, args.closure)
        res = cf.sum_by_cf(cfg.family, levels, closure)
        meta = {"levels": levels, "closure": "none"}
        if closure is not None:
            meta.update(closure=closure.pattern, parameter=closure.parameter, root=closure.root, tail=closure.tail)
        return MethodResult("cf", res.value, res.error, None, meta)
    coeffs = cfg.coefficients
    depth = args.depth or len(coeffs) - 1
    frac = cf.series_to_cf(coeffs, depth)
    conv = cf.convergents(frac)
    lo, hi = conv[-2].value, conv[-1].value
    mid = (lo + hi) / 2
    exact = format_rational(hi) if lo == hi else None
    return MethodResult(
        "cf",
        float(mid),
        float(abs(hi - lo) / 2),
        exact,
        {"depth": depth, "numerators": [format_rational(a) for a in frac.numerators]},
    )


def _sum_integral(cfg: SeriesConfig) -> MethodResult:
    args = cfg.args
    fam = cfg.family
    if fam is None:
        raise ValueError("the integral method needs a factorial family, not a coefficient list")
    if args.panels:
        if fam.x != 1:
            raise ValueError("the trapezoid rule (--panels) runs on [0, 1] and needs x = 1")
        spec = bq.IntegrandSpec.general(fam.p, fam.q, fam.m, 1)
        res = bq.trapezoid_unit_interval(spec, args.panels)
    elif fam.x == 1:
        res = bq.borel_oracle(fam.p, fam.q, args.tol)
    else:
        res = bq.borel_general(fam.p, fam.q, fam.m, float(fam.x), args.tol)
    return MethodResult(
        "integral",
        res.value,
        res.error_estimate,
        None,
        {"quadrature": res.method, "nodes": res.nodes},
    )


_METHODS = {"transform": _sum_transform, "cf": _sum_cf, "integral": _sum_integral}


def cmd_sum(cfg: SeriesConfig) -> Report:
    rep = Report("sum")
    method = cfg.args.method
    if method == "all":
        names = ["transform", "cf"] + (["integral"] if cfg.family is not None else [])
    else:
        names = [method]
    for name in names:
        rep.results.append(_METHODS[name](cfg))
    if cfg.family is not None:
        rep.tables["series"] = {"columns": ["p", "q", "m", "x"], "rows": [list(_family_label(cfg.family).values())]}
    if len(rep.results) > 1:
        rep.compute_agreement()
    return rep


# ---------------------------------------------------------------------------
# table


def _render_cell(value) -> str:
    if isinstance(value, Decimal):
        return f"{value:f}"
    return format_rational(value)


def cmd_table(cfg: SeriesConfig, kind: str) -> Report:
    args = cfg.args
    rep = Report(f"table {kind}")
    if kind == "differences":
        terms = cfg.terms(args.depth or 8) if cfg.family is not None else cfg.coefficients
        protocol = de.DecimalProtocol(args.places) if args.places is not None else None
        table = de.build_table(terms, de.Convention(args.convention), protocol)
        cols = ["order"] + [str(i) for i in range(len(terms))]
        rows = [[str(k)] + [_render_cell(v) for v in row] for k, row in enumerate(table.rows)]
        rep.add_table(f"differences ({table.convention.value})", cols, rows)
        return rep
    rows_wanted = args.depth or DEFAULT_TABLE_ROWS
    if rows_wanted < 2:
        raise ValueError("a convergent table needs at least 2 rows")
    if cfg.family is not None:
        frac = cf.factorial_cf(cfg.family, max(1, rows_wanted - 2))
    else:
        depth = min(len(cfg.coefficients) - 1, max(1, rows_wanted - 2))
        frac = cf.series_to_cf(cfg.coefficients, depth)
    conv = cf.convergents(frac, min(rows_wanted, len(frac.numerators) + 1))
    chain = ("",) + tuple(format_rational(a) for a in frac.numerators)
    rows = []
    for n, c in enumerate(conv):
        v = c.value
        rows.append([str(n), chain[n], str(c), f"{Decimal(v.numerator) / Decimal(v.denominator):.10f}"])
    rep.add_table("convergents", ["n", "numerator", "h/k", "value"], rows)
    return rep


# ---------------------------------------------------------------------------
# argument parsing


def _add_series_flags(p: argparse.ArgumentParser) -> None:
    g = p.add_argument_group("series")
    g.add_argument("--p", type=_rational, help="family parameter p > 0 (default 1)")
    g.add_argument("--q", type=_rational, help="family parameter q > 0 (default 1)")
    g.add_argument("--m", type=_rational, help="family exponent m >= 0 (default 1)")
    g.add_argument("--x", type=_rational, help="family argument x > 0 (default 1)")
    g.add_argument("--coeffs", type=_rational_list, help="explicit signed coefficients, e.g. --coeffs=1,-1,1,-1")
    g.add_argument("--depth", type=int, help="terms, CF numerators or table rows to use")


def _add_output_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", choices=("text", "json", "csv"), default="text")
    p.add_argument("--out", metavar="FILE", help="write the report here instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="divsum", description="Sum divergent alternating factorial-type series.")
    sub = parser.add_subparsers(dest="command", required=True)

    s = sub.add_parser("sum", help="sum a series by one or all methods")
    _add_series_flags(s)
    s.add_argument("--method", choices=("transform", "cf", "integral", "all"), default="all")
    s.add_argument("--levels", type=int, help=f"CF partial numerators kept exactly (default {DEFAULT_LEVELS})")
    s.add_argument("--closure", type=_closure, default="auto", help="auto, none, a=N (paired) or n=N (single)")
    s.add_argument("--peels", type=_int_list, help="terms peeled before each transform stage, e.g. 2,2,2")
    s.add_argument("--panels", type=int, help="use the composite trapezoid rule with this many panels")
    s.add_argument("--tol", type=float, default=1e-12, help="quadrature tolerance (default 1e-12)")
    _add_output_flags(s)

    t = sub.add_parser("table", help="print a difference or convergent table")
    t.add_argument("kind", choices=("differences", "convergents"))
    _add_series_flags(t)
    t.add_argument("--convention", choices=("forward", "reversed"), default="forward")
    t.add_argument("--places", type=int, help="round the input row to this many decimals first")
    _add_output_flags(t)

    r = sub.add_parser("repro", help="rerun a historical computation and compare with the printed figures")
    r.add_argument("section", choices=SECTIONS)
    _add_output_flags(r)
    return parser


def _serialise(rep: Report, fmt: str) -> str:
    if fmt == "json":
        return rep.to_json()
    if fmt == "csv":
        return rep.to_csv()
    return rep.to_text()


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "repro":
            rep = run_section(args.section)
        else:
            cfg = SeriesConfig(args)
            if args.command == "sum":
                for flag in ("levels", "panels"):
                    v = getattr(args, flag)
                    if v is not None and v < 1:
                        raise UsageError(f"--{flag} must be positive")
                rep = cmd_sum(cfg)
            else:
                rep = cmd_table(cfg, args.kind)
    except UsageError as exc:
        parser.error(str(exc))
    except (ValueError, ArithmeticError, TypeError) as exc:
        print(f"divsum: error: {exc}", file=sys.stderr)
        return 1
    text = _serialise(rep, args.format)
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
