"""Frozen reproductions of the historical worked examples.

Each ``repro_sXX`` function recomputes one section's numbers and records them
next to the printed figures.  Mismatches (printing slips, rounding in the
original hand computation) are reported, never raised.
"""

from __future__ import annotations

from decimal import Decimal
from fractions import Fraction

from .borel_quadrature import IntegrandSpec, adaptive_unit_interval, borel_oracle, trapezoid_unit_interval
from .cf_engine import (
    bracket_and_average,
    collapse_segment,
    convergents,
    factorial_cf,
    real_to_simple_cf,
    sum_by_cf,
    tail_closure_paired,
    tail_closure_single,
)
from .difference_engine import (
    build_table,
    euler_transform,
    log_extrapolate,
    reciprocal_b_table,
    reciprocal_extrapolate_inverse_A,
    wallis_iterated_transform,
)
from .report import MethodResult, Report, render
from .series_core import ODD_FACTORIAL, WALLIS, generate_b_sequence

SECTIONS = ("s15", "s16", "s17", "s18", "s19", "s22", "s23", "s25", "s29")


def _dec(value: Fraction, places: int = 10) -> str:
    return f"{float(value):.{places}f}"


def repro_s15() -> Report:
    rep = Report("repro s15", ["s15"])
    cases = [
        ("1-1+1-1+...", [1, -1, 1, -1, 1], Fraction(1, 2)),
        ("1-2+3-4+...", [1, -2, 3, -4, 5], Fraction(1, 4)),
        ("1-4+9-16+...", [1, -4, 9, -16, 25], Fraction(0)),
    ]
    for label, terms, printed in cases:
        out = euler_transform([Fraction(t) for t in terms])
        rep.exact_entry(f"sum of {label}", sum(out), printed)
        rep.add_table(label, ["term", "transformed"], [(render(t), render(o)) for t, o in zip(terms, out)])
    geo = euler_transform([Fraction((-3) ** k) for k in range(6)])
    rep.exact_entry("1-3+9-27+...: transformed terms", ", ".join(render(t) for t in geo),
                    "1/2, -1/2, 1/2, -1/2, 1/2, -1/2",
                    note="summed to 1/4 only by the 1-1+1-... value")
    return rep


def repro_s16() -> Report:
    rep = Report("repro s16", ["s16"])
    run = wallis_iterated_transform()
    halved = [t / 2 for t in run.stages[0].source]
    table = build_table([abs(t) for t in halved])
    printed_rows = [
        "2, 9, 48, 300, 2160, 17640, 161280",
        "7, 39, 252, 1860, 15480, 143640",
        "32, 213, 1608, 13620, 128160",
        "181, 1395, 12012, 114540",
        "1214, 10617, 102528",
        "9403, 91911",
        "82508",
    ]
    for k, printed in enumerate(printed_rows, start=1):
        rep.exact_entry(f"A/2 difference row {k}", ", ".join(render(v) for v in table.rows[k]), printed)
    second = run.stages[1].source
    rep.exact_entry("second transform input heads", ", ".join(render(abs(v)) for v in second[:3]),
                    ", ".join(render(Fraction(n, d)) for n, d in ((7, 4), (32, 8), (181, 16))))
    third_rows = run.stages[2].table.rows
    rep.exact_entry("third-stage first differences", ", ".join(render(v) for v in third_rows[1]),
                    ", ".join(render(Fraction(n, d)) for n, d in ((132, 512), (1299, 2048), (12402, 8192))))
    rep.exact_entry("peeled before third transform", sum(run.stages[2].peeled), Fraction(5, 16))
    rep.exact_entry("A", run.value, Fraction(38015, 65536))
    rep.decimal_entry("A (decimal)", float(run.value), "0.580")
    rep.results.append(MethodResult("transform", float(run.value), float(abs(run.stages[-1].output[-1])),
                                    render(run.value), {"schedule": "2,2,2"}))
    return rep


_S17_PRINTED_COLUMN = [
    "1.0000000", "0.5000000", "0.2000000", "0.0625000", "0.0153846", "0.0030675",
    "0.0005110", "0.0000370", "0.0000091", "0.0000010", "0.0000001",
]
_S17_PRINTED_HEADS = ["0.5000000", "0.2000000", "0.0375000", "-0.0346154", "-0.0511445"]


def repro_s17() -> Report:
    rep = Report("repro s17", ["s17"])
    rep.exact_entry("B sequence", ", ".join(render(b) for b in generate_b_sequence(8)),
                    "1, 2, 5, 16, 65, 326, 1957, 13700")
    table = reciprocal_b_table(13)
    for k, printed in enumerate(_S17_PRINTED_COLUMN):
        note = "print slip: 1/13700 = 0.0000730, and the printed differences use 730" if printed == "0.0000370" else ""
        rep.decimal_entry(f"1/B({k + 1})", table.rows[0][k], printed, note=note)
    for k, printed in enumerate(_S17_PRINTED_HEADS, start=1):
        rep.decimal_entry(f"difference head {k}", table.rows[k][0], printed)
    inv = reciprocal_extrapolate_inverse_A(13, depth=5)
    rep.decimal_entry("1/A", inv, "1.6517401")
    rep.decimal_entry("A", 1 / float(inv), "0.6", tolerance=0.05)
    rep.add_table("reciprocal B, current minus next", ["n", "1/B"] + [f"diff {k}" for k in range(1, 6)],
                  [[str(i + 1), f"{table.rows[0][i]:f}"] + [f"{table.rows[k][i]:f}" if i < len(table.rows[k]) else ""
                                                          for k in range(1, 6)] for i in range(13)])
    return rep


_S18_PRINTED_LOGS = ["0.0000000", "0.3010300", "0.6989700", "1.2041200", "1.8129134",
                     "2.5132176", "3.2915908", "4.1367206"]
_S18_PRINTED_HEADS = ["0.3010300", "0.0969100", "0.0103000", "-0.0138666", "0.0053006", "0.0019562"]
_S18_PRINTED_NUMERATORS = ["0.0310300", "0.2041200", "0.1175100", "0.0550666", "0.0359570", "0.0826928"]


def repro_s18() -> Report:
    rep = Report("repro s18", ["s18"])
    run = log_extrapolate()
    for k, printed in enumerate(_S18_PRINTED_LOGS):
        rep.decimal_entry(f"log B({k + 1})", run.logs[k], printed)
    for k, printed in enumerate(_S18_PRINTED_HEADS, start=1):
        rep.decimal_entry(f"log difference head {k}", run.heads[k - 1], printed)
    for k, printed in enumerate(_S18_PRINTED_NUMERATORS):
        numerator = Decimal(run.transformed[k].numerator * 2 ** (k + 1)) / Decimal(run.transformed[k].denominator)
        note = "printed 0,0310300 for 0,3010300" if k == 0 else ""
        rep.decimal_entry(f"numerator over 2^{k + 1}", abs(numerator), printed, note=note)
    rep.decimal_entry("log(1/A)", run.log_inverse, "0.2220911")
    rep.decimal_entry("A", run.value, "0.59966", tolerance=1e-5,
                      note="antilog rounds to 0.59967; the printed figure is truncated")
    rep.results.append(MethodResult("log-extrapolation", float(run.value), 1e-5))
    return rep


_S19_PRINTED_ADDENDS = ["0.00012341", "0.00915782", "0.03232399", "0.05578254", "0.07357589",
                        "0.08556952", "0.09306272", "0.09735007", "0.09942659", "0.05000000"]


def repro_s19() -> Report:
    rep = Report("repro s19", ["s19", "s20"])
    res = trapezoid_unit_interval(IntegrandSpec.factorial_unit(), 10)
    for k, printed in enumerate(_S19_PRINTED_ADDENDS, start=1):
        note = "e^(-1/4)/8 = 0.097350098" if printed == "0.09735007" else ""
        rep.decimal_entry(f"addend x={k}/10", res.addends[k], printed, note=note)
    rep.decimal_entry("A (trapezoid, 10 panels)", res.value, "0.59637255", tolerance=2e-8,
                      note="full-precision addends; the printed sum carries the x=8/10 slip")
    log_res = trapezoid_unit_interval(IntegrandSpec.log_unit(), 10)
    fine = adaptive_unit_interval(IntegrandSpec.factorial_unit())
    log_fine = adaptive_unit_interval(IntegrandSpec.log_unit())
    rep.results += [
        MethodResult("trapezoid-10", res.value, res.error_estimate),
        MethodResult("log-trapezoid-10", log_res.value, log_res.error_estimate),
        MethodResult("adaptive", fine.value, fine.error_estimate),
        MethodResult("log-adaptive", log_fine.value, log_fine.error_estimate),
    ]
    rep.compute_agreement()
    rep.add_table("ordinates", ["x", "y", "addend"],
                  [[f"{k}/10", f"{10 * a:.8f}", f"{a:.8f}"] for k, a in enumerate(res.addends)])
    return rep


_S22_LOWER = ["0.0000000000", "0.5000000000", "0.5714285714", "0.5882352941", "0.5933001436"]
_S22_UPPER = ["1.0000000000", "0.6666666667", "0.6153846154", "0.6027397260", "0.5988023952"]
_S22_AVG_LOWER = ["0.5000000000", "0.5833333333", "0.5934065934", "0.5954875100", "0.5960519153"]
_S22_AVG_UPPER = ["0.7500000000", "0.6190476190", "0.6018099548", "0.5980205807"]
_S22_CONVERGENTS = ["0/1", "1/1", "1/2", "2/3", "4/7", "8/13", "20/34", "44/73", "124/209", "300/501"]


def repro_s22() -> Report:
    rep = Report("repro s22", ["s21", "s22"])
    cf = factorial_cf(WALLIS, 10)
    conv = convergents(cf, 10)
    rep.exact_entry("numerators", ", ".join(render(a) for a in cf.partial), "1, 1, 2, 2, 3, 3, 4, 4, 5, 5")
    for c, printed in zip(conv, _S22_CONVERGENTS):
        rep.exact_entry("convergent", str(c), printed)
    br = bracket_and_average([c.value for c in conv])
    for name, values, printed in (("too small", br.lower, _S22_LOWER), ("too great", br.upper, _S22_UPPER),
                                  ("averaged too small", br.averaged_lower, _S22_AVG_LOWER),
                                  ("averaged too great", br.averaged_upper, _S22_AVG_UPPER)):
        for v, p in zip(values, printed):
            note = "124/209 = 0.5933014354" if p == "0.5933001436" else ""
            rep.decimal_entry(name, _dec(v), p, tolerance=1e-10, note=note)
    rep.add_table("convergents", ["n", "numerator", "h/k", "value"],
                  [[str(i), render(cf.numerators[i - 1]) if i else "", str(c), _dec(c.value)]
                   for i, c in enumerate(conv)])
    return rep


# printed linear-fractional maps, as (alpha, beta, gamma, delta)
PRINTED_MAPS = {
    "A(p)": (491459820, 139931620, 824073141, 234662231),
    "p(q)": (2381951, 649286, 887640, 187440),
    "q(r)": (11437136, 2924816, 3697925, 643025),
}
# levels as drawn: A covers numerators 1,1,...,8,8; p covers 9,9,...,15,15; q 16,16,...,20,20
DISPLAYED_LEVELS = {"A(p)": (0, 17), "p(q)": (17, 31), "q(r)": (31, 41)}
# levels the printed integers actually belong to
IMPLIED_LEVELS = {"A(p)": (0, 21), "p(q)": (21, 31), "q(r)": (31, 41)}


def repro_s23() -> Report:
    rep = Report("repro s23", ["s23"])
    cf = factorial_cf(WALLIS, 60)
    for name, printed in PRINTED_MAPS.items():
        lo, hi = DISPLAYED_LEVELS[name]
        m = collapse_segment(cf, lo, hi)
        rep.exact_entry(f"{name} over levels [{lo},{hi}) as drawn",
                        ", ".join(render(v) for v in m.as_tuple()), ", ".join(map(str, printed)),
                        note="" if m.as_tuple() == printed else "drawn fractions disagree with the printed integers")
    for name, printed in PRINTED_MAPS.items():
        lo, hi = IMPLIED_LEVELS[name]
        m = collapse_segment(cf, lo, hi)
        rep.exact_entry(f"{name} over levels [{lo},{hi})", ", ".join(render(v) for v in m.as_tuple()),
                        ", ".join(map(str, printed)), note="segmentation implied by the printed integers")
    whole = collapse_segment(cf, 0, 41)
    composed = collapse_segment(cf, 0, 21) @ collapse_segment(cf, 21, 31) @ collapse_segment(cf, 31, 41)
    rep.exact_entry("composition A(p(q(r))) equals the single 41-level map",
                    ", ".join(render(v) for v in composed.as_tuple()), ", ".join(render(v) for v in whole.as_tuple()))
    return rep


def repro_s25() -> Report:
    rep = Report("repro s25", ["s24", "s25"])
    closure = tail_closure_paired(22)
    rep.exact_entry("cubic coefficients", ", ".join(map(str, closure.cubic)), "2, 2, -43, -22")
    rep.decimal_entry("s", closure.root, "4.423", tolerance=5e-4)
    rep.decimal_entry("r", closure.tail, "4.31", tolerance=5e-3)
    cf = factorial_cf(WALLIS, 60)
    q_map, p_map, a_map = (collapse_segment(cf, *IMPLIED_LEVELS[k]) for k in ("q(r)", "p(q)", "A(p)"))
    # chain on the printed r, as in the hand computation
    q_e = q_map(Fraction("4.31"))
    p_e = p_map(Fraction("3.71645446"))
    rep.decimal_entry("q from r = 4.31", float(q_e), "3.71645446", tolerance=2e-7,
                      note="printed as 24043093/6469363, both rounded to integers")
    rep.decimal_entry("p from q = 3.71645446", float(p_e), "3.0266600163", tolerance=1e-8)
    rep.decimal_entry("A from that p", float(a_map(p_e)), "0.5963473621372", tolerance=1e-11)
    # chain on the computed r
    q = q_map(closure.tail)
    p = p_map(q)
    a = a_map(p)
    rep.decimal_entry("A", a, "0.5963473621372", tolerance=2e-10)
    res = sum_by_cf(WALLIS, 40, closure)
    oracle = borel_oracle(1, 1)
    rep.results += [
        MethodResult("cf-closure", res.value, res.error, metadata={"levels": 40, "closure": "a=22"}),
        MethodResult("oracle", oracle.value, oracle.error_estimate),
    ]
    rep.compute_agreement()
    scf = real_to_simple_cf(Fraction(5963473621372, 10**13), 8)
    rep.exact_entry("simple CF quotients", ", ".join(map(str, scf.quotients)), "0, 1, 1, 2, 10, 1, 1, 4, 2")
    printed_conv = ["0/1", "1/1", "1/2", "3/5", "31/52", "34/57", "65/109", "294/493", "653/1095"]
    for c, p in zip(scf.convergents(), printed_conv):
        rep.exact_entry("simple CF convergent", f"{c.numerator}/{c.denominator}", p)
    return rep


def repro_s29() -> Report:
    rep = Report("repro s29", ["s28", "s29"])
    cf = factorial_cf(ODD_FACTORIAL, 10)
    conv = convergents(cf, 12)
    printed = ["0/1", "1/1", "1/2", "3/4", "6/10", "18/26", "48/76", "156/232", "492/764",
               "1740/2620", "6168/9496", "23568/35696"]
    for c, p in zip(conv, printed):
        rep.exact_entry("convergent", str(c), p)
    m = collapse_segment(cf, 0, 11)
    rep.exact_entry("z(p)", ", ".join(render(v) for v in m.as_tuple()), "23568, 6168, 35696, 9496")
    reduced = tuple(v / 8 for v in m.as_tuple())
    rep.exact_entry("z(p) divided by 8", ", ".join(render(v) for v in reduced), "2946, 771, 4402, 1187",
                    note="35696/8 = 4462")
    closure = tail_closure_single(11)
    rep.exact_entry("cubic coefficients", ", ".join(map(str, closure.cubic)), "2, 3, -22, -12")
    rep.decimal_entry("q", closure.root, "2.94", tolerance=1e-2)
    rep.decimal_entry("p", closure.tail, "2.79", tolerance=1e-2)
    res = sum_by_cf(ODD_FACTORIAL, 10, closure)
    rep.decimal_entry("z", res.value, "0.65568", tolerance=1e-5)
    oracle = borel_oracle(1, 2)
    rep.results += [
        MethodResult("cf-closure", res.value, res.error, metadata={"levels": 10, "closure": "n=11"}),
        MethodResult("oracle", oracle.value, oracle.error_estimate),
    ]
    rep.compute_agreement()
    return rep


def run_section(section: str) -> Report:
    if section not in SECTIONS:
        raise KeyError(f"unknown section {section!r}; choose from {', '.join(SECTIONS)}")
    return globals()[f"repro_{section}"]()
