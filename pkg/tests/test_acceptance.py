"""Acceptance gate: one test and one printed verdict line per criterion."""

import math
import random
from decimal import Decimal
from fractions import Fraction

from scipy.special import exp1

from divsum.borel_quadrature import IntegrandSpec, adaptive_unit_interval, borel_oracle, trapezoid_unit_interval
from divsum.cf_engine import (
    BreakdownError,
    bracket_and_average,
    collapse_segment,
    convergents,
    factorial_cf,
    real_to_simple_cf,
    series_to_cf,
    sum_by_cf,
    tail_closure_paired,
    tail_closure_single,
)
from divsum.difference_engine import (
    build_table,
    euler_transform,
    log_extrapolate_A,
    reciprocal_extrapolate_inverse_A,
    reproduce_A_by_iterated_transform,
)
from divsum.repro import IMPLIED_LEVELS, PRINTED_MAPS, run_section
from divsum.series_core import ODD_FACTORIAL, WALLIS, FactorialFamily, generate_terms

from cf_helpers import expand_cf

PRINTED_A = 0.5963473621372
GOMPERTZ = math.e * exp1(1.0)


def test_criterion_1_exact_golden_tables(criterion):
    for terms, expected in (([1, -1, 1, -1, 1], Fraction(1, 2)), ([1, -2, 3, -4, 5], Fraction(1, 4)),
                            ([1, -4, 9, -16, 25], Fraction(0))):
        got = sum(euler_transform([Fraction(t) for t in terms]))
        criterion.check(f"transform sum of {terms[:3]}...", got == expected, f"got {got}")
    rows = build_table([1, 3, 12, 60, 360, 2520, 20160, 181440]).rows
    printed = [
        (2, 9, 48, 300, 2160, 17640, 161280),
        (7, 39, 252, 1860, 15480, 143640),
        (32, 213, 1608, 13620, 128160),
        (181, 1395, 12012, 114540),
        (1214, 10617, 102528),
        (9403, 91911),
        (82508,),
    ]
    for k, row in enumerate(printed, start=1):
        criterion.check(f"difference row {k}", rows[k] == row, f"got {rows[k]}")
    a = reproduce_A_by_iterated_transform()
    criterion.check("iterated transform", a == Fraction(38015, 65536), f"got {a}")
    criterion.finish(1, "exact transform sums, integer difference rows, A = 38015/65536")


def test_criterion_2_extrapolation_protocols(criterion):
    inv = reciprocal_extrapolate_inverse_A()
    criterion.check("reciprocal extrapolation", inv == Decimal("1.6517401"), f"got {inv}")
    a = log_extrapolate_A()
    criterion.check("log extrapolation", abs(a - Decimal("0.59966")) <= Decimal("1e-5"), f"got {a}")
    criterion.finish(2, f"1/A = {inv} exactly, log route A = {a} within 1e-5 of 0.59966")


PRINTED_ADDENDS = ["0.00012341", "0.00915782", "0.03232399", "0.05578254", "0.07357589",
                   "0.08556952", "0.09306272", "0.09735007", "0.09942659", "0.05000000"]


def test_criterion_3_ten_panel_trapezoid(criterion):
    res = trapezoid_unit_interval(IntegrandSpec.factorial_unit(), 10)
    delta = abs(res.value - 0.59637255)
    criterion.check("total within 2e-8", delta <= 2e-8, f"{res.value:.10f}, |delta| = {delta:.2e}")
    for k, printed in enumerate(PRINTED_ADDENDS, start=1):
        ours = Decimal(repr(res.addends[k])).quantize(Decimal("1e-8"), rounding="ROUND_HALF_UP")
        criterion.check(f"addend x={k}/10", ours == Decimal(printed), f"{ours} vs printed {printed}")
    criterion.finish(3, "ten-panel trapezoid total and printed addends at 8 decimals")


AVERAGED_PRINTED = ["0.5000000000", "0.7500000000", "0.5833333333", "0.6190476190", "0.5934065934",
                    "0.6018099548", "0.5954875100", "0.5980205807", "0.5960519153"]


def test_criterion_4_continued_fractions(criterion):
    conv = convergents(factorial_cf(WALLIS, 10), 10)
    got = [str(c) for c in conv]
    expected = ["0/1", "1/1", "1/2", "2/3", "4/7", "8/13", "20/34", "44/73", "124/209", "300/501"]
    criterion.check("ten unreduced convergents", got == expected, f"got {got}")
    br = bracket_and_average([c.value for c in conv])
    averaged = [v for pair in zip(br.averaged_lower, br.averaged_upper + [None]) for v in pair if v is not None]
    for v, printed in zip(averaged, AVERAGED_PRINTED):
        ours = Decimal(v.numerator) / Decimal(v.denominator)
        criterion.check(f"averaged {printed}", abs(ours - Decimal(printed)) < Decimal("1e-10"), f"ours {ours:.12f}")
    criterion.check("averaged count", len(averaged) == len(AVERAGED_PRINTED), f"{len(averaged)} values")
    for p in range(1, 5):
        for q in range(1, 5):
            fam = FactorialFamily(p, q, 1, 1)
            same = series_to_cf(generate_terms(fam, 9), 8) == factorial_cf(fam, 8)
            criterion.check(f"division vs law at p={p}, q={q}", same)
    criterion.finish(4, "convergents, averaged brackets at 10 decimals, division agrees with the law to depth 8")


def _chain_from_closure():
    cf = factorial_cf(WALLIS, 60)
    q_map, p_map, a_map = (collapse_segment(cf, *IMPLIED_LEVELS[k]) for k in ("q(r)", "p(q)", "A(p)"))
    r = tail_closure_paired(22).tail
    return a_map(p_map(q_map(r)))


def test_criterion_5_tail_closure(criterion):
    c = tail_closure_paired(22)
    criterion.check("s near 4.423", abs(c.root - 4.423) <= 5e-4, f"s = {c.root:.6f}")
    criterion.check("r near 4.31", abs(c.tail - 4.31) <= 5e-3, f"r = {c.tail:.6f}")
    chain = _chain_from_closure()
    criterion.check("r -> q -> p -> A chain", abs(chain - PRINTED_A) <= 2e-10, f"A = {chain:.13f}")
    whole = sum_by_cf(WALLIS, 40, c).value
    criterion.check("single collapsed map", abs(whole - PRINTED_A) <= 2e-10, f"A = {whole:.13f}")
    n11 = tail_closure_single(11)
    criterion.check("q near 2.94", abs(n11.root - 2.94) <= 1e-2, f"q = {n11.root:.6f}")
    z = sum_by_cf(ODD_FACTORIAL, 10, n11).value
    criterion.check("z near 0.65568", abs(z - 0.65568) <= 1e-5, f"z = {z:.8f}")
    criterion.finish(5, f"paired closure A = {chain:.13f}, single closure z = {z:.8f}")


def test_criterion_6_oracle_agreement(criterion):
    oracle = borel_oracle(1, 1)
    criterion.check("oracle value", abs(oracle.value - 0.5963473623) <= 1e-9, f"{oracle.value:.13f}")
    criterion.check("oracle error estimate", oracle.error_estimate <= 1e-9, f"{oracle.error_estimate:.1e}")
    criterion.check("independent e*E1(1)", abs(oracle.value - GOMPERTZ) <= 1e-12)
    reps = {
        "factorial curve": adaptive_unit_interval(IntegrandSpec.factorial_unit()),
        "log curve": adaptive_unit_interval(IntegrandSpec.log_unit()),
        "half-line": oracle,
    }
    for a, ra in reps.items():
        for b, rb in reps.items():
            if a < b:
                gap = abs(ra.value - rb.value)
                criterion.check(f"{a} vs {b}", gap <= ra.error_estimate + rb.error_estimate, f"|delta| = {gap:.1e}")
    cf100 = sum_by_cf(WALLIS, 100).value
    criterion.check("100-level CF", abs(cf100 - oracle.value) <= 1e-8, f"|delta| = {abs(cf100 - oracle.value):.1e}")
    criterion.finish(6, f"oracle {oracle.value:.13f}, representations agree, 100-level CF within 1e-8")


def test_criterion_7_simple_cf(criterion):
    x = Fraction(5963473621372, 10**13)
    scf = real_to_simple_cf(x, 8)
    criterion.check("quotients", scf.quotients == (0, 1, 1, 2, 10, 1, 1, 4, 2), f"got {scf.quotients}")
    conv = scf.convergents()
    for target in (Fraction(3, 5), Fraction(31, 52), Fraction(34, 57), Fraction(65, 109)):
        criterion.check(f"convergent {target}", target in conv)
    full = real_to_simple_cf(x).convergents()
    for c, nxt in zip(full, full[1:]):
        criterion.check(f"bound at {c}", abs(x - c) <= Fraction(1, c.denominator * nxt.denominator))
    criterion.finish(7, "leading quotients [0;1,1,2,10,1,1,4,2], convergent error bound")


def test_criterion_8_property_suites(criterion):
    rng = random.Random(8)
    cf = factorial_cf(WALLIS, 30)
    conv = convergents(cf, 30)
    prod = Fraction(1)
    for n in range(1, 30):
        prod *= cf.numerators[n - 1]
        lhs = conv[n].h * conv[n - 1].k - conv[n - 1].h * conv[n].k
        criterion.check(f"determinant at {n}", lhs == (-1) ** (n - 1) * prod)
    for b in range(31):
        whole = collapse_segment(cf, 0, b)
        for a in range(b + 1):
            criterion.check(f"composition {a},{b}", collapse_segment(cf, 0, a) @ collapse_segment(cf, a, b) == whole)
    ratios = []
    while len(ratios) < 20:
        r = Fraction(rng.randint(1, 299), rng.randint(1, 100))
        if 0 < r < 3 and r != 1 and r not in ratios:
            ratios.append(r)
    for r in ratios:
        out = euler_transform([(-r) ** k for k in range(12)])
        criterion.check(f"geometric r={r}", list(out) == [Fraction(1, 2) * (-(r - 1) / 2) ** k for k in range(12)])
    done = 0
    while done < 20:
        n = rng.randint(3, 8)
        coeffs = [Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(n)]
        if coeffs[0] == 0:
            continue
        try:
            frac = series_to_cf(coeffs, n - 1)
        except BreakdownError:
            continue
        criterion.check(f"re-expansion of {coeffs}", expand_cf(frac, n - 1) == coeffs)
        done += 1
    for p, q in ((1, 2), (2, 1), (3, 2)):
        spec = IntegrandSpec.general(p, q, 1)
        diffs = [trapezoid_unit_interval(spec, n).error_estimate for n in (10, 20, 40, 80)]
        for coarse, fine in zip(diffs, diffs[1:]):
            criterion.check(f"trapezoid ratio p={p} q={q}", 3.5 <= coarse / fine <= 4.5, f"{coarse / fine:.3f}")
    criterion.finish(8, "determinant, composition, geometric, re-expansion and trapezoid-order properties")


def test_criterion_9_printed_map_audit(criterion):
    rep = run_section("s23")
    labels = [e.label for e in rep.repro]
    for name, printed in PRINTED_MAPS.items():
        criterion.check(f"{name} reported", any(e.label.startswith(name) for e in rep.repro))
        text = ", ".join(map(str, printed))
        criterion.check(f"{name} compared to printed", any(e.printed == text for e in rep.repro))
    verdicts = sum(not e.match for e in rep.repro)
    criterion.check("audit ran to completion", len(labels) == 7)
    chain = _chain_from_closure()
    criterion.check("end-to-end value", abs(chain - PRINTED_A) <= 2e-10, f"A = {chain:.13f}")
    criterion.finish(9, f"printed maps audited ({verdicts} mismatching entries reported), end-to-end A holds")
