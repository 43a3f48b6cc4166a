import pytest

from divsum.repro import IMPLIED_LEVELS, PRINTED_MAPS, SECTIONS, run_section
from divsum.cf_engine import collapse_segment, factorial_cf
from divsum.series_core import WALLIS


@pytest.mark.parametrize("section", SECTIONS)
def test_every_section_runs(section):
    rep = run_section(section)
    assert rep.repro
    assert rep.command == f"repro {section}"


def test_unknown_section():
    with pytest.raises(KeyError):
        run_section("s99")


# sections whose only mismatches are known printing slips in the source tables
KNOWN_SLIPS = {
    "s15": set(),
    "s16": set(),
    "s17": {"1/B(8)"},
    "s18": {"numerator over 2^1"},
    "s19": {"addend x=8/10", "A (trapezoid, 10 panels)"},
    "s22": {"too small"},
    "s25": set(),
    "s29": {"z(p) divided by 8"},
}


@pytest.mark.parametrize("section", sorted(KNOWN_SLIPS))
def test_only_known_slips_mismatch(section):
    rep = run_section(section)
    assert {e.label for e in rep.repro if not e.match} == KNOWN_SLIPS[section]
    assert rep.mismatch == bool(KNOWN_SLIPS[section])


def test_s16_matches_exactly():
    rep = run_section("s16")
    (a,) = [e for e in rep.repro if e.label == "A"]
    assert a.computed == "38015/65536" and a.match


def test_s23_reports_without_raising():
    rep = run_section("s23")
    implied = [e for e in rep.repro if "as drawn" not in e.label and "composition" not in e.label]
    assert all(e.match for e in implied)
    drawn = [e for e in rep.repro if "as drawn" in e.label]
    assert [e.match for e in drawn] == [False, False, True]
    assert rep.mismatch


def test_printed_integers_are_exact_on_implied_levels():
    cf = factorial_cf(WALLIS, 60)
    for name, printed in PRINTED_MAPS.items():
        assert collapse_segment(cf, *IMPLIED_LEVELS[name]).as_tuple() == printed


def test_s25_final_value():
    rep = run_section("s25")
    (a,) = [e for e in rep.repro if e.label == "A"]
    assert a.match and a.delta < 2e-10
