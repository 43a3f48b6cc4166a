from fractions import Fraction
from math import factorial

import pytest
from hypothesis import given
from hypothesis import strategies as st

from divsum.series_core import (
    ODD_FACTORIAL,
    WALLIS,
    FactorialFamily,
    Species,
    classify_series,
    format_rational,
    generate_b_sequence,
    generate_terms,
    partial_sums,
    rational_power,
    to_rational,
)


def test_wallis_terms():
    assert generate_terms(WALLIS, 6) == (1, -1, 2, -6, 24, -120)


def test_odd_factorial_terms():
    assert generate_terms(ODD_FACTORIAL, 5) == (1, -1, 3, -15, 105)


def test_single_term_is_x_to_the_m():
    fam = FactorialFamily("3/2", "1/2", 2, "4/9")
    assert generate_terms(fam, 1) == (Fraction(16, 81),)


def test_count_must_be_positive():
    with pytest.raises(ValueError):
        generate_terms(WALLIS, 0)


@pytest.mark.parametrize("bad", [dict(p=0), dict(q=-1), dict(x=0), dict(m=-1)])
def test_family_validation(bad):
    args = dict(p=1, q=1, m=1, x=1)
    args.update(bad)
    with pytest.raises(ValueError):
        FactorialFamily(**args)


def test_irrational_power_is_refused():
    with pytest.raises(ValueError):
        FactorialFamily(1, "1/2", 1, 2)
    assert rational_power(Fraction(9, 4), Fraction(3, 2)) == Fraction(27, 8)


def test_rational_parsing():
    assert to_rational("-7/4") == Fraction(-7, 4)
    assert to_rational(" 3 ") == 3
    assert format_rational(Fraction(-7, 4)) == "-7/4"
    assert format_rational(Fraction(6, 3)) == "2"
    with pytest.raises(TypeError):
        to_rational(0.5)
    with pytest.raises(TypeError):
        to_rational(True)
    with pytest.raises(ValueError):
        to_rational("1/0")


def test_b_sequence():
    assert generate_b_sequence(7) == (1, 2, 5, 16, 65, 326, 1957)
    assert generate_b_sequence(8)[-1] == 13700
    assert generate_b_sequence(1) == (1,)


def test_b_sequence_closed_form():
    seq = generate_b_sequence(12)
    for n in range(1, 13):
        closed = sum(factorial(n - 1) // factorial(n - 1 - k) for k in range(n))
        assert seq[n - 1] == closed


def test_partial_sums():
    assert partial_sums([1, -1, 2, -6]) == (1, 0, 2, -4)
    assert partial_sums([1]) == (1,)
    assert partial_sums([1, -1, 3, -15, 105]) == (1, 0, 3, -12, 93)


@pytest.mark.parametrize(
    "terms, species",
    [
        ([1, 1, 1, 1, 1], Species.I),
        (["1/2", "-2/3", "3/4", "-4/5"], Species.II),
        ([1, -2, 4, -8], Species.IV),
        ([1, 2, 4, 8, 16], Species.III),
        ([1, -1, 2, -6, 24], Species.IV),
    ],
)
def test_classify(terms, species):
    assert classify_series(terms) is species


def test_classify_errors():
    with pytest.raises(ValueError):
        classify_series([1, -1, 1])
    with pytest.raises(ValueError):
        classify_series([1, 0, 1, -1])
    with pytest.raises(ValueError):
        classify_series([1, 1, -1, 1])


small_pos = st.fractions(min_value=Fraction(1, 8), max_value=8, max_denominator=8)


@given(small_pos, st.integers(1, 3), st.integers(0, 3), small_pos)
def test_term_ratio_law(p, q, m, x):
    fam = FactorialFamily(p, q, m, x)
    terms = generate_terms(fam, 8)
    for k in range(7):
        assert terms[k + 1] / terms[k] == -(p + k * q) * x**q
        assert terms[k] == fam.term(k)


@given(
    st.lists(st.fractions(min_value=Fraction(1, 20), max_value=100, max_denominator=20), min_size=4, max_size=8),
    st.booleans(),
    st.fractions(min_value=Fraction(1, 10), max_value=50, max_denominator=10),
)
def test_classification_scale_invariant(mags, alternate, scale):
    terms = [(-1) ** k * v if alternate else v for k, v in enumerate(mags)]
    assert classify_series(terms) is classify_series([scale * t for t in terms])
