"""Series families, exact term generation and the four-species classification.

Every coefficient lives in :class:`fractions.Fraction`, so tables built on top
of these terms stay exact until something explicitly rounds them.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

ExactRational = Fraction
RationalLike = Union[int, str, Fraction]

# Ordered tuple of signed exact terms; index 0 is the first term of the series.
SignedTermList = tuple


def to_rational(value: RationalLike) -> Fraction:
    """Parse ``value`` into a Fraction.

    Strings use the ``"num/den"`` form (``"3"`` and ``"-7/4"`` are fine).
    Floats are refused on purpose: they would smuggle a binary rounding error
    into tables that are meant to be exact.
    """
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        if "/" in text:
            num, den = text.split("/", 1)
            if int(den) == 0:
                raise ValueError(f"zero denominator in {value!r}")
            return Fraction(int(num), int(den))
        return Fraction(int(text))
    raise TypeError(f"cannot read {type(value).__name__} as an exact rational")


def format_rational(value: Fraction) -> str:
    """Render a Fraction as ``"num/den"`` (``"num"`` for integers)."""
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def _exact_root(n: int, k: int) -> int:
    lo, hi = 0, 1 << (n.bit_length() // k + 1)
    while lo < hi:
        mid = (lo + hi) // 2
        if mid**k < n:
            lo = mid + 1
        else:
            hi = mid
    if lo**k != n:
        raise ValueError(f"{n} has no exact integer {k}-th root")
    return lo


def rational_power(base: Fraction, exponent: Fraction) -> Fraction:
    """Exact ``base ** exponent`` for rational exponents.

    Raises ValueError when the result is irrational (e.g. ``2 ** (1/2)``).
    """
    base = Fraction(base)
    exponent = Fraction(exponent)
    if exponent.denominator == 1:
        return base ** exponent.numerator
    if base < 0:
        raise ValueError("fractional power of a negative base")
    k = exponent.denominator
    root = Fraction(_exact_root(base.numerator, k), _exact_root(base.denominator, k))
    return root ** exponent.numerator


@dataclass(frozen=True)
class FactorialFamily:
    """The alternating factorial-type series

        sum_k (-1)^k * p (p + q) ... (p + (k-1) q) * x^(m + k q)

    ``p = q = m = x = 1`` is the Wallis series 1 - 1 + 2 - 6 + 24 - ...,
    ``p = 1, q = 2`` the odd-factorial series 1 - 1 + 3 - 15 + 105 - ...
    """

    p: Fraction = Fraction(1)
    q: Fraction = Fraction(1)
    m: Fraction = Fraction(1)
    x: Fraction = Fraction(1)

    def __post_init__(self) -> None:
        for name in ("p", "q", "m", "x"):
            object.__setattr__(self, name, to_rational(getattr(self, name)))
        if self.p <= 0 or self.q <= 0 or self.x <= 0:
            raise ValueError("p, q and x must be positive")
        if self.m < 0:
            raise ValueError("m must be non-negative")
        # fail at construction rather than halfway through a table
        rational_power(self.x, self.m)
        rational_power(self.x, self.q)

    @property
    def x_power_q(self) -> Fraction:
        return rational_power(self.x, self.q)

    def term(self, k: int) -> Fraction:
        coeff = Fraction(1)
        for j in range(k):
            coeff *= self.p + j * self.q
        return (-1) ** k * coeff * rational_power(self.x, self.m) * self.x_power_q**k


WALLIS = FactorialFamily(1, 1, 1, 1)
ODD_FACTORIAL = FactorialFamily(1, 2, 1, 1)


def generate_terms(family: FactorialFamily, count: int) -> SignedTermList:
    if count < 1:
        raise ValueError("count must be at least 1")
    first = rational_power(family.x, family.m)
    ratio_base = family.x_power_q
    terms = [first]
    for k in range(count - 1):
        terms.append(-terms[-1] * (family.p + k * family.q) * ratio_base)
    return tuple(terms)


def generate_b_sequence(count: int) -> SignedTermList:
    """1, 2, 5, 16, 65, 326, ... with B(n+1) = n B(n) + 1."""
    if count < 1:
        raise ValueError("count must be at least 1")
    seq = [Fraction(1)]
    for n in range(1, count):
        seq.append(n * seq[-1] + 1)
    return tuple(seq)


def partial_sums(terms: Iterable[Fraction]) -> SignedTermList:
    out = []
    total = Fraction(0)
    for t in terms:
        total += t
        out.append(total)
    return tuple(out)


class Species(enum.Enum):
    I = "I"  # same sign, terms stay finite
    II = "II"  # alternating, terms stay finite
    III = "III"  # same sign, terms grow
    IV = "IV"  # alternating, terms grow


def classify_series(terms: Sequence[RationalLike]) -> Species:
    """Guess the species of a divergent series from a finite prefix.

    Species is a statement about the infinite tail, so this is only a
    heuristic over the sample:

    * alternating means the signs strictly alternate across the whole prefix;
    * growing means the magnitudes never decrease and their increments never
      shrink, with a positive final increment (at least linear growth).
      Bounded increasing runs such as 1/2, 2/3, 3/4, ... have shrinking
      increments and count as finite.
    """
    values = [to_rational(t) for t in terms]
    if len(values) < 4:
        raise ValueError("need at least four terms to classify")
    if any(v == 0 for v in values):
        raise ValueError("zero term: sign is undefined")
    signs = [v > 0 for v in values]
    if all(a != b for a, b in zip(signs, signs[1:])):
        alternating = True
    elif all(s == signs[0] for s in signs):
        alternating = False
    else:
        raise ValueError("signs neither constant nor alternating")
    mags = [abs(v) for v in values]
    steps = [b - a for a, b in zip(mags, mags[1:])]
    growing = (
        all(s >= 0 for s in steps)
        and all(b >= a for a, b in zip(steps, steps[1:]))
        and steps[-1] > 0
    )
    if alternating:
        return Species.IV if growing else Species.II
    return Species.III if growing else Species.I
