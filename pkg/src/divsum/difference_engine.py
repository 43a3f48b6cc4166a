"""Difference tables, the alternating-series transform and Newton extrapolation.

Two difference conventions coexist because the historical tables use both:
``FORWARD`` takes next minus current, ``REVERSED`` takes current minus next.
Every table carries its convention so the two never get mixed silently.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from decimal import ROUND_HALF_UP, Decimal, localcontext
from fractions import Fraction
from typing import Optional, Sequence, Union

from .series_core import WALLIS, generate_b_sequence, generate_terms

Number = Union[Fraction, Decimal]


class Convention(enum.Enum):
    FORWARD = "forward"
    REVERSED = "reversed"


@dataclass(frozen=True)
class DecimalProtocol:
    """Round every row-0 entry to ``places`` decimals, half away from zero.

    Differences of such entries are exact at the same number of places, so
    only the input row ever needs rounding.
    """

    places: int = 7

    def __post_init__(self) -> None:
        if self.places < 0:
            raise ValueError("places must be non-negative")

    def apply(self, value: Union[Number, int]) -> Decimal:
        quantum = Decimal(1).scaleb(-self.places)
        if isinstance(value, Fraction):
            with localcontext() as ctx:
                ctx.prec = max(50, self.places + 30)
                dec = Decimal(value.numerator) / Decimal(value.denominator)
                return dec.quantize(quantum, rounding=ROUND_HALF_UP)
        return Decimal(value).quantize(quantum, rounding=ROUND_HALF_UP)


@dataclass(frozen=True)
class DifferenceTable:
    rows: tuple
    convention: Convention

    @property
    def heads(self) -> tuple:
        """First entry of every row: the input's first term, then α, β, γ, ..."""
        return tuple(row[0] for row in self.rows)

    def __len__(self) -> int:
        return len(self.rows)


def build_table(
    terms: Sequence,
    convention: Convention = Convention.FORWARD,
    protocol: Optional[DecimalProtocol] = None,
) -> DifferenceTable:
    if len(terms) < 1:
        raise ValueError("need at least one term")
    if protocol is not None:
        row = tuple(protocol.apply(t) for t in terms)
    else:
        row = tuple(Fraction(t) if isinstance(t, int) else t for t in terms)
    rows = [row]
    while len(row) > 1:
        if convention is Convention.FORWARD:
            row = tuple(b - a for a, b in zip(row, row[1:]))
        else:
            row = tuple(a - b for a, b in zip(row, row[1:]))
        rows.append(row)
    return DifferenceTable(tuple(rows), convention)


def euler_transform(terms: Sequence[Fraction]) -> tuple:
    """Rewrite a - b + c - d + ... as a/2 - α/4 + β/8 - γ/16 + ...

    ``terms`` are signed as written.  The alternating sign is removed by
    position (term k is multiplied by (-1)^k), which for a strictly
    alternating input is the same as taking magnitudes, and α, β, γ are the
    heads of the forward differences of those unsigned values.  The output
    has the same length as the input.
    """
    if not terms:
        raise ValueError("need at least one term")
    unsigned = [(-1) ** k * Fraction(t) for k, t in enumerate(terms)]
    heads = build_table(unsigned, Convention.FORWARD).heads
    return tuple((-1) ** k * h / 2 ** (k + 1) for k, h in enumerate(heads))


@dataclass(frozen=True)
class TransformStage:
    peeled: tuple  # leading terms summed directly before transforming
    source: tuple  # the remainder that was transformed
    table: DifferenceTable  # forward differences of the unsigned remainder
    output: tuple


@dataclass(frozen=True)
class IteratedTransform:
    stages: tuple
    value: Fraction  # every peeled term plus the final stage's output


def iterated_transform(terms: Sequence[Fraction], peels: Sequence[int]) -> IteratedTransform:
    """Transform, peel leading terms, transform again, one stage per ``peels`` entry.

    Before stage i the first ``peels[i]`` terms of the current series are
    summed and set aside; the rest is transformed.  The value is the sum of
    everything peeled plus the sum of the last transformed series.
    """
    current = tuple(Fraction(t) for t in terms)
    stages = []
    peeled_total = Fraction(0)
    for k in peels:
        if k < 0 or k >= len(current):
            raise ValueError(f"cannot peel {k} terms from a series of {len(current)}")
        head, rest = current[:k], current[k:]
        peeled_total += sum(head, Fraction(0))
        unsigned = [(-1) ** i * t for i, t in enumerate(rest)]
        out = euler_transform(rest)
        stages.append(TransformStage(head, rest, build_table(unsigned), out))
        current = out
    if not stages:
        raise ValueError("peel schedule is empty")
    return IteratedTransform(tuple(stages), peeled_total + sum(current, Fraction(0)))


# Wallis series through 9!, peeling 1 - 1, then 1 - 1, then 7/8 - 18/32.
WALLIS_PEEL_SCHEDULE = (2, 2, 2)


def wallis_iterated_transform() -> IteratedTransform:
    return iterated_transform(generate_terms(WALLIS, 10), WALLIS_PEEL_SCHEDULE)


def reproduce_A_by_iterated_transform() -> Fraction:
    """38015/65536: three transforms of the Wallis series with 1 - 1 peeled twice."""
    return wallis_iterated_transform().value


def newton_extrapolate_zero(
    terms: Sequence,
    convention: Convention = Convention.FORWARD,
    protocol: Optional[DecimalProtocol] = None,
    depth: Optional[int] = None,
) -> Number:
    """Value at index 0 of the sequence whose entries sit at indices 1, 2, 3, ...

    REVERSED: terms[0] + α + β + γ + ...; FORWARD: terms[0] - α + β - γ + ...
    ``depth`` counts difference rows used (all available by default).
    """
    table = build_table(terms, convention, protocol)
    available = len(table) - 1
    if depth is None:
        depth = available
    if depth < 0 or depth > available:
        raise ValueError(f"depth {depth} exceeds the {available} difference rows available")
    heads = table.heads[: depth + 1]
    if convention is Convention.REVERSED:
        return sum(heads[1:], heads[0])
    return sum(((-1) ** k * h for k, h in enumerate(heads) if k), heads[0])


def reciprocal_b_table(count: int = 13, places: int = 7) -> DifferenceTable:
    """7-decimal reciprocals 1, 1/2, 1/5, 1/16, ... differenced current minus next."""
    recips = [1 / b for b in generate_b_sequence(count)]
    return build_table(recips, Convention.REVERSED, DecimalProtocol(places))


def reciprocal_extrapolate_inverse_A(count: int = 13, depth: int = 5, places: int = 7) -> Decimal:
    """1/A from the reciprocal B-sequence; 1.6517401 at the historical depth 5."""
    recips = [1 / b for b in generate_b_sequence(count)]
    return newton_extrapolate_zero(recips, Convention.REVERSED, DecimalProtocol(places), depth)


@dataclass(frozen=True)
class LogExtrapolation:
    logs: tuple  # rounded log10 B(1..n)
    heads: tuple  # signed forward-difference heads α, β, γ, ... of the logs
    transformed: tuple  # transform of α - β + γ - ..., i.e. the series for log(1/A)
    log_inverse: Decimal  # sum of the used transformed terms, rounded
    value: Decimal  # 10 ** (-log_inverse), rounded to the same places


def log_extrapolate(count: int = 8, terms_used: int = 6, places: int = 7) -> LogExtrapolation:
    """Base-10 logarithmic variant of the extrapolation to index 0.

    With α, β, γ, ... the forward heads of log B(n), log A = -α + β - γ + ...,
    so log(1/A) = α - β + γ - ...; that series is transformed and its first
    ``terms_used`` transformed terms are summed.
    """
    if terms_used > count - 1:
        raise ValueError("not enough logarithms for the requested number of terms")
    proto = DecimalProtocol(places)
    logs = tuple(proto.apply(Decimal(int(b)).log10()) for b in generate_b_sequence(count))
    heads = build_table(logs, Convention.FORWARD).heads[1:]
    series = [Fraction((-1) ** k) * Fraction(h) for k, h in enumerate(heads)]
    transformed = euler_transform(series)
    log_inverse = proto.apply(sum(transformed[:terms_used], Fraction(0)))
    with localcontext() as ctx:
        ctx.prec = 40
        value = proto.apply(Decimal(10) ** -log_inverse)
    return LogExtrapolation(logs, heads, transformed, log_inverse, value)


def log_extrapolate_A() -> Decimal:
    return log_extrapolate().value

