"""Continued fractions with unit partial denominators.

A :class:`GeneralizedCF` stands for

    leading / (1 + a1 / (1 + a2 / (1 + a3 / ...)))

Convergents are kept unreduced so they line up with hand-computed tables
(20/34 rather than 10/17).  Segments of the fraction collapse to integer
linear-fractional maps, and a divergent tail can be closed off by assuming
three consecutive tail values lie in arithmetic progression.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional, Sequence

from .series_core import FactorialFamily, format_rational, rational_power


class BreakdownError(ArithmeticError):
    """Successive division hit a series with vanishing linear coefficient."""


@dataclass(frozen=True)
class GeneralizedCF:
    leading: Fraction
    partial: tuple  # a1, a2, ...; zeros after early termination

    def __post_init__(self) -> None:
        object.__setattr__(self, "leading", Fraction(self.leading))
        object.__setattr__(self, "partial", tuple(Fraction(a) for a in self.partial))

    @property
    def numerators(self) -> tuple:
        """Leading numerator followed by the partial numerators."""
        return (self.leading,) + self.partial


@dataclass(frozen=True)
class Convergent:
    h: Fraction
    k: Fraction

    @property
    def value(self) -> Fraction:
        return self.h / self.k

    @property
    def reduced(self) -> Fraction:
        return self.value

    def __str__(self) -> str:
        return f"{format_rational(self.h)}/{format_rational(self.k)}"


@dataclass(frozen=True)
class MobiusMap:
    """t -> (alpha + beta t) / (gamma + delta t)."""

    alpha: Fraction
    beta: Fraction
    gamma: Fraction
    delta: Fraction

    @classmethod
    def identity(cls) -> "MobiusMap":
        return cls(Fraction(0), Fraction(1), Fraction(1), Fraction(0))

    @classmethod
    def step(cls, numerator: Fraction) -> "MobiusMap":
        """t -> numerator / (1 + t)."""
        return cls(Fraction(numerator), Fraction(0), Fraction(1), Fraction(1))

    def __call__(self, t):
        if isinstance(t, float):
            return (float(self.alpha) + float(self.beta) * t) / (float(self.gamma) + float(self.delta) * t)
        den = self.gamma + self.delta * t
        if den == 0:
            raise ZeroDivisionError("tail value hits the pole of the map")
        return (self.alpha + self.beta * t) / den

    def __matmul__(self, other: "MobiusMap") -> "MobiusMap":
        """Composition: (self @ other)(t) == self(other(t))."""
        a, b, c, d = self.alpha, self.beta, self.gamma, self.delta
        e, f, g, h = other.alpha, other.beta, other.gamma, other.delta
        return MobiusMap(a * g + b * e, a * h + b * f, c * g + d * e, c * h + d * f)

    @property
    def determinant(self) -> Fraction:
        return self.alpha * self.delta - self.beta * self.gamma

    def as_tuple(self) -> tuple:
        return (self.alpha, self.beta, self.gamma, self.delta)


@dataclass(frozen=True)
class TailClosure:
    pattern: str  # "paired" or "single"
    parameter: int  # a for paired, n for single
    cubic: tuple  # coefficients, highest power first
    root: float  # s for paired, q for single
    bracket: tuple  # sign-change interval the root was found in
    tail: float  # value standing in for the remainder: r (paired) or p (single)

    def residual(self) -> float:
        return _poly(self.cubic, self.root)


@dataclass(frozen=True)
class SimpleCF:
    quotients: tuple  # [a0; a1, a2, ...]

    def convergents(self) -> list:
        h_prev, h = 1, self.quotients[0]
        k_prev, k = 0, 1
        out = [Fraction(h, k)]
        for a in self.quotients[1:]:
            h_prev, h = h, a * h + h_prev
            k_prev, k = k, a * k + k_prev
            out.append(Fraction(h, k))
        return out

    def value(self) -> Fraction:
        acc = Fraction(self.quotients[-1])
        for a in reversed(self.quotients[:-1]):
            acc = a + 1 / acc
        return acc


@dataclass(frozen=True)
class CFSum:
    value: float
    error: float  # bracket half-width, or closure sensitivity when a closure is used
    levels: int
    closure: Optional[TailClosure] = None
    mobius: Optional[MobiusMap] = None


# ---------------------------------------------------------------------------
# construction


def _series_inverse(coeffs: Sequence[Fraction], n: int) -> list:
    inv = [Fraction(0)] * n
    inv[0] = 1 / coeffs[0]
    for i in range(1, n):
        acc = sum((coeffs[j] * inv[i - j] for j in range(1, min(i, len(coeffs) - 1) + 1)), Fraction(0))
        inv[i] = -acc * inv[0]
    return inv


def series_to_cf(coefficients: Sequence, depth: int) -> GeneralizedCF:
    """Successive division of a formal power series into a continued fraction.

    Writes S = c0 / (1 + B1), B1 = a1 x / (1 + B2), B2 = a2 x / (1 + B3), ...
    working on truncated series with exact coefficients.  Each division costs
    one order of precision, so ``depth`` numerators need ``depth + 1``
    coefficients.  When some B vanishes identically the fraction terminates
    and the remaining numerators are zero.
    """
    coeffs = [Fraction(c) for c in coefficients]
    if not coeffs or coeffs[0] == 0:
        raise BreakdownError("leading coefficient must be nonzero")
    if depth < 1 or depth + 1 > len(coeffs):
        raise ValueError(f"depth {depth} needs {depth + 1} coefficients, got {len(coeffs)}")
    leading = coeffs[0]
    t = [c / leading for c in coeffs]
    partial = []
    while len(partial) < depth:
        b = _series_inverse(t, len(t))
        b[0] -= 1
        if all(c == 0 for c in b):
            partial.extend([Fraction(0)] * (depth - len(partial)))
            break
        a = b[1]
        if a == 0:
            raise BreakdownError(f"vanishing linear coefficient at numerator {len(partial) + 1}")
        partial.append(a)
        t = [c / a for c in b[1:]]
    return GeneralizedCF(leading, tuple(partial))


def factorial_cf_numerator(family: FactorialFamily, i: int) -> Fraction:
    """i-th partial numerator (1-based): p, q, p+q, 2q, p+2q, 3q, ... times x^q."""
    j, odd = divmod(i, 2)
    base = family.p + j * family.q if odd else j * family.q
    return base * family.x_power_q


def factorial_cf(family: FactorialFamily, count: int) -> GeneralizedCF:
    if count < 1:
        raise ValueError("count must be at least 1")
    numerators = tuple(factorial_cf_numerator(family, i) for i in range(1, count + 1))
    return GeneralizedCF(rational_power(family.x, family.m), numerators)


# ---------------------------------------------------------------------------
# evaluation


def convergents(cf: GeneralizedCF, count: Optional[int] = None) -> list:
    """Unreduced convergents 0/1, leading/1, ... via h_n = h_{n-1} + a_n h_{n-2}.

    The chain of numerators (leading first) gives ``len(cf.partial) + 2``
    convergents in total.
    """
    chain = cf.numerators
    available = len(chain) + 1
    if count is None:
        count = available
    if count < 1 or count > available:
        raise ValueError(f"can produce 1..{available} convergents, asked for {count}")
    h_prev, h = Fraction(1), Fraction(0)
    k_prev, k = Fraction(0), Fraction(1)
    out = [Convergent(h, k)]
    for a in chain[: count - 1]:
        h_prev, h = h, h + a * h_prev
        k_prev, k = k, k + a * k_prev
        out.append(Convergent(h, k))
    return out


@dataclass(frozen=True)
class Brackets:
    lower: list
    upper: list
    averaged_lower: list
    averaged_upper: list


def _check_bracket(values: Sequence) -> None:
    lows, highs = values[0::2], values[1::2]
    if any(b < a for a, b in zip(lows, lows[1:])) or any(b > a for a, b in zip(highs, highs[1:])):
        raise ValueError("values do not close in monotonically from both sides")
    if lows and highs and max(lows) > min(highs):
        raise ValueError("values do not alternate around a common interval")


def bracket_and_average(values: Sequence) -> Brackets:
    """Split alternating convergent values into lower and upper sides and average
    neighbours, which again alternates around the limit and closes in faster."""
    values = list(values)
    if len(values) < 2:
        raise ValueError("need at least two values")
    _check_bracket(values)
    means = [(a + b) / 2 for a, b in zip(values, values[1:])]
    _check_bracket(means)
    return Brackets(values[0::2], values[1::2], means[0::2], means[1::2])


def collapse_segment(cf: GeneralizedCF, from_level: int, to_level: int) -> MobiusMap:
    """Map sending the tail that follows numerator chain[to_level - 1] to the
    value of the sub-fraction starting at chain[from_level].

    Levels index the full numerator chain (leading numerator is level 0), so
    collapse_segment(cf, 0, n)(t) is the whole fraction with the part after the
    n-th numerator replaced by t.
    """
    chain = cf.numerators
    if not 0 <= from_level <= to_level <= len(chain):
        raise ValueError(f"need 0 <= from <= to <= {len(chain)}")
    m = MobiusMap.identity()
    for a in chain[from_level:to_level]:
        m = m @ MobiusMap.step(a)
    return m


# ---------------------------------------------------------------------------
# tail closure


def _poly(coeffs: Sequence, x: float) -> float:
    acc = 0.0
    for c in coeffs:
        acc = acc * x + float(c)
    return acc


def _positive_root(coeffs: Sequence, hi: float) -> tuple:
    """Bisection on (0, hi] to width 1e-12, then one Newton step."""
    f: Callable[[float], float] = lambda s: _poly(coeffs, s)
    lo = 0.0
    if not (f(lo) < 0 < f(hi)):
        raise ArithmeticError("no sign change on the search interval")
    bracket = (lo, hi)
    while hi - lo > 1e-12:
        mid = 0.5 * (lo + hi)
        if f(mid) > 0:
            hi = mid
        else:
            lo = mid
    s = 0.5 * (lo + hi)
    deg = len(coeffs) - 1
    deriv = [c * (deg - i) for i, c in enumerate(coeffs[:-1])]
    slope = _poly(deriv, s)
    if slope:
        s -= f(s) / slope
    return s, bracket


def tail_closure_paired(a: int) -> TailClosure:
    """Close a tail with numerators a-1, a-1, a, a, a+1, a+1, ...

    With r, s, t the tails starting at a-1, a, a+1 and r + t = 2s:
    2s^3 + 2s^2 - (2a - 1)s - a = 0, then r = ((a-1)s + a - 1) / (s + a).
    """
    if a < 2:
        raise ValueError("a must be at least 2")
    cubic = (2, 2, -(2 * a - 1), -a)
    s, bracket = _positive_root(cubic, float(a))
    r = ((a - 1) * s + (a - 1)) / (s + a)
    return TailClosure("paired", a, cubic, s, bracket, r)


def tail_closure_single(n: int) -> TailClosure:
    """Close a tail with numerators n, n+1, n+2, ...

    p = n/(1+q), q = (n+1)/(1+r) and p + r = 2q give
    2q^3 + 3q^2 - 2n q - (n + 1) = 0; the tail value is p.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    cubic = (2, 3, -2 * n, -(n + 1))
    q, bracket = _positive_root(cubic, float(n + 1))
    p = n / (1 + q)
    return TailClosure("single", n, cubic, q, bracket, p)


def paired_complement(closure: TailClosure) -> float:
    """t = ((a+1)s - a)/(a - s), the tail one step beyond s."""
    a, s = closure.parameter, closure.root
    return ((a + 1) * s - a) / (a - s)


def _closure_fits(closure: TailClosure, following: Sequence[Fraction]) -> bool:
    if closure.pattern == "paired":
        a = closure.parameter
        return list(following[:4]) == [a - 1, a - 1, a, a]
    n = closure.parameter
    return list(following[:3]) == [n, n + 1, n + 2]


def sum_by_cf(family: FactorialFamily, levels: int, closure: Optional[TailClosure] = None) -> CFSum:
    """Value of the family's continued fraction.

    ``levels`` counts partial numerators kept exactly.  With a closure, the
    leading numerator plus those ``levels`` numerators collapse to one
    linear-fractional map evaluated at the closure's tail value; the closure
    must match the numerators that follow.  The reported error is the change
    caused by swapping the closure for the constant-numerator fixed point.

    Without a closure the value is the midpoint of the last two convergents,
    with half their distance as error.
    """
    if levels < 2:
        raise ValueError("levels must be at least 2")
    if closure is None:
        cf = factorial_cf(family, levels)
        conv = convergents(cf)
        lo, hi = conv[-2].value, conv[-1].value
        return CFSum(float((lo + hi) / 2), float(abs(hi - lo) / 2), levels)
    cf = factorial_cf(family, levels + 4)
    following = cf.partial[levels:]
    if not _closure_fits(closure, following):
        raise ValueError(
            f"{closure.pattern} closure at {closure.parameter} does not match the numerators "
            f"{[format_rational(a) for a in following[:4]]} after level {levels}"
        )
    m = collapse_segment(cf, 0, levels + 1)
    value = m(closure.tail)
    first = float(following[0])
    crude = (math.sqrt(1 + 4 * first) - 1) / 2  # fixed point of t = first / (1 + t)
    return CFSum(value, abs(value - m(crude)), levels, closure, m)


# ---------------------------------------------------------------------------
# simple continued fractions


def real_to_simple_cf(value, count: Optional[int] = None) -> SimpleCF:
    """Euclidean partial quotients [a0; a1, ..., a_count] of a positive rational.

    ``count`` excludes a0; the expansion stops early when it terminates.
    """
    x = Fraction(value)
    if x <= 0:
        raise ValueError("value must be positive")
    quotients = []
    while count is None or len(quotients) <= count:
        a = math.floor(x)
        quotients.append(a)
        frac = x - a
        if frac == 0:
            break
        x = 1 / frac
    return SimpleCF(tuple(quotients))
