"""Integral representations of the factorial series and their quadrature.

The Wallis series is the area under y = e^(1 - 1/x)/x on [0, 1], or under
y = 1/(1 - ln v) on [0, 1], or, after substituting to the half-line, the
integral of e^(-t)/(1 + t).  The general family sums to

    int_0^inf e^(-t) (1 + q t)^(-p/q) dt

at x = 1, which expanding the binomial term by term confirms.  The half-line
form is the oracle every other method is checked against.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction

from scipy import integrate

from .series_core import RationalLike, to_rational

DEFAULT_EXPONENT_CAP = 700.0


class IntegrandKind(enum.Enum):
    FACTORIAL_UNIT = "factorial_unit"
    LOG_UNIT = "log_unit"
    GENERAL = "general"
    BOREL_HALFLINE = "borel_halfline"


@dataclass(frozen=True)
class IntegrandSpec:
    kind: IntegrandKind
    p: Fraction = Fraction(1)
    q: Fraction = Fraction(1)
    m: Fraction = Fraction(1)
    x: Fraction = Fraction(1)

    @classmethod
    def factorial_unit(cls) -> "IntegrandSpec":
        return cls(IntegrandKind.FACTORIAL_UNIT)

    @classmethod
    def log_unit(cls) -> "IntegrandSpec":
        return cls(IntegrandKind.LOG_UNIT)

    @classmethod
    def general(cls, p: RationalLike, q: RationalLike, m: RationalLike, x: RationalLike = 1) -> "IntegrandSpec":
        spec = cls(IntegrandKind.GENERAL, to_rational(p), to_rational(q), to_rational(m), to_rational(x))
        if spec.p <= 0 or spec.q <= 0 or spec.x <= 0:
            raise ValueError("p, q and x must be positive")
        return spec

    @classmethod
    def borel_halfline(cls, p: RationalLike, q: RationalLike) -> "IntegrandSpec":
        spec = cls(IntegrandKind.BOREL_HALFLINE, to_rational(p), to_rational(q))
        if spec.p <= 0 or spec.q <= 0:
            raise ValueError("p and q must be positive")
        return spec

    @property
    def upper(self) -> float:
        if self.kind is IntegrandKind.BOREL_HALFLINE:
            return math.inf
        if self.kind is IntegrandKind.GENERAL:
            return float(self.x)
        return 1.0


@dataclass(frozen=True)
class QuadratureResult:
    value: float
    nodes: int  # panels for the trapezoid rule, integrand evaluations otherwise
    error_estimate: float
    method: str  # "trapezoid" or "adaptive"
    addends: tuple = field(default=(), compare=False)  # per-ordinate contributions (trapezoid)


def evaluate_integrand(spec: IntegrandSpec, point: float) -> float:
    t = float(point)
    upper = spec.upper
    if t < 0 or t > upper or math.isnan(t):
        raise ValueError(f"point {point} outside the integration domain [0, {upper}]")
    kind = spec.kind
    if kind is IntegrandKind.FACTORIAL_UNIT:
        if t == 0:
            return 0.0
        return math.exp(1.0 - 1.0 / t) / t
    if kind is IntegrandKind.LOG_UNIT:
        if t == 0:
            return 0.0
        return 1.0 / (1.0 - math.log(t))
    if kind is IntegrandKind.BOREL_HALFLINE:
        p, q = float(spec.p), float(spec.q)
        return math.exp(-t) * (1.0 + q * t) ** (-p / q)
    # e^(1/(q x^q)) x^(m-p) e^(-1/(q t^q)) t^(p-q-1), exponents combined
    if t == 0:
        return 0.0
    p, q, m, x = (float(v) for v in (spec.p, spec.q, spec.m, spec.x))
    expo = 1.0 / (q * x**q) - 1.0 / (q * t**q)
    return math.exp(expo) * x ** (m - p) * t ** (p - q - 1.0)


def trapezoid_unit_interval(spec: IntegrandSpec, panels: int) -> QuadratureResult:
    """Composite trapezoid rule on [0, 1] with ``panels`` equal panels.

    The error estimate is |T(n) - T(2n)|.  For integrands whose derivative
    vanishes at both ends (the factorial-unit curve) the rule converges
    faster than h^2 and this estimate is conservative.  The log-unit curve
    has an infinite slope at 0, converges slower than h^2, and the estimate
    then understates the error (by about 2x at 10 panels).
    """
    if spec.upper != 1.0:
        raise ValueError("trapezoid_unit_interval needs an integrand on [0, 1]")
    if panels < 1:
        raise ValueError("panels must be positive")
    value, addends = _trapezoid(spec, panels)
    finer, _ = _trapezoid(spec, 2 * panels)
    return QuadratureResult(value, panels, abs(finer - value), "trapezoid", addends)


def _trapezoid(spec: IntegrandSpec, n: int) -> tuple:
    h = 1.0 / n
    addends = [0.5 * h * evaluate_integrand(spec, 0.0)]
    addends += [h * evaluate_integrand(spec, k / n) for k in range(1, n)]
    addends.append(0.5 * h * evaluate_integrand(spec, 1.0))
    return math.fsum(addends), tuple(addends)


def _quad(f, lo: float, hi: float, tol: float) -> tuple:
    # a fourth element (warning text) appears when quad is unhappy; the
    # abserr it reports then still feeds the tolerance check below
    value, abserr, info = integrate.quad(f, lo, hi, epsabs=tol, epsrel=0.0, limit=500, full_output=1)[:3]
    return value, abserr, info["neval"]


def _adaptive(f, lo: float, hi: float, tolerance: float, extra_error: float = 0.0) -> QuadratureResult:
    """Adaptive Gauss-Kronrod, re-run at tolerance/10 as a check on the estimate."""
    value, abserr, nodes = _quad(f, lo, hi, tolerance / 10)
    check, check_err, more = _quad(f, lo, hi, tolerance / 100)
    error = max(abserr, abs(check - value)) + extra_error
    if error > tolerance:
        raise ArithmeticError(f"quadrature could not meet tolerance {tolerance:g} (estimate {error:g})")
    return QuadratureResult(check, nodes + more, error, "adaptive")


def adaptive_unit_interval(spec: IntegrandSpec, tolerance: float = 1e-12) -> QuadratureResult:
    if spec.upper != 1.0:
        raise ValueError("adaptive_unit_interval needs an integrand on [0, 1]")
    return _adaptive(lambda t: evaluate_integrand(spec, t), 0.0, 1.0, tolerance)


def borel_oracle(p: RationalLike, q: RationalLike, tolerance: float = 1e-12) -> QuadratureResult:
    """int_0^inf e^(-t) (1 + q t)^(-p/q) dt to within ``tolerance``.

    The range is cut at T with e^(-T) < tolerance/10; the dropped tail is at
    most e^(-T) (1 + qT)^(-p/q), which is added to the error estimate.
    """
    if tolerance < 1e-13:
        raise ValueError("tolerance below 1e-13 is beyond double precision here")
    spec = IntegrandSpec.borel_halfline(p, q)
    cut = math.log(10.0 / tolerance) + 1.0
    pf, qf = float(spec.p), float(spec.q)
    tail = math.exp(-cut) * (1.0 + qf * cut) ** (-pf / qf)
    return _adaptive(lambda t: evaluate_integrand(spec, t), 0.0, cut, tolerance, tail)


def general_integral(
    p: RationalLike,
    q: RationalLike,
    m: RationalLike,
    x: float,
    tolerance: float = 1e-12,
    exponent_cap: float = DEFAULT_EXPONENT_CAP,
) -> QuadratureResult:
    """z(x) = e^(1/(q x^q)) x^(m-p) int_0^x e^(-1/(q t^q)) t^(p-q-1) dt.

    This is the solution of the family's differential equation that vanishes
    at x = 0.  The prefactor is folded into the integrand, but an explicit
    cap on 1/(q x^q) still guards against runs where the prefactor alone
    would overflow a double.
    """
    x = float(x)
    if x < 0:
        raise ValueError("x must be non-negative")
    if x == 0:
        return QuadratureResult(0.0, 0, 0.0, "adaptive")
    pr, qr, mr = to_rational(p), to_rational(q), to_rational(m)
    if pr <= 0 or qr <= 0 or mr < 0:
        raise ValueError("need p, q > 0 and m >= 0")
    if 1.0 / (float(qr) * x ** float(qr)) > exponent_cap:
        raise OverflowError(f"prefactor exponent 1/(q x^q) exceeds the cap {exponent_cap}")
    pf, qf, mf = float(pr), float(qr), float(mr)
    inv = 1.0 / (qf * x**qf)

    def integrand(t: float) -> float:
        if t == 0:
            return 0.0
        return math.exp(inv - 1.0 / (qf * t**qf)) * t ** (pf - qf - 1.0)

    scale = x ** (mf - pf)
    res = _adaptive(integrand, 0.0, x, tolerance / max(1.0, scale))
    return QuadratureResult(res.value * scale, res.nodes, res.error_estimate * scale, "adaptive")


def borel_general(p: RationalLike, q: RationalLike, m: RationalLike, x: float, tolerance: float = 1e-12) -> QuadratureResult:
    """Half-line form at general x: x^m int_0^inf e^(-t) (1 + q x^q t)^(-p/q) dt."""
    pf, qf, mf = (float(to_rational(v)) for v in (p, q, m))
    x = float(x)
    if x <= 0:
        raise ValueError("x must be positive")
    scale = x**qf
    cut = math.log(10.0 / tolerance) + 1.0
    tail = math.exp(-cut)
    res = _adaptive(lambda t: math.exp(-t) * (1.0 + qf * scale * t) ** (-pf / qf), 0.0, cut, tolerance, tail)
    return QuadratureResult(res.value * x**mf, res.nodes, res.error_estimate * x**mf, "adaptive")

