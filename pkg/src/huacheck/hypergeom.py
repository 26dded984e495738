"""Gauss hypergeometric machinery for the radial boundary profiles.

Implements the 2F1 series on [0, 1), the value at 1 by Gauss summation, the
parameter-shift derivative ladder, the classical limit laws near t = 1, the
normalized radial profile h(t) with its defining ODE, and a numerical
classifier for the type of boundary singularity of the profile.

A standalone Lanczos log-Gamma keeps the module dependency-free; its relative
error is below 1e-13 on the positive axis.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

SERIES_RTOL = 1e-15
SERIES_TERM_CAP = 1_000_000

# Lanczos approximation, g = 7, nine coefficients.
_LANCZOS_G = 7.0
_LANCZOS_COEFFS = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)


def lgamma(x):
    """log Gamma(x) for x > 0 (Lanczos; relative error < 1e-13)."""
    if x <= 0.0:
        raise ValueError("lgamma requires x > 0")
    if x < 0.5:
        # reflection keeps the Lanczos sum in its accurate range
        return math.log(math.pi / math.sin(math.pi * x)) - lgamma(1.0 - x)
    x = x - 1.0
    acc = _LANCZOS_COEFFS[0]
    for i, c in enumerate(_LANCZOS_COEFFS[1:], start=1):
        acc += c / (x + i)
    t = x + _LANCZOS_G + 0.5
    return 0.5 * math.log(2.0 * math.pi) + (x + 0.5) * math.log(t) - t + math.log(acc)


def gamma(x):
    """Gamma(x) for real non-pole x, negative arguments via reflection."""
    if x > 0.0:
        return math.exp(lgamma(x))
    if x == int(x):
        raise ValueError("Gamma pole at non-positive integer")
    return math.pi / (math.sin(math.pi * x) * math.exp(lgamma(1.0 - x)))


def pochhammer(a, m):
    out = 1.0
    for i in range(m):
        out *= a + i
    return out


class SeriesConvergenceError(RuntimeError):
    pass


def gauss_2f1(a, b, c, t):
    """The 2F1 series sum_k (a)_k (b)_k / ((c)_k k!) t^k for 0 <= t < 1."""
    if not (0.0 <= t < 1.0):
        raise ValueError("series evaluation needs t in [0, 1)")
    if c <= 0.0 and c == int(c):
        raise ValueError("c must not be a non-positive integer")
    if a == 0.0 or b == 0.0:
        return 1.0
    if t > 0.5 and c - a - b <= 0.0:
        warnings.warn(
            "2F1 series converges slowly for t > 0.5 with c - a - b <= 0",
            stacklevel=2,
        )
    total = 1.0
    term = 1.0
    for k in range(SERIES_TERM_CAP):
        term *= (a + k) * (b + k) / ((c + k) * (k + 1.0)) * t
        total += term
        if abs(term) < SERIES_RTOL * abs(total):
            return total
    raise SeriesConvergenceError(
        f"2F1 series did not converge within {SERIES_TERM_CAP} terms"
    )


def gauss_2f1_at_1(a, b, c):
    """F(a,b,c;1) by Gauss summation; requires c - a - b > 0."""
    if a == 0.0 or b == 0.0:
        return 1.0
    if c - a - b <= 0.0:
        raise ValueError("Gauss summation needs c - a - b > 0")
    return math.exp(lgamma(c) + lgamma(c - a - b) - lgamma(c - a) - lgamma(c - b))


def gauss_2f1_derivative(a, b, c, t, order=1):
    """d^order/dt^order of F via the parameter-shift ladder."""
    coef = 1.0
    for i in range(order):
        coef *= (a + i) * (b + i) / (c + i)
    return coef * gauss_2f1(a + order, b + order, c + order, t)


def gauss_2f1_derivative_series(a, b, c, t):
    """dF/dt by differentiating the series term by term; ladder oracle."""
    if not (0.0 <= t < 1.0):
        raise ValueError("series evaluation needs t in [0, 1)")
    total = 0.0
    term = a * b / c  # k = 1 term of F contributes its derivative
    for k in range(1, SERIES_TERM_CAP):
        total += term * k * t ** (k - 1)
        if k > 1 and abs(term * k * t ** (k - 1)) < SERIES_RTOL * max(
            abs(total), 1.0
        ):
            return total
        term *= (a + k) * (b + k) / ((c + k) * (k + 1.0))
    raise SeriesConvergenceError("termwise derivative series did not converge")


# -- limit laws near t = 1 ---------------------------------------------------


def euler_identity_residual(a, b, s, t):
    """|F(a,b,a+b-s;t) (1-t)^s - F(b-s,a-s,a+b-s;t)|."""
    lhs = gauss_2f1(a, b, a + b - s, t) * (1.0 - t) ** s
    rhs = gauss_2f1(b - s, a - s, a + b - s, t)
    return abs(lhs - rhs)


def power_limit_value(a, b, s):
    """lim (1-t)^s F(a,b,a+b-s;t) = Gamma(a+b-s) Gamma(s) / (Gamma(a) Gamma(b))."""
    return math.exp(lgamma(a + b - s) + lgamma(s) - lgamma(a) - lgamma(b))


def log_limit_value(a, b):
    """lim F(a,b,a+b;t) / log(1/(1-t)) = Gamma(a+b) / (Gamma(a) Gamma(b))."""
    return math.exp(lgamma(a + b) - lgamma(a) - lgamma(b))


def log_limit_estimate(a, b, j=14):
    """Estimate the log-law limit from t = 1 - 2^-j.

    Returns (plain ratio at the finest point, two-point estimate). Near t = 1
    the numerator behaves like A log(1/(1-t)) + B, so the plain ratio carries
    an O(1/log) bias; differencing two geometric points removes the constant.
    """
    t1 = 1.0 - 2.0 ** -(j - 1)
    t2 = 1.0 - 2.0**-j
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        f1 = gauss_2f1(a, b, a + b, t1)
        f2 = gauss_2f1(a, b, a + b, t2)
    l1 = (j - 1) * math.log(2.0)
    l2 = j * math.log(2.0)
    plain = f2 / l2
    twopoint = (f2 - f1) / (l2 - l1)
    return plain, twopoint


def lemma32_checks(a, b, s, t_grid):
    """Deviation report for the three t -> 1 laws on a grid."""
    euler_max = max(euler_identity_residual(a, b, s, t) for t in t_grid)
    t_last = max(t_grid)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        power = (1.0 - t_last) ** s * gauss_2f1(a, b, a + b - s, t_last)
    plain, twopoint = log_limit_estimate(a, b)
    return {
        "euler_max_residual": euler_max,
        "power_limit_estimate": power,
        "power_limit_value": power_limit_value(a, b, s),
        "log_ratio_plain": plain,
        "log_ratio_twopoint": twopoint,
        "log_limit_value": log_limit_value(a, b),
    }


# -- radial profile ----------------------------------------------------------


@dataclass(frozen=True)
class RadialProfile:
    """h(t) = F(p/2, q/2, (p+q+n+1)/2; t) / F(...; 1), so h(1) = 1."""

    p: int
    q: int
    n: int

    @property
    def a(self):
        return self.p / 2.0

    @property
    def b(self):
        return self.q / 2.0

    @property
    def c(self):
        return (self.p + self.q + self.n + 1) / 2.0

    @property
    def normalization(self):
        # c - a - b = (n + 1)/2 > 0, so the value at 1 is finite
        return gauss_2f1_at_1(self.a, self.b, self.c)

    def value(self, t):
        if self.p * self.q == 0:
            return 1.0
        return gauss_2f1(self.a, self.b, self.c, t) / self.normalization

    def derivative(self, t, order=1):
        if self.p * self.q == 0:
            return 0.0
        return gauss_2f1_derivative(self.a, self.b, self.c, t, order) / (
            self.normalization
        )

    def ode_residual(self, t):
        """t(1-t) h'' + [p/2 + q/2 + (n+1)/2 - (p/2 + q/2 + 1) t] h' - (pq/4) h."""
        h = self.value(t)
        h1 = self.derivative(t, 1)
        h2 = self.derivative(t, 2)
        p, q, n = self.p, self.q, self.n
        return (
            t * (1.0 - t) * h2
            + (p / 2.0 + q / 2.0 + (n + 1) / 2.0 - (p / 2.0 + q / 2.0 + 1.0) * t) * h1
            - (p * q / 4.0) * h
        )


# -- boundary singularity classification -------------------------------------


@dataclass(frozen=True)
class SingularityClass:
    kind: str  # "smooth", "log-type" or "half-power"
    exponent: float
    coefficient: float
    coefficient_oracle: float
    fit_residual: float


def _fit_grid():
    return np.array([1.0 - 2.0**-j for j in range(4, 15)])


def log_coefficient_value(a, b, k):
    """Coefficient of (1-t)^k log(1-t) in F(a,b,a+b+k;t), k a positive integer.

    Derived by applying the derivative ladder k times and matching the log
    law: the k-th derivative is c_k F(a+k, b+k, a+b+2k; t), whose log blow-up
    pins the coefficient to (-1)^(k+1) Gamma(a+b+k) / (k! Gamma(a) Gamma(b)).
    """
    sign = -1.0 if k % 2 == 0 else 1.0
    return sign * math.exp(lgamma(a + b + k) - lgamma(a) - lgamma(b)) / math.factorial(k)


def half_power_coefficient_value(a, b, k):
    """Coefficient of (1-t)^(k+1/2) in F(a,b,a+b+k+1/2;t)."""
    c = a + b + k + 0.5
    return gamma(c) * gamma(-(k + 0.5)) / (gamma(a) * gamma(b))


def classify_singularity(p, q, n):
    """Classify the t -> 1 behavior of F(p/2, q/2, (p+q+n+1)/2; t).

    Smooth when pq = 0; otherwise a (1-t)^((n+1)/2) log(1-t) term for odd n
    and a (1-t)^(n/2 + 1/2) term for even n. The classification follows the
    parity of n; the returned coefficient and residual come from a least
    squares fit on a geometric grid approaching 1 and must corroborate it.
    """
    if n < 2:
        raise ValueError("classification requires n >= 2")
    if p * q == 0:
        return SingularityClass("smooth", 0.0, 0.0, 0.0, 0.0)
    a, b = p / 2.0, q / 2.0
    c = (p + q + n + 1) / 2.0
    ts = _fit_grid()
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        fvals = np.array([gauss_2f1(a, b, c, t) for t in ts])
    x = 1.0 - ts
    if n % 2 == 1:
        k = (n + 1) // 2
        exponent = float(k)
        kind = "log-type"
        singular = [x**k * np.log(x), x ** (k + 1) * np.log(x)]
        oracle = log_coefficient_value(a, b, k)
    else:
        k = n // 2
        exponent = k + 0.5
        kind = "half-power"
        singular = [x ** (k + 0.5), x ** (k + 1.5)]
        oracle = half_power_coefficient_value(a, b, k)
    smooth_deg = k + 2
    basis = [x**i for i in range(smooth_deg + 1)] + singular
    Amat = np.stack(basis, axis=1)
    coeffs, _, _, _ = np.linalg.lstsq(Amat, fvals, rcond=None)
    recon = Amat @ coeffs
    fitted = float(coeffs[smooth_deg + 1])
    # residual relative to the size of the singular component on the grid
    sing_scale = float(np.max(np.abs(fitted * singular[0])))
    if sing_scale == 0.0:
        warnings.warn("singular basis coefficient vanished; fit is unstable")
        sing_scale = 1.0
    fit_residual = float(np.max(np.abs(recon - fvals))) / sing_scale
    return SingularityClass(kind, exponent, fitted, oracle, fit_residual)
