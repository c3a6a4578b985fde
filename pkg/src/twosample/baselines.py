"""Hotelling T^2 baseline with a self-contained F reference distribution."""

import math
from dataclasses import dataclass

import numpy as np

from .statistic import _check_pair


@dataclass(frozen=True)
class BaselineReport:
    t2: float
    f_stat: float
    df1: int
    df2: int
    p_value: float


def hotelling_t2(x, y):
    """Two-sample Hotelling T^2 with pooled covariance, F-calibrated.

    Requires p <= n1 + n2 - 2 so the F degrees of freedom are positive. The
    quadratic form is evaluated through a Cholesky solve of the pooled
    covariance, never an explicit inverse.
    """
    mx, my = _check_pair(x, y)
    n1, p = mx.shape
    n2 = my.shape[0]
    n = n1 + n2
    if p > n - 2:
        raise ValueError(f"need p <= n1 + n2 - 2 (got p={p}, n1+n2={n})")
    xc = mx - mx.mean(axis=0)
    yc = my - my.mean(axis=0)
    pooled = (xc.T @ xc + yc.T @ yc) / (n - 2)
    try:
        chol = np.linalg.cholesky(pooled)
    except np.linalg.LinAlgError as err:
        raise np.linalg.LinAlgError("pooled covariance is singular") from err
    diff = mx.mean(axis=0) - my.mean(axis=0)
    half = np.linalg.solve(chol, diff)  # t2 = (n1 n2 / n) ||L^-1 diff||^2
    t2 = (n1 * n2 / n) * float(half @ half)
    df1, df2 = p, n - p - 1
    f_stat = t2 * df2 / ((n - 2) * p)
    # survival form: evaluating I_x(b, a) at x = d2/(d2 + d1 f) avoids the
    # cancellation of 1 - cdf for large f
    p_value = _betainc(df2 / 2.0, df1 / 2.0, df2 / (df2 + df1 * f_stat))
    return BaselineReport(t2=t2, f_stat=f_stat, df1=df1, df2=df2, p_value=p_value)


def f_cdf(x, d1, d2):
    """CDF of the F(d1, d2) distribution, accurate to about 1e-10 absolute."""
    if not (d1 > 0 and d2 > 0):
        raise ValueError("degrees of freedom must be positive")
    if math.isnan(x) or x < 0:
        raise ValueError("x must be nonnegative")
    if x == 0:
        return 0.0
    if math.isinf(x):
        return 1.0
    t = d1 * x / (d1 * x + d2)
    return _betainc(d1 / 2.0, d2 / 2.0, t)


def _betainc(a, b, x):
    """Regularized incomplete beta I_x(a, b) by continued fraction."""
    if x <= 0.0:
        return 0.0
    if x >= 1.0:
        return 1.0
    ln_front = (
        math.lgamma(a + b)
        - math.lgamma(a)
        - math.lgamma(b)
        + a * math.log(x)
        + b * math.log1p(-x)
    )
    front = math.exp(ln_front)
    # the continued fraction converges fast only below the distribution mean;
    # above it, evaluate the mirrored tail
    if x < (a + 1.0) / (a + b + 2.0):
        return front * _betacf(a, b, x) / a
    return 1.0 - front * _betacf(b, a, 1.0 - x) / b


def _betacf(a, b, x):
    """Lentz evaluation of the incomplete-beta continued fraction."""
    max_iter = 300
    eps = 3e-16
    fpmin = 1e-300
    qab, qap, qam = a + b, a + 1.0, a - 1.0
    c = 1.0
    d = 1.0 - qab * x / qap
    if abs(d) < fpmin:
        d = fpmin
    d = 1.0 / d
    h = d
    for m in range(1, max_iter + 1):
        m2 = 2 * m
        coef = m * (b - m) * x / ((qam + m2) * (a + m2))
        d = 1.0 + coef * d
        if abs(d) < fpmin:
            d = fpmin
        c = 1.0 + coef / c
        if abs(c) < fpmin:
            c = fpmin
        d = 1.0 / d
        h *= d * c
        coef = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2))
        d = 1.0 + coef * d
        if abs(d) < fpmin:
            d = fpmin
        c = 1.0 + coef / c
        if abs(c) < fpmin:
            c = fpmin
        d = 1.0 / d
        step = d * c
        h *= step
        if abs(step - 1.0) < eps:
            return h
    raise ArithmeticError("incomplete beta continued fraction did not converge")
