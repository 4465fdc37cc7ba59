"""Small descriptive-statistics kit: Student-t quantiles, confidence intervals, boxplot summaries."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

from .errors import EmptyInput

_EPS = 1e-16
_TINY = 1e-300


def _betacf(a: float, b: float, x: float) -> float:
    """Continued fraction for the regularized incomplete beta (modified Lentz)."""
    qab, qap, qam = a + b, a + 1.0, a - 1.0
    c = 1.0
    d = 1.0 - qab * x / qap
    if abs(d) < _TINY:
        d = _TINY
    d = 1.0 / d
    h = d
    for m in range(1, 10_000):
        m2 = 2 * m
        aa = m * (b - m) * x / ((qam + m2) * (a + m2))
        d = 1.0 + aa * d
        if abs(d) < _TINY:
            d = _TINY
        c = 1.0 + aa / c
        if abs(c) < _TINY:
            c = _TINY
        d = 1.0 / d
        h *= d * c
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2))
        d = 1.0 + aa * d
        if abs(d) < _TINY:
            d = _TINY
        c = 1.0 + aa / c
        if abs(c) < _TINY:
            c = _TINY
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < _EPS:
            return h
    raise ArithmeticError("incomplete beta continued fraction did not converge")


def betainc(a: float, b: float, x: float) -> float:
    """Regularized incomplete beta function I_x(a, b)."""
    if not 0.0 <= x <= 1.0:
        raise ValueError("x must lie in [0, 1]")
    if x == 0.0 or x == 1.0:
        return x
    ln_front = (
        math.lgamma(a + b) - math.lgamma(a) - math.lgamma(b) + a * math.log(x) + b * math.log1p(-x)
    )
    front = math.exp(ln_front)
    if x < (a + 1.0) / (a + b + 2.0):
        return front * _betacf(a, b, x) / a
    return 1.0 - front * _betacf(b, a, 1.0 - x) / b


def t_sf(t: float, df: float) -> float:
    """Upper tail P(T > t) for t >= 0."""
    return 0.5 * betainc(df / 2.0, 0.5, df / (df + t * t))


def t_cdf(t: float, df: float) -> float:
    tail = t_sf(abs(t), df)
    return 1.0 - tail if t >= 0 else tail


def t_pdf(t: float, df: float) -> float:
    ln = (
        math.lgamma((df + 1) / 2)
        - math.lgamma(df / 2)
        - 0.5 * math.log(df * math.pi)
        - (df + 1) / 2 * math.log1p(t * t / df)
    )
    return math.exp(ln)


def t_quantile(p: float, df: float) -> float:
    """Inverse Student-t CDF by safeguarded Newton iteration."""
    if not 0.0 < p < 1.0:
        raise ValueError("p must lie strictly between 0 and 1")
    if df <= 0:
        raise ValueError("degrees of freedom must be positive")
    if p == 0.5:
        return 0.0
    if p < 0.5:
        return -t_quantile(1.0 - p, df)
    tail = 1.0 - p
    lo, hi = 0.0, 1.0
    while t_sf(hi, df) > tail:
        lo, hi = hi, hi * 2.0
    x = 0.5 * (lo + hi)
    for _ in range(200):
        f = t_sf(x, df) - tail
        if f > 0:
            lo = x
        else:
            hi = x
        step = f / t_pdf(x, df)
        nxt = x + step
        if not lo < nxt < hi:
            nxt = 0.5 * (lo + hi)
        if abs(nxt - x) <= 1e-15 * max(1.0, abs(x)):
            return nxt
        x = nxt
    return x


def mean(values: Sequence[float]) -> float:
    if not values:
        raise EmptyInput("mean of an empty sample")
    return math.fsum(values) / len(values)


def sample_sd(values: Sequence[float]) -> Optional[float]:
    """Standard deviation with the n-1 denominator; None for a single value."""
    n = len(values)
    if n == 0:
        raise EmptyInput("standard deviation of an empty sample")
    if n == 1:
        return None
    m = mean(values)
    return math.sqrt(math.fsum((v - m) ** 2 for v in values) / (n - 1))


@dataclass(frozen=True)
class Summary:
    """Mean, sample SD and a two-sided Student-t interval.

    ``ci`` is None when n == 1 (the interval is unbounded); ``degenerate``
    flags that case.
    """

    n: int
    mean: float
    sd: Optional[float]
    ci: Optional[Tuple[float, float]]
    level: float = 0.95

    @property
    def degenerate(self) -> bool:
        return self.ci is None


def summarize(values: Sequence[float], level: float = 0.95) -> Summary:
    n = len(values)
    m = mean(values)
    sd = sample_sd(values)
    if sd is None:
        return Summary(n, m, None, None, level)
    half = t_quantile(0.5 + level / 2.0, n - 1) * sd / math.sqrt(n)
    return Summary(n, m, sd, (m - half, m + half), level)


def quantile(sorted_values: Sequence[float], p: float) -> float:
    """Linear interpolation between order statistics at index (n-1)*p."""
    n = len(sorted_values)
    if n == 0:
        raise EmptyInput("quantile of an empty sample")
    pos = (n - 1) * p
    lo = math.floor(pos)
    hi = min(lo + 1, n - 1)
    frac = pos - lo
    return sorted_values[lo] + (sorted_values[hi] - sorted_values[lo]) * frac


@dataclass(frozen=True)
class FiveNumber:
    """Tukey boxplot summary.

    ``low`` and ``high`` are the whisker ends: the most extreme observations
    inside the 1.5 x IQR fences. Observations beyond the fences are listed in
    ``outliers`` in ascending order.
    """

    n: int
    low: float
    q1: float
    median: float
    q3: float
    high: float
    outliers: List[float] = field(default_factory=list)

    @property
    def iqr(self) -> float:
        return self.q3 - self.q1


def five_number(values: Sequence[float], whisker: float = 1.5) -> FiveNumber:
    data = sorted(values)
    if not data:
        raise EmptyInput("boxplot of an empty sample")
    q1, med, q3 = (quantile(data, p) for p in (0.25, 0.5, 0.75))
    iqr = q3 - q1
    lo_fence, hi_fence = q1 - whisker * iqr, q3 + whisker * iqr
    inside = [v for v in data if lo_fence <= v <= hi_fence]
    outliers = [v for v in data if v < lo_fence or v > hi_fence]
    return FiveNumber(
        n=len(data),
        low=min(inside[:1] + [q1]),
        q1=q1,
        median=med,
        q3=q3,
        high=max(inside[-1:] + [q3]),
        outliers=outliers,
    )
