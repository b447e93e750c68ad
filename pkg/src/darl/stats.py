"""Validation statistics: Shapiro-Wilk, RMSE, relative error, quartiles.

The Shapiro-Wilk test is the 1995 polynomial refinement (valid for sample
sizes 3..5000): order-statistic weights from Blom scores normalised to unit
square sum, with the two extreme weights replaced by polynomial
approximations in n, and a log-normal approximation for the null
distribution of the statistic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from statistics import NormalDist
from typing import Sequence

import numpy as np

from .errors import (
    DegenerateVariance,
    DivisionByZero,
    InsufficientSamples,
    ShapeMismatch,
    UnsupportedSampleSize,
)

_NORMAL = NormalDist()

# Weight-correction and moment polynomials (ascending powers).
_C1 = (0.0, 0.221157, -0.147981, -2.071190, 4.434685, -2.706056)
_C2 = (0.0, 0.042981, -0.293762, -1.752461, 5.682633, -3.582633)
_C3 = (0.544, -0.39978, 0.025054, -6.714e-4)     # mean of log(1-W), n <= 11
_C4 = (1.3822, -0.77857, 0.062767, -0.0020322)   # log sd of log(1-W), n <= 11
_C5 = (-1.5861, -0.31082, -0.083751, 0.0038915)  # mean, n >= 12 (in log n)
_C6 = (-0.4803, -0.082676, 0.0030302)            # log sd, n >= 12 (in log n)
_G = (-2.273, 0.459)                             # gamma bound, n <= 11

_MIN_N = 3
_MAX_N = 5000


def _poly(coeffs: Sequence[float], x: float) -> float:
    acc = 0.0
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


@dataclass(frozen=True)
class NormalityResult:
    w_statistic: float
    p_value: float
    n: int
    alpha: float = 0.05

    @property
    def rejected(self) -> bool:
        """True when normality is rejected at the stored significance level."""
        return self.p_value < self.alpha


@dataclass(frozen=True)
class QuartileSummary:
    q1: float
    q2: float
    q3: float
    iqr: float


def _sw_weights(n: int) -> np.ndarray:
    """Lower-half Shapiro-Wilk weights for sample size n (n >= 4)."""
    half = n // 2
    m = np.array([_NORMAL.inv_cdf((i - 0.375) / (n + 0.25)) for i in range(1, half + 1)])
    summ2 = 2.0 * float(np.sum(m * m))
    ssumm2 = math.sqrt(summ2)
    rsn = 1.0 / math.sqrt(n)
    a1 = _poly(_C1, rsn) - m[0] / ssumm2
    if n > 5:
        a2 = -m[1] / ssumm2 + _poly(_C2, rsn)
        fac = math.sqrt((summ2 - 2.0 * m[0] ** 2 - 2.0 * m[1] ** 2)
                        / (1.0 - 2.0 * a1 ** 2 - 2.0 * a2 ** 2))
        a = m / -fac
        a[0] = a1
        a[1] = a2
    else:
        fac = math.sqrt((summ2 - 2.0 * m[0] ** 2) / (1.0 - 2.0 * a1 ** 2))
        a = m / -fac
        a[0] = a1
    return a


def shapiro_wilk(values: Sequence[float], alpha: float = 0.05) -> NormalityResult:
    """Shapiro-Wilk normality test for 3 <= n <= 5000 samples.

    W is the squared correlation between the sorted sample and the
    normalised expected normal order statistics; the p-value comes from the
    log-normal approximation to 1 - W. Raises UnsupportedSampleSize outside
    the supported range and DegenerateVariance for constant input.
    """
    x = np.sort(np.asarray(values, dtype=float))
    n = len(x)
    if n < _MIN_N or n > _MAX_N:
        raise UnsupportedSampleSize(f"sample size {n} outside supported range [{_MIN_N}, {_MAX_N}]")
    if x[-1] - x[0] < 1e-19:
        raise DegenerateVariance("sample has zero range")

    half = n // 2
    if n == 3:
        lower = np.array([-math.sqrt(0.5)])
    else:
        lower = -_sw_weights(n)  # weights for the lower tail are negative
    weights = np.zeros(n)
    weights[:half] = lower
    weights[n - half:] = -lower[::-1]

    # squared correlation, evaluated via 1 - W to keep precision near W = 1
    xc = x - x.mean()
    wc = weights - weights.mean()
    ssx = float(np.dot(xc, xc))
    ssw = float(np.dot(wc, wc))
    sax = float(np.dot(wc, xc))
    ssassx = math.sqrt(ssw * ssx)
    w1 = (ssassx - sax) * (ssassx + sax) / (ssw * ssx)
    w = min(1.0 - w1, 1.0)

    if n == 3:
        pi6 = 6.0 / math.pi
        stqr = math.asin(math.sqrt(0.75))
        p = pi6 * (math.asin(math.sqrt(w)) - stqr)
        p = min(1.0, max(0.0, p))
        return NormalityResult(w_statistic=w, p_value=p, n=n, alpha=alpha)

    y = math.log(w1)
    if n <= 11:
        gamma = _poly(_G, n)
        if y >= gamma:
            return NormalityResult(w_statistic=w, p_value=0.0, n=n, alpha=alpha)
        y = -math.log(gamma - y)
        mu = _poly(_C3, n)
        sigma = math.exp(_poly(_C4, n))
    else:
        log_n = math.log(n)
        mu = _poly(_C5, log_n)
        sigma = math.exp(_poly(_C6, log_n))
    p = 1.0 - _NORMAL.cdf((y - mu) / sigma)
    return NormalityResult(w_statistic=w, p_value=min(1.0, max(0.0, p)), n=n, alpha=alpha)


def rmse(observed: Sequence[float], simulated: Sequence[float]) -> float:
    """Root mean square error sqrt(mean((obs - sim)^2))."""
    obs = [float(v) for v in observed]
    sim = [float(v) for v in simulated]
    if len(obs) != len(sim):
        raise ShapeMismatch(f"length mismatch: {len(obs)} observed vs {len(sim)} simulated")
    if not obs:
        raise InsufficientSamples("rmse of empty vectors is undefined")
    return math.sqrt(math.fsum((o - s) ** 2 for o, s in zip(obs, sim)) / len(obs))


def relative_error(observed: float, simulated: float) -> float:
    """Percent error 100*|observed - simulated| / |observed|.

    The denominator is the observed (experimental) value.
    """
    observed = float(observed)
    if observed == 0.0:
        raise DivisionByZero("relative error against a zero observed value")
    return 100.0 * abs(observed - float(simulated)) / abs(observed)


def _quantile_type7(sorted_values: Sequence[float], p: float) -> float:
    # position h = (n-1)p on the sorted sample, linear interpolation
    h = (len(sorted_values) - 1) * p
    lo = math.floor(h)
    frac = h - lo
    if frac == 0.0:
        return float(sorted_values[lo])
    return float(sorted_values[lo] + frac * (sorted_values[lo + 1] - sorted_values[lo]))


def quartile_summary(values: Sequence[float]) -> QuartileSummary:
    """Quartiles by linear interpolation (the common "type 7" convention)."""
    data = sorted(float(v) for v in values)
    if not data:
        raise InsufficientSamples("quartiles of an empty sample are undefined")
    q1 = _quantile_type7(data, 0.25)
    q2 = _quantile_type7(data, 0.50)
    q3 = _quantile_type7(data, 0.75)
    return QuartileSummary(q1=q1, q2=q2, q3=q3, iqr=q3 - q1)
