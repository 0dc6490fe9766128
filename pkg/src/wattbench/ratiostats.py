"""Paired effect sizes: per-run ratios aggregated as geometric means.

Ratios are multiplicative, so aggregation happens in log space: each pair
contributes a log-ratio, the mean log-ratio is exponentiated into the
geometric-mean effect size, and a two-sided confidence interval for the
mean log-ratio (Student t, n-1 degrees of freedom, standard error
s / sqrt(n) with the sample standard deviation) is exponentiated back
into ratio space. An interval entirely below 1 means the numerator build
is lower on that metric, entirely above 1 higher, and an interval
containing 1 is statistically indistinguishable.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from scipy.special import betaincinv

from .errors import InsufficientPairsError, InvalidDofError, NonPositiveInputError

METRICS = ("time", "cpu", "energy", "vms", "rss", "swap")


class Classification(enum.Enum):
    NOGIL_LOWER = "NOGIL_LOWER"
    NOGIL_HIGHER = "NOGIL_HIGHER"
    INDISTINGUISHABLE = "INDISTINGUISHABLE"


@dataclass(frozen=True)
class PairedSeries:
    """All valid (numerator, denominator) measurements of one metric cell."""

    scenario: str
    param_value: object
    metric: str
    pairs: tuple[tuple[float, float], ...]

    @property
    def n(self) -> int:
        return len(self.pairs)


@dataclass(frozen=True)
class RatioSummary:
    r_geo: float
    ci_low: float
    ci_high: float
    n: int
    mean_log: float
    sd_log: float
    classification: Classification


@dataclass(frozen=True)
class CellResult:
    """One analysis cell; ``summary`` is None when n < 2 (insufficient data)."""

    scenario: str
    param_value: object
    metric: str
    n: int
    summary: RatioSummary | None


def per_run_ratio(x_nogil: float, x_gil: float) -> float:
    """Effect size of one matched pair: numerator over denominator."""
    if x_nogil <= 0 or x_gil <= 0:
        raise NonPositiveInputError(f"ratio inputs must be positive: ({x_nogil}, {x_gil})")
    return x_nogil / x_gil


def t_quantile(p: float, dof: int) -> float:
    """Quantile of Student's t distribution via the inverse regularized
    incomplete beta function, accurate to well under 1e-3 against standard
    tables for any degrees of freedom."""
    if not isinstance(dof, int) or dof < 1:
        raise InvalidDofError(f"degrees of freedom must be a positive integer, got {dof!r}")
    if not 0.0 < p < 1.0:
        raise ValueError(f"p must be in (0, 1), got {p}")
    if p == 0.5:
        return 0.0
    q = p if p > 0.5 else 1.0 - p
    # Upper tail 1-q equals half the regularized incomplete beta of
    # dof/(dof+t^2) with parameters (dof/2, 1/2); invert and solve for t.
    z = float(betaincinv(dof / 2.0, 0.5, 2.0 * (1.0 - q)))
    t = math.sqrt(dof * (1.0 - z) / z)
    return t if p > 0.5 else -t


def classify(ci_low: float, ci_high: float) -> Classification:
    """The interpretation rule for a ratio-space confidence interval."""
    if ci_high < 1.0:
        return Classification.NOGIL_LOWER
    if ci_low > 1.0:
        return Classification.NOGIL_HIGHER
    return Classification.INDISTINGUISHABLE


def aggregate(series: PairedSeries, confidence: float = 0.95) -> RatioSummary:
    """Aggregate a paired series into a geometric-mean ratio with CI."""
    n = series.n
    if n < 2:
        raise InsufficientPairsError(
            f"{series.scenario}/{series.param_value}/{series.metric}: "
            f"need at least 2 pairs, have {n}"
        )
    for x, y in series.pairs:
        per_run_ratio(x, y)  # enforce positivity
    # log of the ratio as a difference of logs: swapping numerator and
    # denominator then negates every log-ratio exactly, so inverted series
    # aggregate to the exact reciprocal in log space
    logs = [math.log(x) - math.log(y) for x, y in series.pairs]
    mean_log = math.fsum(logs) / n
    sd_log = math.sqrt(math.fsum((l - mean_log) ** 2 for l in logs) / (n - 1))
    se = sd_log / math.sqrt(n)
    t = t_quantile((1.0 + confidence) / 2.0, n - 1)
    ci_low = math.exp(mean_log - t * se)
    ci_high = math.exp(mean_log + t * se)
    return RatioSummary(
        r_geo=math.exp(mean_log),
        ci_low=ci_low,
        ci_high=ci_high,
        n=n,
        mean_log=mean_log,
        sd_log=sd_log,
        classification=classify(ci_low, ci_high),
    )
