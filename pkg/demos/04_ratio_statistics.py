"""From paired measurements to a geometric-mean effect size with CI.

Ratios are multiplicative, so they are averaged in log space and the
confidence interval is built there too (Student t, n-1 dof), then
exponentiated back. An interval entirely below 1 means the numerator
build is lower on that metric; above 1, higher; containing 1, a wash.
"""

import math

from wattbench.ratiostats import PairedSeries, aggregate, t_quantile

# ten paired runs of one cell: numerator build took ~25% of the baseline
pairs = (
    (2.51, 10.1), (2.47, 9.9), (2.52, 10.0), (2.49, 10.2), (2.50, 10.0),
    (2.53, 10.1), (2.46, 9.8), (2.50, 10.0), (2.48, 10.1), (2.52, 9.9),
)
series = PairedSeries(scenario="demo", param_value=6, metric="time", pairs=pairs)

print("per-run ratios:", " ".join(f"{x/y:.4f}" for x, y in pairs))
logs = [math.log(x) - math.log(y) for x, y in pairs]
print(f"mean log-ratio: {sum(logs) / len(logs):+.5f}")
print(f"t quantile (0.975, dof=9): {t_quantile(0.975, 9):.4f}")

summary = aggregate(series)
print(f"\nR_geo = {summary.r_geo:.4f}")
print(f"95% CI = [{summary.ci_low:.4f}, {summary.ci_high:.4f}]  (n={summary.n})")
print(f"classification: {summary.classification.value}")

# degenerate but instructive: identical ratios collapse the interval
flat = aggregate(PairedSeries("demo", 1, "time", ((3.0, 1.5),) * 5))
print(f"\nzero variance: R_geo={flat.r_geo}, CI=[{flat.ci_low}, {flat.ci_high}]")
