# Recipe: plain Gaussian vs corrected discrepancy for random weights
import logging
from edgekit import rate_experiment

logging.basicConfig(level=logging.INFO)

report = rate_experiment({
    "spec": "rademacher", "k": 1,
    "n_grid": [8, 12, 16, 20, 24],
    "theta_draws": 20,
    "modes": ["plain", "edgeworth", "edgeworth:paper-minus"],
    "seed": 0})

print(report.to_csv())
for mode in report.modes:
    print(mode, report.slope(mode), report.slope(mode, n_min=16))
