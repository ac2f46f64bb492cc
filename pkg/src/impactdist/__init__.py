"""Fitting heavy-tailed size distributions (Davies, Singh-Maddala, Dagum, Fisk)
with likelihood inference, bootstrap goodness of fit and model selection."""

__version__ = "0.1.0"

from .corpus import Dataset, Descriptives, describe, load_csv
from .distributions import (
    DagumParams,
    DaviesParams,
    FiskParams,
    SinghMaddalaParams,
    cdf,
    gini,
    log_likelihood,
    log_pdf,
    lorenz_curve,
    moment,
    pdf,
    quantile,
    rank_frequency,
    reciprocal_dual,
    sample,
)
from .estimation import FitConfig, FitResult, fit, profile_start
from .gof import GofResult, bootstrap_gof, ks_statistic
from .selection import VuongResult, WaldResult, vuong_test, wald_test
