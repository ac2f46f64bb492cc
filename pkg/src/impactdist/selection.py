"""Model comparison: Vuong test for non-nested fits, Wald tests for nested reductions."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import stats

from .distributions import DistributionSpec, log_pdf
from .estimation import FitResult

__all__ = [
    "VuongResult",
    "WaldResult",
    "DegenerateTestError",
    "vuong_test",
    "wald_test",
    "RESTRICTIONS",
    "FAVORS_FIRST",
    "FAVORS_SECOND",
    "INDISTINGUISHABLE",
]

FAVORS_FIRST = "favors_first"
FAVORS_SECOND = "favors_second"
INDISTINGUISHABLE = "indistinguishable"


class DegenerateTestError(ValueError):
    """The test statistic is undefined (zero variance or missing covariance)."""


@dataclass(frozen=True)
class VuongResult:
    lr: float
    sigma: float
    nlr: float
    p_value: float
    verdict: str
    n: int
    threshold: float

    def to_dict(self) -> dict:
        return {
            "lr": self.lr,
            "sigma": self.sigma,
            "nlr": self.nlr,
            "p_value": self.p_value,
            "verdict": self.verdict,
            "n": self.n,
            "threshold": self.threshold,
        }


@dataclass(frozen=True)
class WaldResult:
    statistic: float
    dof: int
    p_value: float
    restriction: str

    def to_dict(self) -> dict:
        return {
            "statistic": self.statistic,
            "dof": self.dof,
            "p_value": self.p_value,
            "restriction": self.restriction,
        }


def vuong_test(data, spec1: DistributionSpec, spec2: DistributionSpec, threshold: float = 0.1) -> VuongResult:
    """Vuong test of two non-nested models on the same data.

    lr is the summed pointwise log-density difference (first minus second),
    sigma the sample standard deviation (n - 1) of the pointwise differences,
    and nlr = lr / (sqrt(n) * sigma) is referred to N(0, 1) two-sided.
    Positive lr means the first model has the higher likelihood. No
    correction is applied for differing parameter counts.
    """
    x = np.asarray(getattr(data, "values", data), dtype=float)
    n = x.size
    if n < 2:
        raise ValueError("Vuong test needs at least two observations")
    diff = np.asarray(log_pdf(spec1, x)) - np.asarray(log_pdf(spec2, x))
    if not np.all(np.isfinite(diff)):
        raise DegenerateTestError("non-finite pointwise log-density")
    lr = float(np.sum(diff))
    sigma = float(np.std(diff, ddof=1))
    if sigma == 0.0:
        raise DegenerateTestError("pointwise log-likelihood differences have zero variance")
    nlr = lr / (math.sqrt(n) * sigma)
    p_value = float(2.0 * stats.norm.sf(abs(nlr)))
    if p_value >= threshold:
        verdict = INDISTINGUISHABLE
    else:
        verdict = FAVORS_FIRST if lr > 0 else FAVORS_SECOND
    return VuongResult(lr=lr, sigma=sigma, nlr=nlr, p_value=p_value, verdict=verdict, n=n, threshold=threshold)


# restriction tag -> (family, description, gradient of g over the family's parameters, offset)
# g(theta) = gradient . theta - offset
RESTRICTIONS: dict[str, tuple[str, str, tuple[float, ...], float]] = {
    "a=b": ("davies", "Davies a = b (Lavalette law)", (0.0, -1.0, 1.0), 0.0),
    "q=1": ("sm", "Singh-Maddala q = 1 (Fisk)", (0.0, 0.0, 1.0), 1.0),
    "p=1": ("dagum", "Dagum p = 1 (Fisk)", (0.0, 0.0, 1.0), 1.0),
}

_DEFAULT_RESTRICTION = {family: tag for tag, (family, *_rest) in RESTRICTIONS.items()}


def wald_test(fit: FitResult, restriction: str | None = None) -> WaldResult:
    """Single linear restriction Wald test, W = g^2 / (grad g . Cov . grad g)."""
    if restriction is None:
        restriction = _DEFAULT_RESTRICTION.get(fit.family)
        if restriction is None:
            raise ValueError(f"no nesting restriction defined for family {fit.family!r}")
    if restriction not in RESTRICTIONS:
        raise ValueError(f"unknown restriction {restriction!r}; expected one of {sorted(RESTRICTIONS)}")
    family, description, grad, offset = RESTRICTIONS[restriction]
    if fit.family != family:
        raise ValueError(f"restriction {restriction!r} applies to {family}, not {fit.family}")
    if fit.covariance is None:
        raise DegenerateTestError(f"fit has no covariance matrix: {fit.diagnostic}")
    grad = np.asarray(grad)
    g = float(grad @ fit.spec.as_array()) - offset
    var_g = float(grad @ np.asarray(fit.covariance) @ grad)
    if not var_g > 0:
        raise DegenerateTestError("restriction has non-positive estimated variance")
    statistic = g * g / var_g
    return WaldResult(statistic=statistic, dof=1, p_value=float(stats.chi2.sf(statistic, 1)), restriction=description)
