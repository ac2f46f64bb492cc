"""Kolmogorov-Smirnov goodness of fit with parametric-bootstrap p-values."""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace

import numpy as np

from .distributions import DistributionSpec, cdf, sample
from .estimation import FitConfig, FitError, FitResult, fit

__all__ = [
    "GofResult",
    "BootstrapError",
    "ks_statistic",
    "bootstrap_gof",
    "replicate_seed",
    "rejects",
    "DEFAULT_B",
    "DEFAULT_ALPHA",
]

DEFAULT_B = 999
DEFAULT_ALPHA = 0.1
MAX_FAILURE_FRACTION = 0.1


class BootstrapError(RuntimeError):
    pass


@dataclass(frozen=True)
class GofResult:
    ks_org: float
    p_value: float
    B: int
    seed: int
    refit_failures: int
    exceedances: int
    replicate_ks: tuple[float, ...] | None = None
    fit: FitResult | None = None

    def to_dict(self) -> dict:
        return {
            "ks_org": self.ks_org,
            "p_value": self.p_value,
            "B": self.B,
            "seed": self.seed,
            "refit_failures": self.refit_failures,
            "exceedances": self.exceedances,
        }


def ks_statistic(data, spec: DistributionSpec) -> float:
    """sup |F_n(x) - F(x)| evaluated at both sides of every step of F_n."""
    x = np.sort(np.asarray(getattr(data, "values", data), dtype=float))
    n = x.size
    if n == 0:
        raise ValueError("data must be nonempty")
    F = cdf(spec, x)
    i = np.arange(1, n + 1)
    return float(np.max(np.maximum(i / n - F, F - (i - 1) / n)))


def replicate_seed(seed: int, index: int) -> np.random.SeedSequence:
    """Seed for bootstrap replicate ``index``: entropy (seed, index).

    Depends only on the pair, so replicates can run in any order or process.
    """
    return np.random.SeedSequence([int(seed), int(index)])


def _replicate(family: str, spec: DistributionSpec, n: int, seed: int, index: int, config: FitConfig):
    ss = replicate_seed(seed, index)
    draw_seed, fit_seed = ss.generate_state(2)
    synthetic = sample(spec, n, int(draw_seed))
    try:
        res = fit(family, synthetic, replace(config, seed=int(fit_seed)))
    except (FitError, ValueError):
        return None
    if not res.converged:
        return None
    return ks_statistic(synthetic, res.spec)


def _replicate_star(args):
    return _replicate(*args)


def bootstrap_gof(
    family: str,
    data,
    B: int = DEFAULT_B,
    seed: int = 0,
    config: FitConfig | None = None,
    *,
    keep_replicates: bool = True,
    workers: int = 1,
) -> GofResult:
    """Parametric-bootstrap KS test of ``family`` against ``data``.

    Fit the family, record KS_org against the fit, then for each of ``B``
    synthetic samples of the original size drawn from the fitted model refit
    the family and compute KS_b against the replicate's own fit. The p-value
    is #{KS_b > KS_org} / B. Replicates whose refit fails are dropped and
    counted; more than 10% failures is an error.
    """
    if B < 99:
        raise ValueError("B must be at least 99")
    config = config or FitConfig()
    x = np.asarray(getattr(data, "values", data), dtype=float)
    original = fit(family, x, config)
    if not original.converged:
        raise FitError(f"fit to the observed data did not converge: {original.diagnostic}")
    ks_org = ks_statistic(x, original.spec)

    jobs = [(family, original.spec, x.size, seed, b, config) for b in range(B)]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            outcomes = list(pool.map(_replicate_star, jobs, chunksize=max(1, B // (4 * workers))))
    else:
        outcomes = [_replicate(*job) for job in jobs]

    replicates = [ks for ks in outcomes if ks is not None]
    failures = B - len(replicates)
    if failures > MAX_FAILURE_FRACTION * B:
        raise BootstrapError(f"{failures} of {B} bootstrap refits failed")
    exceed = sum(ks > ks_org for ks in replicates)
    return GofResult(
        ks_org=ks_org,
        p_value=exceed / B,
        B=B,
        seed=seed,
        refit_failures=failures,
        exceedances=exceed,
        replicate_ks=tuple(replicates) if keep_replicates else None,
        fit=original,
    )


def rejects(result: GofResult, alpha: float = DEFAULT_ALPHA) -> bool:
    """True when the fitted family is rejected at level ``alpha``."""
    return result.p_value < alpha
