"""Maximum-likelihood fitting with Hessian-based standard errors."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import minimize

from .distributions import DistributionSpec, family_of, log_likelihood

__all__ = [
    "FitConfig",
    "FitResult",
    "FitError",
    "DegenerateDataError",
    "fit",
    "profile_start",
    "numerical_hessian",
]


class FitError(RuntimeError):
    """Fitting could not be attempted or produced no usable estimate."""


class DegenerateDataError(FitError, ValueError):
    """Data carry no information about shape (e.g. a single repeated value)."""


@dataclass(frozen=True)
class FitConfig:
    """Optimizer controls.

    ``tolerance`` is relative to |log-likelihood|. ``hessian_step`` scales the
    central-difference step, h_i = hessian_step * max(1, |theta_i|).
    """

    max_iterations: int = 5000
    tolerance: float = 1e-10
    restarts: int = 5
    hessian_step: float = 1e-4
    seed: int = 0
    jitter: float = 0.3

    def __post_init__(self):
        if not self.tolerance > 0:
            raise ValueError("tolerance must be positive")
        if self.restarts < 1:
            raise ValueError("restarts must be >= 1")
        if self.max_iterations < 1:
            raise ValueError("max_iterations must be >= 1")
        if not self.hessian_step > 0:
            raise ValueError("hessian_step must be positive")


@dataclass(frozen=True)
class FitResult:
    family: str
    spec: DistributionSpec
    std_errors: tuple[float, ...] | None
    covariance: np.ndarray | None = field(repr=False)
    log_likelihood: float
    converged: bool
    iterations: int
    n: int
    diagnostic: str | None = None

    @property
    def names(self) -> tuple[str, ...]:
        return self.spec.names

    @property
    def params(self) -> dict[str, float]:
        return self.spec.as_dict()

    def std_error(self, name: str) -> float:
        if self.std_errors is None:
            raise FitError(f"standard errors unavailable: {self.diagnostic}")
        return self.std_errors[self.names.index(name)]

    def to_dict(self) -> dict:
        return {
            "family": self.family,
            "params": self.params,
            "std_errors": None if self.std_errors is None else dict(zip(self.names, self.std_errors)),
            "covariance": None if self.covariance is None else self.covariance.tolist(),
            "log_likelihood": self.log_likelihood,
            "converged": self.converged,
            "iterations": self.iterations,
            "n": self.n,
            "diagnostic": self.diagnostic,
        }


def _values(data) -> np.ndarray:
    return np.asarray(getattr(data, "values", data), dtype=float)


def profile_start(family: str, data) -> np.ndarray:
    """Starting parameter vector (natural scale) for ``fit``.

    Davies: K = median, a = b = 0.5. Singh-Maddala and Dagum: scale = median,
    a = 1.5, third shape 1. Fisk: scale = median and the log-logistic
    method-of-moments shape pi / (sqrt(3) * sd(log x)).
    """
    x = _values(data)
    med = float(np.median(x))
    if family == "davies":
        return np.array([med, 0.5, 0.5])
    if family in ("sm", "dagum"):
        return np.array([1.5, med, 1.0])
    if family == "fisk":
        sd = float(np.std(np.log(x), ddof=1)) if x.size > 1 else 0.0
        a0 = math.pi / (math.sqrt(3.0) * sd) if sd > 0 else 1.0
        return np.array([a0, med])
    family_of(family)
    raise AssertionError("unreachable")


def numerical_hessian(func, theta, step: float = 1e-4) -> np.ndarray:
    """Central-difference Hessian of a scalar function."""
    theta = np.asarray(theta, dtype=float)
    k = theta.size
    h = step * np.maximum(1.0, np.abs(theta))
    f0 = func(theta)
    hess = np.empty((k, k))
    for i in range(k):
        ei = np.zeros(k)
        ei[i] = h[i]
        hess[i, i] = (func(theta + ei) - 2.0 * f0 + func(theta - ei)) / h[i] ** 2
        for j in range(i):
            ej = np.zeros(k)
            ej[j] = h[j]
            val = (
                func(theta + ei + ej)
                - func(theta + ei - ej)
                - func(theta - ei + ej)
                + func(theta - ei - ej)
            ) / (4.0 * h[i] * h[j])
            hess[i, j] = hess[j, i] = val
    return hess


def _nelder_mead(objective, x0, config: FitConfig, fscale: float):
    dim = x0.size
    simplex = np.vstack([x0, x0 + 0.1 * np.eye(dim)])
    return minimize(
        objective,
        x0,
        method="Nelder-Mead",
        options={
            "initial_simplex": simplex,
            "maxiter": config.max_iterations,
            "maxfev": 4 * config.max_iterations,
            "xatol": 1e-8,
            "fatol": config.tolerance * fscale,
        },
    )


def fit(family: str, data, config: FitConfig | None = None, *, start=None) -> FitResult:
    """Maximum-likelihood fit of ``family`` to positive data.

    Nelder-Mead runs on log-parameters, first from :func:`profile_start` and
    then from ``restarts - 1`` jittered starts; the best run is restarted
    once more from its own optimum. Standard errors come from the negative
    inverse of the central-difference Hessian of the log-likelihood in the
    natural parametrization. ``start`` overrides the profile start
    (natural-scale parameter vector).
    """
    config = config or FitConfig()
    cls = family_of(family)
    x = _values(data)
    k = len(cls.names)
    if x.size == 0 or not np.all(np.isfinite(x)) or not np.all(x > 0):
        raise FitError("data must be nonempty, finite and strictly positive")
    if x.size < k + 1:
        raise FitError(f"{family} needs at least {k + 1} observations, got {x.size}")
    if np.ptp(x) == 0:
        raise DegenerateDataError("all observations are equal; the likelihood is unbounded")

    def loglik(theta):
        if not np.all(theta > 0) or not np.all(np.isfinite(theta)):
            return -math.inf
        return log_likelihood(cls.from_array(theta), x)

    def objective(log_theta):
        with np.errstate(all="ignore"):
            val = loglik(np.exp(log_theta))
        return -val if math.isfinite(val) else math.inf

    rng = np.random.default_rng(config.seed)
    start = np.log(profile_start(family, x) if start is None else np.asarray(start, dtype=float))
    fscale = max(1.0, abs(objective(start))) if math.isfinite(objective(start)) else 1.0

    best = None
    iterations = 0
    for attempt in range(config.restarts):
        x0 = start if attempt == 0 else start + rng.normal(0.0, config.jitter, size=k)
        res = _nelder_mead(objective, x0, config, fscale)
        iterations += int(res.nit)
        if best is None or res.fun < best.fun:
            best = res
    polish = _nelder_mead(objective, best.x, config, fscale)
    iterations += int(polish.nit)
    if polish.fun <= best.fun:
        best = polish

    if not math.isfinite(best.fun):
        return FitResult(
            family=family,
            spec=cls.from_array(np.exp(start)),
            std_errors=None,
            covariance=None,
            log_likelihood=-math.inf,
            converged=False,
            iterations=iterations,
            n=int(x.size),
            diagnostic="no finite log-likelihood found",
        )

    theta = np.exp(best.x)
    spec = cls.from_array(theta)
    ll = log_likelihood(spec, x)
    converged = bool(best.success)
    diagnostic = None if converged else f"optimizer did not converge: {best.message}"

    std_errors = covariance = None
    with np.errstate(all="ignore"):
        hess = numerical_hessian(loglik, theta, config.hessian_step)
    info = -hess
    if not np.all(np.isfinite(info)):
        diagnostic = "Hessian not finite at the estimate"
    elif np.min(np.linalg.eigvalsh(info)) <= 0:
        diagnostic = "Hessian not negative definite at the estimate; standard errors unavailable"
    else:
        covariance = np.linalg.inv(info)
        covariance = 0.5 * (covariance + covariance.T)
        std_errors = tuple(float(s) for s in np.sqrt(np.diag(covariance)))

    return FitResult(
        family=family,
        spec=spec,
        std_errors=std_errors,
        covariance=covariance,
        log_likelihood=ll,
        converged=converged,
        iterations=iterations,
        n=int(x.size),
        diagnostic=diagnostic,
    )
