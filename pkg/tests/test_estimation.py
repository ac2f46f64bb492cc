import math

import numpy as np
import pytest

from impactdist import distributions as d
from impactdist import estimation as est
from impactdist.estimation import FitConfig, fit

FAST = FitConfig(restarts=1)


def _within(res, truth, k=3.0):
    z = np.abs(res.spec.as_array() - truth.as_array()) / np.asarray(res.std_errors)
    return bool(np.all(z <= k)), z


@pytest.mark.parametrize("truth,n,seed", [
    (d.SinghMaddalaParams(1.62, 2.20, 1.36), 2000, 11),  # Chemistry, Singh-Maddala
    (d.DagumParams(2.70, 1.35, 0.44), 2000, 12),  # Economics, Dagum
    (d.DaviesParams(1.90, 0.63, 0.50), 1000, 13),  # Chemistry, two-exponent
])
def test_recovery_examples(truth, n, seed):
    x = d.sample(truth, n, seed)
    res = fit(truth.family, x)
    assert res.converged
    ok, z = _within(res, truth)
    assert ok, z


def test_single_repeated_value():
    with pytest.raises(est.DegenerateDataError):
        fit("sm", [2.5] * 20)


@pytest.mark.parametrize("bad", [[], [1.0, -2.0, 3.0, 4.0], [1.0, 2.0]])
def test_invalid_data(bad):
    with pytest.raises(est.FitError):
        fit("dagum", bad)


def test_profile_start_defaults():
    x = d.sample(d.FiskParams(2.0, 3.0), 101, 1)
    med = np.median(x)
    np.testing.assert_array_equal(est.profile_start("sm", x), [1.5, med, 1.0])
    np.testing.assert_array_equal(est.profile_start("davies", x), [med, 0.5, 0.5])
    a0, b0 = est.profile_start("fisk", x)
    assert b0 == med
    assert a0 == pytest.approx(math.pi / (math.sqrt(3) * np.std(np.log(x), ddof=1)))
    assert np.all(est.profile_start("dagum", x) > 0)


def test_fisk_moment_start_beats_fixed_start():
    mom, fixed = [], []
    for seed in range(100):
        x = d.sample(d.FiskParams(4.0, 2.0), 200, seed)
        mom.append(fit("fisk", x, FAST).iterations)
        fixed.append(fit("fisk", x, FAST, start=[1.5, np.median(x)]).iterations)
    assert np.mean(mom) < np.mean(fixed)


@pytest.mark.parametrize("family,truth", [
    ("davies", d.DaviesParams(1.1403, 0.7827, 0.3197)),
    ("sm", d.SinghMaddalaParams(2.8287, 0.6471, 0.7957)),
    ("dagum", d.DagumParams(2.3283, 0.5924, 1.4299)),
    ("fisk", d.FiskParams(2.5, 1.0)),
])
def test_fit_result_invariants(family, truth):
    x = d.sample(truth, 500, 21)
    res = fit(family, x)
    assert res.converged and res.n == 500
    cov = res.covariance
    np.testing.assert_array_equal(cov, cov.T)
    np.testing.assert_allclose(np.diag(cov), np.square(res.std_errors), rtol=1e-12)
    assert res.log_likelihood == d.log_likelihood(res.spec, x)
    # local maximum: no +-1% move improves the log-likelihood beyond tolerance
    theta = res.spec.as_array()
    slack = FitConfig().tolerance * abs(res.log_likelihood)
    for i in range(theta.size):
        for sign in (-1, 1):
            moved = theta.copy()
            moved[i] *= 1 + sign * 0.01
            assert d.log_likelihood(type(res.spec).from_array(moved), x) <= res.log_likelihood + slack


def test_fit_deterministic():
    x = d.sample(d.DaviesParams(1.5, 0.6, 0.4), 300, 5)
    r1 = fit("davies", x, FitConfig(seed=3))
    r2 = fit("davies", x, FitConfig(seed=3))
    assert r1.spec == r2.spec
    assert r1.std_errors == r2.std_errors
    np.testing.assert_array_equal(r1.covariance, r2.covariance)
    assert r1.log_likelihood == r2.log_likelihood


def test_non_convergence_is_flagged():
    x = d.sample(d.SinghMaddalaParams(1.6, 2.2, 1.4), 300, 5)
    res = fit("sm", x, FitConfig(max_iterations=3, restarts=1))
    assert res.converged is False
    assert "converge" in res.diagnostic


def test_indefinite_hessian_reports_no_standard_errors(monkeypatch):
    monkeypatch.setattr(est, "numerical_hessian", lambda f, theta, step: np.eye(len(theta)))
    res = fit("fisk", d.sample(d.FiskParams(2, 1), 100, 1), FAST)
    assert res.std_errors is None and res.covariance is None
    assert "negative definite" in res.diagnostic
    with pytest.raises(est.FitError):
        res.std_error("a")


def test_numerical_hessian_quadratic():
    A = np.array([[-3.0, 1.0], [1.0, -2.0]])
    f = lambda t: 0.5 * t @ A @ t  # noqa: E731
    np.testing.assert_allclose(est.numerical_hessian(f, np.array([0.3, 2.0])), A, atol=1e-6)


def test_fisk_vs_sm_on_fisk_data():
    x = d.sample(d.FiskParams(2.2, 1.5), 1000, 17)
    fisk = fit("fisk", x)
    sm = fit("sm", x)
    assert sm.log_likelihood >= fisk.log_likelihood - 1e-6
    assert sm.log_likelihood - fisk.log_likelihood <= 2.0


@pytest.mark.slow
@pytest.mark.parametrize("truth", [
    d.DaviesParams(1.8972, 0.6331, 0.4997),
    d.SinghMaddalaParams(1.6208, 2.2040, 1.3613),
    d.DagumParams(1.9727, 2.0778, 0.7701),
    d.FiskParams(2.5, 1.3),
], ids=lambda s: s.family)
def test_consistency(truth):
    def median_error(n):
        errs = [
            np.abs(fit(truth.family, d.sample(truth, n, 10_000 * n + r), FAST).spec.as_array() - truth.as_array())
            for r in range(50)
        ]
        return np.median(errs, axis=0)

    assert np.all(median_error(8000) < median_error(2000))


@pytest.mark.slow
@pytest.mark.parametrize("truth", [
    d.DaviesParams(1.8972, 0.6331, 0.4997),
    d.SinghMaddalaParams(1.6208, 2.2040, 1.3613),
    d.DagumParams(1.9727, 2.0778, 0.7701),
    d.FiskParams(2.5, 1.3),
], ids=lambda s: s.family)
def test_wald_interval_coverage(truth):
    hits = np.zeros(len(truth.names))
    for r in range(200):
        res = fit(truth.family, d.sample(truth, 1000, 50_000 + r), FAST)
        hits += np.abs(res.spec.as_array() - truth.as_array()) <= 1.959964 * np.asarray(res.std_errors)
    coverage = hits / 200
    assert np.all((coverage >= 0.90) & (coverage <= 0.99)), coverage
