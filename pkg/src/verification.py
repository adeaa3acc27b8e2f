import logging

import numpy as np
from scipy import stats

from src.appendix_sums import assemble, mean_entropy_sum, moment_route, pole_term_limits
from src.closed_forms import SUPPORTED_CAPACITY_DIFFERENCES, mean_capacity, mean_entropy, variance_entropy
from src.estimators import Statistic, estimate
from src.jacobi import EnsembleParams
from src.kernel import KernelContext, density_one_cdf
from src.quadrature import QuadratureConfig, capacity_quad, ia_quad, ib_quad, ic_quad, mean_entropy_quad
from src.sampling import ChainConfig, sample_loggas_array, sample_physical_chains
from src.special_functions import evaluate
from src.summation_identities import CheckResult, identity_suite

SUITES = ("identities", "routes", "samplers", "all")
KS_LEVEL = 0.01


class _Worst:
    # Largest error seen for one named check, with the parameters that produced it.
    def __init__(self, name, tolerance):
        self.name = name
        self.tolerance = tolerance
        self.error = 0.0
        self.params = {}

    def update(self, error, **params):
        if error > self.error or not self.params:
            self.error = float(error)
            self.params = params

    def result(self):
        return CheckResult(check=self.name, params=self.params, max_error=self.error,
                           passed=self.error <= self.tolerance)


def verify_identities(trials=1000, seed=0, tolerance=1e-10):
    '''
    :return: List of CheckResult, one per summation identity.
    '''
    return identity_suite(trials, seed, tolerance).checks


def verify_routes(max_m=5, max_a=3, tolerance=1e-8, quad_cfg=None, pole_tolerance=1e-12):
    '''
    Closed forms, exact mode sums and quadrature compared on every (m, a) with
    m <= max_m and a <= max_a. I_A from the mode sums is also checked against the
    Beta-moment route, and the dropped pole entries against their eps -> 0 limits.

    :return: List of CheckResult, one per compared pair of routes.
    '''
    logger = logging.getLogger("fermi_rmt")
    logger.info("Starting route verification up to m=%d, a=%d.", max_m, max_a)
    quad_cfg = quad_cfg or QuadratureConfig()
    checks = {name: _Worst(name, tolerance) for name in (
        "mean-entropy exact vs quadrature", "mean-entropy exact vs sums",
        "I_A sums vs quadrature", "I_B sums vs quadrature", "I_C sums vs quadrature",
        "variance-entropy exact vs sums", "variance-entropy exact vs quadrature",
        "mean-capacity exact vs sums", "mean-capacity exact vs quadrature", "I_A sums vs moment route")}
    checks["pole entries vs perturbation"] = _Worst("pole entries vs perturbation", pole_tolerance)
    for m in range(1, max_m + 1):
        for a in range(max_a + 1):
            e = EnsembleParams(m, m + a)
            params = {"m": e.m, "n": e.n}
            exact_mean = evaluate(mean_entropy(e))
            checks["mean-entropy exact vs quadrature"].update(abs(exact_mean - mean_entropy_quad(e, quad_cfg).value), **params)
            checks["mean-entropy exact vs sums"].update(abs(exact_mean - mean_entropy_sum(e).value), **params)
            sums = assemble(e)
            i_a, i_b, i_c = ia_quad(e, quad_cfg).value, ib_quad(e, quad_cfg).value, ic_quad(e, quad_cfg).value
            checks["I_A sums vs quadrature"].update(abs(sums.i_a.value - i_a), **params)
            checks["I_B sums vs quadrature"].update(abs(sums.i_b.value - i_b), **params)
            checks["I_C sums vs quadrature"].update(abs(sums.i_c.value - i_c), **params)
            checks["I_A sums vs moment route"].update(abs(evaluate(sums.i_a.exact - moment_route(e)["I_A"])), **params)
            checks["pole entries vs perturbation"].update(max(abs(v) for v in pole_term_limits(e).values()), **params)
            variance, _ = variance_entropy(e)
            checks["variance-entropy exact vs sums"].update(abs(evaluate(variance) - evaluate(sums.variance)), **params)
            checks["variance-entropy exact vs quadrature"].update(abs(evaluate(variance) - (i_a - i_b)), **params)
            if a in SUPPORTED_CAPACITY_DIFFERENCES:
                capacity = evaluate(mean_capacity(a, e.n))
                checks["mean-capacity exact vs sums"].update(abs(capacity - evaluate(sums.capacity)), **params)
                checks["mean-capacity exact vs quadrature"].update(abs(capacity - capacity_quad(e, quad_cfg).value), **params)
    results = [check.result() for check in checks.values()]
    logger.info("Route verification completed: %d of %d checks passed.", sum(r.passed for r in results), len(results))
    return results


def _ks_check(name, statistic, pvalue, **params):
    params["p_value"] = float(pvalue)
    return CheckResult(check=name, params=params, max_error=float(statistic), passed=bool(pvalue >= KS_LEVEL))


def verify_samplers(samples=20000, seed=0):
    '''
    Kolmogorov-Smirnov checks of both samplers against the exact one-point
    distribution and against each other, plus a mean-entropy check.

    :return: List of CheckResult; max_error holds the KS statistic or the
             deviation in standard errors.
    '''
    logger = logging.getLogger("fermi_rmt")
    logger.info("Starting sampler verification with %d samples, seed %d.", samples, seed)
    cfg = ChainConfig(seed=seed, thinning=20)
    results = []
    e = EnsembleParams(1, 2)
    context = KernelContext.build(e)

    def cdf(x):
        return density_one_cdf(context, np.clip(x, 0.0, 1.0))

    physical = sample_physical_chains(e, cfg, samples)[:, 0]
    ks = stats.kstest(physical, cdf)
    results.append(_ks_check("physical one-point KS", ks.statistic, ks.pvalue, m=1, n=2, samples=samples))
    loggas, _ = sample_loggas_array(e, cfg, samples)
    ks = stats.kstest(loggas[:, 0], cdf)
    results.append(_ks_check("log-gas one-point KS", ks.statistic, ks.pvalue, m=1, n=2, samples=samples))
    e = EnsembleParams(2, 3)
    loggas, _ = sample_loggas_array(e, cfg, samples)
    physical = sample_physical_chains(e, cfg, samples)
    ks = stats.ks_2samp(loggas.ravel(), physical.ravel())
    results.append(_ks_check("log-gas vs physical KS", ks.statistic, ks.pvalue, m=2, n=3, samples=samples))
    e = EnsembleParams(2, 2)
    summary = estimate(e, cfg, Statistic.ENTROPY, samples)
    deviation = abs(summary.mean - evaluate(mean_entropy(e))) / summary.stderr_mean
    results.append(CheckResult(check="log-gas mean entropy within 4 stderr", params={"m": 2, "n": 2, "samples": samples},
                               max_error=float(deviation), passed=bool(deviation <= 4.0)))
    logger.info("Sampler verification completed: %d of %d checks passed.", sum(r.passed for r in results), len(results))
    return results


def run_suites(suite, trials=1000, max_m=5, samples=20000, seed=0, tolerance=None):
    '''
    :param suite: One of SUITES.
    :return: List of CheckResult from every selected suite.
    '''
    results = []
    if suite in ("identities", "all"):
        results += verify_identities(trials, seed, tolerance or 1e-10)
    if suite in ("routes", "all"):
        results += verify_routes(max_m, tolerance=tolerance or 1e-8)
    if suite in ("samplers", "all"):
        results += verify_samplers(samples, seed)
    return results
