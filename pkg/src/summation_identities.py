import logging
import math
from dataclasses import dataclass, field

import numpy as np
from scipy import special

from src.exceptions import DomainError
from src.special_functions import LN2, digamma_int, polygamma_shifted, trigamma_int

DEFAULT_TOLERANCE = 1e-10


@dataclass(frozen=True)
class CheckResult:
    check: str
    params: dict
    max_error: float
    passed: bool

    def to_record(self):
        return {"check": self.check, "params": dict(self.params),
                "max_error": self.max_error, "pass": self.passed}


@dataclass
class IdentityReport:
    '''
    Outcome of identity_suite: one CheckResult per identity, each carrying the
    parameters of its worst draw.
    '''
    trials: int
    seed: int
    tolerance: float
    checks: list = field(default_factory=list)

    @property
    def passed(self):
        return all(check.passed for check in self.checks)

    def failures(self):
        return [check for check in self.checks if not check.passed]

    def to_records(self):
        return [check.to_record() for check in self.checks]


def _psi0(x):
    return float(special.psi(x))


def _psi1(x):
    return float(special.polygamma(1, x))


def relative_error(lhs, rhs):
    '''
    |lhs - rhs| / max(|lhs|, |rhs|, 1).
    '''
    return abs(lhs - rhs) / max(abs(lhs), abs(rhs), 1.0)


def _sum_digamma(m, a):
    lhs = math.fsum(_psi0(k + a) for k in range(1, m + 1))
    rhs = (m + a) * _psi0(m + a + 1) - a * _psi0(a + 1) - m
    return lhs, rhs


def _sum_trigamma(m, a):
    lhs = math.fsum(_psi1(k + a) for k in range(1, m + 1))
    rhs = (m + a) * _psi1(m + a + 1) - a * _psi1(a + 1) + _psi0(m + a + 1) - _psi0(a + 1)
    return lhs, rhs


def _sum_digamma_over_argument(m, a):
    lhs = math.fsum(_psi0(k + a) / (k + a) for k in range(1, m + 1))
    rhs = 0.5 * (_psi1(m + a + 1) - _psi1(a + 1) + _psi0(m + a + 1) ** 2 - _psi0(a + 1) ** 2)
    return lhs, rhs


def _reflected_harmonic(m):
    lhs = math.fsum(_psi0(m + 1 - k) / k for k in range(1, m + 1))
    rhs = _psi0(m + 1) ** 2 - _psi0(1) * _psi0(m + 1) + _psi1(m + 1) - _psi1(1)
    return lhs, rhs


def _shifted_harmonic(m):
    lhs = math.fsum(_psi0(m + 1 + k) / k for k in range(1, m + 1))
    rhs = _psi0(m + 1) ** 2 - _psi0(1) * _psi0(m + 1) - 0.5 * _psi1(m + 1) + 0.5 * _psi1(1)
    return lhs, rhs


def _shifted_harmonic_split(m):
    lhs = math.fsum(_psi0(m + 1 + k) / k for k in range(1, m + 1))
    double = math.fsum(1.0 / (k * (k + l)) for k in range(1, m + 1) for l in range(1, m + 1))
    rhs = double + math.fsum(_psi0(k + 1) / k for k in range(1, m + 1))
    return lhs, rhs


def _shifted_harmonic_reordered(m):
    lhs = math.fsum(_psi0(m + 1 + k) / k for k in range(1, m + 1))
    rhs = math.fsum([2.0 * math.fsum(_psi0(k + 1) / k for k in range(1, m + 1)),
                     math.fsum((_psi0(m + 1) - _psi0(1)) / l for l in range(1, m + 1)),
                     -lhs])
    return lhs, rhs


def _digamma_products(m, a, b):
    lhs = math.fsum(_psi0(k + a) * _psi0(k + b) for k in range(1, m + 1))
    rhs = math.fsum([
        (b - a) * math.fsum(_psi0(a + k) / (b + k) for k in range(1, m)),
        (m + a) * _psi0(m + a) * _psi0(m + b),
        -a * _psi0(a + 1) * _psi0(b + 1),
        -(m + a - 1) * _psi0(m + a),
        a * _psi0(a + 1),
        -(m + b) * _psi0(m + b),
        (b + 1) * _psi0(b + 1),
        2.0 * m - 2.0,
    ])
    return lhs, rhs


def _cross_harmonic(m, a, b):
    lhs = math.fsum(_psi0(k + b) / (k + a) for k in range(1, m + 1))
    rhs = math.fsum([
        -math.fsum(_psi0(k + a) / (k + b) for k in range(1, m + 1)),
        _psi0(m + a + 1) * _psi0(m + b + 1),
        -_psi0(a + 1) * _psi0(b + 1),
        (_psi0(m + a + 1) - _psi0(m + b + 1) - _psi0(a + 1) + _psi0(b + 1)) / (a - b),
    ])
    return lhs, rhs


def _shifted_above_m(m, a):
    lhs = math.fsum(_psi0(a + 1 - k) / k for k in range(1, m + 1))
    rhs = math.fsum([
        -math.fsum(_psi0(k + a - m) / k for k in range(1, m + 1)),
        (_psi0(a - m) + _psi0(a + 1)) * (_psi0(m + 1) - _psi0(1)),
        0.5 * ((_psi0(a - m) - _psi0(a + 1)) ** 2 + _psi1(a + 1) - _psi1(a - m)),
    ])
    return lhs, rhs


def _duplication_psi0_2(k):
    return digamma_int(2 * k), LN2 + 0.5 * (digamma_int(k) + polygamma_shifted(0, k, 0.5))


def _duplication_psi1_2(k):
    return trigamma_int(2 * k), 0.25 * (trigamma_int(k) + polygamma_shifted(1, k, 0.5))


def _duplication_psi0_4(k):
    shifted = [polygamma_shifted(0, k, s) for s in (0.25, 0.5, 0.75)]
    return digamma_int(4 * k), 2.0 * LN2 + 0.25 * math.fsum([digamma_int(k)] + shifted)


def _duplication_psi1_4(k):
    shifted = [polygamma_shifted(1, k, s) for s in (0.25, 0.5, 0.75)]
    return trigamma_int(4 * k), math.fsum([trigamma_int(k)] + shifted) / 16.0


def _id1_log_terms(m, b, c):
    k = np.arange(m + 1, dtype=float)
    log_terms = -(special.gammaln(k + 1) + special.gammaln(c + k)
                  + special.gammaln(m + 1 - k) + special.gammaln(m + b + 1 - k))
    log_rhs = (special.gammaln(b + c + 2 * m) - special.gammaln(m + 1) - special.gammaln(b + m + 1)
               - special.gammaln(c + m) - special.gammaln(b + c + m))
    # Terms scaled by the right-hand prefactor.
    return k, np.exp(log_terms - log_rhs)


def _id1(m, b, c):
    _, weights = _id1_log_terms(m, b, c)
    return math.fsum(weights), 1.0


def _id1_b(m, b, c):
    k, weights = _id1_log_terms(m, b, c)
    lhs = math.fsum(weights * special.psi(m + b + 1 - k))
    return lhs, _psi0(b + c + m) - _psi0(b + c + 2 * m) + _psi0(b + m + 1)


def _id1_c(m, b, c):
    k, weights = _id1_log_terms(m, b, c)
    lhs = math.fsum(weights * special.psi(c + k))
    return lhs, _psi0(b + c + m) - _psi0(b + c + 2 * m) + _psi0(c + m)


def _id1_bc(m, b, c):
    k, weights = _id1_log_terms(m, b, c)
    lhs = math.fsum(weights * special.psi(c + k) * special.psi(m + b + 1 - k))
    first = _psi0(b + c + m) - _psi0(b + c + 2 * m) + _psi0(b + m + 1)
    second = _psi0(b + c + m) - _psi0(b + c + 2 * m) + _psi0(c + m)
    return lhs, first * second - _psi1(b + c + m) + _psi1(b + c + 2 * m)


def _draw_m_a(rng):
    return {"m": int(rng.integers(1, 41)), "a": int(rng.integers(0, 31))}


def _draw_m(rng):
    return {"m": int(rng.integers(1, 41))}


def _draw_m_a_b(rng):
    a = int(rng.integers(0, 31))
    b = int(rng.integers(0, 30))
    if b >= a:
        b += 1
    return {"m": int(rng.integers(1, 41)), "a": a, "b": b}


def _draw_m_a_above_m(rng):
    m = int(rng.integers(1, 41))
    return {"m": m, "a": int(rng.integers(m + 1, m + 31))}


def _draw_k(rng):
    return {"k": int(rng.integers(1, 41))}


def _draw_id1(rng):
    return {"m": int(rng.integers(0, 16)), "b": float(rng.uniform(0.0, 5.0)), "c": float(rng.uniform(0.5, 5.0))}


# name -> (parameter sampler, function of the parameters returning (lhs, rhs))
IDENTITIES = {
    "sum psi0(k+a)": (_draw_m_a, _sum_digamma),
    "sum psi1(k+a)": (_draw_m_a, _sum_trigamma),
    "sum psi0(k+a)/(k+a)": (_draw_m_a, _sum_digamma_over_argument),
    "sum psi0(m+1-k)/k": (_draw_m, _reflected_harmonic),
    "sum psi0(m+1+k)/k": (_draw_m, _shifted_harmonic),
    "psi0(m+1+k)/k rational split": (_draw_m, _shifted_harmonic_split),
    "psi0(m+1+k)/k reordered sum": (_draw_m, _shifted_harmonic_reordered),
    "sum psi0(k+a) psi0(k+b)": (_draw_m_a_b, _digamma_products),
    "sum psi0(k+b)/(k+a)": (_draw_m_a_b, _cross_harmonic),
    "sum psi0(a+1-k)/k": (_draw_m_a_above_m, _shifted_above_m),
    "duplication psi0 order 2": (_draw_k, _duplication_psi0_2),
    "duplication psi1 order 2": (_draw_k, _duplication_psi1_2),
    "duplication psi0 order 4": (_draw_k, _duplication_psi0_4),
    "duplication psi1 order 4": (_draw_k, _duplication_psi1_4),
    "id1": (_draw_id1, _id1),
    "id1 b-derivative": (_draw_id1, _id1_b),
    "id1 c-derivative": (_draw_id1, _id1_c),
    "id1 mixed derivative": (_draw_id1, _id1_bc),
}


def identity_sides(name, **params):
    '''
    Both sides of one named identity at explicit parameters.

    :param name: Key of IDENTITIES.
    :return: Tuple (lhs, rhs) of floats.
    '''
    if name not in IDENTITIES:
        raise DomainError("Unknown identity %r." % (name,))
    return IDENTITIES[name][1](**params)


def check_identity(name, trials, rng, tolerance=DEFAULT_TOLERANCE):
    '''
    Evaluate one identity at random admissible parameters.

    :param name: Key of IDENTITIES.
    :param trials: Number of parameter draws.
    :param rng: numpy Generator.
    :param tolerance: Largest accepted relative error.
    :return: CheckResult for the worst draw.
    '''
    draw, sides = IDENTITIES[name]
    worst_error = -1.0
    worst_params = {}
    for _ in range(trials):
        params = draw(rng)
        lhs, rhs = sides(**params)
        error = relative_error(lhs, rhs)
        if not math.isfinite(error):
            error = math.inf
        if error > worst_error:
            worst_error, worst_params = error, params
    return CheckResult(check=name, params=worst_params, max_error=worst_error, passed=worst_error <= tolerance)


def identity_suite(trials, seed, tolerance=DEFAULT_TOLERANCE):
    '''
    Check every registered summation identity at random parameter draws.

    :param trials: Draws per identity, at least 1.
    :param seed: Seed of the numpy Generator.
    :param tolerance: Relative tolerance.
    :return: IdentityReport.
    '''
    if trials < 1:
        raise DomainError("identity_suite needs at least one trial, got %r." % (trials,))
    logger = logging.getLogger("fermi_rmt")
    logger.info("Starting identity suite: %d trials per identity, seed %d.", trials, seed)
    rng = np.random.default_rng(seed)
    report = IdentityReport(trials=trials, seed=seed, tolerance=tolerance)
    for name in IDENTITIES:
        result = check_identity(name, trials, rng, tolerance)
        report.checks.append(result)
        if result.passed:
            logger.debug("Identity %s passed, max relative error %.3g.", name, result.max_error)
        else:
            logger.warning("Identity %s failed: max relative error %.3g at %s.", name, result.max_error, result.params)
    logger.info("Identity suite completed: %d of %d identities passed.",
                len(report.checks) - len(report.failures()), len(report.checks))
    return report
