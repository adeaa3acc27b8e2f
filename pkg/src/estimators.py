import enum
import logging
import math
from dataclasses import dataclass, field

import numpy as np
from scipy import stats

from src.closed_forms import mean_entropy, variance_entropy
from src.exceptions import DomainError, InsufficientDataError
from src.quadrature import capacity_integrand, entropy_integrand
from src.sampling import sample_loggas_array, sample_physical_chains
from src.special_functions import LN2, evaluate

DEFAULT_BATCHES = 20


class Statistic(enum.Enum):
    ENTROPY = "entropy"
    CAPACITY = "capacity"
    STANDARDIZED_ENTROPY = "standardized-entropy"


class Sampler(enum.Enum):
    LOGGAS = "loggas"
    PHYSICAL = "physical"


@dataclass(frozen=True)
class StatSummary:
    mean: float
    variance: float
    stderr_mean: float
    stderr_variance: float
    count: int
    acceptance_rate: float = None
    skewness: float = None
    excess_kurtosis: float = None
    metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.variance < 0 or self.stderr_mean < 0 or self.stderr_variance < 0:
            raise DomainError("Variance and standard errors must be nonnegative.")
        if self.acceptance_rate is not None and not 0.0 <= self.acceptance_rate <= 1.0:
            raise DomainError("Acceptance rate must lie in [0, 1], got %r." % (self.acceptance_rate,))

    def to_record(self):
        record = {
            "mean": self.mean,
            "variance": self.variance,
            "stderr_mean": self.stderr_mean,
            "stderr_variance": self.stderr_variance,
            "count": self.count,
            "acceptance_rate": self.acceptance_rate,
            "skewness": self.skewness,
            "excess_kurtosis": self.excess_kurtosis,
        }
        record.update(self.metadata)
        return record


def entropies_of(values):
    '''
    Von Neumann entropy -sum_i v(x_i) for every row of an array of spectra.

    :param values: Array of shape (samples, m).
    :return: Array of shape (samples,), clipped to [0, m ln 2].
    '''
    values = np.atleast_2d(np.asarray(values, dtype=float))
    totals = -np.sum(entropy_integrand(values), axis=1)
    return np.clip(totals, 0.0, values.shape[1] * LN2)


def capacities_of(values):
    '''
    Entanglement capacity sum_i (1-x_i^2)/4 ln^2((1+x_i)/(1-x_i)) for every row.
    '''
    values = np.atleast_2d(np.asarray(values, dtype=float))
    return np.sum(capacity_integrand(values), axis=1)


def entropy_of(s):
    '''
    :param s: Spectrum.
    :return: Entropy in [0, m ln 2].
    '''
    return float(entropies_of(s.as_array())[0])


def capacity_of(s):
    '''
    :param s: Spectrum.
    :return: Nonnegative capacity.
    '''
    return float(capacities_of(s.as_array())[0])


def batch_means(series, batches=DEFAULT_BATCHES):
    '''
    Batch-means standard errors of the mean and of the variance.

    The series is cut into `batches` equal consecutive batches (a leftover tail is
    dropped); the errors are the standard deviations of the batch means and of the
    batch variances divided by sqrt(batches).

    :param series: 1-D array of observations.
    :param batches: Number of batches, at least 2.
    :return: Tuple (stderr_mean, stderr_variance).
    '''
    series = np.asarray(series, dtype=float)
    if batches < 2:
        raise DomainError("At least two batches are required, got %r." % (batches,))
    if series.size < 2 * batches:
        raise InsufficientDataError("Batch means need at least %d observations, got %d." % (2 * batches, series.size))
    size = series.size // batches
    grid = series[:size * batches].reshape(batches, size)
    stderr_mean = float(np.std(grid.mean(axis=1), ddof=1) / math.sqrt(batches))
    stderr_variance = float(np.std(grid.var(axis=1, ddof=1), ddof=1) / math.sqrt(batches))
    return stderr_mean, stderr_variance


def summarize(series, acceptance_rate=None, batches=DEFAULT_BATCHES, metadata=None):
    '''
    StatSummary of a series of observations.
    '''
    series = np.asarray(series, dtype=float)
    stderr_mean, stderr_variance = batch_means(series, batches)
    return StatSummary(
        mean=float(np.mean(series)),
        variance=float(np.var(series, ddof=1)),
        stderr_mean=stderr_mean,
        stderr_variance=stderr_variance,
        count=int(series.size),
        acceptance_rate=acceptance_rate,
        skewness=float(stats.skew(series)),
        excess_kurtosis=float(stats.kurtosis(series, fisher=True)),
        metadata=dict(metadata or {}),
    )


def draw_spectra(e, cfg, samples, sampler=Sampler.LOGGAS):
    '''
    :return: Tuple (array of shape (samples, m), acceptance rate or None).
    '''
    sampler = Sampler(sampler)
    if sampler is Sampler.LOGGAS:
        return sample_loggas_array(e, cfg, samples)
    return sample_physical_chains(e, cfg, samples), None


def standardize(entropies, e):
    '''
    X = (S - E[S]) / sqrt(V[S]) with the closed-form mean and variance.

    :return: Tuple (array X, variance status "proven" or "conjecture").
    '''
    variance, status = variance_entropy(e)
    centre = evaluate(mean_entropy(e))
    return (np.asarray(entropies) - centre) / math.sqrt(evaluate(variance)), status


def estimate(e, cfg, statistic, samples, sampler=Sampler.LOGGAS, batches=DEFAULT_BATCHES):
    '''
    Monte Carlo estimate of an entanglement statistic.

    :param e: EnsembleParams.
    :param cfg: ChainConfig.
    :param statistic: Statistic or its value.
    :param samples: Number of spectra to draw.
    :param sampler: Sampler or its value.
    :param batches: Number of batches for the standard errors.
    :return: StatSummary.
    '''
    statistic = Statistic(statistic)
    sampler = Sampler(sampler)
    if samples < 2 * batches:
        raise InsufficientDataError("%d samples cannot fill %d batches." % (samples, batches))
    logger = logging.getLogger("fermi_rmt")
    logger.info("Starting %s estimate for m=%d, n=%d with the %s sampler.", statistic.value, e.m, e.n, sampler.value)
    draws, rate = draw_spectra(e, cfg, samples, sampler)
    metadata = {"statistic": statistic.value, "sampler": sampler.value, "seed": cfg.seed, "m": e.m, "n": e.n}
    if statistic is Statistic.CAPACITY:
        series = capacities_of(draws)
    else:
        series = entropies_of(draws)
        if statistic is Statistic.STANDARDIZED_ENTROPY:
            series, status = standardize(series, e)
            metadata["variance_source"] = status
    summary = summarize(series, acceptance_rate=rate, batches=batches, metadata=metadata)
    logger.info("%s estimate completed: mean=%.6g +/- %.2g, variance=%.6g +/- %.2g.", statistic.value,
                summary.mean, summary.stderr_mean, summary.variance, summary.stderr_variance)
    return summary
