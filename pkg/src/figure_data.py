import logging

import numpy as np
from scipy import stats

from src.closed_forms import mean_capacity, variance_entropy
from src.estimators import Statistic, draw_spectra, entropies_of, estimate, standardize
from src.jacobi import EnsembleParams
from src.special_functions import evaluate

FIGURE1_COLUMNS = ("m", "n", "exact_var", "mc_var", "mc_stderr")
FIGURE2_COLUMNS = ("bin_center", "density", "gauss_ref")
FIGURE3_COLUMNS = ("n", "exact_capacity", "mc_capacity", "mc_stderr")


def variance_series(m_max, samples, cfg):
    '''
    Entropy variance against m for n = m, 2m, 3m.

    :param m_max: Largest m.
    :param samples: Monte Carlo draws per point; 0 leaves the MC columns empty.
    :param cfg: ChainConfig.
    :return: List of rows aligned with FIGURE1_COLUMNS.
    '''
    logger = logging.getLogger("fermi_rmt")
    logger.info("Starting variance series up to m=%d.", m_max)
    rows = []
    for factor in (1, 2, 3):
        for m in range(1, m_max + 1):
            e = EnsembleParams(m, factor * m)
            exact = evaluate(variance_entropy(e)[0])
            mc_var = mc_stderr = None
            if samples:
                summary = estimate(e, cfg, Statistic.ENTROPY, samples)
                mc_var, mc_stderr = summary.variance, summary.stderr_variance
            rows.append((e.m, e.n, exact, mc_var, mc_stderr))
    logger.info("Variance series completed with %d rows.", len(rows))
    return rows


def standardized_histogram(m, n, samples, cfg, bins=40, limit=4.0):
    '''
    Histogram density of the standardized entropy next to the standard normal density.

    :return: List of rows aligned with FIGURE2_COLUMNS.
    '''
    e = EnsembleParams(m, n)
    draws, _ = draw_spectra(e, cfg, samples)
    standardized, status = standardize(entropies_of(draws), e)
    logging.getLogger("fermi_rmt").info("Standardizing entropy with the %s variance.", status)
    density, edges = np.histogram(standardized, bins=bins, range=(-limit, limit))
    # Normalise by all draws so mass outside the range is not redistributed.
    density = density / (standardized.size * np.diff(edges))
    centers = 0.5 * (edges[:-1] + edges[1:])
    return [(float(c), float(d), float(stats.norm.pdf(c))) for c, d in zip(centers, density)]


def capacity_series(a, n_max, samples, cfg):
    '''
    Mean capacity against n at a fixed difference a.

    :return: List of rows aligned with FIGURE3_COLUMNS.
    '''
    logger = logging.getLogger("fermi_rmt")
    logger.info("Starting capacity series for a=%d up to n=%d.", a, n_max)
    rows = []
    for n in range(a + 1, n_max + 1):
        exact = evaluate(mean_capacity(a, n))
        mc_mean = mc_stderr = None
        if samples:
            summary = estimate(EnsembleParams(n - a, n), cfg, Statistic.CAPACITY, samples)
            mc_mean, mc_stderr = summary.mean, summary.stderr_mean
        rows.append((n, exact, mc_mean, mc_stderr))
    return rows
