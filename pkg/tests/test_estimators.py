import math
import unittest
from fractions import Fraction

import numpy as np

from src.closed_forms import mean_capacity_for, mean_entropy, variance_entropy
from src.estimators import (
    Sampler,
    StatSummary,
    Statistic,
    batch_means,
    capacities_of,
    capacity_of,
    entropies_of,
    entropy_of,
    estimate,
    summarize,
)
from src.exceptions import DomainError, InsufficientDataError
from src.jacobi import EnsembleParams
from src.sampling import ChainConfig, Spectrum
from src.special_functions import LN2, evaluate


class TestSpectrumStatistics(unittest.TestCase):
    '''
    Unit tests for entropy and capacity of single spectra.
    '''
    def setUp(self):
        self.maxDiff = None

    def test_entropy(self):
        self.assertEqual(entropy_of(Spectrum((1.0,))), 0.0)
        self.assertAlmostEqual(entropy_of(Spectrum((0.0, 0.0))), 2 * LN2, places=15)
        self.assertAlmostEqual(entropy_of(Spectrum((0.5,))), 0.5623351446188083, places=14)

    def test_capacity(self):
        self.assertEqual(capacity_of(Spectrum((0.0, 1.0))), 0.0)
        self.assertAlmostEqual(capacity_of(Spectrum((0.5,))), 3 / 16 * math.log(3) ** 2, places=14)

    def test_vectorised(self):
        values = np.array([[0.5, 1.0], [0.0, 0.5]])
        np.testing.assert_allclose(entropies_of(values), [0.5623351446188083, 0.5623351446188083 + LN2], atol=1e-14)
        np.testing.assert_allclose(capacities_of(values), [3 / 16 * math.log(3) ** 2] * 2, atol=1e-14)


class TestBatchMeans(unittest.TestCase):
    '''
    Unit tests for batch-means standard errors.
    '''
    def setUp(self):
        self.maxDiff = None

    def test_constant_batches(self):
        '''
        Batches with means 1, 3, 5, 7 and no spread inside any batch.
        '''
        stderr_mean, stderr_variance = batch_means(np.repeat([1.0, 3.0, 5.0, 7.0], 5), batches=4)
        self.assertAlmostEqual(stderr_mean, math.sqrt(5 / 3), places=14)
        self.assertEqual(stderr_variance, 0.0)

    def test_leftover_tail_dropped(self):
        series = np.concatenate([np.repeat([1.0, 3.0, 5.0, 7.0], 5), [100.0, -100.0]])
        self.assertEqual(batch_means(series, batches=4), batch_means(series[:20], batches=4))

    def test_insufficient_data(self):
        with self.assertRaises(InsufficientDataError):
            batch_means(np.arange(10.0))
        with self.assertRaises(DomainError):
            batch_means(np.arange(10.0), batches=1)

    def test_summarize(self):
        summary = summarize(np.arange(40.0), batches=4, metadata={"m": 1})
        self.assertEqual(summary.count, 40)
        self.assertAlmostEqual(summary.mean, 19.5)
        self.assertAlmostEqual(summary.variance, float(np.var(np.arange(40.0), ddof=1)))
        self.assertAlmostEqual(summary.skewness, 0.0, places=12)
        self.assertEqual(summary.to_record()["m"], 1)

    def test_summary_validation(self):
        with self.assertRaises(DomainError):
            StatSummary(mean=0.0, variance=-1.0, stderr_mean=0.0, stderr_variance=0.0, count=1)
        with self.assertRaises(DomainError):
            StatSummary(mean=0.0, variance=1.0, stderr_mean=0.0, stderr_variance=0.0, count=1, acceptance_rate=1.5)


class TestEstimate(unittest.TestCase):
    '''
    Unit tests for Monte Carlo estimates against the closed forms.
    '''
    def setUp(self):
        self.maxDiff = None
        self.small = ChainConfig(seed=5, burn_in=20, thinning=2, chains=2, walkers=16, tune=False)

    def test_metadata(self):
        summary = estimate(EnsembleParams(1, 1), self.small, "entropy", 400)
        record = summary.to_record()
        for key, value in (("statistic", "entropy"), ("sampler", "loggas"), ("seed", 5), ("m", 1), ("n", 1)):
            self.assertEqual(record[key], value)
        self.assertEqual(summary.count, 400)
        self.assertIsNotNone(summary.acceptance_rate)
        physical = estimate(EnsembleParams(1, 1), self.small, Statistic.CAPACITY, 400, Sampler.PHYSICAL)
        self.assertIsNone(physical.acceptance_rate)
        self.assertEqual(physical.metadata["sampler"], "physical")

    def test_variance_source(self):
        summary = estimate(EnsembleParams(2, 3), self.small, "standardized-entropy", 400)
        self.assertEqual(summary.metadata["variance_source"], "conjecture")
        summary = estimate(EnsembleParams(2, 2), self.small, "standardized-entropy", 400)
        self.assertEqual(summary.metadata["variance_source"], "proven")

    def test_too_few_samples(self):
        with self.assertRaises(InsufficientDataError):
            estimate(EnsembleParams(1, 1), self.small, "entropy", 30)

    def test_mean_entropy(self):
        '''
        E[S](2, 2) = 13/15.
        '''
        expected = float(Fraction(13, 15))
        for sampler in (Sampler.LOGGAS, Sampler.PHYSICAL):
            summary = estimate(EnsembleParams(2, 2), ChainConfig(seed=7), Statistic.ENTROPY, 20000, sampler)
            self.assertLess(abs(summary.mean - expected), 4 * summary.stderr_mean, msg=sampler.value)

    def test_concordance_with_closed_forms(self):
        '''
        Thinned log-gas samples against the closed-form mean, variance and capacity.
        '''
        for m, n in ((2, 2), (2, 4), (3, 3)):
            e = EnsembleParams(m, n)
            entropy = estimate(e, ChainConfig(seed=m + n), Statistic.ENTROPY, 100000)
            self.assertLess(abs(entropy.mean - evaluate(mean_entropy(e))), 4 * entropy.stderr_mean, msg=(m, n))
            variance, _ = variance_entropy(e)
            self.assertLess(abs(entropy.variance - evaluate(variance)), 5 * entropy.stderr_variance, msg=(m, n))
            capacity = estimate(e, ChainConfig(seed=m + n + 100), Statistic.CAPACITY, 100000)
            self.assertLess(abs(capacity.mean - evaluate(mean_capacity_for(e))), 4 * capacity.stderr_mean, msg=(m, n))

    def test_standardized_entropy_approaches_gaussian(self):
        '''
        |skewness| and |excess kurtosis| of the standardized entropy both shrink from (2, 4) to (16, 32).
        '''
        small = estimate(EnsembleParams(2, 4), ChainConfig(seed=9), Statistic.STANDARDIZED_ENTROPY, 100000)
        large = estimate(EnsembleParams(16, 32), ChainConfig(seed=9), Statistic.STANDARDIZED_ENTROPY, 100000)
        self.assertLess(abs(large.skewness), abs(small.skewness))
        self.assertLess(abs(large.excess_kurtosis), abs(small.excess_kurtosis))


if __name__ == "__main__":
    unittest.main()
