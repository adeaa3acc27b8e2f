import unittest

import numpy as np
from scipy import stats

from src.exceptions import DomainError, IntegrityError
from src.jacobi import EnsembleParams
from src.kernel import KernelContext, density_one_cdf
from src.sampling import (
    ChainConfig,
    Spectrum,
    _paired_values,
    coordinate_log_acceptance,
    log_acceptance,
    log_density,
    loggas_step,
    physical_covariance_block,
    reflect_unit_interval,
    sample_loggas,
    sample_loggas_array,
    sample_physical,
    sample_physical_array,
    sample_physical_chains,
)


class TestLogGas(unittest.TestCase):
    '''
    Unit tests for the Metropolis log-gas sampler.
    '''
    def setUp(self):
        self.maxDiff = None
        self.small = ChainConfig(seed=3, burn_in=20, thinning=2, chains=2, walkers=16, tune=False)

    def test_reflection(self):
        np.testing.assert_allclose(reflect_unit_interval([-0.2, 1.3, 0.5, 2.4]), [0.2, 0.7, 0.5, 0.4], atol=1e-12)

    def test_coincident_pair(self):
        self.assertEqual(log_density(np.array([0.3, 0.3]), EnsembleParams(2, 2)), -np.inf)

    def test_detailed_balance(self):
        '''
        The log acceptance ratio is antisymmetric in its two arguments.
        '''
        e = EnsembleParams(3, 5)
        rng = np.random.default_rng(8)
        for _ in range(10):
            x, y = rng.uniform(0.0, 1.0, (2, 3))
            self.assertAlmostEqual(log_acceptance(x, y, e), -log_acceptance(y, x, e), delta=1e-12)

    def test_coordinate_update_matches_full_ratio(self):
        e = EnsembleParams(3, 5)
        rng = np.random.default_rng(9)
        values = rng.uniform(0.0, 1.0, (6, 3))
        proposal = rng.uniform(0.0, 1.0, 6)
        for i in range(3):
            moved = values.copy()
            moved[:, i] = proposal
            np.testing.assert_allclose(coordinate_log_acceptance(values, i, proposal, e),
                                       log_acceptance(values, moved, e), atol=1e-10)

    def test_step_is_deterministic(self):
        e = EnsembleParams(3, 4)
        state = Spectrum((0.2, 0.5, 0.8))
        first = loggas_step(state, e, np.random.default_rng(1))
        second = loggas_step(state, e, np.random.default_rng(1))
        self.assertEqual(first, second)
        self.assertEqual(first.m, 3)
        self.assertEqual(list(first.values), sorted(first.values))
        with self.assertRaises(DomainError):
            loggas_step(state, EnsembleParams(2, 4), np.random.default_rng(1))

    def test_array_is_deterministic(self):
        e = EnsembleParams(2, 3)
        draws, rate = sample_loggas_array(e, self.small, 100)
        again, rate_again = sample_loggas_array(e, self.small, 100)
        self.assertEqual(draws.shape, (100, 2))
        np.testing.assert_array_equal(draws, again)
        self.assertEqual(rate, rate_again)
        self.assertTrue(0.0 < rate < 1.0)
        self.assertTrue(np.all(np.diff(draws, axis=1) >= 0.0))
        self.assertTrue(np.all((draws >= 0.0) & (draws <= 1.0)))

    def test_stream(self):
        spectra = list(sample_loggas(EnsembleParams(2, 3), self.small, 10))
        self.assertEqual(len(spectra), 10)
        self.assertTrue(all(isinstance(s, Spectrum) for s in spectra))

    def test_rejects_empty_request(self):
        with self.assertRaises(DomainError):
            sample_loggas_array(EnsembleParams(1, 1), self.small, 0)

    def test_uniform_single_mode(self):
        '''
        At m = n = 1 the eigenvalue is uniform on [0, 1].
        '''
        draws, _ = sample_loggas_array(EnsembleParams(1, 1), ChainConfig(seed=12), 5000)
        self.assertLess(stats.kstest(draws[:, 0], "uniform").statistic, 0.05)

    def test_matches_one_point_density(self):
        e = EnsembleParams(1, 2)
        context = KernelContext.build(e)
        draws, _ = sample_loggas_array(e, ChainConfig(seed=13), 5000)
        statistic = stats.kstest(draws[:, 0], lambda x: density_one_cdf(context, np.clip(x, 0.0, 1.0))).statistic
        self.assertLess(statistic, 0.05)


class TestValidation(unittest.TestCase):
    '''
    Unit tests for Spectrum and ChainConfig.
    '''
    def setUp(self):
        self.maxDiff = None

    def test_spectrum(self):
        self.assertEqual(Spectrum((0.9, 0.1)).values, (0.1, 0.9))
        np.testing.assert_array_equal(Spectrum((0.4,)).as_array(), np.array([0.4]))
        with self.assertRaises(DomainError):
            Spectrum(())
        with self.assertRaises(DomainError):
            Spectrum((0.5, 1.2))

    def test_chain_config(self):
        for kwargs in ({"seed": -1}, {"burn_in": -1}, {"thinning": 0}, {"proposal_width": 0.0},
                       {"chains": 0}, {"walkers": 0}, {"seed": True}):
            with self.assertRaises(DomainError, msg=str(kwargs)):
                ChainConfig(**kwargs)

    def test_width(self):
        self.assertAlmostEqual(ChainConfig().width_for(EnsembleParams(1, 3)), 0.25)
        self.assertEqual(ChainConfig(proposal_width=0.1).width_for(EnsembleParams(1, 3)), 0.1)


class TestPhysicalSampler(unittest.TestCase):
    '''
    Unit tests for the covariance-matrix sampler.
    '''
    def setUp(self):
        self.maxDiff = None

    def test_block_is_antisymmetric(self):
        block = physical_covariance_block(EnsembleParams(2, 3), np.random.default_rng(4))
        self.assertEqual(block.shape, (4, 4))
        np.testing.assert_allclose(block, -block.T, atol=1e-12)
        singular = np.sort(np.linalg.svd(block, compute_uv=False))
        np.testing.assert_allclose(singular[0::2], singular[1::2], atol=1e-10)
        self.assertLessEqual(singular[-1], 1.0 + 1e-12)

    def test_unpaired_values_rejected(self):
        with self.assertRaises(IntegrityError):
            _paired_values(np.diag([1.0, 0.5])[None])
        with self.assertRaises(IntegrityError):
            _paired_values(np.array([[[0.0, 2.0], [-2.0, 0.0]]]))

    def test_arrays(self):
        e = EnsembleParams(2, 4)
        draws = sample_physical_array(e, np.random.default_rng(6), 50)
        self.assertEqual(draws.shape, (50, 2))
        self.assertTrue(np.all((draws >= 0.0) & (draws <= 1.0)))
        self.assertEqual(sample_physical(e, np.random.default_rng(6)).m, 2)
        chains = sample_physical_chains(e, ChainConfig(seed=2, chains=3), 31)
        np.testing.assert_array_equal(chains, sample_physical_chains(e, ChainConfig(seed=2, chains=3), 31))
        self.assertEqual(chains.shape, (31, 2))
        with self.assertRaises(DomainError):
            sample_physical_array(e, np.random.default_rng(6), 0)

    def test_matches_one_point_density(self):
        e = EnsembleParams(1, 2)
        context = KernelContext.build(e)
        draws = sample_physical_array(e, np.random.default_rng(21), 5000)
        statistic = stats.kstest(draws[:, 0], lambda x: density_one_cdf(context, np.clip(x, 0.0, 1.0))).statistic
        self.assertLess(statistic, 0.05)


if __name__ == "__main__":
    unittest.main()
