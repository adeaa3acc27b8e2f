import unittest

import numpy as np

from src.exceptions import DomainError
from src.jacobi import EnsembleParams
from src.kernel import (
    KernelContext,
    density_one,
    density_one_cdf,
    density_two,
    kernel_diagonal,
    kernel_eval,
    kernel_matrix,
)
from src.quadrature import integrate_1d, tanh_sinh_nodes


class TestKernel(unittest.TestCase):
    '''
    Unit tests for the correlation kernel.
    '''
    def setUp(self):
        self.maxDiff = None
        self.rng = np.random.default_rng(5)

    def test_examples(self):
        self.assertAlmostEqual(kernel_eval(KernelContext.build(EnsembleParams(1, 1)), 0.3, 0.9), 1.0, places=14)
        self.assertAlmostEqual(kernel_eval(KernelContext.build(EnsembleParams(1, 2)), 0.0, 0.0), 1.5, places=14)

    def test_symmetry(self):
        ctx = KernelContext.build(EnsembleParams(4, 6))
        for x, y in self.rng.uniform(0.0, 1.0, (20, 2)):
            self.assertAlmostEqual(kernel_eval(ctx, x, y), kernel_eval(ctx, y, x), delta=1e-13)

    def test_matrix_matches_pointwise(self):
        ctx = KernelContext.build(EnsembleParams(3, 4))
        xs = np.array([0.0, 0.25, 0.8])
        ys = np.array([0.1, 0.6, 1.0, 0.5])
        matrix = kernel_matrix(ctx, xs, ys)
        self.assertEqual(matrix.shape, (3, 4))
        for i, x in enumerate(xs):
            for j, y in enumerate(ys):
                self.assertAlmostEqual(matrix[i, j], kernel_eval(ctx, x, y), delta=1e-13)
        np.testing.assert_allclose(np.diag(kernel_matrix(ctx, xs, xs)), kernel_diagonal(ctx, xs), atol=1e-13)

    def test_out_of_range(self):
        ctx = KernelContext.build(EnsembleParams(2, 2))
        with self.assertRaises(DomainError):
            kernel_eval(ctx, -0.1, 0.5)
        with self.assertRaises(DomainError):
            kernel_diagonal(ctx, [0.5, 1.2])

    def test_context_validation(self):
        with self.assertRaises(DomainError):
            KernelContext(params=EnsembleParams(2, 2), inv_h=(1.0,))
        with self.assertRaises(DomainError):
            KernelContext(params=EnsembleParams(1, 1), inv_h=(0.0,))

    def test_normalisation(self):
        '''
        int_0^1 K(x, x) dx = m.
        '''
        for m in (1, 3, 6, 10):
            for a in (0, 2, 4):
                ctx = KernelContext.build(EnsembleParams(m, m + a))
                result = integrate_1d(lambda x: kernel_diagonal(ctx, x))
                self.assertAlmostEqual(result.value, m, delta=1e-9)
                if m <= 3:
                    self.assertAlmostEqual(float(density_one_cdf(ctx, 1.0)), 1.0, delta=1e-9)

    def test_reproducing_property(self):
        ctx = KernelContext.build(EnsembleParams(4, 6))
        for x, y in self.rng.uniform(0.0, 1.0, (5, 2)):
            result = integrate_1d(lambda z: kernel_matrix(ctx, [x], z)[0] * kernel_matrix(ctx, z, [y])[:, 0])
            self.assertAlmostEqual(result.value, kernel_eval(ctx, x, y), delta=1e-8)


class TestDensities(unittest.TestCase):
    '''
    Unit tests for the one- and two-point densities.
    '''
    def setUp(self):
        self.maxDiff = None

    def test_density_one_examples(self):
        uniform = KernelContext.build(EnsembleParams(1, 1))
        shaped = KernelContext.build(EnsembleParams(1, 2))
        for x in (0.0, 0.3, 0.77, 1.0):
            self.assertAlmostEqual(density_one(uniform, x), 1.0, places=14)
            self.assertAlmostEqual(density_one(shaped, x), 1.5 * (1 - x * x), places=14)

    def test_density_one_cdf(self):
        ctx = KernelContext.build(EnsembleParams(1, 2))
        xs = np.array([0.0, 0.2, 0.5, 1.0])
        np.testing.assert_allclose(density_one_cdf(ctx, xs), 1.5 * xs - 0.5 * xs ** 3, atol=1e-14)

    def test_density_two(self):
        ctx = KernelContext.build(EnsembleParams(3, 4))
        self.assertAlmostEqual(density_two(ctx, 0.4, 0.4), 0.0, delta=1e-12)
        self.assertAlmostEqual(density_two(ctx, 0.2, 0.7), density_two(ctx, 0.7, 0.2), delta=1e-13)
        self.assertGreaterEqual(density_two(ctx, 0.1, 0.9), 0.0)
        with self.assertRaises(DomainError):
            density_two(KernelContext.build(EnsembleParams(1, 3)), 0.2, 0.5)

    def test_density_two_normalised(self):
        '''
        The two-point density integrates to one over the unit square.
        '''
        ctx = KernelContext.build(EnsembleParams(2, 3))
        nodes, weights = tanh_sinh_nodes(6)
        diagonal = kernel_diagonal(ctx, nodes)
        cross = kernel_matrix(ctx, nodes, nodes)
        integrand = np.outer(diagonal, diagonal) - cross * cross
        total = weights @ integrand @ weights / 2.0
        self.assertAlmostEqual(total, 1.0, delta=1e-9)


if __name__ == "__main__":
    unittest.main()
