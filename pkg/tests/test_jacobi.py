import unittest
from fractions import Fraction

import numpy as np
from scipy import special

from src.exceptions import DomainError
from src.jacobi import (
    EnsembleParams,
    JacobiParams,
    JacobiRepresentation,
    integral_ac,
    integral_cd,
    jacobi_eval,
    norm_h,
    norm_h_exact,
    p_eval,
    p_polynomial,
    p_values,
)
from src.quadrature import integrate_1d, integrate_interval


class TestEnsembleParams(unittest.TestCase):
    '''
    Unit tests for EnsembleParams validation.
    '''
    def test_derived_fields(self):
        e = EnsembleParams(2, 5)
        self.assertEqual(e.a, 3)
        self.assertEqual(e.modes, 7)

    def test_invalid_dimensions(self):
        with self.assertRaises(DomainError):
            EnsembleParams(3, 2)
        with self.assertRaises(DomainError):
            EnsembleParams(0, 2)
        with self.assertRaises(DomainError):
            EnsembleParams(1.5, 2)
        with self.assertRaises(DomainError):
            EnsembleParams(True, 2)


class TestJacobiEvaluation(unittest.TestCase):
    '''
    Unit tests for the Jacobi series and the ensemble polynomials p_k.
    '''
    def setUp(self):
        self.maxDiff = None
        self.rng = np.random.default_rng(11)

    def test_representations_agree(self):
        '''
        Ascending, descending and product series agree and match scipy.
        '''
        for alpha in range(4):
            for beta in range(4):
                for degree in (0, 1, 4, 9, 12):
                    p = JacobiParams(alpha, beta, degree)
                    for x in self.rng.uniform(-1.0, 1.0, 5):
                        x = float(x)
                        ascending = jacobi_eval(p, x)
                        scale = max(1.0, abs(ascending))
                        self.assertAlmostEqual(jacobi_eval(p, x, JacobiRepresentation.DESCENDING), ascending,
                                               delta=1e-12 * scale)
                        self.assertAlmostEqual(jacobi_eval(p, x, "product"), ascending, delta=1e-12 * scale)
                        self.assertAlmostEqual(float(special.eval_jacobi(degree, alpha, beta, x)), ascending,
                                               delta=1e-9 * scale)

    def test_invalid_parameters(self):
        with self.assertRaises(DomainError):
            JacobiParams(-1, 0, 2)
        with self.assertRaises(DomainError):
            JacobiParams(0, 0, -1)
        with self.assertRaises(DomainError):
            jacobi_eval(JacobiParams(0, 0, 2), 1.5)

    def test_p_eval_parity(self):
        e = EnsembleParams(5, 7)
        for k in range(e.m):
            for x in self.rng.uniform(0.0, 1.0, 10):
                self.assertAlmostEqual(p_eval(e, k, -float(x)), p_eval(e, k, float(x)), delta=1e-12)

    def test_vectorised_forms_match(self):
        e = EnsembleParams(6, 8)
        xs = np.linspace(0.0, 1.0, 17)
        values = p_values(e, xs)
        self.assertEqual(values.shape, (6, 17))
        for k in range(e.m):
            polynomial = p_polynomial(e, k)
            for i, x in enumerate(xs):
                expected = p_eval(e, k, float(x))
                self.assertAlmostEqual(values[k, i], expected, delta=1e-10 * max(1.0, abs(expected)))
                self.assertAlmostEqual(polynomial(x), expected, delta=1e-10 * max(1.0, abs(expected)))

    def test_degree_index_checked(self):
        with self.assertRaises(DomainError):
            p_eval(EnsembleParams(2, 2), 2, 0.5)


class TestNorms(unittest.TestCase):
    '''
    Unit tests for h_k and the orthogonality of p_k on [0, 1].
    '''
    def test_examples(self):
        self.assertEqual(norm_h_exact(0, 0), 1)
        self.assertEqual(norm_h_exact(0, 1), Fraction(1, 5))
        self.assertEqual(norm_h_exact(1, 0), Fraction(2, 3))
        self.assertAlmostEqual(norm_h(EnsembleParams(2, 3), 0), 2 / 3, places=15)

    def test_float_matches_exact(self):
        for m, n in ((3, 3), (4, 8), (10, 12)):
            e = EnsembleParams(m, n)
            for k in range(m):
                exact = float(norm_h_exact(e.a, k))
                self.assertAlmostEqual(norm_h(e, k), exact, delta=1e-12 * exact)

    def test_orthogonality(self):
        '''
        int_0^1 (1-x^2)^a p_k p_l dx = h_k delta_kl.
        '''
        for a in range(4):
            e = EnsembleParams(5, 5 + a)
            for k in range(e.m):
                for l in range(k, e.m):
                    result = integrate_1d(lambda x: (1 - x * x) ** a * p_values(e, x)[k] * p_values(e, x)[l])
                    expected = float(norm_h_exact(a, k)) if k == l else 0.0
                    self.assertAlmostEqual(result.value, expected, delta=1e-10, msg="a=%d k=%d l=%d" % (a, k, l))


class TestIntegralIdentities(unittest.TestCase):
    '''
    Unit tests for the closed-form Jacobi integrals.
    '''
    def test_integral_ac_examples(self):
        self.assertAlmostEqual(integral_ac(0, 0, 0, 0), 2.0, places=14)
        self.assertAlmostEqual(integral_ac(0, 0, 1, 0), 1.0, places=14)
        self.assertEqual(integral_ac(0, 0, 0, 1), 0.0)

    def test_integral_cd_examples(self):
        self.assertAlmostEqual(integral_cd(0, 0, 0, 0, 0), 2.0, places=14)
        self.assertAlmostEqual(integral_cd(0, 0, 1, 0, 0), 1.0, places=14)
        self.assertAlmostEqual(integral_cd(0, 0, 0.5, 0.5, 1), 0.0, places=14)

    def test_integral_cd_reduces_to_integral_ac(self):
        for a, b, c, k in ((1, 0, 1, 1), (2, 1, 3.5, 4), (0, 2, 0.25, 3), (3, 3, 2, 5)):
            self.assertAlmostEqual(integral_cd(a, b, c, a, k), integral_ac(a, b, c, k), delta=1e-12)

    def test_against_quadrature(self):
        cases = ((1, 2, 1.5, 0.5, 2), (0, 0, 2.0, 1.0, 3), (2, 1, 0.5, 2.5, 4))
        for a, b, c, d, k in cases:
            result = integrate_interval(
                lambda x: ((1 - x) / 2) ** d * ((1 + x) / 2) ** c * special.eval_jacobi(k, a, b, x), -1.0, 1.0)
            self.assertAlmostEqual(integral_cd(a, b, c, d, k), result.value, delta=1e-9)
        result = integrate_interval(lambda x: ((1 - x) / 2) ** 1 * ((1 + x) / 2) ** 2.5 * special.eval_jacobi(3, 1, 0, x),
                                    -1.0, 1.0)
        self.assertAlmostEqual(integral_ac(1, 0, 2.5, 3), result.value, delta=1e-9)

    def test_parameters_checked(self):
        with self.assertRaises(DomainError):
            integral_ac(-1, 0, 0, 0)
        with self.assertRaises(DomainError):
            integral_cd(0, 0, 0, -2, 1)


if __name__ == "__main__":
    unittest.main()
