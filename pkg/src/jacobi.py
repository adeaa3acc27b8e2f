import enum
import logging
import math
import numbers
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np
from numpy.polynomial import Polynomial
from scipy import special

from src.exceptions import DomainError
from src.special_functions import pochhammer


@dataclass(frozen=True)
class EnsembleParams:
    '''
    Subsystem dimensions of the fermionic Gaussian ensemble, m <= n.
    '''
    m: int
    n: int

    def __post_init__(self):
        for name in ("m", "n"):
            value = getattr(self, name)
            if isinstance(value, bool) or not isinstance(value, numbers.Integral):
                raise DomainError("%s must be an integer, got %r." % (name, value))
            object.__setattr__(self, name, int(value))
        if self.m < 1:
            raise DomainError("m must be at least 1, got %d." % self.m)
        if self.m > self.n:
            raise DomainError("Subsystem dimensions must satisfy m <= n, got m=%d, n=%d." % (self.m, self.n))

    @property
    def a(self):
        return self.n - self.m

    @property
    def modes(self):
        return self.m + self.n


@dataclass(frozen=True)
class JacobiParams:
    alpha: float
    beta: float
    degree: int

    def __post_init__(self):
        if not self.alpha > -1 or not self.beta > -1:
            raise DomainError("Jacobi parameters must exceed -1, got alpha=%r, beta=%r." % (self.alpha, self.beta))
        if isinstance(self.degree, bool) or not isinstance(self.degree, numbers.Integral) or self.degree < 0:
            raise DomainError("Jacobi degree must be a nonnegative integer, got %r." % (self.degree,))


class JacobiRepresentation(enum.Enum):
    ASCENDING = "ascending"
    DESCENDING = "descending"
    PRODUCT = "product"


def _as_fraction(value):
    if isinstance(value, Fraction):
        return value
    if isinstance(value, numbers.Integral):
        return Fraction(int(value))
    return Fraction(float(value))


@lru_cache(maxsize=1024)
def _series_coefficients(alpha, beta, k, rep):
    '''
    Exact coefficients of the finite Jacobi series.

    Ascending:  coefficients of u^i, u = (1+x)/2.
    Descending: coefficients of w^i, w = (1-x)/2.
    Product:    coefficients of w^i u^(k-i).
    '''
    coefficients = []
    if rep is JacobiRepresentation.ASCENDING:
        prefactor = (-1) ** k * pochhammer(beta + 1, k) / math.factorial(k)
        for i in range(k + 1):
            coefficients.append(prefactor * pochhammer(-k, i) * pochhammer(k + alpha + beta + 1, i)
                                / (pochhammer(beta + 1, i) * math.factorial(i)))
    elif rep is JacobiRepresentation.DESCENDING:
        for i in range(k + 1):
            coefficients.append(pochhammer(-k, i) * pochhammer(k + alpha + beta + 1, i)
                                * pochhammer(i + alpha + 1, k - i) / (math.factorial(k) * math.factorial(i)))
    else:
        for i in range(k + 1):
            coefficients.append((-1) ** i * pochhammer(alpha + i + 1, k - i) * pochhammer(k + beta - i + 1, i)
                                / (math.factorial(i) * math.factorial(k - i)))
    return tuple(coefficients)


def jacobi_coefficients(p, rep=JacobiRepresentation.ASCENDING):
    '''
    :param p: JacobiParams.
    :param rep: JacobiRepresentation selecting the series.
    :return: Tuple of exact Fraction coefficients of the selected series.
    '''
    return _series_coefficients(_as_fraction(p.alpha), _as_fraction(p.beta), int(p.degree), JacobiRepresentation(rep))


def jacobi_eval(p, x, rep=JacobiRepresentation.ASCENDING):
    '''
    Evaluate J_k^(alpha,beta)(x) by one of its three finite series.

    The series is summed exactly in rational arithmetic and rounded once, so the
    representations agree to rounding and no gamma ratio can overflow.

    :param p: JacobiParams.
    :param x: Point in [-1, 1].
    :param rep: JacobiRepresentation.
    :return: Float value.
    '''
    if not -1.0 <= x <= 1.0:
        raise DomainError("Jacobi polynomials are evaluated on [-1, 1], got x=%r." % (x,))
    rep = JacobiRepresentation(rep)
    coefficients = jacobi_coefficients(p, rep)
    point = _as_fraction(x)
    u = (1 + point) / 2
    w = (1 - point) / 2
    k = int(p.degree)
    if rep is JacobiRepresentation.ASCENDING:
        total = sum(c * u ** i for i, c in enumerate(coefficients))
    elif rep is JacobiRepresentation.DESCENDING:
        total = sum(c * w ** i for i, c in enumerate(coefficients))
    else:
        total = sum(c * w ** i * u ** (k - i) for i, c in enumerate(coefficients))
    return float(total)


def _check_degree_index(e, k):
    if isinstance(k, bool) or not isinstance(k, numbers.Integral) or not 0 <= k <= e.m - 1:
        raise DomainError("Degree index must satisfy 0 <= k <= m-1 = %d, got %r." % (e.m - 1, k))


def p_eval(e, k, x, rep=JacobiRepresentation.ASCENDING):
    '''
    Even ensemble polynomial p_k(x) = J_{2k}^(a,a)(x).

    :param e: EnsembleParams.
    :param k: Degree index, 0 <= k <= m-1.
    :param x: Point in [-1, 1].
    :param rep: JacobiRepresentation, ascending by default.
    :return: Float value.
    '''
    _check_degree_index(e, k)
    return jacobi_eval(JacobiParams(e.a, e.a, 2 * k), x, rep)


def jacobi_sequence(alpha, beta, degree, x):
    '''
    All Jacobi polynomials J_0..J_degree at the points x via the three-term recurrence.

    :param alpha: Parameter > -1.
    :param beta: Parameter > -1.
    :param degree: Highest degree.
    :param x: Array of points.
    :return: Array of shape (degree + 1,) + x.shape.
    '''
    x = np.asarray(x, dtype=float)
    values = np.empty((degree + 1,) + x.shape)
    values[0] = 1.0
    if degree >= 1:
        values[1] = (alpha + 1) + (alpha + beta + 2) * (x - 1) / 2
    for n in range(2, degree + 1):
        s = 2 * n + alpha + beta
        a_n = 2 * n * (n + alpha + beta) * (s - 2)
        b_n = (s - 1) * (s * (s - 2) * x + alpha ** 2 - beta ** 2)
        c_n = 2 * (n + alpha - 1) * (n + beta - 1) * s
        values[n] = (b_n * values[n - 1] - c_n * values[n - 2]) / a_n
    return values


def p_values(e, x):
    '''
    Vectorised p_0..p_{m-1} at an array of points.

    :param e: EnsembleParams.
    :param x: Array of points in [-1, 1].
    :return: Array of shape (m,) + x.shape.
    '''
    sequence = jacobi_sequence(e.a, e.a, 2 * (e.m - 1), x)
    return sequence[0::2]


def p_polynomial(e, k):
    '''
    p_k as a numpy Polynomial in x, expanded from the exact ascending coefficients.

    :param e: EnsembleParams.
    :param k: Degree index.
    :return: numpy.polynomial.Polynomial.
    '''
    _check_degree_index(e, k)
    coefficients = jacobi_coefficients(JacobiParams(e.a, e.a, 2 * k))
    power = [Fraction(0)] * (2 * k + 1)
    for i, c in enumerate(coefficients):
        scale = c / 2 ** i
        for j in range(i + 1):
            power[j] += scale * math.comb(i, j)
    return Polynomial([float(c) for c in power])


def norm_h_exact(a, k):
    '''
    :param a: Nonnegative integer dimension difference.
    :param k: Degree index.
    :return: h_k as an exact Fraction.
    '''
    return Fraction(4 ** a * math.factorial(2 * k + a) ** 2,
                    (4 * k + 2 * a + 1) * math.factorial(2 * k + 2 * a) * math.factorial(2 * k))


def norm_h(e, k):
    '''
    Squared norm h_k of p_k under the weight (1-x^2)^a on [0, 1], computed in log-space.

    :param e: EnsembleParams.
    :param k: Degree index.
    :return: Float h_k.
    '''
    _check_degree_index(e, k)
    a = e.a
    log_h = (2 * a * math.log(2.0) + 2 * math.lgamma(2 * k + a + 1) - math.log(4 * k + 2 * a + 1)
             - math.lgamma(2 * k + 2 * a + 1) - math.lgamma(2 * k + 1))
    return math.exp(log_h)


def _check_above_minus_one(**parameters):
    for name, value in parameters.items():
        if not value > -1:
            raise DomainError("Parameter %s must exceed -1, got %r." % (name, value))


def integral_ac(a, b, c, k):
    '''
    Closed form of the integral over [-1, 1] of ((1-x)/2)^a ((1+x)/2)^c J_k^(a,b)(x).

    The ratio Gamma(c-b+1)/Gamma(c-k-b+1) is taken as the rising factorial (c-b-k+1)_k,
    which vanishes exactly when the denominator gamma sits on a pole.

    :return: Float value.
    '''
    _check_above_minus_one(a=a, b=b, c=c)
    logging.getLogger("fermi_rmt").debug("Evaluating integral_ac(a=%s, b=%s, c=%s, k=%s).", a, b, c, k)
    log_ratio = (special.gammaln(c + 1) + special.gammaln(k + a + 1)
                 - special.gammaln(k + 1) - special.gammaln(k + a + c + 2))
    return float(2.0 * math.exp(log_ratio) * pochhammer(float(c - b - k + 1), k))


def integral_cd(a, b, c, d, k):
    '''
    Finite-sum form of the integral over [-1, 1] of ((1-x)/2)^d ((1+x)/2)^c J_k^(a,b)(x).

    :return: Float value.
    '''
    _check_above_minus_one(a=a, b=b, c=c, d=d)
    logging.getLogger("fermi_rmt").debug("Evaluating integral_cd(a=%s, b=%s, c=%s, d=%s, k=%s).", a, b, c, d, k)
    log_denominator = special.gammaln(c + d + k + 2)
    terms = []
    for i in range(k + 1):
        log_term = (special.gammaln(c + i + 1) + special.gammaln(d - i + k + 1)
                    - special.gammaln(i + 1) - special.gammaln(k - i + 1) - log_denominator)
        factor = pochhammer(float(d - a - i + 1), i) * pochhammer(float(c - b + i - k + 1), k - i)
        terms.append((-1) ** i * factor * math.exp(log_term))
    return 2.0 * math.fsum(terms)
