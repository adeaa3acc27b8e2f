import logging
import math
import numbers
from fractions import Fraction

from src.exceptions import DomainError, UnsupportedDifferenceError
from src.special_functions import (
    ONE,
    PI2,
    PI2_TERM,
    ClosedFormValue,
    digamma_term,
    trigamma_term,
)

SUPPORTED_CAPACITY_DIFFERENCES = (0, 1, 2, 3)


def mean_entropy(e):
    '''
    Average von Neumann entropy
    (m+n-1/2) psi0(2m+2n) + (1/4-m) psi0(m+n) + (1/2-n) psi0(2n) - psi0(n)/4 - m.

    :param e: EnsembleParams.
    :return: ClosedFormValue.
    '''
    m, n = e.m, e.n
    return ClosedFormValue([
        (digamma_term(2 * m + 2 * n), Fraction(2 * (m + n) - 1, 2)),
        (digamma_term(m + n), Fraction(1, 4) - m),
        (digamma_term(2 * n), Fraction(1, 2) - n),
        (digamma_term(n), Fraction(-1, 4)),
        (ONE, -m),
    ])


def variance_entropy_a0(n):
    '''
    Exact variance of the entropy for equal subsystem dimensions m = n.

    :param n: Positive integer.
    :return: ClosedFormValue.
    '''
    if isinstance(n, bool) or not isinstance(n, numbers.Integral) or n < 1:
        raise DomainError("n must be a positive integer, got %r." % (n,))
    return ClosedFormValue([
        (trigamma_term(4 * n), Fraction(1, 2) - 2 * n),
        (trigamma_term(2 * n), Fraction(56 * n * n - 36 * n + 5, 8 * (4 * n - 1))),
        (trigamma_term(n), Fraction(1, 8)),
        (digamma_term(4 * n), Fraction(-1, 2)),
        (digamma_term(2 * n), Fraction(1, 2)),
    ])


def variance_entropy_conjecture(e):
    '''
    Conjectured variance of the entropy for arbitrary m <= n. Reduces term by term
    to variance_entropy_a0 when m = n because the psi1(m+n) and psi1(2n) keys merge.

    :param e: EnsembleParams.
    :return: ClosedFormValue.
    '''
    m, n = e.m, e.n
    return ClosedFormValue([
        (trigamma_term(2 * m + 2 * n), Fraction(1, 2) - m - n),
        (trigamma_term(2 * n), Fraction(2 * n - 1, 2)),
        (trigamma_term(m + n), Fraction(m * (2 * m + n - 1), 2 * m + 2 * n - 1) - Fraction(1, 8)),
        (trigamma_term(n), Fraction(1, 8)),
        (digamma_term(2 * m + 2 * n), Fraction(-1, 2)),
        (digamma_term(2 * n), Fraction(1, 2)),
    ])


def variance_entropy(e):
    '''
    Variance of the entropy labelled by provenance.

    :param e: EnsembleParams.
    :return: Tuple (ClosedFormValue, status) with status "proven" when m = n, else "conjecture".
    '''
    if e.a == 0:
        return variance_entropy_a0(e.n), "proven"
    logging.getLogger("fermi_rmt").info("Variance for m=%d, n=%d uses the conjectured formula.", e.m, e.n)
    return variance_entropy_conjecture(e), "conjecture"


def variance_entropy_asymptotic(f):
    '''
    Large-dimension limit (f + f^2 + ln(1-f))/2 of the variance at fixed f = m/(m+n).

    At f = 1 the limit diverges; the function logs a warning and returns -inf so
    callers can detect it.

    :param f: Ratio in (0, 1].
    :return: Float limit.
    '''
    if not 0.0 < f <= 1.0:
        raise DomainError("Asymptotic ratio f must lie in (0, 1], got %r." % (f,))
    if f == 1.0:
        logging.getLogger("fermi_rmt").warning("Asymptotic variance diverges at f = 1.")
        return float("-inf")
    return 0.5 * (f + f * f + math.log1p(-f))


def _capacity_a0(n):
    x0 = Fraction(-(2 * n - 1) ** 2, 2 * (4 * n - 1))
    x1 = Fraction(-1, 8)
    pi2 = Fraction(8 * n * n - 4 * n + 1, 16 * (4 * n - 1))
    rational = Fraction(1 - 2 * n, 2)
    return x0, x1, None, pi2, rational


def _capacity_a1(n):
    x0 = Fraction(-(4 * n * n - 8 * n + 3), 2 * (4 * n - 3))
    x1 = Fraction(-1, 8)
    pi2 = Fraction(8 * n * n - 12 * n + 3, 16 * (4 * n - 3))
    rational = -Fraction(16 * n ** 3 - 36 * n * n + 28 * n - 9, 2 * (2 * n - 1) * (4 * n - 3))
    return x0, x1, None, pi2, rational


def _capacity_a2(n):
    x0 = Fraction(-4 * n * n + 12 * n - 5, 8 * n - 10)
    x1 = Fraction(-1, 8)
    x2 = Fraction(1, 2 * n * n - 5 * n + 3)
    pi2 = Fraction(8 * n * n - 20 * n + 5, 64 * n - 80)
    rational = -Fraction(32 * n ** 4 - 152 * n ** 3 + 268 * n * n - 210 * n + 75,
                         2 * (2 * n - 3) * (2 * n - 1) * (4 * n - 5))
    return x0, x1, x2, pi2, rational


def _capacity_a3(n):
    x0 = Fraction(-(2 * n - 7) * (2 * n - 1), 2 * (4 * n - 7))
    x1 = Fraction(-1, 8)
    x2 = Fraction(2 * (4 * n * n - 14 * n + 11), (n - 2) * (n - 1) * (2 * n - 5) * (2 * n - 3))
    pi2 = Fraction(8 * n * n - 28 * n + 7, 16 * (4 * n - 7))
    numerator = (64 * n ** 7 - 720 * n ** 6 + 3408 * n ** 5 - 8736 * n ** 4 + 13176 * n ** 3
                 - 11967 * n * n + 6258 * n - 1470)
    rational = -Fraction(numerator, 2 * (n - 2) * (n - 1) * (2 * n - 5) * (2 * n - 3) * (2 * n - 1) * (4 * n - 7))
    return x0, x1, x2, pi2, rational


_CAPACITY_TABLE = {0: _capacity_a0, 1: _capacity_a1, 2: _capacity_a2, 3: _capacity_a3}


def capacity_coefficients(a, n):
    '''
    Table coefficients of the mean capacity at fixed a.

    :return: Tuple (psi1(2n) coefficient, psi1(n) coefficient, (psi0(2n) - psi0(1)) coefficient or None,
             pi^2 coefficient, rational constant), all exact Fractions.
    '''
    if a not in _CAPACITY_TABLE:
        raise UnsupportedDifferenceError(
            "Closed-form mean capacity exists only for a in %s, got a=%r; use the quadrature or sums route."
            % (SUPPORTED_CAPACITY_DIFFERENCES, a))
    if isinstance(n, bool) or not isinstance(n, numbers.Integral) or n < a + 1:
        raise DomainError("n must be an integer >= a + 1 = %d, got %r." % (a + 1, n))
    return _CAPACITY_TABLE[a](n)


def mean_capacity(a, n):
    '''
    Average entanglement capacity for a fixed dimension difference a in {0, 1, 2, 3}.

    :param a: Dimension difference n - m.
    :param n: Larger subsystem dimension, n >= a + 1.
    :return: ClosedFormValue.
    '''
    x0, x1, x2, pi2, rational = capacity_coefficients(a, n)
    terms = [
        (trigamma_term(2 * n), x0),
        (trigamma_term(n), x1),
        (PI2_TERM, pi2),
        (ONE, rational),
    ]
    if x2 is not None:
        terms.append((digamma_term(2 * n), x2))
        terms.append((digamma_term(1), -x2))
    return ClosedFormValue(terms)


def mean_capacity_for(e):
    '''
    :param e: EnsembleParams.
    :return: mean_capacity(e.a, e.n).
    '''
    return mean_capacity(e.a, e.n)


def capacity_slope():
    '''
    Slope (pi^2 - 8)/8 of the linear growth of the a = 0 mean capacity.
    '''
    return (PI2 - 8.0) / 8.0
