import enum
import logging
import math
import numbers
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from scipy import special

from src.exceptions import DomainError
from src.jacobi import JacobiParams, jacobi_coefficients, norm_h_exact
from src.special_functions import (
    LN2,
    ONE,
    PI2_TERM,
    ClosedFormValue,
    digamma_int,
    evaluate,
    harmonic_number,
    pochhammer,
    polygamma_shifted,
    reciprocal_gamma_int,
    trigamma_int,
)


@dataclass(frozen=True)
class SumEvalReport:
    '''
    Result of one summation route.

    value is the float rounding of exact, a rational plus rational multiple of pi^2.
    '''
    value: float
    terms_evaluated: int
    indeterminacies_resolved: int
    exact: ClosedFormValue

    def __post_init__(self):
        if not math.isfinite(self.value):
            raise DomainError("Summation produced a non-finite value.")
        if self.terms_evaluated < 0 or self.indeterminacies_resolved < 0:
            raise DomainError("Summation counters must be nonnegative.")


@dataclass(frozen=True)
class AssembledStatistics:
    i_a: SumEvalReport
    i_b: SumEvalReport
    i_c: SumEvalReport
    variance: ClosedFormValue
    capacity: ClosedFormValue

    def values(self):
        '''
        :return: Dict of the five statistics as floats.
        '''
        return {
            "I_A": self.i_a.value,
            "I_B": self.i_b.value,
            "I_C": self.i_c.value,
            "V[S]": evaluate(self.variance),
            "E[C]": evaluate(self.capacity),
        }


class MomentDerivative(enum.Enum):
    NONE = "none"
    C = "c"
    CC = "cc"
    CD = "cd"


class SemiClosedKind(enum.Enum):
    IA = "IA"
    IB = "IB"
    IC = "IC"
    CAPACITY = "IC-IA"


def _psi0(l):
    # psi0(l) + gamma; only used in combinations whose psi0 coefficients sum to zero.
    return harmonic_number(l - 1)


def _psi1(l):
    # psi1(l) - pi^2/6; only used in combinations whose psi1 coefficients sum to zero.
    return -harmonic_number(l - 1, 2)


def _report(rational, pi2, terms, indeterminacies):
    exact = ClosedFormValue({ONE: rational, PI2_TERM: pi2})
    return SumEvalReport(value=evaluate(exact), terms_evaluated=terms,
                         indeterminacies_resolved=indeterminacies, exact=exact)


def _from_exact(exact, terms, indeterminacies):
    return SumEvalReport(value=evaluate(exact), terms_evaluated=terms,
                         indeterminacies_resolved=indeterminacies, exact=exact)


def _check_integer(name, value, minimum):
    if isinstance(value, bool) or not isinstance(value, numbers.Integral) or value < minimum:
        raise DomainError("%s must be an integer >= %d, got %r." % (name, minimum, value))
    return int(value)


def sum_A1(e):
    '''
    A_1 = sum_k (1/h_k) int_{-1}^{1} u^2 ln^2 u (1-x^2)^a p_k(x)^2 dx by its finite double sum.

    The window j = 2k-2..2k carries the factor (j+1)_2, which removes the entries with
    j < 0; the tail runs over j = 0..2k-3 and is empty for k <= 1.

    :param e: EnsembleParams.
    :return: SumEvalReport, exact rational.
    '''
    logger = logging.getLogger("fermi_rmt")
    logger.info("Starting A_1 summation for m=%d, n=%d.", e.m, e.n)
    a = e.a
    total = Fraction(0)
    terms = 0
    removed = 0
    for k in range(e.m):
        window = Fraction(0)
        for j in range(2 * k - 2, 2 * k + 1):
            if j < 0:
                removed += 1
                continue
            coefficient = ((-1) ** j * pochhammer(j + 1, 2) * pochhammer(a + j + 1, 2)
                           * reciprocal_gamma_int(2 * k - j + 1) * reciprocal_gamma_int(j - 2 * k + 3)
                           / pochhammer(2 * a + j + 2 * k + 1, 3))
            digammas = _psi0(a + j + 3) - _psi0(2 * a + j + 2 * k + 4) - _psi0(j - 2 * k + 3) + _psi0(j + 3)
            trigammas = (-_psi1(2 * a + j + 2 * k + 4) + _psi1(a + j + 3)
                         - _psi1(j - 2 * k + 3) + _psi1(j + 3))
            window += coefficient * (digammas * digammas + trigammas)
            terms += 1
        tail = Fraction(0)
        for j in range(2 * k - 2):
            coefficient = (2 * pochhammer(j + 1, 2) * pochhammer(a + j + 1, 2)
                           / (pochhammer(2 * k - j - 2, 3) * pochhammer(2 * a + j + 2 * k + 1, 3)))
            tail += coefficient * (_psi0(2 * a + j + 2 * k + 4) - _psi0(a + j + 3)
                                   + _psi0(2 * k - j - 2) - _psi0(j + 3))
            terms += 1
        total += 2 * (2 * a + 4 * k + 1) * (window + tail)
    report = _report(total, Fraction(0), terms, removed)
    logger.info("A_1 summation completed: value=%.17g, terms=%d.", report.value, terms)
    return report


@lru_cache(maxsize=256)
def _product_coefficients(a, k, l):
    left = jacobi_coefficients(JacobiParams(a, a, 2 * k))
    right = jacobi_coefficients(JacobiParams(a, a, 2 * l))
    products = [Fraction(0)] * (len(left) + len(right) - 1)
    for i, x in enumerate(left):
        for j, y in enumerate(right):
            products[i + j] += x * y
    return tuple(products)


def _beta_int(x, y):
    return Fraction(math.factorial(x - 1) * math.factorial(y - 1), math.factorial(x + y - 1))


def _moment(a, k, l, c, d, derivative):
    # int_{-1}^{1} u^c (1-u)^d (1-x^2)^a p_k p_l dx and its c/d derivatives, as (rational, pi^2 part).
    rational = Fraction(0)
    pi2 = Fraction(0)
    y = d + a + 1
    for s, gamma in enumerate(_product_coefficients(a, k, l)):
        if gamma == 0:
            continue
        x = c + a + s + 1
        beta = _beta_int(x, y)
        if derivative is MomentDerivative.NONE:
            rational += gamma * beta
            continue
        dx = harmonic_number(x - 1) - harmonic_number(x + y - 1)
        if derivative is MomentDerivative.C:
            rational += gamma * beta * dx
        elif derivative is MomentDerivative.CC:
            rational += gamma * beta * (dx * dx - harmonic_number(x - 1, 2) + harmonic_number(x + y - 1, 2))
        else:
            dy = harmonic_number(y - 1) - harmonic_number(x + y - 1)
            rational += gamma * beta * (dx * dy + harmonic_number(x + y - 1, 2))
            pi2 -= gamma * beta / 6
    scale = 2 * 4 ** a
    return rational * scale, pi2 * scale


def moment_integral(a, k, l, c, d, derivative=MomentDerivative.NONE):
    '''
    Exact Beta-moment evaluation of int_{-1}^{1} u^c (1-u)^d (1-x^2)^a p_k(x) p_l(x) dx,
    u = (1+x)/2, or of its derivative in c and/or d at integer (c, d).

    p_k p_l expands in powers of u with exact coefficients; each power integrates to a
    Beta function, and the derivatives of B(X, Y) are polygamma differences at integers.

    :param a: Nonnegative integer n - m.
    :param k: Degree index of the first polynomial.
    :param l: Degree index of the second polynomial.
    :param c: Nonnegative integer exponent of u.
    :param d: Nonnegative integer exponent of 1 - u.
    :param derivative: MomentDerivative.
    :return: ClosedFormValue over {1, pi^2}; not divided by any norm.
    '''
    a = _check_integer("a", a, 0)
    k = _check_integer("k", k, 0)
    l = _check_integer("l", l, 0)
    c = _check_integer("c", c, 0)
    d = _check_integer("d", d, 0)
    rational, pi2 = _moment(a, k, l, c, d, MomentDerivative(derivative))
    return ClosedFormValue({ONE: rational, PI2_TERM: pi2})


def _gamma_int(l):
    return math.factorial(l - 1)


def sum_A2(e):
    '''
    A_2 = sum_k (1/h_k) int_{-1}^{1} u (1-u) ln u ln(1-u) (1-x^2)^a p_k(x)^2 dx by its
    finite triple-sum representation.

    Every mode k carries three single sums over i or j, each a product of two digamma
    differences minus psi1(2a+4k+4), and one double sum over j and i. The entries with
    1/Gamma(j) at j = 0 and 1/Gamma(2k-j) at j = 2k vanish; pole_term_limits checks
    that their eps -> 0 limits do too.

    :param e: EnsembleParams.
    :return: SumEvalReport over {1, pi^2}.
    '''
    logger = logging.getLogger("fermi_rmt")
    logger.info("Starting A_2 summation for m=%d, n=%d.", e.m, e.n)
    a = e.a
    rational = Fraction(0)
    pi2 = Fraction(0)
    terms = 0
    removed = 0
    for k in range(e.m):
        top = 2 * a + 4 * k + 4
        prefactor = Fraction((2 * a + 4 * k + 1) * _gamma_int(2 * k + 1) * _gamma_int(2 * a + 2 * k + 1),
                             _gamma_int(top))
        outer = _gamma_int(a + 2 * k + 1) * _gamma_int(a + 2 * k + 3)
        trigamma = _psi1(top)
        block = Fraction(0)
        weight = Fraction(0)
        for i in range(2 * k + 1):
            coefficient = (2 * (i + 1) * (2 * k - i + 1) * _gamma_int(a + 2 * k + 2) ** 2
                           * reciprocal_gamma_int(i + 1) * reciprocal_gamma_int(a + i + 1)
                           * reciprocal_gamma_int(2 * k - i + 1) * reciprocal_gamma_int(a + 2 * k - i + 1))
            first = _psi0(a + 2 * k + 2) - _psi0(top) - _psi0(2) + _psi0(2 * k - i + 2)
            second = _psi0(a + 2 * k + 2) - _psi0(top) + _psi0(i + 2) - _psi0(2)
            block += coefficient * (first * second - trigamma)
            weight += coefficient
            terms += 1
        for j in range(2 * k + 1):
            coefficient = ((j + 1) * outer * reciprocal_gamma_int(j) * reciprocal_gamma_int(a + j + 1)
                           * reciprocal_gamma_int(2 * k - j + 1) * reciprocal_gamma_int(a - j + 2 * k + 1))
            if coefficient == 0:
                removed += 1
                continue
            first = _psi0(a + 2 * k + 1) - _psi0(top) + _psi0(2 * k - j + 2) - _psi0(1)
            second = _psi0(a + 2 * k + 3) - _psi0(top) + _psi0(j + 2) - _psi0(3)
            block -= coefficient * (first * second - trigamma)
            weight -= coefficient
            terms += 1
        for j in range(2 * k + 1):
            coefficient = ((2 * k - j + 1) * outer * reciprocal_gamma_int(j + 1) * reciprocal_gamma_int(a + j + 1)
                           * reciprocal_gamma_int(2 * k - j) * reciprocal_gamma_int(2 * k - j + a + 1))
            if coefficient == 0:
                removed += 1
                continue
            first = _psi0(a + 2 * k + 3) - _psi0(top) + _psi0(2 * k - j + 2) - _psi0(3)
            second = _psi0(a + 2 * k + 1) - _psi0(top) + _psi0(j + 2) - _psi0(1)
            block -= coefficient * (first * second - trigamma)
            weight -= coefficient
            terms += 1
        for j in range(2 * k - 1):
            for i in range(2 * k - j - 1):
                coefficient = (4 * (2 * k - i - j - 1) * (i + j + 3)
                               * _gamma_int(a - j + 2 * k) * _gamma_int(a + j + 2 * k + 4)
                               * reciprocal_gamma_int(i + 1) * reciprocal_gamma_int(2 * k - i + 1)
                               * reciprocal_gamma_int(a + i + j + 3) * reciprocal_gamma_int(a - i - j + 2 * k - 1)
                               / pochhammer(j + 1, 3))
                block += coefficient * (_psi0(a + j + 2 * k + 4) - _psi0(top) + _psi0(i + j + 4) - _psi0(j + 4))
                terms += 1
        # psi1(top) = pi^2/6 + trigamma
        rational += prefactor * block
        pi2 -= prefactor * weight / 6
    report = _report(rational, pi2, terms, removed)
    logger.info("A_2 summation completed: value=%.17g, terms=%d.", report.value, terms)
    return report


PERTURBATION_EPS = 1e-6


def _richardson(f, eps, levels=3):
    # f(h) = f(0) + c_1 h + c_2 h^2 + ...; each level cancels the next power of h.
    table = [f(eps / 2 ** level) for level in range(levels)]
    for order in range(1, levels):
        factor = 2 ** order
        table = [(factor * table[i + 1] - table[i]) / (factor - 1) for i in range(len(table) - 1)]
    return table[0]


def _psi1_float(x):
    return float(special.polygamma(1, x))


def _a1_pole_terms(a, h, k=0):
    # The window entries j = 2k-2, 2k-1 that fall below zero only at k = 0; j shifted to j + h.
    total = []
    for j in (2 * k - 2, 2 * k - 1):
        x = j + h
        coefficient = ((-1) ** j * special.poch(x + 1, 2) * special.poch(a + x + 1, 2)
                       * special.rgamma(2 * k - x + 1) * special.rgamma(x - 2 * k + 3)
                       / special.poch(2 * a + x + 2 * k + 1, 3))
        digammas = (special.psi(a + x + 3) - special.psi(2 * a + x + 2 * k + 4)
                    - special.psi(x - 2 * k + 3) + special.psi(x + 3))
        trigammas = (-_psi1_float(2 * a + x + 2 * k + 4) + _psi1_float(a + x + 3)
                     - _psi1_float(x - 2 * k + 3) + _psi1_float(x + 3))
        total.append(2 * (2 * a + 4 * k + 1) * float(coefficient) * (float(digammas) ** 2 + trigammas))
    return math.fsum(total)


def _a2_pole_terms(a, k, h):
    # The j = 0 entry with 1/Gamma(j) and the j = 2k entry with 1/Gamma(2k - j), j shifted by h.
    psi = special.psi
    rgamma = special.rgamma
    top = 2 * a + 4 * k + 4
    prefactor = float(Fraction((2 * a + 4 * k + 1) * _gamma_int(2 * k + 1) * _gamma_int(2 * a + 2 * k + 1),
                               _gamma_int(top)))
    outer = float(_gamma_int(a + 2 * k + 1) * _gamma_int(a + 2 * k + 3))
    trigamma = _psi1_float(top)
    x = h
    low = ((x + 1) * outer * rgamma(x) * rgamma(a + x + 1) * rgamma(2 * k - x + 1) * rgamma(a - x + 2 * k + 1)
           * ((psi(a + 2 * k + 1) - psi(top) + psi(2 * k - x + 2) - psi(1))
              * (psi(a + 2 * k + 3) - psi(top) + psi(x + 2) - psi(3)) - trigamma))
    x = 2 * k + h
    high = ((2 * k - x + 1) * outer * rgamma(x + 1) * rgamma(a + x + 1) * rgamma(2 * k - x) * rgamma(2 * k - x + a + 1)
            * ((psi(a + 2 * k + 3) - psi(top) + psi(2 * k - x + 2) - psi(3))
               * (psi(a + 2 * k + 1) - psi(top) + psi(x + 2) - psi(1)) - trigamma))
    return -prefactor * (float(low) + float(high))


def pole_term_limits(e, eps=PERTURBATION_EPS):
    '''
    Limits of the entries that sum_A1 and sum_A2 set to zero at Gamma poles, found by
    shifting the summation index by eps, eps/2 and eps/4 inside every Gamma, digamma and
    Pochhammer argument and Richardson-extrapolating to eps -> 0.

    :param e: EnsembleParams.
    :param eps: Largest shift.
    :return: Dict "A_1", "A_2" of floats; both vanish when the pole convention is sound.
    '''
    if not 0.0 < eps < 1e-2:
        raise DomainError("Perturbation eps must lie in (0, 1e-2), got %r." % (eps,))
    a1 = _richardson(lambda h: _a1_pole_terms(e.a, h), eps)
    a2 = _richardson(lambda h: math.fsum(_a2_pole_terms(e.a, k, h) for k in range(e.m)), eps)
    logging.getLogger("fermi_rmt").debug("Pole limits at m=%d, n=%d: A_1=%.3g, A_2=%.3g.", e.m, e.n, a1, a2)
    return {"A_1": a1, "A_2": a2}


def perturbed_sums(e, eps=PERTURBATION_EPS):
    '''
    :return: Dict "A_1", "A_2" evaluated with the pole entries taken as eps -> 0 limits.
    '''
    limits = pole_term_limits(e, eps)
    return {"A_1": sum_A1(e).value + limits["A_1"], "A_2": sum_A2(e).value + limits["A_2"]}


def mean_bracket(a, k):
    '''
    (1/h_k) int_{-1}^{1} u ln u (1-x^2)^a p_k(x)^2 dx in closed form,
    1 + psi0(2k+a) + psi0(2k+2a) - 2 psi0(4k+2a)
      + (1/(k+a) - a/(2k+a) - a/(2k+a+1) - 2/(4k+2a+1))/2.

    At a = k = 0 the digamma poles are replaced by the direct value
    int_{-1}^{1} u ln u dx = -1/2.

    :param a: Nonnegative integer.
    :param k: Nonnegative integer.
    :return: Fraction.
    '''
    a = _check_integer("a", a, 0)
    k = _check_integer("k", k, 0)
    if a == 0 and k == 0:
        return Fraction(-1, 2)
    rational = (Fraction(1, k + a) - Fraction(a, 2 * k + a) - Fraction(a, 2 * k + a + 1)
                - Fraction(2, 4 * k + 2 * a + 1)) / 2
    return 1 + _psi0(2 * k + a) + _psi0(2 * k + 2 * a) - 2 * _psi0(4 * k + 2 * a) + rational


def mean_entropy_sum(e):
    '''
    E[S] = -sum_k mean_bracket(a, k).

    :param e: EnsembleParams.
    :return: SumEvalReport, exact rational.
    '''
    total = -sum((mean_bracket(e.a, k) for k in range(e.m)), Fraction(0))
    return _report(total, Fraction(0), e.m, 1 if e.a == 0 else 0)


def sum_B1(e):
    '''
    B_1 = sum_k mean_bracket(a, k)^2.

    :param e: EnsembleParams.
    :return: SumEvalReport, exact rational.
    '''
    logger = logging.getLogger("fermi_rmt")
    logger.info("Starting B_1 summation for m=%d, n=%d.", e.m, e.n)
    total = Fraction(0)
    for k in range(e.m):
        bracket = mean_bracket(e.a, k)
        total += bracket * bracket
    report = _report(total, Fraction(0), e.m, 1 if e.a == 0 else 0)
    logger.info("B_1 summation completed: value=%.17g.", report.value)
    return report


def sum_B2(e):
    '''
    B_2, the off-diagonal part of I_B, as a rational double sum over k and the
    degree gap j = l - k.

    :param e: EnsembleParams.
    :return: SumEvalReport, exact rational; zero when m = 1.
    '''
    logger = logging.getLogger("fermi_rmt")
    logger.info("Starting B_2 summation for m=%d, n=%d.", e.m, e.n)
    a = e.a
    total = Fraction(0)
    terms = 0
    for k in range(e.m):
        for j in range(1, e.m - k):
            gammas = Fraction(math.factorial(2 * a + 2 * k) * math.factorial(2 * j + 2 * k),
                              2 * math.factorial(2 * k) * math.factorial(2 * a + 2 * j + 2 * k))
            factor = Fraction((2 * a + 4 * k + 1) * (2 * a + 4 * j + 4 * k + 1),
                              j * j * (2 * j - 1) ** 2 * (2 * j + 1) ** 2)
            numerator = (2 * a * a * j + a * a + 2 * a * j * j + 4 * a * j * k + 3 * a * j + 4 * a * k + a
                         + 2 * j * j + 4 * j * k + j + 4 * k * k + 2 * k)
            denominator = (a + j + 2 * k) * (a + j + 2 * k + 1) * (2 * a + 2 * j + 4 * k + 1)
            total += gammas * factor * Fraction(numerator, denominator) ** 2
            terms += 1
    report = _report(total, Fraction(0), terms, 0)
    logger.info("B_2 summation completed: value=%.17g, terms=%d.", report.value, terms)
    return report


def sum_IC(e):
    '''
    I_C = sum_k (1/h_k) int_{-1}^{1} u ln^2 u (1-x^2)^a p_k(x)^2 dx.

    The k = 0 term is (psi0(a+2) - psi0(2a+3))^2 + psi1(a+2) - psi1(2a+3); every k >= 1
    contributes a two-entry window j = 2k-1, 2k and a tail j = 0..2k-2.

    :param e: EnsembleParams.
    :return: SumEvalReport, exact rational.
    '''
    logger = logging.getLogger("fermi_rmt")
    logger.info("Starting I_C summation for m=%d, n=%d.", e.m, e.n)
    a = e.a
    leading = _psi0(a + 2) - _psi0(2 * a + 3)
    total = leading * leading + _psi1(a + 2) - _psi1(2 * a + 3)
    terms = 1
    for k in range(1, e.m):
        window = Fraction(0)
        for j in range(2 * k - 1, 2 * k + 1):
            coefficient = Fraction((-1) ** j * (j + 1) * (a + j + 1)) / pochhammer(2 * a + j + 2 * k + 1, 2)
            digammas = _psi0(j + 2) - _psi0(2 * a + j + 2 * k + 3) + _psi0(a + j + 2) - _psi0(j - 2 * k + 2)
            trigammas = _psi1(a + j + 2) - _psi1(2 * a + j + 2 * k + 3) + _psi1(j + 2) - _psi1(j - 2 * k + 2)
            window += coefficient * (digammas * digammas + trigammas)
            terms += 1
        tail = Fraction(0)
        for j in range(2 * k - 1):
            coefficient = (Fraction(2 * (j + 1) * (a + j + 1))
                           / (pochhammer(2 * k - j - 1, 2) * pochhammer(2 * a + j + 2 * k + 1, 2)))
            tail += coefficient * (_psi0(a + j + 2) - _psi0(2 * a + j + 2 * k + 3)
                                   - _psi0(2 * k - j - 1) + _psi0(j + 2))
            terms += 1
        total += 2 * (2 * a + 4 * k + 1) * (window + tail)
    report = _report(total, Fraction(0), terms, 0)
    logger.info("I_C summation completed: value=%.17g, terms=%d.", report.value, terms)
    return report


def assemble(e):
    '''
    I_A = A_1 + A_2, I_B = B_1 + B_2, V[S] = I_A - I_B and E[C] = I_C - I_A, all exact.

    :param e: EnsembleParams.
    :return: AssembledStatistics.
    '''
    logger = logging.getLogger("fermi_rmt")
    logger.info("Starting mode-sum assembly for m=%d, n=%d.", e.m, e.n)
    a1, a2 = sum_A1(e), sum_A2(e)
    b1, b2 = sum_B1(e), sum_B2(e)
    i_c = sum_IC(e)
    i_a = _from_exact(a1.exact + a2.exact, a1.terms_evaluated + a2.terms_evaluated,
                      a1.indeterminacies_resolved + a2.indeterminacies_resolved)
    i_b = _from_exact(b1.exact + b2.exact, b1.terms_evaluated + b2.terms_evaluated,
                      b1.indeterminacies_resolved + b2.indeterminacies_resolved)
    result = AssembledStatistics(i_a=i_a, i_b=i_b, i_c=i_c,
                                 variance=i_a.exact - i_b.exact, capacity=i_c.exact - i_a.exact)
    logger.info("Mode-sum assembly completed: V[S]=%.17g, E[C]=%.17g.",
                evaluate(result.variance), evaluate(result.capacity))
    return result


def moment_route(e):
    '''
    I_A, I_B and I_C computed entirely from moment_integral, independent of the
    exact mode sums.

    :param e: EnsembleParams.
    :return: Dict with ClosedFormValue entries "I_A", "I_B", "I_C".
    '''
    a = e.a
    i_a = ClosedFormValue()
    i_b = ClosedFormValue()
    i_c = ClosedFormValue()
    for k in range(e.m):
        inv_h = 1 / norm_h_exact(a, k)
        i_a = i_a + inv_h * (moment_integral(a, k, k, 2, 0, MomentDerivative.CC)
                             + moment_integral(a, k, k, 1, 1, MomentDerivative.CD))
        i_c = i_c + inv_h * moment_integral(a, k, k, 1, 0, MomentDerivative.CC)
        for l in range(e.m):
            cross = _moment(a, k, l, 1, 0, MomentDerivative.C)[0]
            i_b = i_b + ClosedFormValue.constant(cross * cross * inv_h / norm_h_exact(a, l))
    return {"I_A": i_a, "I_B": i_b, "I_C": i_c}


def basis_sums(n):
    '''
    The three sums shared by the a = 0 semi-closed expressions.

    :param n: Positive integer.
    :return: Tuple (sum psi0(2k)/k, sum psi0(4k)/(2k), sum psi0(4k)/(2k+1)) over k = 1..n.
    '''
    n = _check_integer("n", n, 1)
    first = math.fsum(digamma_int(2 * k) / k for k in range(1, n + 1))
    second = math.fsum(digamma_int(4 * k) / (2 * k) for k in range(1, n + 1))
    third = math.fsum(digamma_int(4 * k) / (2 * k + 1) for k in range(1, n + 1))
    return first, second, third


def _semi_closed_terms(n, kind):
    first, second, third = basis_sums(n)
    p0 = digamma_int
    p1 = trigamma_int
    half = Fraction(1, 2)
    quarter = Fraction(1, 4)
    p0_n_half = polygamma_shifted(0, n, half)
    p0_n_quarter = polygamma_shifted(0, n, quarter)
    p0_half = polygamma_shifted(0, 0, half)
    p0_quarter = polygamma_shifted(0, 0, quarter)
    terms = [first, -second, third]
    squares = [
        (4 * n - 1) * p0(4 * n) ** 2,
        -2 * (4 * n - 1) * p0(2 * n) * p0(4 * n),
        0.5 * (8 * n - 3) * p0(2 * n) ** 2,
    ]
    if kind is SemiClosedKind.IA:
        terms += squares + [
            -(24 * n * n - 12 * n + 1) / (4 * (4 * n - 1)) * p1(2 * n),
            -0.25 * p1(n),
            p0(n) * p0(2 * n),
            -0.5 * p0(n) ** 2,
            -(16 * n ** 3 + 8 * n * n - 1) / (2 * n * (2 * n + 1)) * p0(4 * n),
            0.5 * (8 * n + 1) * p0(2 * n),
            -(1 / (2 * n) + LN2) * p0(n),
            -0.5 * p0(n) * p0_n_half,
            -(2 * n + 1) / (2 * n) * p0_n_half,
            0.5 * p0_n_quarter,
            n * (5 * n - 2) / (4 * n - 1) * p1(1),
            (0.5 + LN2) * p0(1),
            0.5 * p0_half * p0(1),
            p0_half,
            -0.5 * p0_quarter,
            -LN2 / n,
            -n,
            2.0,
        ]
    elif kind is SemiClosedKind.IB:
        terms += squares + [
            (4 * n - 1) / 2 * p1(4 * n),
            -(104 * n * n - 60 * n + 7) / (8 * (4 * n - 1)) * p1(2 * n),
            -0.375 * p1(n),
            p0(n) * p0(2 * n),
            -0.5 * p0(n) ** 2,
            (-16 * n ** 3 - 6 * n * n + n + 1) / (2 * n * (2 * n + 1)) * p0(4 * n),
            4 * n * p0(2 * n),
            -(1 / (2 * n) + LN2) * p0(n),
            -0.5 * p0(n) * p0_n_half,
            -(2 * n + 1) / (2 * n) * p0_n_half,
            0.5 * p0_n_quarter,
            n * (5 * n - 2) / (4 * n - 1) * p1(1),
            (0.5 + LN2) * p0(1),
            0.5 * p0_half * p0(1),
            -0.5 * p0_quarter,
            p0_half,
            -LN2 / n,
            -n,
            2.0,
        ]
    else:
        terms += squares + [
            -0.25 * (8 * n - 3) * p1(2 * n),
            -0.375 * p1(n),
            -(16 * n ** 3 + 8 * n * n - 1) / (2 * n * (2 * n + 1)) * p0(4 * n),
            (8 * n * n - 3 * n - 2) / (2 * n) * p0(2 * n),
            p0(n),
            0.5 * p0_n_quarter,
            (16 * n - 3) / 8 * p1(1),
            0.5 * p0(1) ** 2,
            1.5 * p0(1),
            -0.5 * p0_quarter,
            -2.0 * n,
            2.5,
        ]
    return terms


def semi_closed_a0(n, which):
    '''
    Semi-closed a = 0 expressions for I_A, I_B and I_C, each carrying the three basis
    sums; CAPACITY returns I_C - I_A.

    :param n: Positive integer, m = n.
    :param which: SemiClosedKind or its value.
    :return: Float.
    '''
    n = _check_integer("n", n, 1)
    kind = SemiClosedKind(which)
    logging.getLogger("fermi_rmt").debug("Evaluating semi-closed %s at n=%d.", kind.value, n)
    if kind is SemiClosedKind.CAPACITY:
        return math.fsum(_semi_closed_terms(n, SemiClosedKind.IC) + [-t for t in _semi_closed_terms(n, SemiClosedKind.IA)])
    return math.fsum(_semi_closed_terms(n, kind))
