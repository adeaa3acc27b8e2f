import enum
import math
import numbers
import threading
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from types import MappingProxyType

from src.exceptions import DomainError

EULER_GAMMA = 0.57721566490153286060651209008240243
LN2 = 0.69314718055994530941723212145817657
PI2 = 9.8696044010893586188344909998761511

# psi_j(shift) for the three supported shifts, 30+ digits rounded to double.
REFERENCE_CONSTANTS = {
    (0, Fraction(1, 4)): float("-4.22745353337626540808953014609"),
    (0, Fraction(1, 2)): float("-1.96351002602142347944097633299"),
    (0, Fraction(3, 4)): float("-1.08586087978647216962688676281"),
    (1, Fraction(1, 4)): float("17.1973291545071107392713191193"),
    (1, Fraction(1, 2)): float("4.93480220054467930941724549993"),
    (1, Fraction(3, 4)): float("2.54187964767160649839766288041"),
}

_HARMONIC_CACHE = {1: [Fraction(0)], 2: [Fraction(0)]}
_HARMONIC_LOCK = threading.Lock()


class BasisKind(enum.Enum):
    ONE = "1"
    EULER_GAMMA = "gamma"
    PI2 = "pi^2"
    LN2 = "ln2"
    DIGAMMA = "psi0"
    TRIGAMMA = "psi1"


_KIND_ORDER = {kind: index for index, kind in enumerate(BasisKind)}


@dataclass(frozen=True)
class PolyBasisTerm:
    '''
    One element of the basis in which closed-form statistics are expressed.

    Constant kinds carry no argument. Digamma and trigamma kinds carry a positive
    rational argument whose denominator divides 4.
    '''
    kind: BasisKind
    arg: Fraction = None

    def __post_init__(self):
        if self.kind in (BasisKind.DIGAMMA, BasisKind.TRIGAMMA):
            if self.arg is None:
                raise DomainError("%s term requires an argument." % self.kind.value)
            arg = Fraction(self.arg)
            if arg <= 0:
                raise DomainError("%s argument must be positive, got %s." % (self.kind.value, arg))
            if (4 * arg).denominator != 1:
                raise DomainError("%s argument must be a multiple of 1/4, got %s." % (self.kind.value, arg))
            object.__setattr__(self, "arg", arg)
        elif self.arg is not None:
            raise DomainError("%s term takes no argument." % self.kind.value)

    def sort_key(self):
        return (_KIND_ORDER[self.kind], self.arg if self.arg is not None else Fraction(0))

    def __str__(self):
        if self.arg is None:
            return self.kind.value
        return "%s(%s)" % (self.kind.value, self.arg)


ONE = PolyBasisTerm(BasisKind.ONE)
GAMMA_TERM = PolyBasisTerm(BasisKind.EULER_GAMMA)
PI2_TERM = PolyBasisTerm(BasisKind.PI2)
LN2_TERM = PolyBasisTerm(BasisKind.LN2)


def digamma_term(arg):
    return PolyBasisTerm(BasisKind.DIGAMMA, Fraction(arg))


def trigamma_term(arg):
    return PolyBasisTerm(BasisKind.TRIGAMMA, Fraction(arg))


class ClosedFormValue:
    '''
    Exact rational linear combination over PolyBasisTerm.

    Instances are immutable. Construction merges repeated terms and drops zero
    coefficients, so two values are equal exactly when their term maps are equal.
    '''
    __slots__ = ("_terms",)

    def __init__(self, terms=None):
        merged = {}
        items = terms.items() if isinstance(terms, dict) else (terms or ())
        for term, coefficient in items:
            if not isinstance(term, PolyBasisTerm):
                raise TypeError("ClosedFormValue keys must be PolyBasisTerm, got %r." % (term,))
            merged[term] = merged.get(term, Fraction(0)) + Fraction(coefficient)
        self._terms = MappingProxyType({t: c for t, c in merged.items() if c != 0})

    @classmethod
    def constant(cls, value):
        return cls({ONE: Fraction(value)})

    @property
    def terms(self):
        return self._terms

    def coefficient(self, term):
        return self._terms.get(term, Fraction(0))

    def canonical(self):
        '''
        :return: The (term, coefficient) pairs sorted by basis order.
        '''
        return sorted(self._terms.items(), key=lambda item: item[0].sort_key())

    def reduce_integer_arguments(self):
        '''
        Rewrite digamma and trigamma terms at integer arguments in the constant basis,
        psi0(l) = H(l-1) - gamma and psi1(l) = pi^2/6 - H2(l-1).

        :return: New ClosedFormValue with only constants and non-integer polygamma terms.
        '''
        result = ClosedFormValue()
        for term, coefficient in self._terms.items():
            if term.kind in (BasisKind.DIGAMMA, BasisKind.TRIGAMMA) and term.arg.denominator == 1:
                if term.kind is BasisKind.DIGAMMA:
                    result = result + coefficient * digamma_exact(int(term.arg))
                else:
                    result = result + coefficient * trigamma_exact(int(term.arg))
            else:
                result = result + ClosedFormValue({term: coefficient})
        return result

    def describe(self):
        '''
        :return: List of (term label, coefficient as string) pairs in basis order.
        '''
        return [(str(term), str(coefficient)) for term, coefficient in self.canonical()]

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = ClosedFormValue.constant(other)
        if not isinstance(other, ClosedFormValue):
            return NotImplemented
        return ClosedFormValue(list(self._terms.items()) + list(other._terms.items()))

    __radd__ = __add__

    def __neg__(self):
        return ClosedFormValue({t: -c for t, c in self._terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = ClosedFormValue.constant(other)
        if not isinstance(other, ClosedFormValue):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, scalar):
        if not isinstance(scalar, (int, Fraction)):
            return NotImplemented
        scalar = Fraction(scalar)
        return ClosedFormValue({t: c * scalar for t, c in self._terms.items()})

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, ClosedFormValue):
            return NotImplemented
        return dict(self._terms) == dict(other._terms)

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def __repr__(self):
        body = ", ".join("%s: %s" % (term, coefficient) for term, coefficient in self.canonical())
        return "ClosedFormValue({%s})" % body


def _require_positive_integer(l, name="l"):
    if isinstance(l, bool) or not isinstance(l, numbers.Integral):
        raise DomainError("%s must be an integer, got %r." % (name, l))
    if l < 1:
        raise DomainError("%s must be positive, got %d." % (name, l))
    return int(l)


def harmonic_number(l, order=1):
    '''
    Exact generalized harmonic number sum_{k=1}^{l} 1/k^order.

    :param l: Nonnegative integer.
    :param order: 1 or 2.
    :return: Fraction.
    '''
    if order not in _HARMONIC_CACHE:
        raise DomainError("Harmonic numbers are provided for orders 1 and 2 only.")
    if l < 0:
        raise DomainError("Harmonic number index must be nonnegative, got %d." % l)
    table = _HARMONIC_CACHE[order]
    with _HARMONIC_LOCK:
        while len(table) <= l:
            k = len(table)
            table.append(table[-1] + Fraction(1, k ** order))
        return table[l]


def digamma_exact(l):
    '''
    :param l: Positive integer.
    :return: psi0(l) as ClosedFormValue H(l-1) - gamma.
    '''
    l = _require_positive_integer(l)
    return ClosedFormValue({ONE: harmonic_number(l - 1), GAMMA_TERM: -1})


def trigamma_exact(l):
    '''
    :param l: Positive integer.
    :return: psi1(l) as ClosedFormValue pi^2/6 - H2(l-1).
    '''
    l = _require_positive_integer(l)
    return ClosedFormValue({PI2_TERM: Fraction(1, 6), ONE: -harmonic_number(l - 1, 2)})


@lru_cache(maxsize=4096)
def digamma_int(l):
    '''
    Digamma function at a positive integer, -gamma + sum_{k=1}^{l-1} 1/k.

    The sum is accumulated with math.fsum, which is exactly rounded.

    :param l: Positive integer.
    :return: psi0(l) as float.
    '''
    l = _require_positive_integer(l)
    return math.fsum([-EULER_GAMMA] + [1.0 / k for k in range(1, l)])


@lru_cache(maxsize=4096)
def trigamma_int(l):
    '''
    Trigamma function at a positive integer, pi^2/6 - sum_{k=1}^{l-1} 1/k^2.

    :param l: Positive integer.
    :return: psi1(l) as float.
    '''
    l = _require_positive_integer(l)
    return math.fsum([PI2 / 6.0] + [-1.0 / (k * k) for k in range(1, l)])


def polygamma_shifted(j, base, shift):
    '''
    Evaluate psi_j(base + shift) for shift in {1/4, 1/2, 3/4}.

    The value is anchored at the reference constant psi_j(shift) and carried to
    base + shift with psi0(x+1) = psi0(x) + 1/x and psi1(x+1) = psi1(x) - 1/x^2.

    :param j: Order, 0 or 1.
    :param base: Nonnegative integer.
    :param shift: Fraction 1/4, 1/2 or 3/4.
    :return: Float value.
    '''
    shift = Fraction(shift)
    if j not in (0, 1):
        raise DomainError("Only polygamma orders 0 and 1 are supported, got %r." % (j,))
    if (j, shift) not in REFERENCE_CONSTANTS:
        raise DomainError("Unsupported shift %s; expected 1/4, 1/2 or 3/4." % shift)
    if isinstance(base, bool) or not isinstance(base, numbers.Integral) or base < 0:
        raise DomainError("base must be a nonnegative integer, got %r." % (base,))
    s = float(shift)
    anchor = REFERENCE_CONSTANTS[(j, shift)]
    if j == 0:
        return math.fsum([anchor] + [1.0 / (s + i) for i in range(base)])
    return math.fsum([anchor] + [-1.0 / ((s + i) * (s + i)) for i in range(base)])


def pochhammer(a, n):
    '''
    Rising factorial (a)_n = a (a+1) ... (a+n-1).

    :param a: int, Fraction or float. Integers and Fractions give an exact Fraction.
    :param n: Nonnegative integer.
    :return: Product, exact when a is rational.
    '''
    if isinstance(n, bool) or not isinstance(n, numbers.Integral) or n < 0:
        raise DomainError("Pochhammer length must be a nonnegative integer, got %r." % (n,))
    if isinstance(a, (numbers.Rational,)):
        a = Fraction(a)
        result = Fraction(1)
    else:
        a = float(a)
        result = 1.0
    for i in range(n):
        result *= a + i
    return result


def reciprocal_gamma_int(l):
    '''
    1/Gamma(l) for integer l, with the value 0 at the poles l <= 0.

    :param l: Integer.
    :return: Fraction.
    '''
    if isinstance(l, bool) or not isinstance(l, numbers.Integral):
        raise DomainError("reciprocal_gamma_int expects an integer, got %r." % (l,))
    if l <= 0:
        return Fraction(0)
    return Fraction(1, math.factorial(l - 1))


class PoleKind(enum.Enum):
    GAMMA = "gamma"
    DIGAMMA = "digamma"
    TRIGAMMA = "trigamma"


@dataclass(frozen=True)
class PoleExpansion:
    '''
    Leading Laurent coefficients of a gamma-family function at -l + eps.

    coefficients maps the power of eps to its ClosedFormValue coefficient.
    '''
    kind: PoleKind
    l: int
    coefficients: dict

    def coefficient(self, power):
        return self.coefficients.get(power, ClosedFormValue())


def pole_expansion(kind, l):
    '''
    Expansion of Gamma, psi0 or psi1 around the nonpositive integer -l.

    Gamma(-l+eps) = (-1)^l/l! (1/eps + psi0(l+1)) + O(eps)
    psi0(-l+eps)  = -1/eps + psi0(l+1) + (2 psi1(1) - psi1(l+1)) eps + O(eps^2)
    psi1(-l+eps)  = 1/eps^2 + 2 psi1(1) - psi1(l+1) + O(eps)

    :param kind: PoleKind.
    :param l: Nonnegative integer.
    :return: PoleExpansion.
    '''
    if isinstance(l, bool) or not isinstance(l, numbers.Integral) or l < 0:
        raise DomainError("Pole expansions are defined for l >= 0, got %r." % (l,))
    kind = PoleKind(kind)
    # A list of pairs, not a dict: at l = 0 both entries share the key psi1(1).
    tail = ClosedFormValue([(trigamma_term(1), 2), (trigamma_term(l + 1), -1)])
    if kind is PoleKind.GAMMA:
        residue = Fraction((-1) ** l, math.factorial(l))
        coefficients = {
            -1: ClosedFormValue.constant(residue),
            0: ClosedFormValue({digamma_term(l + 1): residue}),
        }
    elif kind is PoleKind.DIGAMMA:
        coefficients = {
            -1: ClosedFormValue.constant(-1),
            0: ClosedFormValue({digamma_term(l + 1): 1}),
            1: tail,
        }
    else:
        coefficients = {
            -2: ClosedFormValue.constant(1),
            0: tail,
        }
    return PoleExpansion(kind=kind, l=int(l), coefficients=coefficients)


def basis_value(term):
    '''
    :param term: PolyBasisTerm.
    :return: Float value of the basis element.
    '''
    if term.kind is BasisKind.ONE:
        return 1.0
    if term.kind is BasisKind.EULER_GAMMA:
        return EULER_GAMMA
    if term.kind is BasisKind.PI2:
        return PI2
    if term.kind is BasisKind.LN2:
        return LN2
    order = 0 if term.kind is BasisKind.DIGAMMA else 1
    base = term.arg.numerator // term.arg.denominator
    shift = term.arg - base
    if shift == 0:
        return digamma_int(base) if order == 0 else trigamma_int(base)
    return polygamma_shifted(order, base, shift)


def evaluate(value):
    '''
    Evaluate a ClosedFormValue to float.

    :param value: ClosedFormValue.
    :return: Sum of coefficient times basis value.
    '''
    return math.fsum(float(coefficient) * basis_value(term) for term, coefficient in value.canonical())
