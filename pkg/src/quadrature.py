import logging
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy import special

from src.exceptions import ConvergenceError, DomainError
from src.kernel import KernelContext, kernel_diagonal, weighted_basis
from src.special_functions import LN2

ENDPOINT_GUARD = 1e-15
T_MAX = 4.0


@dataclass(frozen=True)
class QuadratureConfig:
    target_abs_tol: float = 1e-11
    max_levels: int = 12
    two_d_nodes: int = 400

    def __post_init__(self):
        if not self.target_abs_tol > 0:
            raise DomainError("target_abs_tol must be positive, got %r." % (self.target_abs_tol,))
        if self.max_levels < 3:
            raise DomainError("max_levels must be at least 3, got %r." % (self.max_levels,))
        if self.two_d_nodes < 8:
            raise DomainError("two_d_nodes must be at least 8, got %r." % (self.two_d_nodes,))


@dataclass(frozen=True)
class QuadratureResult:
    value: float
    err_estimate: float
    nodes_used: int


@lru_cache(maxsize=32)
def _tanh_sinh_rule(level):
    h = 2.0 ** -level
    count = int(round(T_MAX / h))
    t = h * np.arange(-count, count + 1)
    s = math.pi * np.sinh(t)
    x = special.expit(s)
    complement = special.expit(-s)
    weights = h * math.pi * np.cosh(t) * x * complement
    keep = (x >= ENDPOINT_GUARD) & (complement >= ENDPOINT_GUARD)
    x = x[keep]
    weights = weights[keep]
    x.setflags(write=False)
    weights.setflags(write=False)
    return x, weights


def tanh_sinh_nodes(level):
    '''
    Double-exponential nodes and weights on [0, 1] with step 2^-level.

    x = 1/(1 + exp(-pi sinh t)); nodes closer than 1e-15 to an endpoint are dropped.

    :param level: Refinement level, 0 or more.
    :return: Tuple (nodes, weights) of numpy arrays.
    '''
    x, weights = _tanh_sinh_rule(int(level))
    return x.copy(), weights.copy()


def integrate_1d(f, cfg=None):
    '''
    Tanh-sinh integration of f over [0, 1], halving the step until two successive
    estimates differ by no more than the target tolerance.

    :param f: Vectorised integrand taking and returning numpy arrays.
    :param cfg: QuadratureConfig.
    :return: QuadratureResult.
    '''
    cfg = cfg or QuadratureConfig()
    logger = logging.getLogger("fermi_rmt")
    previous = None
    estimate = None
    err = math.inf
    nodes_used = 0
    for level in range(cfg.max_levels + 1):
        x, weights = _tanh_sinh_rule(level)
        values = np.asarray(f(x), dtype=float)
        if not np.all(np.isfinite(values)):
            raise DomainError("Integrand returned non-finite values inside (0, 1).")
        estimate = math.fsum(weights * values)
        nodes_used += x.size
        if previous is not None:
            err = abs(estimate - previous)
            logger.debug("Tanh-sinh level %d: estimate=%.17g, difference=%.3g.", level, estimate, err)
            if level >= 2 and err <= cfg.target_abs_tol:
                return QuadratureResult(value=estimate, err_estimate=err, nodes_used=nodes_used)
        previous = estimate
    raise ConvergenceError(
        "Tanh-sinh quadrature did not reach %.3g within %d levels (last difference %.3g)."
        % (cfg.target_abs_tol, cfg.max_levels, err),
        last_estimate=estimate, err_estimate=err)


def integrate_interval(f, lo, hi, cfg=None):
    '''
    integrate_1d after the affine map of [lo, hi] onto [0, 1].
    '''
    width = hi - lo
    result = integrate_1d(lambda t: width * np.asarray(f(lo + width * t), dtype=float), cfg)
    return result


def entropy_integrand(x):
    '''
    Single-mode entropy function v(x) = (1-x)/2 ln((1-x)/2) + (1+x)/2 ln((1+x)/2),
    with v(1) = 0 and v(0) = -ln 2 returned exactly.
    '''
    x = np.asarray(x, dtype=float)
    u = 0.5 * (1.0 + x)
    w = 0.5 * (1.0 - x)
    values = special.xlogy(u, u) + special.xlogy(w, w)
    values = np.where(x == 1.0, 0.0, values)
    return np.where(x == 0.0, -LN2, values)


def _xlog2y(x):
    with np.errstate(divide="ignore", invalid="ignore"):
        return np.where(x > 0.0, x * np.log(np.where(x > 0.0, x, 1.0)) ** 2, 0.0)


def capacity_integrand(x):
    '''
    Single-mode capacity (1-x^2)/4 ln^2((1+x)/(1-x)), equal to 0 at x = 0 and x = 1.
    '''
    x = np.asarray(x, dtype=float)
    inside = np.where(np.abs(x) < 1.0, x, 0.0)
    values = (1.0 - inside * inside) * np.arctanh(inside) ** 2
    return np.where(np.abs(x) >= 1.0, 0.0, values)


def capacity_integrand_rewritten(x):
    '''
    Capacity written as a second-order statistic, u ln^2 u + (1-u) ln^2(1-u) - v^2 with u = (1+x)/2.
    '''
    return squared_log_integrand(x) - entropy_integrand(x) ** 2


def squared_log_integrand(x):
    '''
    u ln^2 u + (1-u) ln^2(1-u) with u = (1+x)/2.
    '''
    x = np.asarray(x, dtype=float)
    return _xlog2y(0.5 * (1.0 + x)) + _xlog2y(0.5 * (1.0 - x))


def _diagonal_integral(e, integrand, cfg, label):
    logger = logging.getLogger("fermi_rmt")
    logger.info("Starting %s quadrature for m=%d, n=%d.", label, e.m, e.n)
    ctx = KernelContext.build(e)
    result = integrate_1d(lambda x: integrand(x) * kernel_diagonal(ctx, x), cfg)
    logger.info("%s quadrature completed: value=%.17g, err=%.3g, nodes=%d.",
                label, result.value, result.err_estimate, result.nodes_used)
    return result


def mean_entropy_quad(e, cfg=None):
    '''
    E[S] = -int_0^1 v(x) K(x, x) dx.

    :param e: EnsembleParams.
    :param cfg: QuadratureConfig.
    :return: QuadratureResult.
    '''
    return _diagonal_integral(e, lambda x: -entropy_integrand(x), cfg, "Mean entropy")


def ia_quad(e, cfg=None):
    '''
    I_A = int_0^1 v(x)^2 K(x, x) dx.
    '''
    return _diagonal_integral(e, lambda x: entropy_integrand(x) ** 2, cfg, "I_A")


def ic_quad(e, cfg=None):
    '''
    I_C = int_0^1 (u ln^2 u + (1-u) ln^2 (1-u)) K(x, x) dx.
    '''
    return _diagonal_integral(e, squared_log_integrand, cfg, "I_C")


def _level_with_nodes(target):
    level = 0
    while _tanh_sinh_rule(level)[0].size < target:
        level += 1
    return level


def _ib_at_level(ctx, level):
    x, weights = _tanh_sinh_rule(level)
    phi = weighted_basis(ctx, x)
    g = weights * entropy_integrand(x)
    # sum_ij g_i g_j K(x_i, x_j)^2 over the tensor grid, through K = phi^T phi.
    moments = (phi * g) @ phi.T
    return float(np.sum(moments * moments)), x.size * x.size


def ib_quad(e, cfg=None):
    '''
    I_B = int int v(x) v(y) K(x, y)^2 dx dy on a tensor tanh-sinh grid.

    The grid starts at the first level with at least cfg.two_d_nodes nodes per axis;
    the error estimate is the change from the next coarser level, and the level is
    raised until that change meets the tolerance.

    :return: QuadratureResult.
    '''
    cfg = cfg or QuadratureConfig()
    logger = logging.getLogger("fermi_rmt")
    logger.info("Starting I_B tensor-grid quadrature for m=%d, n=%d.", e.m, e.n)
    ctx = KernelContext.build(e)
    level = max(_level_with_nodes(cfg.two_d_nodes), 1)
    previous, nodes_used = _ib_at_level(ctx, level - 1)
    err = math.inf
    estimate = previous
    while level <= cfg.max_levels:
        estimate, nodes = _ib_at_level(ctx, level)
        nodes_used += nodes
        err = abs(estimate - previous)
        logger.debug("I_B level %d: estimate=%.17g, difference=%.3g.", level, estimate, err)
        if err <= cfg.target_abs_tol:
            logger.info("I_B quadrature completed: value=%.17g, err=%.3g.", estimate, err)
            return QuadratureResult(value=estimate, err_estimate=err, nodes_used=nodes_used)
        previous = estimate
        level += 1
    raise ConvergenceError("I_B tensor-grid quadrature did not converge (last difference %.3g)." % err,
                           last_estimate=estimate, err_estimate=err)


def variance_quad(e, cfg=None):
    '''
    V[S] = I_A - I_B.

    :param e: EnsembleParams.
    :param cfg: QuadratureConfig.
    :return: QuadratureResult whose error estimate is the sum of both parts.
    '''
    part_a = ia_quad(e, cfg)
    part_b = ib_quad(e, cfg)
    return QuadratureResult(value=part_a.value - part_b.value,
                            err_estimate=part_a.err_estimate + part_b.err_estimate,
                            nodes_used=part_a.nodes_used + part_b.nodes_used)


def capacity_quad(e, cfg=None):
    '''
    E[C] = int_0^1 (1-x^2)/4 ln^2((1+x)/(1-x)) K(x, x) dx.

    :param e: EnsembleParams.
    :param cfg: QuadratureConfig.
    :return: QuadratureResult.
    '''
    return _diagonal_integral(e, capacity_integrand, cfg, "Mean capacity")
