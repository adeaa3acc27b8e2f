import logging
from dataclasses import dataclass

import numpy as np
from numpy.polynomial import Polynomial

from src.exceptions import DomainError
from src.jacobi import EnsembleParams, norm_h, p_polynomial, p_values


@dataclass(frozen=True)
class KernelContext:
    '''
    Ensemble parameters together with the cached reciprocal norms 1/h_k, k = 0..m-1.
    '''
    params: EnsembleParams
    inv_h: tuple

    def __post_init__(self):
        if len(self.inv_h) != self.params.m:
            raise DomainError("KernelContext needs %d cached norms, got %d." % (self.params.m, len(self.inv_h)))
        if not all(np.isfinite(value) and value > 0 for value in self.inv_h):
            raise DomainError("Cached reciprocal norms must be positive and finite.")

    @classmethod
    def build(cls, e):
        '''
        :param e: EnsembleParams.
        :return: KernelContext with 1/h_k precomputed.
        '''
        logger = logging.getLogger("fermi_rmt")
        logger.debug("Building kernel context for m=%d, n=%d.", e.m, e.n)
        return cls(params=e, inv_h=tuple(1.0 / norm_h(e, k) for k in range(e.m)))


def _check_unit_interval(values):
    values = np.asarray(values, dtype=float)
    if np.any(values < 0.0) or np.any(values > 1.0) or np.any(np.isnan(values)):
        raise DomainError("Kernel arguments must lie in [0, 1].")
    return values


def weighted_basis(ctx, xs):
    '''
    Orthonormal functions phi_k(x) = sqrt((1-x^2)^a / h_k) p_k(x).

    :param ctx: KernelContext.
    :param xs: Array of points in [0, 1].
    :return: Array of shape (m,) + xs.shape.
    '''
    xs = np.asarray(xs, dtype=float)
    a = ctx.params.a
    polys = p_values(ctx.params, xs)
    weight = (1.0 - xs * xs) ** (0.5 * a) if a else np.ones_like(xs)
    scale = np.sqrt(np.asarray(ctx.inv_h)).reshape((-1,) + (1,) * xs.ndim)
    return polys * scale * weight


def kernel_diagonal(ctx, xs):
    '''
    K(x, x) at an array of points.
    '''
    xs = _check_unit_interval(xs)
    phi = weighted_basis(ctx, xs)
    return np.sum(phi * phi, axis=0)


def kernel_matrix(ctx, xs, ys):
    '''
    K(x_i, y_j) for all pairs of two point arrays.

    :return: Array of shape (len(xs), len(ys)).
    '''
    xs = _check_unit_interval(np.atleast_1d(xs))
    ys = _check_unit_interval(np.atleast_1d(ys))
    return weighted_basis(ctx, xs).T @ weighted_basis(ctx, ys)


def kernel_eval(ctx, x, y):
    '''
    Correlation kernel K(x, y) = sqrt(w(x) w(y)) sum_k p_k(x) p_k(y) / h_k on [0, 1].

    :param ctx: KernelContext.
    :param x: Point in [0, 1].
    :param y: Point in [0, 1].
    :return: Float value, symmetric in (x, y).
    '''
    _check_unit_interval([x, y])
    phi = weighted_basis(ctx, np.array([x, y], dtype=float))
    return float(np.dot(phi[:, 0], phi[:, 1]))


def density_one(ctx, x):
    '''
    One-point density g_1(x) = K(x, x)/m.
    '''
    return float(kernel_diagonal(ctx, np.array([x]))[0]) / ctx.params.m


def density_two(ctx, x, y):
    '''
    Two-point density (K(x,x) K(y,y) - K(x,y)^2) / (m (m-1)).

    :param ctx: KernelContext with m >= 2.
    :return: Nonnegative float.
    '''
    m = ctx.params.m
    if m < 2:
        raise DomainError("The two-point density needs m >= 2, got m=%d." % m)
    _check_unit_interval([x, y])
    phi = weighted_basis(ctx, np.array([x, y], dtype=float))
    kxx = np.dot(phi[:, 0], phi[:, 0])
    kyy = np.dot(phi[:, 1], phi[:, 1])
    kxy = np.dot(phi[:, 0], phi[:, 1])
    return max(float(kxx * kyy - kxy * kxy), 0.0) / (m * (m - 1))


def diagonal_polynomial(ctx):
    '''
    K(x, x) as a numpy Polynomial; exact structure because a is an integer.
    '''
    e = ctx.params
    total = Polynomial([0.0])
    for k in range(e.m):
        p = p_polynomial(e, k)
        total = total + ctx.inv_h[k] * p * p
    return total * Polynomial([1.0, 0.0, -1.0]) ** e.a


def density_one_cdf(ctx, x):
    '''
    Cumulative distribution of g_1 on [0, 1], by exact polynomial integration of K(x, x).

    The antiderivative is taken in the power basis, which loses digits to cancellation
    once m grows past a handful; it serves the small-m goodness-of-fit checks.

    :param ctx: KernelContext.
    :param x: Scalar or array in [0, 1].
    :return: Values of the CDF, same shape as x.
    '''
    x = _check_unit_interval(x)
    antiderivative = diagonal_polynomial(ctx).integ()
    values = (antiderivative(x) - antiderivative(0.0)) / ctx.params.m
    return np.clip(values, 0.0, 1.0)
