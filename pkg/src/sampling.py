import logging
import math
import numbers
from dataclasses import dataclass

import numpy as np

from src.exceptions import DomainError, IntegrityError
from src.work_pool import ordered_map

PAIRING_TOLERANCE = 1e-8
UNIT_TOLERANCE = 1e-10
TARGET_ACCEPTANCE = (0.30, 0.40)
TUNING_ROUNDS = 30
TUNING_SWEEPS = 10
PHYSICAL_BATCH = 2048


@dataclass(frozen=True)
class Spectrum:
    '''
    One draw of the m eigenvalues, sorted ascending, all in [0, 1].
    '''
    values: tuple

    def __post_init__(self):
        values = tuple(float(v) for v in self.values)
        if not values:
            raise DomainError("A spectrum needs at least one eigenvalue.")
        if any(not 0.0 <= v <= 1.0 for v in values):
            raise DomainError("Spectrum values must lie in [0, 1], got %r." % (values,))
        object.__setattr__(self, "values", tuple(sorted(values)))

    @property
    def m(self):
        return len(self.values)

    def as_array(self):
        return np.asarray(self.values, dtype=float)


@dataclass(frozen=True)
class ChainConfig:
    seed: int = 0
    burn_in: int = 400
    thinning: int = 10
    proposal_width: float = None
    chains: int = 4
    walkers: int = 256
    tune: bool = True

    def __post_init__(self):
        if isinstance(self.seed, bool) or not isinstance(self.seed, numbers.Integral) or self.seed < 0:
            raise DomainError("seed must be a nonnegative integer, got %r." % (self.seed,))
        if self.burn_in < 0:
            raise DomainError("burn_in must be >= 0, got %r." % (self.burn_in,))
        if self.thinning < 1:
            raise DomainError("thinning must be >= 1, got %r." % (self.thinning,))
        if self.proposal_width is not None and not self.proposal_width > 0:
            raise DomainError("proposal_width must be positive, got %r." % (self.proposal_width,))
        if self.chains < 1:
            raise DomainError("chains must be >= 1, got %r." % (self.chains,))
        if self.walkers < 1:
            raise DomainError("walkers must be >= 1, got %r." % (self.walkers,))

    def width_for(self, e):
        '''
        :return: proposal_width, or 0.5/sqrt(m+n) when unset.
        '''
        if self.proposal_width is not None:
            return float(self.proposal_width)
        return 0.5 / math.sqrt(e.modes)


def reflect_unit_interval(x):
    '''
    Fold values back into [0, 1]: negative values map to -x and values above 1 to 2 - x,
    repeated as often as needed.
    '''
    folded = np.mod(np.asarray(x, dtype=float), 2.0)
    return np.where(folded > 1.0, 2.0 - folded, folded)


def log_density(values, e):
    '''
    Unnormalised log of prod_{i<j} (x_i^2 - x_j^2)^2 prod_i (1 - x_i^2)^a.

    :param values: Array of shape (..., m).
    :param e: EnsembleParams.
    :return: Float or array; -inf where the density vanishes.
    '''
    x = np.asarray(values, dtype=float)
    squares = x * x
    with np.errstate(divide="ignore"):
        gaps = np.log(np.abs(squares[..., :, None] - squares[..., None, :]))
        upper = np.triu(np.ones((x.shape[-1], x.shape[-1]), dtype=bool), k=1)
        total = 2.0 * np.sum(np.where(upper, gaps, 0.0), axis=(-2, -1))
        if e.a:
            total = total + e.a * np.sum(np.log(1.0 - squares), axis=-1)
    return total


def log_acceptance(current, proposed, e):
    '''
    Metropolis log acceptance ratio log p(proposed) - log p(current), before capping at 0.
    '''
    return log_density(proposed, e) - log_density(current, e)


def _coordinate_delta(x, i, proposal, a):
    current = x[:, i]
    others = np.delete(x, i, axis=1)
    others_sq = others * others
    with np.errstate(divide="ignore", invalid="ignore"):
        delta = 2.0 * np.sum(np.log(np.abs(proposal[:, None] ** 2 - others_sq))
                             - np.log(np.abs(current[:, None] ** 2 - others_sq)), axis=1)
        if a:
            delta = delta + a * (np.log1p(-proposal * proposal) - np.log1p(-current * current))
    return np.where(np.isnan(delta), -np.inf, delta)


def coordinate_log_acceptance(values, i, proposal, e):
    '''
    Incremental log acceptance ratio for moving coordinate i of each row of values to
    proposal, in O(m) per row.

    :param values: Array of shape (walkers, m).
    :param i: Coordinate index.
    :param proposal: Array of shape (walkers,).
    :param e: EnsembleParams.
    :return: Array of shape (walkers,).
    '''
    x = np.atleast_2d(np.asarray(values, dtype=float))
    return _coordinate_delta(x, i, np.atleast_1d(np.asarray(proposal, dtype=float)), e.a)


def _sweep(x, a, rng, width):
    # One single-coordinate Metropolis pass over every walker; updates x in place.
    accepted = 0
    walkers, m = x.shape
    for i in range(m):
        proposal = reflect_unit_interval(x[:, i] + rng.uniform(-width, width, walkers))
        delta = _coordinate_delta(x, i, proposal, a)
        accept = np.log(rng.random(walkers)) < delta
        x[accept, i] = proposal[accept]
        accepted += int(np.count_nonzero(accept))
    return accepted


def loggas_step(state, e, rng, width=None):
    '''
    One Metropolis sweep over the coordinates of a single spectrum.

    :param state: Spectrum with e.m values.
    :param e: EnsembleParams.
    :param rng: numpy Generator.
    :param width: Half-width of the uniform proposal; default 0.5/sqrt(m+n).
    :return: New Spectrum.
    '''
    if state.m != e.m:
        raise DomainError("Spectrum has %d values, expected m=%d." % (state.m, e.m))
    x = state.as_array().reshape(1, -1).copy()
    _sweep(x, e.a, rng, width if width is not None else ChainConfig().width_for(e))
    return Spectrum(tuple(x[0]))


def _tune_width(x, a, rng, width):
    logger = logging.getLogger("fermi_rmt")
    low, high = TARGET_ACCEPTANCE
    proposals = x.size * TUNING_SWEEPS
    for _ in range(TUNING_ROUNDS):
        rate = sum(_sweep(x, a, rng, width) for _ in range(TUNING_SWEEPS)) / proposals
        if low <= rate <= high:
            break
        width = min(width * (1.3 if rate > high else 0.7), 1.0)
        if width == 1.0 and rate > high:
            break
    logger.debug("Tuned proposal width to %.4g.", width)
    return width


def _run_chain(job):
    e, cfg, seed_sequence, draws = job
    rng = np.random.default_rng(seed_sequence)
    a = e.a
    x = rng.uniform(0.05, 0.95, size=(cfg.walkers, e.m))
    width = cfg.width_for(e)
    if cfg.tune:
        width = _tune_width(x, a, rng, width)
    for _ in range(cfg.burn_in):
        _sweep(x, a, rng, width)
    recorded = -(-draws // cfg.walkers)
    out = np.empty((recorded * cfg.walkers, e.m))
    accepted = 0
    for s in range(recorded):
        for _ in range(cfg.thinning):
            accepted += _sweep(x, a, rng, width)
        out[s * cfg.walkers:(s + 1) * cfg.walkers] = x
    proposals = recorded * cfg.thinning * cfg.walkers * e.m
    return np.sort(out[:draws], axis=1), accepted, proposals


def sample_loggas_array(e, cfg, samples):
    '''
    Log-gas Metropolis draws.

    Every chain owns a Generator spawned from SeedSequence(cfg.seed) and advances
    cfg.walkers independent walkers; after tuning and burn-in it records every
    cfg.thinning-th sweep. Rows are ordered by (chain, sweep, walker).

    :param e: EnsembleParams.
    :param cfg: ChainConfig.
    :param samples: Total number of spectra.
    :return: Tuple (array of shape (samples, m) sorted along rows, acceptance rate).
    '''
    if samples < 1:
        raise DomainError("samples must be positive, got %r." % (samples,))
    logger = logging.getLogger("fermi_rmt")
    logger.info("Starting log-gas sampling: m=%d, n=%d, %d samples over %d chains.", e.m, e.n, samples, cfg.chains)
    per_chain = -(-samples // cfg.chains)
    seeds = np.random.SeedSequence(cfg.seed).spawn(cfg.chains)
    results = ordered_map(_run_chain, [(e, cfg, seed, per_chain) for seed in seeds])
    draws = np.concatenate([result[0] for result in results])[:samples]
    accepted = sum(result[1] for result in results)
    proposals = sum(result[2] for result in results)
    rate = accepted / proposals if proposals else 0.0
    logger.info("Log-gas sampling completed: acceptance rate %.3f.", rate)
    return draws, rate


def sample_loggas(e, cfg, samples):
    '''
    Stream of Spectrum objects over sample_loggas_array.
    '''
    draws, _ = sample_loggas_array(e, cfg, samples)
    for row in draws:
        yield Spectrum(tuple(row))


def _haar_orthogonal(rng, count, size):
    q, r = np.linalg.qr(rng.standard_normal((count, size, size)))
    signs = np.sign(np.diagonal(r, axis1=-2, axis2=-1))
    return q * signs[:, None, :]


def _reference_form(modes):
    return np.kron(np.eye(modes), np.array([[0.0, 1.0], [-1.0, 0.0]]))


def _covariance_blocks(e, rng, count):
    q = _haar_orthogonal(rng, count, 2 * e.modes)
    top = q[:, :2 * e.m, :]
    return top @ _reference_form(e.modes) @ np.swapaxes(top, -1, -2)


def physical_covariance_block(e, rng):
    '''
    The 2m x 2m block Omega_A of O Omega_0 O^T for a Haar-random orthogonal O.

    :param e: EnsembleParams.
    :param rng: numpy Generator.
    :return: Antisymmetric array of shape (2m, 2m).
    '''
    return _covariance_blocks(e, rng, 1)[0]


def _paired_values(blocks):
    singular = np.sort(np.linalg.svd(blocks, compute_uv=False), axis=-1)
    gap = np.max(np.abs(singular[:, 0::2] - singular[:, 1::2])) if singular.size else 0.0
    if gap > PAIRING_TOLERANCE:
        raise IntegrityError("Singular values of Omega_A are not paired (largest gap %.3g)." % gap)
    top = float(np.max(singular)) if singular.size else 0.0
    if top > 1.0 + UNIT_TOLERANCE:
        raise IntegrityError("Singular value %.17g of Omega_A exceeds 1." % top)
    if top > 1.0:
        logging.getLogger("fermi_rmt").debug("Clamping singular value %.17g to 1.", top)
    return np.clip(singular[:, 0::2], 0.0, 1.0)


def sample_physical_array(e, rng, samples):
    '''
    Spectra from the covariance-matrix construction, one Haar draw per row.

    :return: Array of shape (samples, m) sorted along rows.
    '''
    if samples < 1:
        raise DomainError("samples must be positive, got %r." % (samples,))
    chunks = []
    remaining = samples
    while remaining:
        count = min(remaining, PHYSICAL_BATCH)
        chunks.append(_paired_values(_covariance_blocks(e, rng, count)))
        remaining -= count
    return np.concatenate(chunks)


def sample_physical(e, rng):
    '''
    One Spectrum from the physical sampler.
    '''
    return Spectrum(tuple(sample_physical_array(e, rng, 1)[0]))


def _run_physical(job):
    e, seed_sequence, draws = job
    return sample_physical_array(e, np.random.default_rng(seed_sequence), draws)


def sample_physical_chains(e, cfg, samples):
    '''
    Physical draws split over cfg.chains independent generators, in chain order.

    :return: Array of shape (samples, m).
    '''
    logger = logging.getLogger("fermi_rmt")
    logger.info("Starting physical sampling: m=%d, n=%d, %d samples.", e.m, e.n, samples)
    per_chain = -(-samples // cfg.chains)
    seeds = np.random.SeedSequence(cfg.seed).spawn(cfg.chains)
    draws = np.concatenate(ordered_map(_run_physical, [(e, seed, per_chain) for seed in seeds]))[:samples]
    logger.info("Physical sampling completed.")
    return draws
