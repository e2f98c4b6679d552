# Redundancy: smallest fragment reaching the information threshold, and its asymptotic estimate

import logging
from dataclasses import dataclass

import numpy as np

from utils.general import DomainError, InsufficientEnvironmentError
from utils.numerics import binary_entropy

logger = logging.getLogger(__name__)

SCAN_LIMIT = 10 ** 6  # forward scan up to here, bisection above (measures are non-decreasing in #F)
ASYMPTOTIC_MAX_DELTA = 0.5  # asymptotic redundancy estimate refused above this


@dataclass
class RedundancyResult:
    measure: str
    delta: float
    mode: str
    f_delta: int = None
    r_delta: float = None
    r_asymptotic: float = None
    relative_gap: float = None
    status: str = 'ok'


def threshold(HS, delta, mode='linear'):
    """Information a fragment must reach: H_S(1 - delta) (linear) or H_S - h(delta) (entropic)."""
    if mode == 'linear':
        if not 0 < delta <= 1:
            raise DomainError(f'delta={delta} must lie in (0, 1] in linear mode')
        return HS * (1 - delta)
    if mode == 'entropic':
        if not 0 < delta <= 0.5:
            raise DomainError(f'delta={delta} must lie in (0, 1/2] in entropic mode')
        return HS - binary_entropy(delta)
    raise DomainError(f'threshold mode {mode!r} must be linear or entropic')


def min_fragment_size(measure, HS, delta, mode='linear', env_size=SCAN_LIMIT):
    """ Smallest fragment size whose information reaches the threshold.
    # Arguments
        measure:  callable, fragment size -> information in bits, non-decreasing
        HS:  missing information in bits
        delta:  information deficit
        mode:  'linear' or 'entropic' threshold
        env_size:  largest admissible fragment size
    # Returns
        f_delta in [1, env_size]
    """
    t = threshold(HS, delta, mode)
    env_size = int(env_size)
    if env_size < 1:
        raise DomainError(f'environment size {env_size} must be positive')
    for n in range(1, min(env_size, SCAN_LIMIT) + 1):
        if measure(n) >= t:
            return n
    if env_size > SCAN_LIMIT and measure(env_size) >= t:
        lo, hi = SCAN_LIMIT, env_size  # measure(lo) < t <= measure(hi)
        while hi - lo > 1:
            mid = (lo + hi) // 2
            lo, hi = (lo, mid) if measure(mid) >= t else (mid, hi)
        return hi
    raise InsufficientEnvironmentError(f'threshold {t:.6g} bits (delta={delta}, {mode}) not reached '
                                       f'by any fragment of the {env_size}-component environment')


def redundancy(env_size, f_delta):
    # R_delta = #E / f_delta
    if not 1 <= f_delta <= env_size:
        raise DomainError(f'f_delta={f_delta} must lie in [1, #E={env_size}]')
    return env_size / f_delta


def asymptotic_redundancy(env_size, gamma_sq, delta):
    """R_delta ~ #E * xi / ln(1/delta), xi = -ln |gamma|^2."""
    if env_size < 1:
        raise DomainError(f'environment size {env_size} must be positive')
    if not 0 < gamma_sq < 1:
        raise DomainError(f'|gamma|^2={gamma_sq} must lie in (0, 1)')
    if not 0 < delta <= ASYMPTOTIC_MAX_DELTA:
        raise DomainError(f'delta={delta} outside (0, {ASYMPTOTIC_MAX_DELTA}] where the estimate is meaningful')
    return env_size * -np.log(gamma_sq) / np.log(1 / delta)


def redundancy_result(name, measure, HS, delta, env_size, gamma_sq=None, mode='linear'):
    # f_delta, R_delta and the asymptotic comparison in one record; unreachable thresholds become a status
    res = RedundancyResult(name, delta, mode)
    try:
        res.f_delta = min_fragment_size(measure, HS, delta, mode, env_size)
        res.r_delta = redundancy(env_size, res.f_delta)
    except InsufficientEnvironmentError as e:
        logger.warning(f'WARNING: {name}: {e}')
        res.status = 'insufficient environment'
    if gamma_sq is not None and 0 < gamma_sq < 1 and delta <= ASYMPTOTIC_MAX_DELTA:
        res.r_asymptotic = asymptotic_redundancy(env_size, gamma_sq, delta)
        if res.r_delta is not None:
            res.relative_gap = abs(res.r_delta - res.r_asymptotic) / res.r_asymptotic
    return res
