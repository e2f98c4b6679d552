# Quantum Chernoff bound, decay exponents and leading-order deficits

import logging
from dataclasses import dataclass, field
from itertools import combinations

import numpy as np
from scipy.optimize import minimize_scalar

from utils.general import DomainError, NumericalError
from utils.metrics import helstrom_error_pure_product, holevo_pointer_closed_form
from utils.numerics import LN2, binary_entropy, clipped_spectrum

logger = logging.getLogger(__name__)

C_XTOL = 1e-10  # bounded scalar minimization settings for the Chernoff parameter
C_MAXITER = 200
SWITCHOVER_GAMMA = 1e-10  # below this the Holevo deficit uses its leading-order expression
FIT_WINDOW = (1e-8, 1e-2)  # Gamma range where the leading-order decay holds
PURITY_TOL = 1e-10


@dataclass
class ChernoffResult:
    c_star: float
    pe_bound: float  # p1^c p2^(1-c) prod_k tr[rho_k1^c rho_k2^(1-c)] at c_star
    prefactor: float  # p1^c p2^(1-c) at c_star
    exponent_per_component: float  # -ln(prod_k overlap)/n in nats


class _OverlapKernel:
    # tr[rho1^c rho2^(1-c)] = sum_ij a_i^c b_j^(1-c) |<v_i|w_j>|^2 from one pair of eigen-decompositions
    def __init__(self, rho1, rho2):
        rho1, rho2 = np.asarray(rho1), np.asarray(rho2)
        if rho1.shape != rho2.shape:
            raise DomainError(f'state shapes differ: {rho1.shape} vs {rho2.shape}')
        self.a, v = clipped_spectrum(rho1)
        self.b, w = clipped_spectrum(rho2)
        self.W = np.abs(v.conj().T @ w) ** 2
        self.pure = self.a[-1] >= 1 - PURITY_TOL and self.b[-1] >= 1 - PURITY_TOL

    @staticmethod
    def _pow(x, c):
        return np.where(x > 0, np.where(x > 0, x, 1.0) ** c, 0.0)  # 0^0 = 0 on the kernel

    def __call__(self, c):
        return float(self._pow(self.a, c) @ self.W @ self._pow(self.b, 1 - c))


def generalized_overlap(rho1, rho2, c):
    """tr[rho1^c rho2^(1-c)] for c in [0, 1], 0^0 = 0 on zero eigenspaces."""
    if not 0 <= c <= 1:
        raise DomainError(f'c={c} must lie in [0, 1]')
    return _OverlapKernel(rho1, rho2)(c)


def qcb_prefactor(p1, kind='pure'):
    # min[p1, p2] for pure conditional states, sqrt(p1 p2) for mixed ones
    if kind not in ('pure', 'mixed'):
        raise DomainError(f'prefactor kind {kind!r} must be pure or mixed')
    return min(p1, 1 - p1) if kind == 'pure' else float(np.sqrt(p1 * (1 - p1)))


def qcb_error_bound(p1, components):
    """ Quantum Chernoff bound on the pointer discrimination error.
    # Arguments
        p1:  prior of the first pointer value
        components:  per-component (rho_k|1, rho_k|2) pairs; an empty list means nothing is observed
    # Returns
        ChernoffResult with the bound minimized over c in [0, 1]
    """
    if not 0 <= p1 <= 1:
        raise DomainError(f'p1={p1} must lie in [0, 1]')
    p2 = 1 - p1
    n = len(components)
    if p1 in (0, 1):  # one hypothesis is certain
        return ChernoffResult(float(p1 == 0), 0.0, 0.0, 0.0)
    kernels = [_OverlapKernel(r1, r2) for r1, r2 in components]

    def overlap(c):
        return float(np.prod([k(c) for k in kernels])) if kernels else 1.0

    def log_objective(c):
        g = overlap(c)
        return c * np.log(p1) + (1 - c) * np.log(p2) + (np.log(g) if g > 0 else -np.inf)

    if overlap(0.5) == 0:  # disjoint supports, perfectly distinguishable
        return ChernoffResult(0.5, 0.0, float(np.sqrt(p1 * p2)), float('inf'))

    r = minimize_scalar(log_objective, bounds=(0, 1), method='bounded', options={'xatol': C_XTOL, 'maxiter': C_MAXITER})
    if not np.isfinite(r.fun):
        raise NumericalError(f'Chernoff minimization failed: {r.message}')
    # boundaries, ties resolved toward the smaller prefactor
    ends = sorted([(1.0, p1), (0.0, p2)], key=lambda x: x[1])
    candidates = [(log_objective(c), i, c) for i, (c, _) in enumerate(ends)] + [(r.fun, 2, float(r.x))]
    lmin = min(x[0] for x in candidates)
    c = min((x for x in candidates if x[0] <= lmin + 1e-15 * max(1.0, abs(lmin))), key=lambda x: x[1])[2]
    g = overlap(c)
    pref = p1 ** c * p2 ** (1 - c)
    xi = -np.log(g) / n if n and g > 0 else (float('inf') if n else 0.0)
    return ChernoffResult(float(c), float(pref * g), float(pref), float(xi))


def qcb_info_from_bound(HS, pe_star, D=2, base=2):
    # H_S - h(P*) - P* log(D-1), the Fano-type bound fed with the Chernoff error
    if not 0 <= pe_star <= 1:
        raise DomainError(f'P*={pe_star} must lie in [0, 1]')
    log = np.log if base == 'e' else np.log2
    return HS - binary_entropy(pe_star) - (pe_star * log(D - 1) if D > 2 else 0.0)


def qcb_info(HS, C, Gamma):
    """X_QCB = H_S - h(C * Gamma), C the prefactor and Gamma the fragment overlap."""
    x = np.asarray(C * np.asarray(Gamma, dtype=float))
    if np.any(np.isnan(x)) or np.any(x < 0) or np.any(x > 0.5 + 1e-12):
        raise DomainError(f'C*Gamma={x} must lie in [0, 1/2]')
    y = HS - binary_entropy(np.minimum(x, 0.5))
    return float(y) if np.ndim(y) == 0 else y


def analytic_exponent(gamma_sq):
    # xi = -ln |gamma|^2 in nats
    if not 0 < gamma_sq < 1:
        raise DomainError(f'|gamma|^2={gamma_sq} must lie in (0, 1)')
    return float(-np.log(gamma_sq))


def mean_exponent(gamma_sqs):
    # Inhomogeneous environments: mean of -ln |gamma_k|^2
    g = np.asarray(gamma_sqs, dtype=float)
    if g.size == 0 or np.any(g <= 0) or np.any(g > 1):
        raise DomainError('component overlaps must lie in (0, 1]')
    return float(np.mean(-np.log(g)))


def pairwise_chernoff_exponent(state):
    """Smallest per-component Chernoff exponent -ln min_c prod_k tr[rho_k|s^c rho_k|s'^(1-c)] / n over pointer pairs.

    No prefactor: this bounds the decay rate of the D-hypothesis error, not its magnitude.
    """
    values = state.pointer.pointer_values
    n = state.size
    if n == 0:
        return 0.0
    best = float('inf')
    for s1, s2 in combinations(values, 2):
        kernels = [_OverlapKernel(r1, r2) for r1, r2 in state.pairs(s1, s2)]
        f = lambda c: -sum(np.log(max(k(c), 1e-300)) for k in kernels)  # noqa: E731
        r = minimize_scalar(lambda c: -f(c), bounds=(0, 1), method='bounded',
                            options={'xatol': C_XTOL, 'maxiter': C_MAXITER})
        xi = max(f(float(r.x)), f(0.0), f(1.0)) / n
        best = min(best, xi)
    return float(best)


# Deficits -------------------------------------------------------------------------------------------------------------

def _pq(p1):
    if not 0 <= p1 <= 1:
        raise DomainError(f'p1={p1} must lie in [0, 1]')
    return p1, 1 - p1


def _leading(which, p1, G, C=None):
    p, q = _pq(p1)
    G = np.asarray(G, dtype=float)
    if p in (0, 1):
        return np.zeros_like(G)
    if which == 'holevo':
        k = 1 / (2 * LN2) if abs(p - q) < 1e-12 else p * q * np.log2(q / p) / (q - p)
        return k * G
    if which == 'accessible':
        x = p * q * G
    elif which == 'qcb':
        x = (min(p, q) if C is None else C) * G
    else:
        raise DomainError(f'unknown measure {which!r}, use holevo, accessible or qcb')
    with np.errstate(divide='ignore', invalid='ignore'):
        return np.where(x > 0, x * np.log2(np.e / np.where(x > 0, x, 1.0)), 0.0)


def leading_order_deficit(which, p1, gamma_sq, F, C=None):
    """ Small-Gamma deficit H_S - X for Gamma = gamma_sq**F.
    # Arguments
        which:  'holevo', 'accessible' or 'qcb'
        p1:  prior of the first pointer value
        gamma_sq, F:  per-component overlap and fragment size
        C:  QCB prefactor, defaults to min[p1, p2]
    # Returns
        holevo: p1 p2 log2(p2/p1)/(p2-p1) Gamma (Gamma/(2 ln 2) at p1 = 1/2)
        accessible: p1 p2 Gamma log2[e/(p1 p2 Gamma)]
        qcb: C Gamma log2[e/(C Gamma)]
    """
    G = np.asarray(gamma_sq, dtype=float) ** np.asarray(F, dtype=float)
    d = _leading(which, p1, G, C)
    return float(d) if np.ndim(d) == 0 else d


def deficit(which, p1, Gamma, C=None):
    """H_S - X without catastrophic cancellation.

    accessible and qcb deficits are h(P_e) and h(C Gamma) directly; the Holevo deficit is a difference of
    two entropies and switches to its leading-order form below SWITCHOVER_GAMMA.
    """
    p, q = _pq(p1)
    G = np.asarray(Gamma, dtype=float)
    if which == 'holevo':
        d = np.where(G < SWITCHOVER_GAMMA, _leading('holevo', p1, G),
                     binary_entropy(p) - holevo_pointer_closed_form(p, G))
    elif which == 'accessible':
        d = binary_entropy(helstrom_error_pure_product(p, G))
    elif which == 'qcb':
        d = binary_entropy(np.minimum((min(p, q) if C is None else C) * G, 0.5))
    else:
        raise DomainError(f'unknown measure {which!r}, use holevo, accessible or qcb')
    d = np.asarray(d, dtype=float)
    return float(d) if d.ndim == 0 else d


# Exponent fits --------------------------------------------------------------------------------------------------------

@dataclass
class InfoCurve:
    fragment_sizes: np.ndarray
    values: np.ndarray  # information in bits
    deficits: np.ndarray = None  # H_S - values from dedicated expressions, if available
    label: str = ''
    gammas: np.ndarray = field(default=None, repr=False)  # fragment overlaps


def _log_prefactor_slope(F, y):
    # Profile F0 in y = a + xi F + k ln(F + F0); return xi at the best F0
    def fit(f0):
        A = np.stack([np.ones_like(F), F, np.log(F + f0)], 1)
        coef = np.linalg.lstsq(A, y, rcond=None)[0]
        return float(np.sum((A @ coef - y) ** 2)), coef

    grid = np.concatenate([[0.0], np.logspace(-2, 4, 121)])
    rss = [fit(f0)[0] for f0 in grid]
    i = int(np.argmin(rss))
    lo, hi = grid[max(i - 1, 0)], grid[min(i + 1, len(grid) - 1)]
    r = minimize_scalar(lambda f0: fit(f0)[0], bounds=(lo, hi), method='bounded', options={'xatol': 1e-8})
    f0 = float(r.x) if r.fun <= rss[i] else grid[i]
    return float(fit(f0)[1][1])


def decay_exponent_fit(curve, HS, window=None, prefactor='none'):
    """ Decay exponent xi in nats from a least-squares fit of -ln(H_S - X) against fragment size.
    # Arguments
        curve:  InfoCurve
        HS:  missing information in bits
        window:  (first, last) fragment sizes, inclusive; None uses the whole curve
        prefactor:  'none' fits a straight line, 'log' adds a ln(#F + F0) regressor for log prefactors
    # Returns
        fitted xi
    """
    F = np.asarray(curve.fragment_sizes, dtype=float)
    d = np.asarray(curve.deficits, dtype=float) if curve.deficits is not None else HS - np.asarray(curve.values)
    if window is not None:
        m = (F >= window[0]) & (F <= window[1])
        F, d = F[m], d[m]
    if len(F) < (3 if prefactor == 'none' else 4):
        raise DomainError(f'fit window {window} holds {len(F)} points, too few for a fit')
    if np.any(d <= 0):
        raise DomainError(f'deficit H_S - X is not positive at #F={F[d <= 0].astype(int).tolist()}, '
                          f'choose a smaller window')
    y = -np.log(d)
    if prefactor == 'none':
        return float(np.polyfit(F, y, 1)[0])
    if prefactor == 'log':
        return _log_prefactor_slope(F, y)
    raise DomainError(f'prefactor={prefactor!r} must be none or log')


def auto_window(fragment_sizes, gammas, bounds=FIT_WINDOW):
    # Fragment sizes whose overlap lies inside bounds, as an inclusive (first, last) range
    F, G = np.asarray(fragment_sizes), np.asarray(gammas)
    m = (G >= bounds[0]) & (G <= bounds[1])
    if not m.any():
        raise DomainError(f'no fragment size has Gamma inside {bounds}')
    return int(F[m].min()), int(F[m].max())
