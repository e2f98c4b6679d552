# Information measures: pointer Holevo quantity, accessible information, Helstrom error, QMI

import logging
from dataclasses import dataclass

import numpy as np

from utils.general import DimensionCapError, DomainError, NumericalError
from utils.numerics import binary_entropy, clipped_spectrum, partial_trace, trace_norm, von_neumann_entropy

logger = logging.getLogger(__name__)

NUMERIC_DIM_CAP = 2 ** 10  # largest fragment dimension assembled as a full matrix
QMI_DIM_CAP = 2 ** 13  # largest joint dimension accepted by qmi
CLAMP_TOL = 1e-12  # probabilities this far outside their range are clamped, further is an error


@dataclass
class InfoPoint:
    fragment_size: int
    holevo_pointer: float
    accessible_info: float
    qcb_info: float
    pe_helstrom: float  # achievable_error when D > 2
    pe_qcb: float
    qmi: float = None  # only where the joint state is available


def _check_p1(p1):
    p1 = np.asarray(p1, dtype=float)
    if np.any(np.isnan(p1)) or np.any(p1 < 0) or np.any(p1 > 1):
        raise DomainError(f'p1={p1} must lie in [0, 1]')
    return p1


def _check_gamma(G):
    G = np.asarray(G, dtype=float)
    if np.any(np.isnan(G)) or np.any(G < 0) or np.any(G > 1):
        raise DomainError(f'Gamma={G} must lie in [0, 1]')
    return G


def _out(x):
    return float(x) if np.ndim(x) == 0 else x


def clamp_probability(p, lo, hi, name='probability'):
    """Clamp p into [lo, hi] when it is outside by at most CLAMP_TOL, error beyond that."""
    if p < lo - CLAMP_TOL or p > hi + CLAMP_TOL:
        raise NumericalError(f'{name} {p:.15g} outside [{lo:.15g}, {hi:.15g}] beyond tolerance {CLAMP_TOL:g}')
    if (p < lo or p > hi) and max(lo - p, p - hi) > 1e-15:
        logger.warning(f'WARNING: {name} {p:.15g} clamped into [{lo:.15g}, {hi:.15g}]')
    return min(max(p, lo), hi)


def missing_information(p1):
    # H_S = h(p1) for a binary pointer
    return binary_entropy(_check_p1(p1))


def holevo_pointer_numeric(state):
    """ Pointer Holevo quantity chi(S:F) = S(sum_s p_s rho_F|s) - sum_s p_s S(rho_F|s) of a branching state.
    # Arguments
        state:  BranchingState, fragment dimension at most NUMERIC_DIM_CAP
    # Returns
        chi in bits
    """
    dim = int(np.prod(state.dims)) if state.size else 1
    if dim > NUMERIC_DIM_CAP:
        raise DimensionCapError(f'fragment dimension {dim} exceeds numeric cap {NUMERIC_DIM_CAP}, '
                                f'use the closed forms')
    p = state.pointer.p
    if np.count_nonzero(p) < 2:
        return 0.0
    rhos = state.fragment_states()
    mix = sum(pi * r for pi, r in zip(p, rhos))
    chi = von_neumann_entropy(mix) - sum(pi * von_neumann_entropy(r) for pi, r in zip(p, rhos) if pi > 0)
    return float(np.clip(chi, 0.0, state.pointer.missing_information))


def holevo_pointer_closed_form(p1, Gamma):
    # h[(1 + sqrt(1 - 4 p1 p2 (1 - Gamma)))/2], pure conditional states
    p1, G = _check_p1(p1), _check_gamma(Gamma)
    p2 = 1 - p1
    x = np.sqrt(np.clip(1 - 4 * p1 * p2 * (1 - G), 0, 1))
    return _out(binary_entropy((1 + x) / 2))


def _arctanh2(x, one_minus_x2):
    # arctanh(x)/ln 2 as log2[(1 + x)^2/(1 - x^2)]/2 with 1 - x^2 supplied exactly
    return 0.5 * np.log2((1 + x) ** 2 / one_minus_x2)


def holevo_pointer_arctanh(p1, Gamma):
    """Same quantity as holevo_pointer_closed_form written as -1/2 log2[p1 p2 (1-Gamma)] - x arctanh2(x).

    Requires 0 < p1 < 1 and 0 <= Gamma < 1.
    """
    p1, G = _check_p1(p1), _check_gamma(Gamma)
    if np.any((p1 == 0) | (p1 == 1)) or np.any(G == 1):
        raise DomainError('arctanh form needs 0 < p1 < 1 and Gamma < 1')
    q = p1 * (1 - p1) * (1 - G)
    x = np.sqrt(np.clip(1 - 4 * q, 0, 1))
    return _out(-0.5 * np.log2(q) - x * _arctanh2(x, 4 * q))


def helstrom_error_pure_product(p1, Gamma):
    # (1 - sqrt(1 - 4 p1 p2 Gamma))/2, evaluated as 2 p1 p2 Gamma / (1 + sqrt(...)) to keep small values exact
    p1, G = _check_p1(p1), _check_gamma(Gamma)
    q = p1 * (1 - p1) * G
    return _out(2 * q / (1 + np.sqrt(np.clip(1 - 4 * q, 0, 1))))


def accessible_info_closed_form(p1, Gamma):
    # H_S - h[(1 + sqrt(1 - 4 p1 p2 Gamma))/2]
    p1, G = _check_p1(p1), _check_gamma(Gamma)
    return _out(binary_entropy(p1) - binary_entropy(helstrom_error_pure_product(p1, G)))


def accessible_info_arctanh(p1, Gamma):
    """H_S + 1/2 log2[p1 p2 Gamma] + x arctanh2(x), x = sqrt(1 - 4 p1 p2 Gamma); needs 0 < p1 < 1, 0 < Gamma."""
    p1, G = _check_p1(p1), _check_gamma(Gamma)
    if np.any((p1 == 0) | (p1 == 1)) or np.any(G == 0):
        raise DomainError('arctanh form needs 0 < p1 < 1 and Gamma > 0')
    q = p1 * (1 - p1) * G
    x = np.sqrt(np.clip(1 - 4 * q, 0, 1))
    return _out(binary_entropy(p1) + 0.5 * np.log2(q) + x * _arctanh2(x, 4 * q))


def helstrom_error_numeric(p1, rho1, rho2):
    """ Minimum error probability for discriminating rho1 (prior p1) from rho2 (prior 1-p1).
    # Arguments
        p1:  prior of rho1
        rho1, rho2:  density matrices of equal dimension, at most NUMERIC_DIM_CAP
    # Returns
        (1 - ||p1 rho1 - p2 rho2||_1)/2 in [0, min(p1, p2)]
    """
    p1 = float(_check_p1(p1))
    rho1, rho2 = np.asarray(rho1), np.asarray(rho2)
    if rho1.shape != rho2.shape:
        raise DomainError(f'state shapes differ: {rho1.shape} vs {rho2.shape}')
    if rho1.shape[0] > NUMERIC_DIM_CAP:
        raise DimensionCapError(f'dimension {rho1.shape[0]} exceeds numeric cap {NUMERIC_DIM_CAP}')
    p2 = 1 - p1
    pe = 0.5 * (1 - trace_norm(p1 * rho1 - p2 * rho2))
    return clamp_probability(pe, 0.0, min(p1, p2), 'Helstrom error')


def accessible_info_from_pe(HS, pe):
    # H_S - h(P_e)
    if not 0 <= pe <= 0.5:
        raise DomainError(f'P_e={pe} must lie in [0, 1/2]')
    return HS - binary_entropy(pe)


def pgm_error(p, rhos):
    """ Error probability of the pretty-good measurement M_s = S^-1/2 p_s rho_s S^-1/2, S = sum_s p_s rho_s.
    # Arguments
        p:  prior of each hypothesis
        rhos:  density matrices, one per hypothesis, dimension at most NUMERIC_DIM_CAP
    # Returns
        1 - sum_s p_s tr[M_s rho_s], an achievable error and so an upper bound on the minimum one
    """
    p = np.asarray(p, dtype=float)
    if len(p) != len(rhos) or len(p) < 2:
        raise DomainError(f'{len(p)} priors for {len(rhos)} states, need at least two of each')
    if np.any(p < 0) or abs(p.sum() - 1) > CLAMP_TOL:
        raise DomainError(f'priors {p.tolist()} must be non-negative and sum to 1')
    if rhos[0].shape[0] > NUMERIC_DIM_CAP:
        raise DimensionCapError(f'dimension {rhos[0].shape[0]} exceeds numeric cap {NUMERIC_DIM_CAP}')
    w, v = clipped_spectrum(sum(pi * r for pi, r in zip(p, rhos)))
    s = (v * np.where(w > 0, 1 / np.sqrt(np.where(w > 0, w, 1.0)), 0.0)) @ v.conj().T  # S^-1/2 on its support
    success = sum(pi ** 2 * np.trace(s @ r @ s @ r).real for pi, r in zip(p, rhos) if pi > 0)
    return clamp_probability(1 - success, 0.0, 1.0, 'PGM error')


def achievable_error(p, rhos):
    # Better of the pretty-good measurement and guessing the likeliest hypothesis, at most 1 - 1/D
    return min(pgm_error(p, rhos), 1 - float(np.max(p)))


def accessible_info_fano(HS, p, rhos):
    """(bound, error) where bound is Fano's lower bound on the accessible information fed with achievable_error.

    Valid for any D and mixed states; floored at 0.
    """
    pe = min(achievable_error(p, rhos), 1 - 1 / len(p))
    return max(fano_lower_bound(HS, pe, len(p)), 0.0), pe


def fano_lower_bound(HS, pe, D=2, base=2):
    """H_S - h(P_e) - P_e log(D - 1); base 2 gives bits, base 'e' takes the last term in nats."""
    if D < 2:
        raise DomainError(f'D={D} must be at least 2')
    if not 0 <= pe <= 1 - 1 / D:
        raise DomainError(f'P_e={pe} must lie in [0, 1 - 1/D]')
    log = np.log if base == 'e' else np.log2
    return HS - binary_entropy(pe) - (pe * log(D - 1) if D > 2 else 0.0)


def qmi(rho, factor_dims, part_a):
    """Quantum mutual information I(A:B) = S(A) + S(B) - S(AB) in bits.

    factor_dims: tensor factor dimensions of rho; part_a: factor indices of A, B is the rest
    """
    dims = list(factor_dims)
    d = int(np.prod(dims))
    if d > QMI_DIM_CAP:
        raise DimensionCapError(f'joint dimension {d} exceeds cap {QMI_DIM_CAP}')
    a = sorted(set(part_a))
    b = [i for i in range(len(dims)) if i not in a]
    if not a or not b:
        raise DomainError(f'partition {a} | {b} must split the factors into two nonempty parts')
    sa = von_neumann_entropy(partial_trace(rho, dims, a))
    sb = von_neumann_entropy(partial_trace(rho, dims, b))
    return float(max(sa + sb - von_neumann_entropy(rho), 0.0))
