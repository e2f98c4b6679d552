# Full Hilbert-space reference simulation of system plus environment

import logging
from dataclasses import dataclass
from functools import reduce
from itertools import product

import numpy as np
from scipy.special import entr

from models.decoherence import FragmentSpec
from utils.chernoff import qcb_error_bound, qcb_info_from_bound
from utils.general import DimensionCapError, DomainError
from utils.metrics import InfoPoint, accessible_info_fano, accessible_info_from_pe, helstrom_error_numeric, qmi
from utils.numerics import LN2, check_density, check_pure, clipped_spectrum, reduce_pure, trace_norm, \
    von_neumann_entropy

logger = logging.getLogger(__name__)

ORACLE_DIM_CAP = 2 ** 13  # system times environment dimension
ENSEMBLE_CAP = 2 ** 12  # pure terms kept for mixed inputs
NORM_TOL = 1e-10


@dataclass(eq=False)
class FullState:
    vectors: np.ndarray  # (n, dim) pure terms of the ensemble
    weights: np.ndarray  # (n,) non-negative, summing to 1
    factor_dims: tuple  # system first, then environment components

    def __post_init__(self):
        self.vectors = np.atleast_2d(np.asarray(self.vectors, dtype=complex))
        self.weights = np.asarray(self.weights, dtype=float).ravel()
        self.factor_dims = tuple(int(d) for d in self.factor_dims)
        if self.vectors.shape != (len(self.weights), self.dim):
            raise DomainError(f'ensemble shape {self.vectors.shape} does not match {len(self.weights)} weights '
                              f'of dimension {self.dim}')
        if np.any(self.weights < 0) or abs(self.weights.sum() - 1) > NORM_TOL:
            raise DomainError(f'ensemble weights must be non-negative and sum to 1, got {self.weights.sum():.15g}')
        norms = np.linalg.norm(self.vectors, axis=1)
        if np.abs(norms - 1).max() > NORM_TOL:
            raise DomainError(f'ensemble vectors are not normalized, max |norm - 1| = {np.abs(norms - 1).max():.3g}')

    @property
    def dim(self):
        return int(np.prod(self.factor_dims))

    @property
    def is_pure(self):
        return len(self.weights) == 1

    @property
    def env_size(self):
        return len(self.factor_dims) - 1


def _ensemble(state):
    # Pure-state decomposition (weights, vectors) of a vector or density matrix
    state = np.asarray(state, dtype=complex)
    if state.ndim == 1:
        return np.ones(1), check_pure(state)[None]
    w, v = clipped_spectrum(check_density(state))
    m = w > 0
    return w[m], v[:, m].T


def evolve_full(model, initial_system=None, components=None):
    """ Evolve sum_s c_s|s> (x) (x)_k rho_k(0) branch-wise: each pointer branch carries (x)_k U_{k|s}.
    # Arguments
        model:  DecoherenceModel
        initial_system:  system vector or density matrix, default sqrt(p_s) superposition
        components:  number of leading environment components to keep, default all
    # Returns
        FullState over system plus the kept components
    """
    comps = model.components[:components] if components is not None else model.components
    dims = (model.pointer.D,) + tuple(c.dim for c in comps)
    dim = int(np.prod(dims))
    if dim > ORACLE_DIM_CAP:
        raise DimensionCapError(f'full dimension {dim} exceeds oracle cap {ORACLE_DIM_CAP}')
    sys0 = model.pointer.system_state() if initial_system is None else initial_system
    sw, sv = _ensemble(sys0)
    if sv.shape[1] != model.pointer.D:
        raise DomainError(f'system state dimension {sv.shape[1]} does not match D={model.pointer.D}')
    env = [(np.ones(1), c.initial_vector[None]) if c.is_pure else _ensemble(c.initial_state) for c in comps]
    n = len(sw) * int(np.prod([len(w) for w, _ in env]))
    if n > ENSEMBLE_CAP:
        raise DimensionCapError(f'{n} ensemble terms exceed cap {ENSEMBLE_CAP}')

    phases = model.system_phases()
    values = model.pointer.pointer_values
    props = [[c.propagator(s) for c in comps] for s in values]
    weights, vectors = [], []
    for (i, a), *terms in product(enumerate(sv), *[list(enumerate(v)) for _, v in env]):
        w = sw[i] * np.prod([env[k][0][j] for k, (j, _) in enumerate(terms)])
        branches = [phases[si] * a[si] * reduce(np.kron, [u @ chi for u, (_, chi) in zip(props[si], terms)],
                                                np.ones(1, complex)) for si in range(len(values))]
        weights.append(w)
        vectors.append(np.concatenate(branches))  # system is the leading factor
    return FullState(np.array(vectors), np.array(weights), dims)


def reduced_state(full, subsystems):
    # Density matrix of the listed factors (0 is the system), ascending factor order
    keep = sorted(set(subsystems))
    if any(k < 0 or k >= len(full.factor_dims) for k in keep):
        raise DomainError(f'subsystems {keep} out of range for {len(full.factor_dims)} factors')
    return sum(w * reduce_pure(v, full.factor_dims, keep) for w, v in zip(full.weights, full.vectors))


def _frag(full, frag):
    frag = frag if isinstance(frag, FragmentSpec) else FragmentSpec(tuple(frag))
    if any(i < 0 or i >= full.env_size for i in frag):
        raise DomainError(f'fragment {frag.indices} outside environment of size {full.env_size}')
    return frag


def system_fragment_state(full, frag):
    # rho_SF with the system first; fragment components follow in ascending index order
    frag = _frag(full, frag)
    return reduced_state(full, [0] + [i + 1 for i in frag])


def _blocks(rho_sf, D):
    # Unnormalized pointer blocks <s|rho_SF|s'>
    d = rho_sf.shape[0] // D
    return rho_sf.reshape(D, d, D, d)


def good_decoherence_residual(full, frag):
    """Trace distance ||rho_SF - Phi(rho_SF)||_1 between rho_SF and its pointer-dephased branching form."""
    rho = system_fragment_state(full, frag)
    D = full.factor_dims[0]
    b = _blocks(rho, D).copy()
    for s in range(D):
        b[s, :, s, :] = 0
    return trace_norm(b.reshape(rho.shape))


def _conditional(rho_sf, D):
    # Pointer probabilities and conditional fragment states from rho_SF
    b = _blocks(rho_sf, D)
    p = np.array([np.trace(b[s, :, s, :]).real for s in range(D)])
    rhos = [b[s, :, s, :] / p[s] if p[s] > 0 else None for s in range(D)]
    return p, rhos


def oracle_measures(full, frag):
    """ Every measure evaluated on the exact joint state of system and fragment.
    # Arguments
        full:  FullState
        frag:  fragment of the simulated environment
    # Returns
        InfoPoint; Holevo from pointer measurement of S, qmi from rho_SF, Helstrom and QCB for D = 2,
        a Fano lower bound on the accessible information for D > 2
    """
    frag = _frag(full, frag)
    rho = system_fragment_state(full, frag)
    D = full.factor_dims[0]
    p, rhos = _conditional(rho, D)
    p = p / p.sum()
    HS = float(np.sum(entr(p)) / LN2)
    dims = [D] + [full.factor_dims[i + 1] for i in frag]
    live = [s for s in range(D) if p[s] > 0]
    if not len(frag) or len(live) < 2:
        holevo = 0.0
    else:
        mix = sum(p[s] * rhos[s] for s in live)
        holevo = von_neumann_entropy(mix) - sum(p[s] * von_neumann_entropy(rhos[s]) for s in live)
        holevo = float(np.clip(holevo, 0.0, HS))
    info = qmi(rho, dims, [0]) if len(frag) else 0.0
    if D != 2:  # no Helstrom or Chernoff closed forms; Fano with an achievable error instead
        acc, pe = accessible_info_fano(HS, p[live], [rhos[s] for s in live]) if len(live) > 1 else (0.0, 0.0)
        return InfoPoint(len(frag), holevo, float(acc), float('nan'), float(pe), float('nan'), info)
    if len(live) < 2:
        return InfoPoint(len(frag), 0.0, 0.0, 0.0, 0.0, 0.0, info)
    pe = helstrom_error_numeric(p[0], rhos[0], rhos[1]) if len(frag) else min(p)
    chernoff = qcb_error_bound(p[0], [(rhos[0], rhos[1])] if len(frag) else [])
    return InfoPoint(len(frag), holevo, float(accessible_info_from_pe(HS, pe)),
                     float(qcb_info_from_bound(HS, chernoff.pe_bound)), float(pe), chernoff.pe_bound, info)


def _bloch_grid(resolution):
    # Equal-area directions: cos(theta) uniform on [-1, 1] (poles included), phi uniform on [0, 2 pi)
    ct = np.linspace(-1, 1, resolution)
    phi = np.linspace(0, 2 * np.pi, resolution, endpoint=False)
    st = np.sqrt(np.clip(1 - ct ** 2, 0, 1))
    n = np.stack([np.outer(st, np.cos(phi)), np.outer(st, np.sin(phi)), np.outer(ct, np.ones_like(phi))], -1)
    return n.reshape(-1, 3)


def grid_accessible_lower_bound(full, frag, resolution=128):
    """ Lower bound on the accessible information of a single-qubit fragment.
    # Arguments
        full:  FullState
        frag:  one qubit component
        resolution:  grid points per Bloch angle
    # Returns
        max over projective qubit measurements on the grid of I(pointer outcome : qubit outcome), bits
    """
    frag = _frag(full, frag)
    if len(frag) != 1 or full.factor_dims[frag.indices[0] + 1] != 2:
        raise DomainError('grid search needs a fragment of exactly one qubit')
    if resolution < 8:
        raise DomainError(f'grid resolution {resolution} must be at least 8')
    rho = system_fragment_state(full, frag)
    D = full.factor_dims[0]
    b = _blocks(rho, D)
    sigma = np.array([[[0, 1], [1, 0]], [[0, -1j], [1j, 0]], [[1, 0], [0, -1]]])
    t = np.array([np.trace(b[s, :, s, :]).real for s in range(D)])  # p_s
    r = np.array([[np.trace(b[s, :, s, :] @ m).real for m in sigma] for s in range(D)])  # Bloch vectors times p_s
    n = _bloch_grid(resolution)
    nr = n @ r.T  # (directions, D)
    joint = np.stack([(t + nr) / 2, (t - nr) / 2], -1).clip(0)  # P(s, +/-)
    hs = np.sum(entr(t / t.sum())) / LN2
    ho = np.sum(entr(joint.sum(1)), -1) / LN2
    hj = np.sum(entr(joint), (1, 2)) / LN2
    return float(np.max(hs + ho - hj))
