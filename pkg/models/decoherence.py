# Pure-decoherence models: pointer observable, environment components, fragments and branching states

import argparse
import logging
import math
import sys
from dataclasses import dataclass, field
from pathlib import Path

sys.path.append('./')  # to run '$ python *.py' files in subdirectories
logger = logging.getLogger(__name__)

import numpy as np
import yaml
from scipy.linalg import expm

from utils.chernoff import pairwise_chernoff_exponent
from utils.general import ConfigError, DomainError, PreconditionError, check_file, colorstr, set_logging
from utils.metrics import accessible_info_fano, holevo_pointer_numeric
from utils.numerics import (DENSITY_TOL, check_density, check_hermitian, check_pure, check_unitary, ket_to_dm,
                            kron_all, psd_power, shannon_entropy)

PURITY_TOL = 1e-10  # tr(rho^2) >= 1 - PURITY_TOL counts as pure


@dataclass(frozen=True)
class PointerModel:
    pointer_values: tuple  # eigenvalues of the pointer observable, system basis order
    probabilities: tuple  # p_s = <s|rho_S|s>

    def __post_init__(self):
        values = tuple(float(s) for s in self.pointer_values)
        probs = tuple(float(p) for p in self.probabilities)
        if len(values) < 2:
            raise DomainError(f'pointer observable needs D >= 2 values, got {values}')
        if len(values) != len(probs):
            raise DomainError(f'{len(values)} pointer values but {len(probs)} probabilities')
        if len(set(values)) != len(values):
            raise DomainError(f'pointer values must be distinct, got {values}')
        if any(p < 0 or p > 1 for p in probs) or abs(sum(probs) - 1) > DENSITY_TOL:
            raise DomainError(f'pointer probabilities {probs} must lie in [0, 1] and sum to 1')
        object.__setattr__(self, 'pointer_values', values)
        object.__setattr__(self, 'probabilities', probs)

    @classmethod
    def binary(cls, p1, values=(0, 1)):
        if not 0 <= p1 <= 1:
            raise DomainError(f'p1={p1} must lie in [0, 1]')
        return cls(values, (p1, 1.0 - p1))

    @property
    def D(self):
        return len(self.pointer_values)

    @property
    def p(self):
        return np.array(self.probabilities)

    @property
    def missing_information(self):
        # H_S in bits
        return shannon_entropy(self.probabilities)

    def index(self, s):
        try:
            return self.pointer_values.index(float(s))
        except (ValueError, TypeError):
            raise DomainError(f'{s!r} is not a pointer value of {self.pointer_values}') from None

    def system_state(self, coherent=True):
        # Pure superposition sum_s sqrt(p_s)|s> or its dephased density matrix
        return np.sqrt(self.p).astype(complex) if coherent else np.diag(self.p).astype(complex)


@dataclass(frozen=True, eq=False)
class EnvComponent:
    initial_state: np.ndarray  # density matrix rho_k(0)
    propagators: dict  # pointer value -> unitary U_{k|s}
    initial_vector: np.ndarray = None  # |psi_k(0)> when the initial state is pure
    label: str = 'component'

    def __post_init__(self):
        rho = check_density(self.initial_state)
        props = {float(s): check_unitary(u) for s, u in self.propagators.items()}
        if any(u.shape != rho.shape for u in props.values()):
            raise PreconditionError(f'propagator shapes {[u.shape for u in props.values()]} '
                                    f'do not match initial state {rho.shape}')
        psi = self.initial_vector
        if psi is None and np.trace(rho @ rho).real >= 1 - PURITY_TOL:
            w, v = np.linalg.eigh(rho)
            psi = v[:, -1]
        if psi is not None:
            psi = check_pure(psi)
        object.__setattr__(self, 'initial_state', rho)
        object.__setattr__(self, 'propagators', props)
        object.__setattr__(self, 'initial_vector', psi)

    @classmethod
    def from_hamiltonian(cls, upsilon, omega, initial_state, pointer_values, t=1.0, label='hamiltonian'):
        """Component evolving as U_{k|s} = exp[-i(s*upsilon + omega)t] for each pointer value s."""
        upsilon, omega = check_hermitian(upsilon), check_hermitian(omega)
        rho = np.asarray(initial_state, dtype=complex)
        if rho.ndim == 1:
            return cls(ket_to_dm(rho), {s: expm(-1j * (s * upsilon + omega) * t) for s in pointer_values},
                       initial_vector=rho, label=label)
        return cls(rho, {s: expm(-1j * (s * upsilon + omega) * t) for s in pointer_values}, label=label)

    @property
    def dim(self):
        return self.initial_state.shape[0]

    @property
    def is_pure(self):
        return self.initial_vector is not None

    def propagator(self, s):
        try:
            return self.propagators[float(s)]
        except (KeyError, TypeError, ValueError):
            raise DomainError(f'{s!r} is not a pointer value of this component') from None

    def conditional_vector(self, s):
        if not self.is_pure:
            raise DomainError('conditional vector requested for a mixed component')
        return self.propagator(s) @ self.initial_vector

    def conditional_state(self, s):
        u = self.propagator(s)
        if self.is_pure:
            return ket_to_dm(u @ self.initial_vector)
        return u @ self.initial_state @ u.conj().T


def cmaybe_propagator(a):
    # sin a|0><0| + cos a(|0><1| + |1><0|) - sin a|1><1|
    return np.array([[math.sin(a), math.cos(a)], [math.cos(a), -math.sin(a)]], dtype=complex)


def cmaybe_component(a, polarization=1.0):
    """C-maybe qubit: identity for s=0, rotation for s=1, environment starts near |0>.

    polarization r in [0, 1] sets rho(0) = diag((1+r)/2, (1-r)/2); r=1 is the pure |0>.
    """
    if not np.isfinite(a):
        raise DomainError(f'angle a={a} must be finite')
    if not 0 <= polarization <= 1:
        raise DomainError(f'polarization={polarization} must lie in [0, 1]')
    props = {0.0: np.eye(2, dtype=complex), 1.0: cmaybe_propagator(a)}
    if polarization == 1:
        return EnvComponent(np.diag([1.0, 0.0]).astype(complex), props, initial_vector=np.array([1, 0], complex),
                            label=f'cmaybe(a={a:.6g})')
    rho = np.diag([(1 + polarization) / 2, (1 - polarization) / 2]).astype(complex)
    return EnvComponent(rho, props, label=f'cmaybe(a={a:.6g}, r={polarization:.6g})')


def gamma_component(gamma, polarization=1.0):
    # C-maybe component with decoherence factor |gamma| (a = arcsin gamma)
    if not 0 <= gamma <= 1:
        raise DomainError(f'gamma={gamma} must lie in [0, 1]')
    return cmaybe_component(math.asin(gamma), polarization)


def decoherence_factor(component, s1, s2):
    """|<psi_{k|s1}|psi_{k|s2}>| for pure components, tr[rho_{k|s1}^1/2 rho_{k|s2}^1/2] for mixed ones."""
    if float(s1) == float(s2):
        raise DomainError(f'decoherence factor needs two distinct pointer values, got {s1} twice')
    if component.is_pure:
        g = abs(np.vdot(component.conditional_vector(s1), component.conditional_vector(s2)))
    else:
        r1, r2 = component.conditional_state(s1), component.conditional_state(s2)
        g = np.trace(psd_power(r1, 0.5) @ psd_power(r2, 0.5)).real
    return float(np.clip(g, 0.0, 1.0))


def component_overlap(component, s1, s2):
    # Squared overlap entering Gamma: |gamma_k|^2 for pure, the c=1/2 generalized overlap for mixed
    g = decoherence_factor(component, s1, s2)
    return g * g if component.is_pure else g


@dataclass(frozen=True)
class FragmentSpec:
    indices: tuple = ()

    def __post_init__(self):
        idx = tuple(int(i) for i in self.indices)
        if len(set(idx)) != len(idx):
            raise DomainError(f'fragment indices must be distinct, got {idx}')
        object.__setattr__(self, 'indices', idx)

    def __len__(self):
        return len(self.indices)

    def __iter__(self):
        return iter(self.indices)


COMPONENTS = {'cmaybe': cmaybe_component, 'gamma': gamma_component}


def _matrix(x):
    # Nested lists of numbers or complex strings ('0.5j') -> complex array
    return np.array([[complex(v) if isinstance(v, str) else v for v in row] for row in x], dtype=complex) \
        if np.ndim(x) == 2 else np.array([complex(v) if isinstance(v, str) else v for v in x], dtype=complex)


def parse_components(rows, pointer_values):
    # rows of [count, kind, args] -> list of components, one shared object per row
    logger.info('\n%3s%8s  %-12s%-40s' % ('', 'n', 'kind', 'arguments'))
    components = []
    for i, row in enumerate(rows):
        try:
            n, kind, args = row
        except (TypeError, ValueError):
            raise ConfigError(f'component row {i} must read [count, kind, args], got {row}')
        if not isinstance(n, int) or n < 1:
            raise ConfigError(f'component row {i}: count must be a positive integer, got {n}')
        if kind == 'hamiltonian':
            a = dict(args)
            c = EnvComponent.from_hamiltonian(_matrix(a['upsilon']), _matrix(a.get('omega', np.zeros((2, 2)))),
                                              _matrix(a['initial']), pointer_values, a.get('t', 1.0))
        elif kind in COMPONENTS:
            c = COMPONENTS[kind](**args) if isinstance(args, dict) else COMPONENTS[kind](*args)
        else:
            raise ConfigError(f'component row {i}: unknown kind {kind!r}, use one of {[*COMPONENTS, "hamiltonian"]}')
        if set(c.propagators) != set(float(s) for s in pointer_values):
            raise ConfigError(f'component row {i}: propagators cover {sorted(c.propagators)}, '
                              f'pointer values are {list(pointer_values)}')
        logger.info('%3s%8s  %-12s%-40s' % (i, n, kind, args))
        components += [c] * n
    return components


class DecoherenceModel:
    """System with a pointer observable, coupled to independent environment components.

    Each component k evolves as U_{k|s} conditioned on the pointer value s of the system.
    """

    def __init__(self, pointer, components, system_hamiltonian=None, time=1.0):
        self.pointer = pointer
        self.components = tuple(components)
        if not self.components:
            raise DomainError('environment needs at least one component')
        values = set(pointer.pointer_values)
        for k, c in enumerate(self.components):
            if set(c.propagators) != values:
                raise PreconditionError(f'component {k} propagators cover {sorted(c.propagators)}, '
                                        f'pointer values are {sorted(values)}')
        h = np.zeros((pointer.D, pointer.D), complex) if system_hamiltonian is None else \
            check_hermitian(system_hamiltonian)
        pi = np.diag(pointer.pointer_values)
        if np.abs(pi @ h - h @ pi).max() > 1e-10:
            raise PreconditionError('system self-Hamiltonian does not commute with the pointer observable')
        self.system_hamiltonian, self.time = h, float(time)

    @classmethod
    def homogeneous(cls, pointer, component, count, **kwargs):
        if count < 1:
            raise DomainError(f'environment size {count} must be positive')
        return cls(pointer, [component] * int(count), **kwargs)

    @classmethod
    def from_config(cls, cfg, p1=None):
        # model dict or *.yaml path, p1 overrides the first pointer probability of a binary pointer
        if isinstance(cfg, dict):
            d, source = cfg, 'model'
        else:
            source = Path(cfg).name
            with open(check_file(cfg)) as f:
                d = yaml.load(f, Loader=yaml.SafeLoader)  # model dict
        if not isinstance(d, dict):
            raise ConfigError(f'top level must be a mapping, got {type(d).__name__}', source=source)
        try:
            ptr = d["pointer"]
            if not isinstance(ptr, dict):
                raise ConfigError(f'pointer must be a mapping, got {type(ptr).__name__}', source=source)
            values = ptr.get('values', [0, 1])
            probs = ptr['probabilities']
            if p1 is not None and p1 != probs[0]:
                logger.info(f'Overriding {source} p1={probs[0]} with p1={p1}')
                if len(values) != 2:
                    raise ConfigError(f'p1 override needs a binary pointer, {source} has D={len(values)}')
                probs = [p1, 1 - p1]
            pointer = PointerModel(values, probs)
            comps = parse_components(d['components'], pointer.pointer_values)
            h = d.get('system_hamiltonian')
            return cls(pointer, comps, None if h is None else _matrix(h), d.get('time', 1.0))
        except KeyError as e:
            raise ConfigError(f'missing key {e}', source=source) from None
        except (TypeError, AttributeError) as e:
            raise ConfigError(f'malformed model: {e}', source=source) from None

    @property
    def env_size(self):
        return len(self.components)

    @property
    def is_pure(self):
        return all(c.is_pure for c in self.components)

    def fragment(self, indices):
        frag = indices if isinstance(indices, FragmentSpec) else FragmentSpec(tuple(indices))
        bad = [i for i in frag if not 0 <= i < self.env_size]
        if bad:
            raise DomainError(f'fragment indices {bad} outside environment of size {self.env_size}')
        return frag

    def first(self, n):
        # Fragment made of the first n components
        if not 0 <= n <= self.env_size:
            raise DomainError(f'fragment size {n} outside [0, {self.env_size}]')
        return FragmentSpec(tuple(range(n)))

    def system_phases(self):
        # exp(-i h_s t) on the pointer basis
        return np.exp(-1j * np.diag(self.system_hamiltonian).real * self.time)

    def component_overlaps(self, s1=None, s2=None):
        # Per-component squared overlaps, evaluated once per distinct component object
        s1 = self.pointer.pointer_values[0] if s1 is None else s1
        s2 = self.pointer.pointer_values[1] if s2 is None else s2
        cache = {}
        for c in self.components:
            if id(c) not in cache:
                cache[id(c)] = component_overlap(c, s1, s2)
        return np.array([cache[id(c)] for c in self.components])

    def info(self):
        n = {}
        for c in self.components:
            n[c.label] = n.get(c.label, 0) + 1
        logger.info(f"{colorstr('model: ')}D={self.pointer.D} p={list(self.pointer.probabilities)} "
                    f"H_S={self.pointer.missing_information:.6f} bits, #E={self.env_size} "
                    + ', '.join(f'{v}x {k}' for k, v in n.items()))


def fragment_overlap(model, frag, s1=None, s2=None):
    """Gamma = product over the fragment of the per-component squared overlaps, 1 for an empty fragment."""
    frag = model.fragment(frag)
    if not len(frag):
        return 1.0
    g = model.component_overlaps(s1, s2)
    return float(np.prod(g[list(frag.indices)]))


@dataclass
class BranchingState:
    pointer: PointerModel
    conditional: dict = field(default_factory=dict)  # pointer value -> tuple of per-component states

    @property
    def size(self):
        return len(next(iter(self.conditional.values())))

    @property
    def dims(self):
        return [r.shape[0] for r in next(iter(self.conditional.values()))]

    def fragment_states(self):
        # rho_{F|s} as full matrices, pointer order
        return [kron_all(self.conditional[s]) for s in self.pointer.pointer_values]

    def pairs(self, s1=None, s2=None):
        # Per-component (rho_{k|s1}, rho_{k|s2}) pairs
        values = self.pointer.pointer_values
        s1 = values[0 if s1 is None else self.pointer.index(s1)]
        s2 = values[1 if s2 is None else self.pointer.index(s2)]
        return list(zip(self.conditional[s1], self.conditional[s2]))


def branching_state(model, frag):
    """Branching form rho_{S F} = sum_s p_s |s><s| (x) (x)_k rho_{k|s} restricted to a fragment."""
    frag = model.fragment(frag)
    comps = [model.components[i] for i in frag]
    return BranchingState(model.pointer, {s: tuple(c.conditional_state(s) for c in comps)
                                          for s in model.pointer.pointer_values})


if __name__ == '__main__':
    parser = argparse.ArgumentParser()
    parser.add_argument('--cfg', type=str, default='models/cmaybe.yaml', help='model.yaml')
    parser.add_argument('--p1', type=float, default=None, help='override first pointer probability')
    opt = parser.parse_args()
    opt.cfg = check_file(opt.cfg)  # check file
    set_logging()

    # Create model
    model = DecoherenceModel.from_config(opt.cfg, p1=opt.p1)
    model.info()
    g = model.component_overlaps()
    HS = model.pointer.missing_information
    logger.info('%10s%16s%16s%16s%16s' % ('#F', 'Gamma', 'chi', 'fano', 'xi_pair'))
    for n in range(1, min(model.env_size, 6) + 1):
        b = branching_state(model, model.first(n))
        fano, _ = accessible_info_fano(HS, model.pointer.p, b.fragment_states())
        logger.info('%10g%16.6g%16.6g%16.6g%16.6g' % (n, np.prod(g[:n]), holevo_pointer_numeric(b), fano,
                                                      pairwise_chernoff_exponent(b)))
