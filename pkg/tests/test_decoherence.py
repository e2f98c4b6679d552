# Tests for pointer models, environment components, fragments and branching states

import itertools
from pathlib import Path

import numpy as np
import pytest

from models.decoherence import (DecoherenceModel, EnvComponent, FragmentSpec, PointerModel, branching_state,
                                cmaybe_component, component_overlap, decoherence_factor, fragment_overlap,
                                gamma_component)
from utils.general import ConfigError, DomainError, PreconditionError

ROOT = Path(__file__).resolve().parents[1]
SX = np.array([[0, 1], [1, 0]], complex)


@pytest.mark.parametrize('a', np.linspace(-np.pi, np.pi, 25))
def test_cmaybe_factor_is_abs_sin(a):
    assert decoherence_factor(cmaybe_component(a), 0, 1) == pytest.approx(abs(np.sin(a)), abs=1e-12)


def test_cmaybe_limits():
    assert decoherence_factor(cmaybe_component(np.pi / 2), 0, 1) == pytest.approx(1, abs=1e-12)
    assert decoherence_factor(cmaybe_component(0), 0, 1) == pytest.approx(0, abs=1e-12)


def test_identical_propagators():
    c = EnvComponent(np.diag([1.0, 0.0]), {0: np.eye(2), 1: np.eye(2)})
    assert c.is_pure
    assert decoherence_factor(c, 0, 1) == pytest.approx(1)


def test_invalid_pointer_value():
    c = cmaybe_component(0.3)
    with pytest.raises(DomainError):
        decoherence_factor(c, 0, 2)
    with pytest.raises(DomainError):
        decoherence_factor(c, 1, 1)


def test_gamma_component():
    for g in (0, 0.25, 0.875, 1):
        assert decoherence_factor(gamma_component(g), 0, 1) == pytest.approx(g, abs=1e-12)
    with pytest.raises(DomainError):
        gamma_component(1.5)


def test_mixed_component_overlap():
    # tr[rho^1/2 M rho^1/2 M] = sin^2 a + 2 sqrt(l1 l2) cos^2 a for rho = diag(l1, l2)
    a, r = 0.6, 0.4
    l1, l2 = (1 + r) / 2, (1 - r) / 2
    c = cmaybe_component(a, polarization=r)
    assert not c.is_pure
    expected = np.sin(a) ** 2 + 2 * np.sqrt(l1 * l2) * np.cos(a) ** 2
    assert component_overlap(c, 0, 1) == pytest.approx(expected, abs=1e-12)
    assert component_overlap(cmaybe_component(a), 0, 1) == pytest.approx(np.sin(a) ** 2, abs=1e-12)


def test_from_hamiltonian():
    theta = 0.7
    c = EnvComponent.from_hamiltonian(theta * SX, np.zeros((2, 2)), np.array([1, 0]), (0, 1))
    assert decoherence_factor(c, 0, 1) == pytest.approx(abs(np.cos(theta)), abs=1e-12)
    with pytest.raises(PreconditionError):
        EnvComponent.from_hamiltonian(np.array([[0, 1], [0, 0]]), np.zeros((2, 2)), np.array([1, 0]), (0, 1))


def test_non_unitary_propagator():
    with pytest.raises(PreconditionError):
        EnvComponent(np.diag([1.0, 0.0]), {0: np.eye(2), 1: 2 * np.eye(2)})


def test_pointer_model():
    p = PointerModel.binary(0.25)
    assert p.D == 2
    assert p.missing_information == pytest.approx(0.8112781, abs=1e-7)
    assert p.index(1) == 1
    with pytest.raises(DomainError):
        PointerModel((0, 1), (0.5, 0.6))
    with pytest.raises(DomainError):
        PointerModel((0, 0), (0.5, 0.5))
    with pytest.raises(DomainError):
        p.index(3)


def test_fragment_overlap_product():
    pointer = PointerModel.binary(0.3)
    angles = [0.2, 0.5, 0.9, 1.3]
    model = DecoherenceModel(pointer, [cmaybe_component(a) for a in angles])
    assert fragment_overlap(model, FragmentSpec()) == 1.0
    assert fragment_overlap(model, [1, 3]) == pytest.approx((np.sin(0.5) * np.sin(1.3)) ** 2, abs=1e-12)
    assert fragment_overlap(model, model.first(4)) == pytest.approx(np.prod(np.sin(angles) ** 2), abs=1e-12)
    with pytest.raises(DomainError):
        model.fragment([4])
    with pytest.raises(DomainError):
        FragmentSpec((0, 0))


def test_homogeneous_model():
    model = DecoherenceModel.homogeneous(PointerModel.binary(0.25), gamma_component(0.875), 10000)
    assert model.env_size == 10000
    g = model.component_overlaps()
    assert np.all(g == g[0])
    assert g[0] == pytest.approx(0.765625, abs=1e-12)


def test_model_validation():
    pointer = PointerModel.binary(0.5)
    with pytest.raises(DomainError):
        DecoherenceModel(pointer, [])
    bad = EnvComponent(np.diag([1.0, 0.0]), {0: np.eye(2), 2: np.eye(2)})
    with pytest.raises(PreconditionError):
        DecoherenceModel(pointer, [bad])
    with pytest.raises(PreconditionError):
        DecoherenceModel(pointer, [cmaybe_component(0.3)], system_hamiltonian=SX)
    DecoherenceModel(pointer, [cmaybe_component(0.3)], system_hamiltonian=np.diag([0.2, -0.4]))


def test_branching_state():
    model = DecoherenceModel(PointerModel.binary(0.25), [cmaybe_component(0), cmaybe_component(np.pi / 4)])
    b = branching_state(model, model.first(2))
    r0, r1 = b.fragment_states()
    assert r0.shape == (4, 4)
    assert np.trace(r0 @ r1).real == pytest.approx(0, abs=1e-12)  # a = 0 makes the branches orthogonal
    assert len(b.pairs()) == 2


def test_from_config():
    model = DecoherenceModel.from_config(ROOT / 'models' / 'cmaybe.yaml')
    assert model.env_size == 8
    assert model.pointer.probabilities == (0.25, 0.75)
    assert model.component_overlaps()[0] == pytest.approx(0.5, abs=1e-12)
    model = DecoherenceModel.from_config(ROOT / 'models' / 'cmaybe.yaml', p1=0.5)
    assert model.pointer.probabilities == (0.5, 0.5)


def test_from_config_mixed_and_qutrit():
    model = DecoherenceModel.from_config(ROOT / 'models' / 'mixed.yaml')
    assert model.env_size == 6 and not model.is_pure
    model = DecoherenceModel.from_config(ROOT / 'models' / 'qutrit.yaml')
    assert model.pointer.D == 3
    assert model.components[0].dim == 2
    # s = 0 leaves the qubit under omega alone, s = +-1 rotate it in opposite directions
    assert decoherence_factor(model.components[0], -1, 1) < 1


def test_from_config_errors():
    d = {'pointer': {'values': [0, 1], 'probabilities': [0.5, 0.5]}, 'components': [[2, 'spin', [0.3]]]}
    with pytest.raises(ConfigError):
        DecoherenceModel.from_config(d)
    with pytest.raises(ConfigError):
        DecoherenceModel.from_config({'components': [[1, 'cmaybe', [0.3]]]})


@pytest.mark.parametrize('c', [cmaybe_component(0.4), cmaybe_component(1.1, polarization=0.3),
                               EnvComponent.from_hamiltonian(0.5 * SX, np.diag([0.1, -0.1]), np.array([1, 0]),
                                                             (-1, 0, 1))])
def test_decoherence_factor_symmetric(c):
    values = sorted(c.propagators)
    for s1, s2 in itertools.combinations(values, 2):
        assert decoherence_factor(c, s1, s2) == pytest.approx(decoherence_factor(c, s2, s1), abs=1e-12)


def test_fragment_overlap_non_increasing():
    m = DecoherenceModel(PointerModel.binary(0.25), [gamma_component(g) for g in (0.9, 0.3, 1.0, 0.7, 0.05)])
    G = [fragment_overlap(m, m.first(n)) for n in range(m.env_size + 1)]
    assert G[0] == 1
    assert all(b <= a + 1e-15 for a, b in zip(G, G[1:]))


def test_from_config_rejects_non_mapping(tmp_path):
    f = tmp_path / 'list.yaml'
    f.write_text('- 1\n- 2\n')
    with pytest.raises(ConfigError):
        DecoherenceModel.from_config(f)
    with pytest.raises(ConfigError):
        DecoherenceModel.from_config({'pointer': [0, 1], 'components': []})
    with pytest.raises(ConfigError):
        DecoherenceModel.from_config({'pointer': {'probabilities': 0.5}, 'components': [[1, 'cmaybe', [0.3]]]})


def test_pairs_unknown_pointer_value():
    model = DecoherenceModel(PointerModel.binary(0.25), [cmaybe_component(0.3)])
    b = branching_state(model, model.first(1))
    assert len(b.pairs(1, 0)) == 1
    with pytest.raises(DomainError):
        b.pairs(0, 3)
