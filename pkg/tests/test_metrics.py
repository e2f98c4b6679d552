# Tests for the pointer Holevo quantity, Helstrom error, accessible information and QMI

import numpy as np
import pytest

from conftest import random_ket
from models.decoherence import (DecoherenceModel, PointerModel, branching_state, cmaybe_component, fragment_overlap,
                                gamma_component)
from utils.chernoff import qcb_info
from utils.general import DimensionCapError, DomainError, NumericalError
from utils.metrics import (accessible_info_arctanh, accessible_info_closed_form, accessible_info_fano,
                           accessible_info_from_pe, achievable_error, clamp_probability, fano_lower_bound,
                           helstrom_error_numeric, helstrom_error_pure_product, holevo_pointer_arctanh,
                           holevo_pointer_closed_form, holevo_pointer_numeric, missing_information, pgm_error, qmi)
from utils.numerics import ket_to_dm

HS = 0.8112781244591328  # h(1/4)
GAMMA2 = (49 / 64) ** 2  # two components with |gamma| = 7/8


def model(p1, gammas):
    return DecoherenceModel(PointerModel.binary(p1), [gamma_component(g) for g in gammas])


def test_missing_information():
    assert missing_information(0.25) == pytest.approx(HS, abs=1e-15)
    assert missing_information(0.5) == pytest.approx(1.0, abs=1e-15)
    assert missing_information(1.0) == 0.0
    with pytest.raises(DomainError):
        missing_information(1.2)


def test_closed_form_values():
    assert helstrom_error_pure_product(0.25, GAMMA2) == pytest.approx(0.1257128, abs=1e-6)
    assert holevo_pointer_closed_form(0.25, GAMMA2) == pytest.approx(0.41880, abs=1e-4)
    assert accessible_info_closed_form(0.25, GAMMA2) == pytest.approx(0.2657, abs=5e-4)


def test_closed_form_limits():
    # Gamma = 1: nothing learned; Gamma = 0: everything
    assert holevo_pointer_closed_form(0.25, 1.0) == pytest.approx(0, abs=1e-12)
    assert accessible_info_closed_form(0.25, 1.0) == pytest.approx(0, abs=1e-12)
    assert holevo_pointer_closed_form(0.25, 0.0) == pytest.approx(HS, abs=1e-12)
    assert accessible_info_closed_form(0.25, 0.0) == pytest.approx(HS, abs=1e-12)
    assert helstrom_error_pure_product(0.25, 1.0) == pytest.approx(0.25, abs=1e-15)


def test_degenerate_pointer():
    for p1 in (0.0, 1.0):
        assert holevo_pointer_closed_form(p1, 0.3) == 0.0
        assert accessible_info_closed_form(p1, 0.3) == 0.0
        assert helstrom_error_pure_product(p1, 0.3) == 0.0


def test_small_gamma_helstrom_is_exact():
    # 2 p q Gamma / (1 + sqrt(1 - 4 p q Gamma)) keeps full relative precision
    G = 1e-30
    assert helstrom_error_pure_product(0.25, G) == pytest.approx(0.1875 * G, rel=1e-12)


@pytest.mark.parametrize('p1', [0.1, 0.25, 0.5, 0.8])
def test_arctanh_forms(p1):
    G = np.concatenate([np.logspace(-12, -1, 23), [0.3, 0.5, 0.9], 1 - np.logspace(-1, -12, 23)])
    assert holevo_pointer_arctanh(p1, G) == pytest.approx(holevo_pointer_closed_form(p1, G), abs=1e-10)
    assert accessible_info_arctanh(p1, G) == pytest.approx(accessible_info_closed_form(p1, G), abs=1e-10)


def test_arctanh_domain():
    with pytest.raises(DomainError):
        holevo_pointer_arctanh(0.25, 1.0)
    with pytest.raises(DomainError):
        accessible_info_arctanh(0.25, 0.0)
    with pytest.raises(DomainError):
        accessible_info_arctanh(0.0, 0.5)


def test_arrays():
    G = np.array([0.1, 0.5, 0.9])
    y = holevo_pointer_closed_form(0.25, G)
    assert y.shape == (3,)
    assert np.all(np.diff(y) < 0)
    with pytest.raises(DomainError):
        holevo_pointer_closed_form(0.25, np.array([0.5, 1.5]))


@pytest.mark.parametrize('p1', [0.25, 0.5, 0.9])
@pytest.mark.parametrize('gammas', [[0.875], [0.875, 0.875], [0.3, 0.6, 0.9], [0.5, 0.7, 0.8, 0.95, 0.2]])
def test_numeric_matches_closed_form(p1, gammas):
    m = model(p1, gammas)
    frag = m.first(len(gammas))
    G = fragment_overlap(m, frag)
    state = branching_state(m, frag)
    assert holevo_pointer_numeric(state) == pytest.approx(holevo_pointer_closed_form(p1, G), abs=1e-9)
    r1, r2 = state.fragment_states()
    pe = helstrom_error_numeric(p1, r1, r2)
    assert pe == pytest.approx(helstrom_error_pure_product(p1, G), abs=1e-10)
    assert accessible_info_from_pe(m.pointer.missing_information, pe) == \
        pytest.approx(accessible_info_closed_form(p1, G), abs=1e-9)


@pytest.mark.parametrize('p1', [0.1, 0.25, 0.5])
def test_numeric_matches_closed_form_cmaybe_grid(p1):
    for a in np.linspace(0, np.pi / 2, 20):
        m = DecoherenceModel(PointerModel.binary(p1), [cmaybe_component(a)] * 8)
        for n in range(1, 9):
            G = fragment_overlap(m, m.first(n))
            chi = holevo_pointer_numeric(branching_state(m, m.first(n)))
            assert chi == pytest.approx(holevo_pointer_closed_form(p1, G), abs=1e-9)


def test_numeric_empty_fragment():
    m = model(0.25, [0.875])
    assert holevo_pointer_numeric(branching_state(m, m.first(0))) == 0.0


def test_numeric_cap():
    m = model(0.25, [0.875] * 11)
    with pytest.raises(DimensionCapError):
        holevo_pointer_numeric(branching_state(m, m.first(11)))


def test_helstrom_identical_and_orthogonal():
    rho = np.diag([0.3, 0.7])
    assert helstrom_error_numeric(0.25, rho, rho) == pytest.approx(0.25, abs=1e-12)
    assert helstrom_error_numeric(0.25, np.diag([1.0, 0]), np.diag([0, 1.0])) == pytest.approx(0, abs=1e-12)
    with pytest.raises(DomainError):
        helstrom_error_numeric(0.25, rho, np.eye(4) / 4)


@pytest.mark.parametrize('p1', [0.1, 0.25, 0.5])
def test_ordering(p1):
    G = np.logspace(-8, 0, 33)
    holevo = holevo_pointer_closed_form(p1, G)
    accessible = accessible_info_closed_form(p1, G)
    assert np.all(holevo >= accessible - 1e-12)
    assert np.all(accessible >= -1e-12)
    assert np.all(qcb_info(missing_information(p1), min(p1, 1 - p1), G) <= accessible + 1e-12)
    assert np.all(holevo <= missing_information(p1) + 1e-12)


def test_fano_lower_bound():
    assert accessible_info_from_pe(HS, 0.0) == HS
    assert accessible_info_from_pe(HS, 0.5) == pytest.approx(HS - 1)
    with pytest.raises(DomainError):
        accessible_info_from_pe(HS, 0.6)
    assert fano_lower_bound(HS, 0.1) == pytest.approx(accessible_info_from_pe(HS, 0.1), abs=1e-15)
    h = -0.1 * np.log2(0.1) - 0.9 * np.log2(0.9)
    assert fano_lower_bound(np.log2(3), 0.1, D=3) == pytest.approx(np.log2(3) - h - 0.1, abs=1e-12)
    assert fano_lower_bound(np.log2(3), 0.1, D=3, base='e') == pytest.approx(np.log2(3) - h - 0.1 * np.log(2),
                                                                            abs=1e-12)
    with pytest.raises(DomainError):
        fano_lower_bound(HS, 0.6)
    with pytest.raises(DomainError):
        fano_lower_bound(HS, 0.1, D=1)


def test_clamp_probability():
    assert clamp_probability(1 + 1e-13, 0, 1) == 1
    assert clamp_probability(-1e-13, 0, 1) == 0
    assert clamp_probability(0.3, 0, 1) == 0.3
    with pytest.raises(NumericalError):
        clamp_probability(1.1, 0, 1)


def test_qmi():
    bell = ket_to_dm(np.array([1, 0, 0, 1]) / np.sqrt(2))
    assert qmi(bell, [2, 2], [0]) == pytest.approx(2, abs=1e-12)
    classical = np.diag([0.25, 0, 0, 0.75])
    assert qmi(classical, [2, 2], [0]) == pytest.approx(HS, abs=1e-12)
    product = np.kron(np.diag([0.3, 0.7]), np.diag([0.5, 0.5]))
    assert qmi(product, [2, 2], [1]) == pytest.approx(0, abs=1e-12)
    with pytest.raises(DomainError):
        qmi(bell, [2, 2], [0, 1])
    with pytest.raises(DimensionCapError):
        qmi(np.eye(2), [2] * 14, [0])


@pytest.mark.parametrize('p1', [0.1, 0.25, 0.5])
def test_closed_form_non_decreasing_in_fragment_size(p1):
    m = model(p1, [0.95, 0.5, 7 / 8, 0.99, 0.2, 7 / 8, 0.7, 0.999])
    G = np.array([fragment_overlap(m, m.first(n)) for n in range(m.env_size + 1)])
    assert np.all(np.diff(accessible_info_closed_form(p1, G)) >= -1e-12)
    assert np.all(np.diff(holevo_pointer_closed_form(p1, G)) >= -1e-12)


def test_pgm_error_extremes():
    p = [0.2, 0.3, 0.5]
    basis = [ket_to_dm(e) for e in np.eye(3)]
    assert pgm_error(p, basis) == pytest.approx(0, abs=1e-12)
    rho = np.diag([0.6, 0.3, 0.1])
    assert pgm_error(p, [rho] * 3) == pytest.approx(0.62, abs=1e-12)  # 1 - sum p^2
    assert achievable_error(p, [rho] * 3) == pytest.approx(0.5, abs=1e-12)  # guess the likeliest
    with pytest.raises(DomainError):
        pgm_error([1.0], [rho])
    with pytest.raises(DomainError):
        pgm_error([0.5, 0.6], [rho, rho])


def test_pgm_error_not_below_helstrom(rng):
    for p1 in (0.1, 0.25, 0.5):
        r1, r2 = ket_to_dm(random_ket(rng, 4)), ket_to_dm(random_ket(rng, 4))
        assert pgm_error([p1, 1 - p1], [r1, r2]) >= helstrom_error_numeric(p1, r1, r2) - 1e-12


def test_accessible_info_fano():
    acc, pe = accessible_info_fano(np.log2(3), [1 / 3] * 3, [ket_to_dm(e) for e in np.eye(3)])
    assert acc == pytest.approx(np.log2(3), abs=1e-12) and pe == pytest.approx(0, abs=1e-12)
    m = DecoherenceModel.from_config({'pointer': {'values': [-1, 0, 1], 'probabilities': [0.3, 0.4, 0.3]},
                                      'components': [[3, 'hamiltonian', {'upsilon': [[0, 0.5], [0.5, 0]],
                                                                         'initial': [1, 0]}]]})
    for n in range(1, 4):
        b = branching_state(m, m.first(n))
        acc, pe = accessible_info_fano(m.pointer.missing_information, m.pointer.p, b.fragment_states())
        assert 0 <= acc <= holevo_pointer_numeric(b) + 1e-12
        assert 0 <= pe <= 0.6
