# Tests for thresholds, smallest fragments and redundancy

import numpy as np
import pytest

import utils.redundancy as redundancy_module
from utils.chernoff import qcb_info
from utils.general import DomainError, InsufficientEnvironmentError
from utils.metrics import accessible_info_closed_form, holevo_pointer_closed_form
from utils.numerics import binary_entropy
from utils.redundancy import (asymptotic_redundancy, min_fragment_size, redundancy, redundancy_result,
                              threshold)

P1, G2, E = 0.25, 49 / 64, 10000
HS = 0.8112781244591328
MEASURES = {'holevo_pointer': lambda n: holevo_pointer_closed_form(P1, G2 ** n),
            'accessible_info': lambda n: accessible_info_closed_form(P1, G2 ** n),
            'qcb_info': lambda n: qcb_info(HS, P1, G2 ** n)}


def test_threshold():
    assert threshold(HS, 0.01) == pytest.approx(0.99 * HS)
    assert threshold(HS, 1.0) == 0.0
    assert threshold(HS, 0.01, 'entropic') == pytest.approx(HS - binary_entropy(0.01))
    for delta, mode in ((0.0, 'linear'), (1.5, 'linear'), (0.6, 'entropic')):
        with pytest.raises(DomainError):
            threshold(HS, delta, mode)
    with pytest.raises(DomainError):
        threshold(HS, 0.1, 'log')


@pytest.mark.parametrize('measure, delta, f', [('accessible_info', 0.01, 22), ('qcb_info', 0.01, 23),
                                               ('holevo_pointer', 1e-4, 34), ('accessible_info', 1e-4, 41),
                                               ('qcb_info', 1e-4, 42)])
def test_min_fragment_size(measure, delta, f):
    assert min_fragment_size(MEASURES[measure], HS, delta, env_size=E) == f


def test_measures_agree_on_order_of_magnitude():
    f = {m: min_fragment_size(fn, HS, 1e-4, env_size=E) for m, fn in MEASURES.items()}
    assert f['holevo_pointer'] <= f['accessible_info'] <= f['qcb_info']
    assert 0.8 <= f['qcb_info'] / f['holevo_pointer'] <= 1.25


def test_whole_deficit_needs_one_component():
    assert min_fragment_size(MEASURES['holevo_pointer'], HS, 1.0, env_size=E) == 1
    assert min_fragment_size(lambda n: HS, HS, 1e-4, env_size=E) == 1


@pytest.mark.parametrize('measure', list(MEASURES))
def test_entropic_threshold(measure):
    fn = MEASURES[measure]
    f = min_fragment_size(fn, HS, 0.01, 'entropic', env_size=E)
    t = threshold(HS, 0.01, 'entropic')
    assert fn(f) >= t and (f == 1 or fn(f - 1) < t)
    assert f <= min_fragment_size(fn, HS, 0.01, 'linear', env_size=E)


def test_bisection_beyond_scan_limit(monkeypatch):
    monkeypatch.setattr(redundancy_module, 'SCAN_LIMIT', 10)
    assert min_fragment_size(MEASURES['holevo_pointer'], HS, 1e-4, env_size=1000) == 34


def test_insufficient_environment():
    with pytest.raises(InsufficientEnvironmentError):
        min_fragment_size(MEASURES['accessible_info'], HS, 1e-4, env_size=10)
    with pytest.raises(DomainError):
        min_fragment_size(MEASURES['accessible_info'], HS, 1e-4, env_size=0)


def test_redundancy():
    assert redundancy(E, 22) == pytest.approx(E / 22)
    assert redundancy(E, E) == 1.0
    assert redundancy(100, 4) == 25.0
    with pytest.raises(DomainError):
        redundancy(E, 0)
    with pytest.raises(DomainError):
        redundancy(10, 11)


def test_asymptotic_redundancy():
    assert asymptotic_redundancy(E, G2, 0.01) == pytest.approx(579.92, abs=0.01)
    assert asymptotic_redundancy(E, G2, 0.5) == pytest.approx(E * -np.log(G2) / np.log(2))
    assert asymptotic_redundancy(E, np.exp(-1), np.exp(-1)) == pytest.approx(E)
    for args in ((E, G2, 0.6), (E, 1.0, 0.01), (E, 0.0, 0.01), (0, G2, 0.01)):
        with pytest.raises(DomainError):
            asymptotic_redundancy(*args)


def test_relative_gap_shrinks():
    gaps = [redundancy_result('qcb_info', MEASURES['qcb_info'], HS, d, E, G2).relative_gap
            for d in (0.1, 0.01, 1e-3, 1e-4)]
    assert all(b < a for a, b in zip(gaps, gaps[1:]))


def test_redundancy_result_status():
    r = redundancy_result('accessible_info', MEASURES['accessible_info'], HS, 1e-4, 10, G2)
    assert r.status == 'insufficient environment'
    assert r.f_delta is None and r.r_delta is None and r.relative_gap is None
    assert r.r_asymptotic == pytest.approx(10 * -np.log(G2) / np.log(1e4))
    r = redundancy_result('accessible_info', MEASURES['accessible_info'], HS, 0.01, E, G2)
    assert (r.status, r.f_delta) == ('ok', 22)
    assert r.r_delta == pytest.approx(E / 22)
    assert redundancy_result('qcb_info', MEASURES['qcb_info'], HS, 0.9, E, G2).r_asymptotic is None
