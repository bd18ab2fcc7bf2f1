import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.special import eval_laguerre

from heralded_squeezing.phase_space import (
    GaussianState,
    beam_splitter,
    fock_chi,
    gaussian_chi,
    laguerre,
    squeeze,
    squeezer,
    symplectic_form,
    vacuum_state,
)


def test_vacuum_single_mode():
    state = vacuum_state(1)
    assert np.array_equal(state.cov, np.diag([0.5, 0.5]))
    assert np.array_equal(state.mean, [0.0, 0.0])
    assert gaussian_chi(state, [0.0, 0.0]) == 1


def test_vacuum_two_modes():
    assert np.array_equal(vacuum_state(2).cov, 0.5 * np.eye(4))


def test_vacuum_rejects_zero_modes():
    with pytest.raises(ValueError):
        vacuum_state(0)


def test_squeeze_identity_and_variances():
    vac = vacuum_state(1)
    assert np.allclose(squeeze(vac, 0.0).cov, vac.cov, atol=0)
    r = 0.7
    sq = squeeze(vac, r)
    assert np.allclose(sq.cov, np.diag([np.exp(-2 * r) / 2, np.exp(2 * r) / 2]), rtol=1e-14)
    lam = np.tanh(r)
    assert sq.cov[0, 0] == pytest.approx((1 - lam) / (2 * (1 + lam)), rel=1e-13)


def test_squeeze_bad_mode():
    with pytest.raises(IndexError):
        squeeze(vacuum_state(1), 0.3, mode=1)


def test_squeezer_is_symplectic():
    assert squeezer(0.3).is_symplectic()


def test_beam_splitter_blocks():
    assert np.array_equal(beam_splitter(1.0).matrix, np.eye(4))
    h = np.sqrt(0.5)
    expected = np.array([[h, 0, h, 0], [0, h, 0, h], [-h, 0, h, 0], [0, -h, 0, h]])
    assert np.allclose(beam_splitter(0.5).matrix, expected, atol=1e-15)
    with pytest.raises(ValueError):
        beam_splitter(1.2)


def test_random_transforms_symplectic():
    rng = np.random.default_rng(0)
    for T, r in zip(rng.uniform(0, 1, 1000), rng.uniform(-2, 2, 1000)):
        assert beam_splitter(T).is_symplectic(atol=1e-10)
        assert squeezer(r).is_symplectic(atol=1e-10)


def test_gaussian_chi_vacuum_and_svs_grid():
    r = 0.45
    svs = squeeze(vacuum_state(1), r)
    vac = vacuum_state(1)
    grid = np.linspace(-3, 3, 20)
    for tau in grid:
        for sigma in grid:
            expect_svs = np.exp(-(np.exp(2 * r) * tau**2 + np.exp(-2 * r) * sigma**2) / 4)
            assert abs(gaussian_chi(svs, [tau, sigma]) - expect_svs) < 1e-12
            assert gaussian_chi(vac, [tau, sigma]) == pytest.approx(np.exp(-(tau**2 + sigma**2) / 4), abs=1e-15)


def test_gaussian_chi_dimension_mismatch():
    with pytest.raises(ValueError):
        gaussian_chi(vacuum_state(2), [0.0, 1.0])


@settings(max_examples=50, deadline=None)
@given(st.floats(-2, 2), st.floats(0, 1))
def test_chi_at_origin_is_one(r, T):
    two = GaussianState(np.zeros(4), np.kron(np.eye(2), squeeze(vacuum_state(1), r).cov))
    mixed = beam_splitter(T).apply(two)
    assert gaussian_chi(mixed, np.zeros(4)) == 1
    assert mixed.is_physical()


def test_unphysical_state_detected():
    assert not GaussianState(np.zeros(2), np.diag([0.1, 0.1])).is_physical()


def test_symplectic_form_blocks():
    assert np.array_equal(symplectic_form(2)[:2, :2], [[0, 1], [-1, 0]])


@pytest.mark.parametrize("m", [0, 1, 2, 5, 13, 30])
def test_laguerre_recurrence_matches_scipy(m):
    x = np.linspace(0, 40, 81)
    assert np.allclose(laguerre(m, x), eval_laguerre(m, x), rtol=1e-10, atol=1e-10)


def test_fock_chi_values():
    vac = vacuum_state(1)
    assert fock_chi(0, [0.8, -1.1]) == pytest.approx(gaussian_chi(vac, [0.8, -1.1]).real, abs=1e-15)
    for m in range(8):
        assert fock_chi(m, [0.0, 0.0]) == 1.0
    assert fock_chi(1, [2.0, 0.0]) == pytest.approx(-np.exp(-1), abs=1e-15)


def test_fock_chi_bound():
    grid = np.linspace(-3, 3, 13)
    for m in (1, 3, 6):
        for tau in grid:
            for sigma in grid:
                rho = (tau**2 + sigma**2) / 2
                assert abs(fock_chi(m, [tau, sigma])) <= np.exp(-rho / 2) * abs(eval_laguerre(m, rho)) + 1e-14
