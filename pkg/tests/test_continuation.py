import numpy as np
import pytest

from cavitybec.continuation import (
    MeromorphicModel, cauchy_riemann_residual, companion_pole_candidates,
    continue_green, find_poles, march_cauchy_riemann, pole_sweep,
    reconstruct_meromorphic, smooth_spectral, spectral_peak_seeds,
)
from cavitybec.params import critical_coupling, default_params
from cavitybec.response import NumericsError, build_response


class _Lorentzian:
    """G(z) = 1/(z - z0), one simple pole with unit residue."""

    def __init__(self, z0):
        self.z0 = z0

    def inverse_green(self, z):
        return np.asarray(z, dtype=complex) - self.z0

    def green(self, z):
        return 1.0 / self.inverse_green(z)


def test_newton_finds_exact_lorentzian_pole_and_residue():
    z0 = 0.83 - 0.021j
    ps = find_poles(_Lorentzian(z0), seeds=[0.8 - 0.01j])
    assert len(ps.poles) == 1
    pole = ps.poles[0]
    assert pole.z == pytest.approx(z0, abs=1e-10)
    assert pole.residue == pytest.approx(1.0, abs=1e-6)


def test_upper_half_plane_roots_are_rejected():
    ps = find_poles(_Lorentzian(0.8 + 0.02j), seeds=[0.8 - 0.01j])
    assert len(ps.poles) == 0
    assert len(ps.failed_seeds) == 1


def _toy_model(eps=0.01):
    # quasi-continuum: pole spacing well below the depth eps, as for a
    # physical bath discretized on a dense momentum grid
    centers = np.linspace(0.6, 1.1, 400)
    weights = np.full(400, 2e-5)
    return MeromorphicModel(c0=1.0, centers=centers, weights=weights,
                            eps=eps, fit_residual=0.0)


def test_reconstruction_recovers_synthetic_meromorphic_function():
    model = _toy_model()
    omega = np.arange(0.2, 1.6, 0.00125)
    fit = reconstruct_meromorphic(omega, model.green(omega), model.eps)
    zs = np.linspace(0.5, 1.2, 30) - 0.004j
    rel = np.abs(fit.green(zs) - model.green(zs)) / np.abs(model.green(zs))
    assert np.max(rel) < 1e-6


def test_continue_green_keeps_real_axis_row_verbatim():
    model = _toy_model()
    omega = np.arange(0.2, 1.6, 0.002)
    data = model.green(omega)
    grid, _fit = continue_green(omega, data, model.eps, nu_max=0.05, n_nu=16)
    np.testing.assert_array_equal(grid.values[0], data)
    assert grid.nu[0] == 0.0


def test_cauchy_riemann_certificate_on_analytic_continuation():
    model = _toy_model()
    omega = np.arange(0.2, 1.6, 0.002)
    grid, _fit = continue_green(omega, model.green(omega), model.eps,
                                nu_max=0.005, n_nu=24)
    res = cauchy_riemann_residual(grid)
    # certify analyticity away from the pole line's neighbourhood, where
    # the finite-difference stencils resolve the function
    smooth = (grid.omega < 0.5) | (grid.omega > 1.2)
    assert np.nanmax(res[:, smooth]) < 1e-6


def test_marching_matches_single_pole_continuation():
    # one pole well below the marching depth; the grid Nyquist time must
    # exceed the pole's decay time by a wide margin for marching to work
    omega = np.arange(-40.0, 40.0, 0.01)
    z0 = 0.4 - 0.05j
    data = 1.0 / (omega - z0)
    grid = march_cauchy_riemann(omega, data, nu_max=0.004, n_nu=8)
    exact = 1.0 / (grid.z() - z0)
    core = np.abs(grid.omega - 0.4) < 5.0
    err = np.max(np.abs(grid.values[:, core] - exact[:, core]))
    # limited by the finite window's background fit, not the multiplier
    assert err < 5e-5


def test_marching_aborts_below_the_pole_line():
    omega = np.arange(-40.0, 40.0, 0.02)
    data = 1.0 / (omega - (0.4 - 0.05j))
    with pytest.raises(NumericsError):
        march_cauchy_riemann(omega, data, nu_max=0.2, n_nu=64)


def test_smoothing_preserves_spectral_weight():
    omega = np.linspace(0.0, 2.0, 4001)
    rho = np.exp(-0.5 * ((omega - 1.0) / 0.01) ** 2)
    rho[omega > 1.4] = 0.0  # sharp edge
    out = smooth_spectral(omega, rho, width=0.02)
    assert np.trapezoid(out, omega) == pytest.approx(
        np.trapezoid(rho, omega), rel=1e-10)
    assert np.all(out > 0.0)


def test_peak_seeds_sit_below_the_maxima():
    omega = np.linspace(0.0, 2.0, 2001)
    rho = 1.0 / ((omega - 0.7) ** 2 + 0.01**2) \
        + 0.5 / ((omega - 1.3) ** 2 + 0.02**2)
    seeds = spectral_peak_seeds(omega, rho, n_peaks=2)
    assert len(seeds) == 2
    res = sorted(s.real for s in seeds)
    assert res[0] == pytest.approx(0.7, abs=2e-3)
    assert res[1] == pytest.approx(1.3, abs=2e-3)
    assert all(s.imag < 0 for s in seeds)


def test_companion_candidates_match_newton_roots():
    p = default_params()
    resp = build_response(p.with_pump(0.78 * critical_coupling(p)))
    cand = companion_pole_candidates(resp)
    cand = cand[(cand.imag < 0) & (cand.real > 0.2) & (cand.real < 2.0)]
    cand = cand[np.argsort(np.abs(cand.imag))][:3]
    ps = find_poles(resp, cand)
    assert len(ps.poles) == 3
    found = sorted((pl.z for pl in ps.poles), key=lambda z: z.real)
    seeds = sorted(cand, key=lambda z: z.real)
    for z, s in zip(found, seeds):
        assert z == pytest.approx(s, abs=1e-6)
