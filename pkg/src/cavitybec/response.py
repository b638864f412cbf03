"""Self-energies, Born-Markov damping rates and the polariton response.

The soft polariton couples to the Landau and Beliaev composite phonon
modes; integrating the bath out gives the finite-sum self-energies

    Sigma^X(z) = (1/N_c) sum_q w_q |g^X_q|^2 (N^X_q)^2 / (z - omega^X_q),

with w_q = 1 (1D density of modes) or (1/2pi)(q w)^2 (3D), and the closed
polariton Green's function G(z) = 1/(z - omega_s - Sigma^L(z) - Sigma^B(z)).
The real-axis spectral function is rho(omega) = -2 Im G(omega).
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace

import numpy as np

from .params import ThermoParams, ConfigError, critical_coupling, momentum_grid
from .meanfield import MeanField, solve_steady_state
from .hamiltonian import ModelExpansion
from .bogoliubov import ModeSet, diagonalize_symplectic, mirrored_modes
from .coupling import vertex_coefficients, landau_beliaev_couplings
from .bath import BathSpectrum, build_bath_spectrum


class NumericsError(RuntimeError):
    """Numerical failure outside root finding (pole collisions, instability)."""


_Z_CHUNK = 4096  # cap on len(z) * n_q intermediates when evaluating sums


def _dos_weights(bath: BathSpectrum, p: ThermoParams, dos_mode: str):
    if dos_mode == "3d":
        return (bath.q * p.condensate_width) ** 2 / (2.0 * np.pi)
    if dos_mode == "1d":
        return np.ones_like(bath.q)
    raise ConfigError(f"dos_mode must be '1d' or '3d', got {dos_mode!r}")


def self_energy(channel: str, z, bath: BathSpectrum, p: ThermoParams,
                dos_mode: str = "3d"):
    """Evaluate Sigma^channel at real or complex z (scalar or array)."""
    if channel == "landau":
        g, n, om = bath.g_landau, bath.nl, bath.omega_l
    elif channel == "beliaev":
        g, n, om = bath.g_beliaev, bath.nb, bath.omega_b
    else:
        raise ConfigError(f"channel must be 'landau' or 'beliaev', got {channel!r}")
    weights = (bath.degeneracy * _dos_weights(bath, p, dos_mode)
               * np.abs(g) ** 2 * n ** 2 / p.atom_number)
    z_arr = np.atleast_1d(np.asarray(z, dtype=complex))
    out = np.empty(z_arr.shape, dtype=complex)
    step = max(1, _Z_CHUNK // max(1, len(om)))
    for i in range(0, len(z_arr), step):
        denom = z_arr[i:i + step, None] - om[None, :]
        if bath.epsilon == 0.0:
            hit = np.abs(denom) < 1e-12
            if np.any(hit):
                raise NumericsError(
                    "self-energy evaluated on a bath frequency with epsilon = 0")
        out[i:i + step] = (weights[None, :] / denom).sum(axis=1)
    return out if np.ndim(z) else complex(out[0])


@dataclass(frozen=True)
class BornMarkovResult:
    """Additive shift/rate per channel from Sigma evaluated at omega_s."""

    omega_s: float
    delta_l: float
    gamma_l: float
    delta_b: float
    gamma_b: float

    @property
    def pole(self) -> complex:
        return (self.omega_s + self.delta_l + self.delta_b
                - 1j * (self.gamma_l + self.gamma_b))


@dataclass(frozen=True)
class Response:
    """Soft-mode frequency plus bath, ready for response evaluations."""

    params: ThermoParams
    mf: MeanField
    omega_s: float
    soft_index: int
    polariton: ModeSet
    bath: BathSpectrum
    dos_mode: str = "3d"

    def self_energy(self, channel, z):
        return self_energy(channel, z, self.bath, self.params, self.dos_mode)

    def inverse_green(self, z):
        return (np.asarray(z, dtype=complex) - self.omega_s
                - self.self_energy("landau", z) - self.self_energy("beliaev", z))

    def green(self, z):
        return 1.0 / self.inverse_green(z)

    def spectral(self, omega_grid):
        """rho(omega) = -2 Im G on a real grid."""
        return -2.0 * np.imag(self.green(np.asarray(omega_grid, dtype=float)))

    def born_markov(self) -> BornMarkovResult:
        sl = self.self_energy("landau", self.omega_s)
        sb = self.self_energy("beliaev", self.omega_s)
        return BornMarkovResult(omega_s=self.omega_s,
                                delta_l=sl.real, gamma_l=-sl.imag + 0.0,
                                delta_b=sb.real, gamma_b=-sb.imag + 0.0)


def build_response(p: ThermoParams, mf: MeanField | None = None,
                   dos_mode: str = "3d") -> Response:
    """Full pipeline at one parameter point: mean field, soft mode, bands,
    couplings, bath.

    Bands at -q are the complex conjugates of those at +q, so only the
    positive half of the momentum grid is diagonalized; each entry carries
    degeneracy 2 in the bath sums.  Band labels are by ascending frequency
    (the two lowest branches feed the Landau/Beliaev pairs).
    """
    if mf is None:
        mf = solve_steady_state(p)
    exp = ModelExpansion(p, mf)
    pol = diagonalize_symplectic(exp.polariton_matrix(), sector="polariton")
    soft_index = 0  # photon-like branch sits near -Delta_C, far above
    omega_s = float(pol.frequencies[soft_index])
    v_tensor, w_tensor = exp.interaction_tensors()

    grid = momentum_grid(p)
    q_half = grid[grid > 0]
    omega1 = np.empty_like(q_half)
    omega2 = np.empty_like(q_half)
    g_l = np.empty(len(q_half), dtype=complex)
    g_b = np.empty(len(q_half), dtype=complex)
    for i, q in enumerate(q_half):
        ms = diagonalize_symplectic(exp.phonon_matrix(q), sector=f"phonon q={q:g}")
        vs = vertex_coefficients(v_tensor, w_tensor, pol, ms,
                                 mirrored_modes(ms), q)
        g_l[i], g_b[i] = landau_beliaev_couplings(vs, soft_index)
        omega1[i], omega2[i] = ms.frequencies[0], ms.frequencies[1]

    bath = build_bath_spectrum(q_half, omega1, omega2, g_l, g_b,
                               p.temperature, p.phonon_damping)
    return Response(params=p, mf=mf, omega_s=omega_s, soft_index=soft_index,
                    polariton=pol, bath=bath, dos_mode=dos_mode)


def spectral_sum_rule(resp: Response, halfwidth: float = 50.0,
                      step: float | None = None):
    """Trapezoidal integral of rho over a wide grid, divided by 2 pi.

    Should come out 1 (the equal-time commutator); the grid spans the
    support with margin `halfwidth` and resolves the Lorentzian scale
    epsilon.
    """
    eps = max(resp.bath.epsilon, 1e-4)
    if step is None:
        step = eps / 5.0
    lo = min(0.0, resp.omega_s) - halfwidth
    hi = max(resp.omega_s, float(np.max(resp.bath.omega_b.real))) + halfwidth
    grid = np.arange(lo, hi + step, step)
    # the dressed polariton pole can be much narrower than epsilon; refine
    # a window around it so the trapezoid resolves the Lorentzian
    bm = resp.born_markov()
    width = max(bm.gamma_l + bm.gamma_b, 1e-9)
    if width < eps:
        center = bm.omega_s + bm.delta_l + bm.delta_b
        fine = np.arange(center - 200.0 * width, center + 200.0 * width,
                         width / 10.0)
        grid = np.unique(np.concatenate([grid, fine]))
    rho = resp.spectral(grid)
    return float(np.trapezoid(rho, grid) / (2.0 * np.pi)), grid, rho


# -- sweep drivers ---------------------------------------------------------

def _sweep_point(args):
    p, y, epsilons, temperatures, dos_mode = args
    mf = solve_steady_state(p.with_pump(y))
    rows = []
    base = build_response(p.with_pump(y), mf=mf, dos_mode=dos_mode)
    for eps in epsilons:
        for temp in temperatures:
            bath = build_bath_spectrum(
                base.bath.q, base.bath.omega1, base.bath.omega2,
                base.bath.g_landau, base.bath.g_beliaev, temp, eps)
            resp = replace(base, bath=bath,
                           params=replace(p.with_pump(y), phonon_damping=eps,
                                          temperature=temp))
            rows.append((eps, temp, resp.born_markov()))
    return y, base.omega_s, rows


def damping_sweep(p: ThermoParams, y_values, epsilons=(0.01,),
                  temperatures=(None,), dos_mode: str = "3d",
                  workers: int | None = None):
    """Born-Markov rates over a pump sweep, for each (epsilon, T) pair.

    Bands and couplings are computed once per y and shared across the
    epsilon/temperature variations (they only alter the bath bookkeeping).
    Returns a list of records, ordered as the inputs.
    """
    temperatures = [p.temperature if t is None else t for t in temperatures]
    tasks = [(p, float(y), tuple(epsilons), tuple(temperatures), dos_mode)
             for y in y_values]
    if workers and workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_sweep_point, tasks))
    else:
        results = [_sweep_point(t) for t in tasks]

    y_crit = critical_coupling(p)
    records = []
    for y, omega_s, rows in results:
        for eps, temp, bm in rows:
            records.append({
                "y": y, "y_frac": y / y_crit, "epsilon": eps,
                "temperature": temp, "omega_s": omega_s,
                "delta_l": bm.delta_l, "gamma_l": bm.gamma_l,
                "delta_b": bm.delta_b, "gamma_b": bm.gamma_b,
            })
    return records


def spectral_scan(p: ThermoParams, y_values, omega_grid,
                  dos_mode: str = "3d", workers: int | None = None):
    """rho(omega) rows for each pump strength; long-format records."""
    omega_grid = np.asarray(omega_grid, dtype=float)
    out = []
    for y in y_values:
        resp = build_response(p.with_pump(float(y)), dos_mode=dos_mode)
        out.append((float(y), resp.spectral(omega_grid), resp))
    return omega_grid, out
