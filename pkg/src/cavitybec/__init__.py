"""Damping of the polariton soft mode in a cavity-coupled condensate."""

from .params import (
    MicroParams, ThermoParams, ConfigError, derive_thermo,
    critical_coupling, default_params, momentum_grid,
)
from .meanfield import (
    MeanField, ConvergenceError, CriticalPointError,
    solve_normal_phase, solve_steady_state, sweep_mean_field,
)
from .hamiltonian import ModelExpansion
from .bogoliubov import (
    GAMMA, OMEGA, ModeSet, DiagonalizationError, diagonalize_symplectic,
    build_polariton_matrix, build_phonon_matrix, phonon_bands, soft_mode,
    symmetry_residuals, negative_modes, mirrored_modes,
)
from .coupling import (
    VertexSet, vertex_coefficients, landau_beliaev_couplings,
    vw_connection_residual, v_reflection_residual, vertex_duality_residuals,
)
from .bath import (
    BathSpectrum, BathConstructionError, thermal_occupation,
    build_bath_spectrum,
)
from .response import (
    Response, BornMarkovResult, NumericsError, self_energy, build_response,
    spectral_sum_rule, damping_sweep, spectral_scan,
)
from .continuation import (
    MeromorphicModel, ComplexGrid, Pole, PoleSet, smooth_spectral,
    reconstruct_meromorphic, continue_green, cauchy_riemann_residual,
    march_cauchy_riemann, find_poles, companion_pole_candidates,
    spectral_peak_seeds, pole_sweep,
)
from .fockcheck import coupling_residuals, oracle_residuals
from .csvio import read_table, write_json_lines, write_table

__version__ = "0.1.0"
