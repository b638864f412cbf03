import numpy as np

from cavitybec.params import critical_coupling, default_params
from cavitybec.meanfield import solve_steady_state
from cavitybec.fockcheck import (
    build_hamiltonian, coupling_residuals, oracle_residuals,
)


def test_operator_hamiltonian_is_hermitian():
    p = default_params()
    pp = p.with_pump(0.8 * critical_coupling(p))
    mf = solve_steady_state(pp)
    k = build_hamiltonian(pp, mf, 0.25)
    assert abs(k - k.conj().T).max() < 1e-9


def test_commutator_oracle_above_threshold():
    p = default_params()
    pp = p.with_pump(1.2 * critical_coupling(p))
    mf = solve_steady_state(pp)
    res = oracle_residuals(pp, mf, 0.3)
    assert max(res.values()) < 1e-10


def test_landau_beliaev_couplings_match_exact_commutators():
    p = default_params()
    pp = p.with_pump(1.2 * critical_coupling(p))
    mf = solve_steady_state(pp)
    res = coupling_residuals(pp, mf, 0.35)
    assert max(res.values()) < 1e-10
