import math

import numpy as np
import pytest

from cavitybec.params import (
    ConfigError, MicroParams, ThermoParams, critical_coupling, derive_thermo,
    momentum_grid, default_params, parse_config_text, thermo_from_mapping,
)


def test_default_critical_coupling_frozen_value():
    # sqrt(-Delta_C) * sqrt(1 + 2 g_coll) = sqrt(1000 * 1.2) = sqrt(1200)
    assert critical_coupling(default_params()) == pytest.approx(
        34.64101615137754, abs=1e-12)


def test_critical_coupling_with_dispersive_shift_frozen_value():
    # -Delta_C + 2u = 1020 -> sqrt(1020 * 1.2) = sqrt(1224)
    p = default_params(u=10.0)
    assert critical_coupling(p) == pytest.approx(34.9857113690718, abs=1e-12)


def test_critical_coupling_monotonic_in_collisions_and_detuning():
    base = critical_coupling(default_params())
    assert critical_coupling(default_params(g_coll=0.2)) > base
    assert critical_coupling(default_params(cavity_detuning=-1100.0)) > base


def test_unstable_photon_sector_rejected():
    with pytest.raises(ConfigError):
        critical_coupling(default_params(cavity_detuning=-1.0, u=-1.0))


def test_derive_thermo_scalings():
    raw = MicroParams(cavity_detuning=-1000.0, single_atom_shift=0.004,
                      collision_strength=0.05, pump_amplitude=0.1,
                      atom_number=10_000, site_count=1001)
    p = derive_thermo(raw)
    assert p.y == pytest.approx(math.sqrt(20_000) * 0.1)
    assert p.u == pytest.approx(10.0)
    assert p.g_coll == pytest.approx(10_000 / (2 * math.pi * 1001) * 0.05)


def test_validation_rejects_bad_values():
    with pytest.raises(ConfigError):
        default_params(cavity_detuning=+5.0)
    with pytest.raises(ConfigError):
        MicroParams(cavity_detuning=-10.0, temperature=-1.0).validate()
    with pytest.raises(ConfigError):
        MicroParams(cavity_detuning=-10.0, phonon_damping=-0.1).validate()


def test_momentum_grid_shape_and_symmetry():
    grid = momentum_grid(default_params())
    assert len(grid) == 1000
    assert 0.0 not in grid
    np.testing.assert_allclose(grid, -grid[::-1])
    assert grid.max() == pytest.approx(500 / 1001)


def test_parse_config_text_roundtrip():
    text = """
    # comment line
    y = 21.5   # inline comment
    site_count = 501
    dos_mode = 3d
    """
    out = parse_config_text(text)
    assert out == {"y": 21.5, "site_count": 501, "dos_mode": "3d"}


def test_parse_config_text_rejects_duplicates_and_garbage():
    with pytest.raises(ConfigError):
        parse_config_text("y = 1\ny = 2")
    with pytest.raises(ConfigError):
        parse_config_text("just words")


def test_thermo_from_mapping_routes_micro_keys():
    p = thermo_from_mapping({"pump_amplitude": 0.1, "atom_number": 10_000})
    assert p.y == pytest.approx(math.sqrt(20_000) * 0.1)


def test_thermo_from_mapping_rejects_unknown_keys():
    with pytest.raises(ConfigError):
        thermo_from_mapping({"not_a_key": 1.0})


def test_with_pump_preserves_other_fields():
    p = default_params(temperature=0.05)
    q = p.with_pump(3.0)
    assert q.y == 3.0 and q.temperature == 0.05 and q.g_coll == p.g_coll
