"""Model parameters and unit conventions.

All frequencies are measured in units of the recoil frequency w_R = k^2/2m,
all lengths in units of 1/k, and hbar = k_B = 1.  In these units k = 1 and
m = 1/2, so a free atom at quasi-momentum q has kinetic energy q^2 and the
excited bands sit at 1 + q^2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace, fields


class ConfigError(ValueError):
    """Raised for invalid parameter values or malformed config input."""


@dataclass(frozen=True)
class MicroParams:
    """Microscopic parameters of the driven cavity-condensate system.

    Attributes
    ----------
    cavity_detuning : float
        Pump-cavity detuning Delta_C (recoil units). Must be negative.
    single_atom_shift : float
        Dispersive shift U_0 of the cavity resonance per atom.
    collision_strength : float
        s-wave coupling g (frequency times length).
    pump_amplitude : float
        Transverse pump two-photon amplitude eta_t.
    atom_number : int
        Condensate atom number N_c.
    site_count : int
        Box length in cavity wavelengths, kL/(2 pi).  Also the number of
        quasi-momentum grid points per band (including q = 0).
    condensate_width : float
        Transverse condensate width as kw; enters the 3D density-of-modes
        weight.
    temperature : float
        Temperature in recoil units (k_B = 1).
    phonon_damping : float
        Phenomenological phonon decay rate epsilon (recoil units).
    """

    cavity_detuning: float
    single_atom_shift: float = 0.0
    collision_strength: float = 0.0
    pump_amplitude: float = 0.0
    atom_number: int = 10_000
    site_count: int = 1001
    condensate_width: float = 2.0 * math.pi * math.sqrt(2.0)
    temperature: float = 0.0
    phonon_damping: float = 0.01

    def validate(self) -> None:
        if not self.cavity_detuning < 0:
            raise ConfigError(
                f"cavity detuning must be negative, got {self.cavity_detuning}")
        if self.atom_number < 1:
            raise ConfigError(f"atom_number must be >= 1, got {self.atom_number}")
        if self.site_count < 1 or self.site_count != int(self.site_count):
            raise ConfigError(
                f"site_count (kL/2pi) must be a positive integer, got {self.site_count}")
        if self.phonon_damping < 0:
            raise ConfigError(f"phonon_damping must be >= 0, got {self.phonon_damping}")
        if self.temperature < 0:
            raise ConfigError(f"temperature must be >= 0, got {self.temperature}")
        if self.condensate_width <= 0:
            raise ConfigError(f"condensate_width must be > 0, got {self.condensate_width}")


@dataclass(frozen=True)
class ThermoParams:
    """Coupling strengths that stay finite in the thermodynamic limit.

    y is the collective pump strength, u the collective dispersive shift and
    g_coll the collisional mean-field energy; all in recoil units.  The
    remaining fields are carried through from :class:`MicroParams`.
    """

    y: float
    u: float
    g_coll: float
    cavity_detuning: float
    temperature: float = 0.0
    phonon_damping: float = 0.01
    atom_number: int = 10_000
    site_count: int = 1001
    condensate_width: float = 2.0 * math.pi * math.sqrt(2.0)
    recoil: float = 1.0  # unit of all frequencies, stored for clarity

    def validate(self) -> None:
        if self.y < 0 or self.g_coll < 0:
            raise ConfigError("y and g_coll must be non-negative")
        if not self.cavity_detuning < 0:
            raise ConfigError("cavity detuning must be negative")
        if self.recoil != 1.0:
            raise ConfigError("recoil frequency is the unit and must equal 1")
        if self.site_count < 1:
            raise ConfigError("site_count must be a positive integer")

    def with_pump(self, y: float) -> "ThermoParams":
        return replace(self, y=y)


def derive_thermo(raw: MicroParams) -> ThermoParams:
    """Reduce microscopic parameters to thermodynamic-limit couplings.

    y = sqrt(2 N_c) eta_t, u = N_c U_0 / 4, g_coll = (N_c / L) g, with
    L = 2 pi * site_count (in 1/k units).
    """
    raw.validate()
    box_length = 2.0 * math.pi * raw.site_count
    p = ThermoParams(
        y=math.sqrt(2.0 * raw.atom_number) * raw.pump_amplitude,
        u=0.25 * raw.atom_number * raw.single_atom_shift,
        g_coll=raw.atom_number / box_length * raw.collision_strength,
        cavity_detuning=raw.cavity_detuning,
        temperature=raw.temperature,
        phonon_damping=raw.phonon_damping,
        atom_number=raw.atom_number,
        site_count=raw.site_count,
        condensate_width=raw.condensate_width,
    )
    p.validate()
    return p


def critical_coupling(p: ThermoParams) -> float:
    """Threshold pump strength of the self-organization transition.

    y_crit = sqrt(-Delta_C + 2u) * sqrt(w_R + 2 g_coll).  The photon sector
    must be stable, i.e. -Delta_C + 2u > 0.
    """
    photon_gap = -p.cavity_detuning + 2.0 * p.u
    if photon_gap <= 0:
        raise ConfigError(
            f"unstable photon sector: -Delta_C + 2u = {photon_gap} <= 0")
    return math.sqrt(photon_gap) * math.sqrt(p.recoil + 2.0 * p.g_coll)


def default_params(**overrides) -> ThermoParams:
    """Default parameter set used for all figure-scale runs.

    N_c = 1e4, kL/(2 pi) = 1001, g_coll = 0.1, Delta_C = -1000, u = 0,
    kw = 2 pi sqrt(2), epsilon = 0.01, T = 0, y = 0 (set the pump with
    ``with_pump`` or an override).
    """
    p = ThermoParams(
        y=0.0,
        u=0.0,
        g_coll=0.1,
        cavity_detuning=-1000.0,
        temperature=0.0,
        phonon_damping=0.01,
        atom_number=10_000,
        site_count=1001,
        condensate_width=2.0 * math.pi * math.sqrt(2.0),
    )
    if overrides:
        p = replace(p, **overrides)
    p.validate()
    return p


def momentum_grid(p: ThermoParams):
    """Quasi-momentum grid q_n = n / site_count for n = +-1 .. +-(site_count-1)/2.

    q = 0 is excluded: that sector holds the condensate and the polaritons.
    Returned in ascending order, units of k.
    """
    import numpy as np

    n_max = (p.site_count - 1) // 2
    n = np.arange(-n_max, n_max + 1)
    n = n[n != 0]
    return n / float(p.site_count)


# ---------------------------------------------------------------------------
# plain-text config ingestion: one "name = value" per line, '#' comments

_THERMO_KEYS = {f.name for f in fields(ThermoParams)}
_MICRO_KEYS = {f.name for f in fields(MicroParams)}


def parse_config_text(text: str) -> dict:
    """Parse a key-value config file into a dict of floats/ints.

    Unknown keys are hard errors; values are parsed as int when possible,
    else float.
    """
    out: dict = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.split("#", 1)[0].strip()
        if not stripped:
            continue
        if "=" not in stripped:
            raise ConfigError(f"line {lineno}: expected 'name = value', got {line!r}")
        key, _, value = stripped.partition("=")
        key = key.strip()
        value = value.strip()
        if key in out:
            raise ConfigError(f"line {lineno}: duplicate key {key!r}")
        try:
            out[key] = int(value)
        except ValueError:
            try:
                out[key] = float(value)
            except ValueError:
                out[key] = value
    return out


def thermo_from_mapping(mapping: dict) -> ThermoParams:
    """Build ThermoParams from a config mapping.

    Accepts either thermodynamic keys directly (y, u, g_coll, ...) or
    microscopic keys (pump_amplitude, collision_strength, ...), but not a
    mixture of the two coupling conventions.
    """
    unknown = set(mapping) - _THERMO_KEYS - _MICRO_KEYS
    if unknown:
        raise ConfigError(f"unknown config keys: {sorted(unknown)}")
    micro_only = set(mapping) & (_MICRO_KEYS - _THERMO_KEYS)
    if micro_only:
        base = MicroParams(cavity_detuning=mapping.get("cavity_detuning", -1000.0))
        kwargs = {k: v for k, v in mapping.items() if k in _MICRO_KEYS}
        return derive_thermo(replace(base, **kwargs))
    defaults = default_params()
    kwargs = {k: v for k, v in mapping.items() if k in _THERMO_KEYS}
    p = replace(defaults, **kwargs)
    p.validate()
    return p
