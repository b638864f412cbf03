"""Resonance peak of the Beliaev damping rate.

Sweeps the pump strength below and above threshold and evaluates the
Born-Markov damping rates for a family of phonon linewidths.  The Beliaev
rate shows a sharp resonance where the soft-mode frequency matches the
bottom of the two-phonon continuum; the peak sharpens as the phonon
linewidth epsilon decreases.  Writes damping_resonance.csv.

Run:  python3 demos/damping_resonance.py [output_dir]
"""

import sys
from pathlib import Path

import numpy as np

from cavitybec import damping_sweep, critical_coupling, default_params, \
    write_table


def main(out_dir="demo_output"):
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    p = default_params()
    y_crit = critical_coupling(p)
    epsilons = (0.03, 0.01, 0.003)
    fracs = np.linspace(0.3, 1.3, 120)
    fracs = fracs[np.abs(fracs - 1.0) > 5e-3]

    print(f"sweeping {len(fracs)} pump strengths, epsilons {epsilons} ...")
    records = damping_sweep(p, fracs * y_crit, epsilons=epsilons)
    fields = ["y_frac", "epsilon", "omega_s", "gamma_b", "delta_b", "gamma_l"]
    rows = [{k: r[k] for k in fields} for r in records]
    write_table(out / "damping_resonance.csv", fields, rows,
                {"command": "demo-damping", "epsilons": list(epsilons)})

    for eps in epsilons:
        sub = [r for r in records if r["epsilon"] == eps
               and r["y_frac"] < 1.0]
        peak = max(sub, key=lambda r: r["gamma_b"])
        print(f"  eps = {eps:<6}: below-threshold peak gamma_B = "
              f"{peak['gamma_b']:.4f} at y/y_crit = {peak['y_frac']:.3f} "
              f"(omega_s = {peak['omega_s']:.3f})")
    print("the peak sits where omega_s equals twice the band-edge phonon")
    print("energy, and it grows as epsilon decreases: a genuine resonance,")
    print("not a linewidth artifact")
    print(f"wrote {out / 'damping_resonance.csv'}")


if __name__ == "__main__":
    main(*sys.argv[1:])
