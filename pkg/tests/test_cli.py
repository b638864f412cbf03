import numpy as np

from cavitybec.cli import main
from cavitybec.csvio import read_table


def test_meanfield_command_writes_table(tmp_path):
    code = main(["meanfield", "--output-dir", str(tmp_path),
                 "--set", "y_points=5", "--set", "y_frac_min=0.2",
                 "--set", "y_frac_max=1.2"])
    assert code == 0
    meta, names, rows = read_table(tmp_path / "meanfield.csv")
    assert meta["command"] == "meanfield"
    assert names == ["y_frac", "alpha", "beta", "gamma", "mu"]
    assert len(rows) == 5
    assert rows[0]["alpha"] == 0.0  # below threshold
    assert abs(rows[-1]["alpha"]) > 0.0  # above threshold


def test_bands_command_orders_branches(tmp_path):
    code = main(["bands", "--output-dir", str(tmp_path),
                 "--set", "site_count=101"])
    assert code == 0
    _, names, rows = read_table(tmp_path / "bands.csv")
    assert names == ["q", "omega1", "omega2", "omega3"]
    assert len(rows) == 50  # positive half of the grid
    for row in rows:
        assert 0.0 < row["omega1"] < row["omega2"] <= row["omega3"]


def test_softmode_command_decreases_towards_threshold(tmp_path):
    code = main(["softmode", "--output-dir", str(tmp_path),
                 "--set", "y_points=8"])
    assert code == 0
    _, _, rows = read_table(tmp_path / "softmode.csv")
    omegas = [r["omega_s"] for r in rows]
    assert all(a > b for a, b in zip(omegas, omegas[1:]))


def test_config_file_and_set_overrides(tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("g_coll = 0.2\ny_points = 3\n")
    out = tmp_path / "out"
    code = main(["softmode", "--config", str(cfg), "--output-dir", str(out),
                 "--set", "y_points=4"])
    assert code == 0
    meta, _, rows = read_table(out / "softmode.csv")
    assert meta["params"]["g_coll"] == 0.2
    assert len(rows) == 4


def test_unknown_config_key_exits_1(tmp_path):
    assert main(["softmode", "--set", "bogus=1",
                 "--output-dir", str(tmp_path)]) == 1


def test_malformed_set_exits_1(tmp_path):
    assert main(["softmode", "--set", "no_equals_sign",
                 "--output-dir", str(tmp_path)]) == 1


def test_bad_subcommand_exits_1(tmp_path):
    assert main(["frobnicate", "--output-dir", str(tmp_path)]) == 1


def test_solver_error_exits_2(tmp_path):
    # pin the sweep inside the refused window around the critical point
    code = main(["softmode", "--output-dir", str(tmp_path),
                 "--set", "y_frac_min=1.0", "--set", "y_frac_max=1.0",
                 "--set", "y_points=1"])
    assert code == 2


def test_damping_sweep_epsilon_family(tmp_path):
    code = main(["damping-sweep", "--output-dir", str(tmp_path),
                 "--set", "y_points=4", "--set", "y_frac_min=0.5",
                 "--set", "y_frac_max=0.8", "--set", "site_count=201",
                 "--set", "epsilons=0.03,0.01"])
    assert code == 0
    _, names, rows = read_table(tmp_path / "damping.csv")
    assert names == ["y_frac", "gamma_b_eps0.03", "gamma_b_eps0.01"]
    assert len(rows) == 4
    assert all(r["gamma_b_eps0.03"] >= 0.0 for r in rows)


def test_outputs_deterministic_across_runs(tmp_path):
    args = ["softmode", "--set", "y_points=4"]
    out1, out2 = tmp_path / "r1", tmp_path / "r2"
    assert main(args + ["--output-dir", str(out1)]) == 0
    assert main(args + ["--output-dir", str(out2)]) == 0
    assert (out1 / "softmode.csv").read_bytes() == \
        (out2 / "softmode.csv").read_bytes()
