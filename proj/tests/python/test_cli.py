#!/usr/bin/env python3
"""End-to-end tests for the peb command-line tool.

Driven via subprocess against the binary named by the PEB_CLI environment
variable; bundled scenario files are found through PEB_CONFIG_DIR.  Runnable
either under pytest or directly as a script.
"""

import json
import math
import os
import subprocess
import sys
import tempfile
from pathlib import Path

CLI = os.environ.get("PEB_CLI", "peb")
CONFIG_DIR = Path(os.environ.get("PEB_CONFIG_DIR", "configs"))

PEB_4BS_CENTER = 0.06923712328349675  # fused bound for the four-station square at (50, 50)


def run_cli(*args, env_extra=None, check=False):
    env = os.environ.copy()
    if env_extra:
        env.update(env_extra)
    proc = subprocess.run(
        [CLI, *[str(a) for a in args]],
        capture_output=True,
        text=True,
        env=env,
        timeout=300,
    )
    if check and proc.returncode != 0:
        raise AssertionError(
            f"cli {' '.join(map(str, args))} failed rc={proc.returncode}\n"
            f"stdout:\n{proc.stdout}\nstderr:\n{proc.stderr}"
        )
    return proc


def rel_err(a, b):
    if a == b:
        return 0.0
    return abs(a - b) / max(abs(a), abs(b))


def test_point_json_four_station_center():
    proc = run_cli("point", CONFIG_DIR / "square_4bs.json", "--json", check=True)
    doc = json.loads(proc.stdout)
    assert doc["target"]["x_m"] == 50.0
    assert doc["target"]["y_m"] == 50.0
    assert rel_err(doc["peb_m"], PEB_4BS_CENTER) <= 1e-12, doc["peb_m"]
    assert doc["n_contributing"] == 4
    assert doc["no_information"] is False
    efim = doc["efim_per_m2"]
    assert len(efim) == 2 and len(efim[0]) == 2 and len(efim[1]) == 2
    assert efim[0][0] > 0.0 and efim[1][1] > 0.0
    stations = doc["stations"]
    assert len(stations) == 4
    for st in stations:
        assert st["status"] == "contributing"
        assert rel_err(st["range_m"], math.hypot(50.0, 50.0)) <= 1e-12
        assert isinstance(st["snr_db"], float)


def test_point_json_explicit_target_override():
    proc = run_cli(
        "point", CONFIG_DIR / "square_4bs.json", "--x", "30", "--y", "40",
        "--json", check=True,
    )
    doc = json.loads(proc.stdout)
    assert doc["target"]["x_m"] == 30.0
    assert doc["target"]["y_m"] == 40.0
    assert doc["peb_m"] > 0.0
    assert math.isfinite(doc["peb_m"])


def test_point_human_readable():
    proc = run_cli("point", CONFIG_DIR / "square_4bs.json", check=True)
    out = proc.stdout
    assert "target: x_m=50 y_m=50" in out
    assert "stations (4 of 4 contributing):" in out
    assert "fused efim_per_m2:" in out
    assert "peb_m: 0.0692371233" in out


def test_point_near_field_guard():
    proc = run_cli("point", CONFIG_DIR / "square_4bs.json", "--x", "0", "--y", "0")
    assert proc.returncode == 3
    assert "near-field guard violated" in proc.stderr


def test_unknown_config_key_rejected():
    with tempfile.TemporaryDirectory() as tmp:
        base = json.loads((CONFIG_DIR / "square_4bs.json").read_text())
        base["wavform"] = base["waveform"]  # misspelled sibling key
        path = Path(tmp) / "bad.json"
        path.write_text(json.dumps(base))
        proc = run_cli("point", path)
        assert proc.returncode == 2
        assert "unknown key" in proc.stderr


def test_missing_config_file_is_io_error():
    proc = run_cli("point", "/nonexistent/peb-scenario.json")
    assert proc.returncode == 4
    assert "cannot read scenario file" in proc.stderr


def test_heatmap_deterministic_and_stats():
    with tempfile.TemporaryDirectory() as tmp_a, \
         tempfile.TemporaryDirectory() as tmp_b, \
         tempfile.TemporaryDirectory() as tmp_c:
        prefix_a = Path(tmp_a) / "hm"
        prefix_b = Path(tmp_b) / "hm"
        prefix_c = Path(tmp_c) / "hm"
        cfg = CONFIG_DIR / "square_2bs_diagonal.json"

        proc_a = run_cli("heatmap", cfg, "--grid", "41", "--out", prefix_a, check=True)
        run_cli("heatmap", cfg, "--grid", "41", "--out", prefix_b, check=True)
        run_cli(
            "heatmap", cfg, "--grid", "41", "--out", prefix_c,
            env_extra={"PEB_THREADS": "1"}, check=True,
        )

        csv_a = (prefix_a.parent / "hm.csv").read_bytes()
        csv_b = (prefix_b.parent / "hm.csv").read_bytes()
        csv_c = (prefix_c.parent / "hm.csv").read_bytes()
        assert csv_a == csv_b, "heatmap CSV differs between identical runs"
        assert csv_a == csv_c, "heatmap CSV differs under PEB_THREADS=1"

        lines = csv_a.decode().splitlines()
        assert lines[0] == "x_m,y_m,peb_m"
        assert len(lines) == 41 * 41 + 1

        max_finite = 0.0
        for line in lines[1:]:
            cell = line.split(",")[2]
            if cell in ("inf", "excluded", "nan"):
                continue
            max_finite = max(max_finite, float(cell))
        assert 0.19 <= max_finite <= 0.31, max_finite

        assert "wrote" in proc_a.stdout
        assert "max_peb_m=" in proc_a.stdout
        assert "n_excluded=" in proc_a.stdout

        summary = json.loads((prefix_a.parent / "hm.json").read_text())
        assert summary["grid"]["nx"] == 41
        assert summary["grid"]["ny"] == 41
        assert summary["n_cells"] == 41 * 41
        assert summary["n_finite"] + summary["n_infinite"] + summary["n_excluded"] == 41 * 41
        assert summary["probe"]["n_contributing"] >= 1


def test_sweep_receive_antennas_monotone():
    with tempfile.TemporaryDirectory() as tmp:
        out = Path(tmp) / "nr.csv"
        proc = run_cli(
            "sweep", CONFIG_DIR / "square_3bs.json",
            "--param", "NR", "--values", "16,64,180,264",
            "--out", out, check=True,
        )
        values = []
        for line in proc.stdout.splitlines():
            line = line.strip()
            if line.startswith("value=") and "peb_m=" in line:
                values.append(float(line.split("peb_m=")[1]))
        assert len(values) == 4
        assert all(b < a for a, b in zip(values, values[1:])), values
        # stdout carries 9 significant digits, so compare at 1e-8 relative
        assert rel_err(values[2], 0.010525652030672007) <= 1e-8
        assert rel_err(values[3], 0.006327272240093845) <= 1e-8

        rows = out.read_text().splitlines()
        assert rows[0] == "value,peb_m"
        assert len(rows) == 5


def test_sweep_range_syntax():
    with tempfile.TemporaryDirectory() as tmp:
        out = Path(tmp) / "rho.csv"
        proc = run_cli(
            "sweep", CONFIG_DIR / "square_4bs.json",
            "--param", "rho", "--values", "0.05:0.95:4",
            "--out", out, check=True,
        )
        values = []
        for line in proc.stdout.splitlines():
            line = line.strip()
            if line.startswith("value=") and "peb_m=" in line:
                values.append(float(line.split("peb_m=")[1]))
        assert len(values) == 4
        assert all(b < a for a, b in zip(values, values[1:])), values


def test_validate_deterministic_pass():
    proc1 = run_cli("validate", "--draws", "10", "--seed", "123")
    proc2 = run_cli("validate", "--draws", "10", "--seed", "123")
    assert proc1.returncode == 0
    assert proc1.stdout == proc2.stdout
    assert "result: PASS" in proc1.stdout


def test_validate_json():
    proc = run_cli("validate", "--draws", "10", "--seed", "123", "--json", check=True)
    doc = json.loads(proc.stdout)
    assert doc["draws"] == 10
    assert doc["seed"] == 123
    assert doc["passed"] is True
    assert doc["worst"]["rel_error"] < 1e-4


def test_coverage():
    proc = run_cli(
        "coverage", CONFIG_DIR / "square_4bs.json", "--grid", "41", check=True,
    )
    assert "cells=1681" in proc.stdout
    fractions = [
        line for line in proc.stdout.splitlines() if line.startswith("threshold_m=")
    ]
    assert len(fractions) >= 1
    for line in fractions:
        frac = float(line.split("fraction=")[1])
        assert 0.0 <= frac <= 1.0


ALL_TESTS = [
    test_point_json_four_station_center,
    test_point_json_explicit_target_override,
    test_point_human_readable,
    test_point_near_field_guard,
    test_unknown_config_key_rejected,
    test_missing_config_file_is_io_error,
    test_heatmap_deterministic_and_stats,
    test_sweep_receive_antennas_monotone,
    test_sweep_range_syntax,
    test_validate_deterministic_pass,
    test_validate_json,
    test_coverage,
]


def main():
    failures = 0
    for fn in ALL_TESTS:
        try:
            fn()
        except Exception as exc:  # noqa: BLE001 - report and continue
            failures += 1
            print(f"FAIL {fn.__name__}: {exc}")
        else:
            print(f"PASS {fn.__name__}")
    if failures:
        print(f"{failures} of {len(ALL_TESTS)} cli tests failed")
    else:
        print(f"all {len(ALL_TESTS)} cli tests passed")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
