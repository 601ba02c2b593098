import json
import subprocess
import sys

import numpy as np
import pytest

from finchaos import __version__, euler_step, field_5d, step_coefficients
from finchaos.cli import main
from finchaos.models import REFERENCE_PARAMS


def base_tree(**extra):
    tree = {
        "orders": [0.3, 0.5, 0.6, 0.24, 0.24],
        "x0": [0.4, 0.6, 0.8, 0.3, 0.4],
        "grid": {"h": 0.002, "n_steps": 100, "transient": 10},
    }
    for key, value in extra.items():
        if isinstance(value, dict) and isinstance(tree.get(key), dict):
            tree[key] = {**tree[key], **value}
        else:
            tree[key] = value
    return tree


def write_cfg(tmp_path, tree, name="cfg.json"):
    path = tmp_path / name
    path.write_text(json.dumps(tree))
    return str(path)


def read_rows(path):
    lines = path.read_text().splitlines()
    return lines[0], [line.split(",") for line in lines[1:]]


class TestSimulate:
    def test_rows_and_values(self, tmp_path):
        cfg = write_cfg(tmp_path, base_tree())
        out = tmp_path / "orbit.csv"
        code = main(["simulate", cfg, "--output", str(out)])
        assert code == 0
        header, rows = read_rows(out)
        assert header == "step,t,x,y,z,w,u"
        assert len(rows) == 101
        assert rows[0][0] == "0"
        assert [float(v) for v in rows[0][2:]] == [0.4, 0.6, 0.8, 0.3, 0.4]
        # the 17-digit fields round-trip exactly, so row 1 must equal one step
        coeffs = step_coefficients([0.3, 0.5, 0.6, 0.24, 0.24], 0.002)
        x1 = euler_step(
            lambda s: field_5d(s, REFERENCE_PARAMS),
            np.array([0.4, 0.6, 0.8, 0.3, 0.4]),
            coeffs,
        )
        assert [float(v) for v in rows[1][2:]] == x1.tolist()
        assert float(rows[1][1]) == 0.002

    def test_restart_roundtrip(self, tmp_path):
        cfg = write_cfg(tmp_path, base_tree())
        first = tmp_path / "first.csv"
        assert main(["simulate", cfg, "--output", str(first)]) == 0
        _, rows = read_rows(first)
        mid = rows[50]

        tree = base_tree(x0=[float(v) for v in mid[2:]], grid={"n_steps": 50})
        cfg2 = write_cfg(tmp_path, tree, "restart.json")
        second = tmp_path / "second.csv"
        assert main(["simulate", cfg2, "--output", str(second)]) == 0
        _, rows2 = read_rows(second)
        # the map does not depend on t, so the restarted orbit is bitwise equal
        for i, row in enumerate(rows2):
            assert row[2:] == rows[50 + i][2:]

    def test_divergence_exit_code(self, tmp_path, capsys):
        cfg = write_cfg(tmp_path, base_tree(grid={"h": 0.01, "n_steps": 1000}))
        out = tmp_path / "div.csv"
        code = main(["simulate", cfg, "--output", str(out)])
        assert code == 3
        assert "diverged" in capsys.readouterr().err
        _, rows = read_rows(out)
        assert 0 < len(rows) < 1001

    def test_repeat_runs_byte_identical(self, tmp_path):
        cfg = write_cfg(tmp_path, base_tree())
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        assert main(["simulate", cfg, "--output", str(a)]) == 0
        assert main(["simulate", cfg, "--output", str(b)]) == 0
        assert a.read_bytes() == b.read_bytes()

    def test_preset_with_short_override(self, tmp_path):
        out = tmp_path / "preset.csv"
        code = main(
            [
                "simulate",
                "--preset",
                "paper-sec4",
                "--override",
                "grid.n_steps=20",
                "--output",
                str(out),
            ]
        )
        assert code == 0
        _, rows = read_rows(out)
        assert len(rows) == 21


class TestLyapunov:
    def test_spectrum_run(self, tmp_path, capsys):
        tree = base_tree(
            grid={"transient": 500},
            experiment={"kind": "lyapunov", "n_iter": 2000},
        )
        cfg = write_cfg(tmp_path, tree)
        out = tmp_path / "spec.csv"
        code = main(["lyapunov", cfg, "--output", str(out)])
        assert code == 0
        captured = capsys.readouterr()
        assert "regime=" in captured.out
        assert "exponents:" in captured.out
        header, rows = read_rows(out)
        assert header == "exponent_rank,value"
        assert [r[0] for r in rows] == ["1", "2", "3", "4", "5"]
        values = [float(r[1]) for r in rows]
        assert values == sorted(values, reverse=True)

    def test_zero_model_exact_zero_spectrum(self, tmp_path, capsys):
        tree = base_tree(
            model="zero-5d",
            grid={"transient": 10},
            experiment={"kind": "lyapunov", "n_iter": 100},
        )
        cfg = write_cfg(tmp_path, tree)
        out = tmp_path / "zero.csv"
        assert main(["lyapunov", cfg, "--output", str(out)]) == 0
        assert "regime=periodic_or_quasi" in capsys.readouterr().out
        _, rows = read_rows(out)
        assert [r[1] for r in rows] == ["0", "0", "0", "0", "0"]

    def test_divergent_exit_code(self, tmp_path):
        tree = base_tree(
            grid={"h": 0.01, "transient": 100},
            experiment={"kind": "lyapunov", "n_iter": 1000},
        )
        cfg = write_cfg(tmp_path, tree)
        code = main(["lyapunov", cfg, "--output", str(tmp_path / "d.csv")])
        assert code == 3


SCAN_EXPERIMENT = {
    "kind": "scan",
    "target": "alpha5",
    "lo": 0.24,
    "hi": 0.27,
    "grid_points": 4,
    "n_iter": 2000,
    "sample_transient": 500,
    "n_samples": 20,
}


class TestScan:
    def test_spectrum_scan_output(self, tmp_path):
        tree = base_tree(grid={"transient": 500}, experiment=SCAN_EXPERIMENT)
        cfg = write_cfg(tmp_path, tree)
        out = tmp_path / "scan.csv"
        assert main(["scan", cfg, "--output", str(out)]) == 0
        header, rows = read_rows(out)
        assert header == "param_value,lambda_1,lambda_2,lambda_3,lambda_4,lambda_5,regime"
        assert len(rows) == 4
        assert [float(r[0]) for r in rows] == pytest.approx([0.24, 0.25, 0.26, 0.27])
        for row in rows:
            assert row[6] in {
                "divergent",
                "stable",
                "periodic_or_quasi",
                "chaotic",
                "hyperchaotic",
            }

    def test_workers_byte_identical(self, tmp_path):
        tree = base_tree(grid={"transient": 500}, experiment=SCAN_EXPERIMENT)
        cfg = write_cfg(tmp_path, tree)
        one = tmp_path / "w1.csv"
        two = tmp_path / "w2.csv"
        assert main(["scan", cfg, "--output", str(one), "--workers", "1"]) == 0
        assert main(["scan", cfg, "--output", str(two), "--workers", "2"]) == 0
        assert one.read_bytes() == two.read_bytes()

    def test_bifurcate_output(self, tmp_path):
        exp = dict(SCAN_EXPERIMENT, kind="bifurcate", grid_points=2, component="x")
        tree = base_tree(grid={"transient": 500}, experiment=exp)
        cfg = write_cfg(tmp_path, tree)
        out = tmp_path / "bif.csv"
        assert main(["scan", cfg, "--output", str(out)]) == 0
        header, rows = read_rows(out)
        assert header == "param_value,sample_index,component_value"
        assert len(rows) == 2 * 20
        assert [r[1] for r in rows[:20]] == [str(i) for i in range(20)]

    def test_divergent_points_reported(self, tmp_path, capsys):
        exp = dict(
            SCAN_EXPERIMENT, target="h", lo=0.002, hi=0.01, grid_points=2
        )
        tree = base_tree(grid={"transient": 500}, experiment=exp)
        cfg = write_cfg(tmp_path, tree)
        out = tmp_path / "hd.csv"
        assert main(["scan", cfg, "--output", str(out)]) == 0
        assert "1 of 2 grid points diverged" in capsys.readouterr().err
        _, rows = read_rows(out)
        assert any(r[1] == "nan" for r in rows)

    def test_scan_plot_written(self, tmp_path):
        tree = base_tree(grid={"transient": 500}, experiment=SCAN_EXPERIMENT)
        cfg = write_cfg(tmp_path, tree)
        out = tmp_path / "scan.csv"
        assert main(["scan", cfg, "--output", str(out), "--plot"]) == 0
        svg = tmp_path / "scan.svg"
        assert svg.exists()
        text = svg.read_text()
        assert text.startswith("<svg")
        assert "polyline" in text


class TestAttractor:
    def test_trace_output(self, tmp_path):
        tree = base_tree(
            grid={"n_steps": 200, "transient": 50},
            experiment={"kind": "attractor", "projection": ["x", "y", "z"]},
        )
        cfg = write_cfg(tmp_path, tree)
        out = tmp_path / "trace.csv"
        assert main(["attractor", cfg, "--output", str(out)]) == 0
        header, rows = read_rows(out)
        assert header == "c1,c2,c3"
        assert len(rows) == 150

    def test_plot_panels(self, tmp_path):
        tree = base_tree(
            grid={"n_steps": 200, "transient": 50},
            experiment={"kind": "attractor", "projection": ["x", "y", "z"]},
        )
        cfg = write_cfg(tmp_path, tree)
        out = tmp_path / "trace.csv"
        svg = tmp_path / "panels.svg"
        code = main(
            ["attractor", cfg, "--output", str(out), "--plot", "--svg", str(svg)]
        )
        assert code == 0
        text = svg.read_text()
        assert text.startswith("<svg")
        assert text.count("<circle") > 100


class TestErrorPaths:
    def test_unknown_key_exit_one(self, tmp_path, capsys):
        cfg = write_cfg(tmp_path, base_tree(grid={"dt": 0.1}))
        code = main(["simulate", cfg, "--output", str(tmp_path / "x.csv")])
        assert code == 1
        err = capsys.readouterr().err
        assert "config error" in err
        assert "grid.dt" in err

    def test_missing_config_exit_one(self, tmp_path, capsys):
        code = main(
            ["simulate", str(tmp_path / "absent.json"), "--output", "x.csv"]
        )
        assert code == 1
        assert "cannot read" in capsys.readouterr().err

    def test_unwritable_output_exit_two(self, tmp_path, capsys):
        cfg = write_cfg(tmp_path, base_tree())
        code = main(
            ["simulate", cfg, "--output", str(tmp_path / "no" / "dir" / "x.csv")]
        )
        assert code == 2
        assert "io error" in capsys.readouterr().err

    def test_kind_mismatch_exit_one(self, tmp_path, capsys):
        tree = base_tree(experiment={"kind": "lyapunov"})
        cfg = write_cfg(tmp_path, tree)
        code = main(["simulate", cfg, "--output", str(tmp_path / "x.csv")])
        assert code == 1
        assert "cannot run under" in capsys.readouterr().err


class TestEntryPoint:
    def test_module_version(self):
        proc = subprocess.run(
            [sys.executable, "-m", "finchaos", "--version"],
            capture_output=True,
            text=True,
        )
        assert proc.returncode == 0
        assert proc.stdout.strip() == f"finchaos {__version__}"
