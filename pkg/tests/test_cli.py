"""Tests for the wallfn, scatter, gw, greedy, theta, clustervar and render commands."""

import json

import pytest

from tightscatter.basis_cli import clustervar_main, greedy_main, theta_main
from tightscatter.cli import gw_main, scatter_main, wallfn_main
from tightscatter.render_cli import main as render_main

L11 = ["--l1", "1", "--l2", "1"]


def _json_out(capsys) -> dict:
    return json.loads(capsys.readouterr().out)


class TestWallfn:
    def test_json(self, capsys):
        wallfn_main(L11 + ["--a", "1", "--b", "1", "--order", "2", "--quiet"])
        data = _json_out(capsys)
        assert data["schema_version"] == "1"
        assert data["wall"]["direction"] == ["1", "1"]
        assert list(data["wall"]["coefficients"]) == ["1"]

    def test_expression_data(self, capsys):
        wallfn_main([
            "--p1", "1+x^3", "--p2", "1+y^2", "--a", "3", "--b", "2", "--order", "10",
            "--format", "text", "--quiet",
        ])
        assert capsys.readouterr().out.strip() != ""

    def test_output_file(self, tmp_path, capsys):
        out = tmp_path / "wall.json"
        wallfn_main(L11 + ["--a", "1", "--b", "1", "--order", "2", "--output", str(out)])
        assert json.loads(out.read_text())["order"] == "2"
        assert capsys.readouterr().err.strip().startswith("Done:")

    def test_missing_data_is_usage_error(self):
        with pytest.raises(SystemExit) as exc_info:
            wallfn_main(["--a", "1", "--b", "1", "--order", "2"])
        assert exc_info.value.code == 2

    def test_bad_direction_is_usage_error(self):
        with pytest.raises(SystemExit) as exc_info:
            wallfn_main(L11 + ["--a", "2", "--b", "2", "--order", "4"])
        assert exc_info.value.code == 2

    def test_bad_expression_is_usage_error(self, capsys):
        with pytest.raises(SystemExit) as exc_info:
            wallfn_main(["--p1", "2+x", "--p2", "1+y", "--a", "1", "--b", "1", "--order", "2"])
        assert exc_info.value.code == 2
        assert "Constant term must be 1" in capsys.readouterr().err


class TestScatter:
    def test_oracle(self, capsys):
        scatter_main(L11 + ["--order", "2", "--quiet"])
        kinds = [w["kind"] for w in _json_out(capsys)["walls"]]
        assert kinds == ["line", "ray", "line"]

    def test_tight_matches_oracle(self, capsys):
        scatter_main(L11 + ["--order", "4", "--quiet"])
        oracle = _json_out(capsys)
        scatter_main(L11 + ["--order", "4", "--method", "tight", "--quiet"])
        assert _json_out(capsys) == oracle

    def test_half_given_expressions(self):
        with pytest.raises(SystemExit) as exc_info:
            scatter_main(["--p1", "1+x", "--order", "2"])
        assert exc_info.value.code == 2

    def test_bad_workers(self, monkeypatch):
        monkeypatch.setenv("TIGHTSCATTER_WORKERS", "zero")
        with pytest.raises(SystemExit) as exc_info:
            scatter_main(L11 + ["--order", "2"])
        assert exc_info.value.code == 2


class TestGw:
    def test_csv(self, capsys):
        gw_main(["--l1", "1", "--l2", "1", "--a", "1", "--b", "1", "--kmax", "2", "--format", "csv"])
        assert capsys.readouterr().out.splitlines()[-1] == "1,1,1,1,2,-1/4"

    def test_sweep_json(self, capsys):
        gw_main(["--l1", "1", "--l2", "1", "--sweep", "--order", "2", "--quiet"])
        data = _json_out(capsys)
        assert [t["direction"] for t in data["tables"]] == [["1", "1"]]

    def test_sweep_needs_order(self):
        with pytest.raises(SystemExit) as exc_info:
            gw_main(["--l1", "1", "--l2", "1", "--sweep"])
        assert exc_info.value.code == 2


class TestBasisCommands:
    def test_greedy(self, capsys):
        greedy_main(L11 + ["--a1", "1", "--a2", "0"])
        data = _json_out(capsys)
        assert data["element"] == ["1", "0"]
        assert data["pointed_at"] == ["-1", "0"]

    def test_clustervar_normalized(self, capsys):
        clustervar_main(L11 + ["--k", "4", "--normalize"])
        data = _json_out(capsys)
        assert data["scale"] == ["1", "0"]
        assert data["d_vector"] == ["1", "1"]

    def test_clustervar_out_of_range(self):
        with pytest.raises(SystemExit) as exc_info:
            clustervar_main(L11 + ["--k", "1000"])
        assert exc_info.value.code == 2

    def test_theta_with_lines(self, capsys):
        theta_main(L11 + ["--m0", "-1", "0", "--order", "2", "--lines", "--quiet"])
        data = _json_out(capsys)
        assert data["m0"] == ["-1", "0"]
        assert len(data["broken_lines"]) == 2

    def test_theta_workers_do_not_change_output(self, capsys):
        argv = L11 + ["--m0", "-1", "-1", "--order", "4", "--quiet"]
        theta_main(argv)
        serial = capsys.readouterr().out
        theta_main(argv + ["--workers", "2"])
        assert capsys.readouterr().out == serial

    def test_theta_bad_endpoint(self):
        with pytest.raises(SystemExit) as exc_info:
            theta_main(L11 + ["--m0", "-1", "0", "--order", "2", "--q", "one,two"])
        assert exc_info.value.code == 2


class TestRender:
    def test_tiling_svg_to_stdout(self, capsys):
        render_main(["tiling", "--m", "5", "--n", "2", "--grading", "u1=1,v1=2", "--quiet"])
        assert "<svg" in capsys.readouterr().out

    def test_tiling_png_needs_output(self):
        with pytest.raises(SystemExit) as exc_info:
            render_main(["tiling", "--m", "5", "--n", "2", "--grading", "u1=1", "--format", "png"])
        assert exc_info.value.code == 2

    def test_fan_from_saved_diagram(self, tmp_path, capsys):
        diagram = tmp_path / "d.json"
        scatter_main(L11 + ["--order", "2", "--output", str(diagram), "--quiet"])
        out = tmp_path / "fan.png"
        render_main(["fan", "--diagram", str(diagram), "--output", str(out), "--quiet"])
        assert out.exists()

    def test_bad_color_key(self):
        with pytest.raises(SystemExit) as exc_info:
            render_main([
                "tiling", "--m", "2", "--n", "1", "--grading", "u1=1", "--color", "walls=#000000",
            ])
        assert exc_info.value.code == 2
