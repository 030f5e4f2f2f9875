"""Tests for the batch runner."""

import json

import pytest


def _manifest(tmp_path, **extra):
    m = {
        "paths": {"out": str(tmp_path / "results")},
        "defaults": {"order": 2},
        "jobs": [
            {"id": "d11", "command": "scatter", "params": {"l1": 1, "l2": 1},
             "output": "${out}/d11.json"},
            {"id": "fan", "command": "render", "target": "fan",
             "params": {"diagram": "${out}/d11.json"}, "output": "${out}/fan.svg"},
        ],
    }
    m.update(extra)
    return m


class TestRunMain:
    def test_runs_jobs_in_order(self, tmp_path, write_yaml):
        from tightscatter.run_cli import main

        main(["--manifest", write_yaml(_manifest(tmp_path)), "--quiet"])
        data = json.loads((tmp_path / "results" / "d11.json").read_text())
        assert data["order"] == "2"
        assert "<svg" in (tmp_path / "results" / "fan.svg").read_text()

    def test_validate_runs_nothing(self, tmp_path, write_yaml, capsys):
        from tightscatter.run_cli import main

        main(["--manifest", write_yaml(_manifest(tmp_path)), "--validate"])
        assert "Done: 2 jobs valid" in capsys.readouterr().err
        assert not (tmp_path / "results").exists()

    def test_only_missing_input_is_usage_error(self, tmp_path, write_yaml, capsys):
        from tightscatter.run_cli import main

        with pytest.raises(SystemExit) as exc_info:
            main(["--manifest", write_yaml(_manifest(tmp_path)), "--only", "fan"])
        assert exc_info.value.code == 2
        assert "Missing job inputs" in capsys.readouterr().err

    def test_unknown_only_id(self, tmp_path, write_yaml):
        from tightscatter.run_cli import main

        with pytest.raises(SystemExit) as exc_info:
            main(["--manifest", write_yaml(_manifest(tmp_path)), "--only", "nope"])
        assert exc_info.value.code == 2

    def test_bad_manifest_is_usage_error(self, write_yaml):
        from tightscatter.run_cli import main

        with pytest.raises(SystemExit) as exc_info:
            main(["--manifest", write_yaml({"jobs": []})])
        assert exc_info.value.code == 2

    def test_failed_job_exits_1(self, tmp_path, write_yaml, capsys):
        from tightscatter.run_cli import main

        m = _manifest(tmp_path)
        m["jobs"].insert(0, {"id": "bad", "command": "wallfn",
                             "params": {"l1": 1, "l2": 1, "a": 2, "b": 2}})
        with pytest.raises(SystemExit) as exc_info:
            main(["--manifest", write_yaml(m)])
        assert exc_info.value.code == 1
        err = capsys.readouterr().err
        assert "Failed jobs: bad" in err
        assert not (tmp_path / "results" / "d11.json").exists()

    def test_keep_going(self, tmp_path, write_yaml):
        from tightscatter.run_cli import main

        m = _manifest(tmp_path)
        m["jobs"].insert(0, {"id": "bad", "command": "wallfn",
                             "params": {"l1": 1, "l2": 1, "a": 2, "b": 2}})
        with pytest.raises(SystemExit):
            main(["--manifest", write_yaml(m), "--keep-going", "--quiet"])
        assert (tmp_path / "results" / "d11.json").exists()


def _raising_dispatcher(monkeypatch, failing: str):
    import tightscatter.main as dispatcher

    real = dispatcher.command_main

    def _fail(argv):
        raise RuntimeError("Laurent division is not exact")

    monkeypatch.setattr(
        dispatcher, "command_main", lambda name: _fail if name == failing else real(name),
    )


class TestInternalErrors:
    def _manifest_with_gw(self, tmp_path):
        m = _manifest(tmp_path)
        m["jobs"].insert(0, {"id": "boom", "command": "gw", "params": {"l1": 1, "l2": 1}})
        return m

    def test_keep_going_past_exception(self, tmp_path, write_yaml, monkeypatch, capsys):
        from tightscatter.run_cli import main

        _raising_dispatcher(monkeypatch, "gw")
        with pytest.raises(SystemExit) as exc_info:
            main(["--manifest", write_yaml(self._manifest_with_gw(tmp_path)), "--keep-going"])
        assert exc_info.value.code == 1
        err = capsys.readouterr().err
        assert "[boom] failed: RuntimeError" in err
        assert "Failed jobs: boom" in err
        assert (tmp_path / "results" / "d11.json").exists()

    def test_exception_propagates_without_keep_going(self, tmp_path, write_yaml, monkeypatch):
        from tightscatter.run_cli import main

        _raising_dispatcher(monkeypatch, "gw")
        with pytest.raises(RuntimeError, match="not exact"):
            main(["--manifest", write_yaml(self._manifest_with_gw(tmp_path)), "--quiet"])
