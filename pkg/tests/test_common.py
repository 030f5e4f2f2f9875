"""Tests for shared CLI utilities."""

import json

import pytest

from tightscatter.common import (
    default_workers,
    dumps_json,
    hex_color,
    parse_hex_color,
    progress,
    resolve_color,
    resolve_path_vars,
    write_output,
)


class TestDefaultWorkers:
    def test_unset(self, monkeypatch):
        monkeypatch.delenv("TIGHTSCATTER_WORKERS", raising=False)
        assert default_workers() == 1

    def test_set(self, monkeypatch):
        monkeypatch.setenv("TIGHTSCATTER_WORKERS", "4")
        assert default_workers() == 4

    @pytest.mark.parametrize("raw", ["0", "-2", "many"])
    def test_invalid(self, monkeypatch, raw):
        monkeypatch.setenv("TIGHTSCATTER_WORKERS", raw)
        with pytest.raises(ValueError, match="must be a positive integer"):
            default_workers()


class TestResolvePathVars:
    def test_resolves(self):
        assert resolve_path_vars("${out}/d.json", {"out": "/tmp/x"}) == "/tmp/x/d.json"

    def test_unknown_raises(self):
        with pytest.raises(ValueError, match=r"Unknown path variable: \$\{data\}"):
            resolve_path_vars("${data}/d.json", {})


class TestOutput:
    def test_dumps_json_is_sorted(self):
        text = dumps_json({"b": "1", "a": "2"})
        assert text.endswith("\n")
        assert text.index('"a"') < text.index('"b"')
        assert json.loads(text) == {"a": "2", "b": "1"}

    def test_write_output_to_file(self, tmp_path):
        path = tmp_path / "sub" / "out.txt"
        write_output("hello\n", path)
        assert path.read_text() == "hello\n"

    def test_write_output_to_stdout(self, capsys):
        write_output("hello\n", None)
        assert capsys.readouterr().out == "hello\n"

    def test_progress_goes_to_stderr(self, capsys):
        progress("Done: 1 ray")
        progress("hidden", quiet=True)
        captured = capsys.readouterr()
        assert captured.out == ""
        assert captured.err == "Done: 1 ray\n"


class TestColors:
    def test_parse(self):
        assert parse_hex_color("#1a2B3c") == (26, 43, 60)
        assert parse_hex_color("ffffff") == (255, 255, 255)

    def test_invalid_raises(self):
        with pytest.raises(ValueError, match="Invalid hex color"):
            parse_hex_color("#12345g")

    def test_hex_color(self):
        assert hex_color((26, 43, 60)) == "#1a2b3c"

    def test_resolve_color(self):
        palette = {"wall": (1, 2, 3)}
        assert resolve_color("wall", palette) == (1, 2, 3)
        assert resolve_color("#000000", palette) == (0, 0, 0)

    def test_resolve_unknown_raises(self):
        with pytest.raises(ValueError, match="Unknown color: 'grey'"):
            resolve_color("grey", {"wall": (1, 2, 3)})
