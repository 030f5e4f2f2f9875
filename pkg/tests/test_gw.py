"""Tests for log-coefficient extraction of relative invariants."""

from fractions import Fraction

import pytest

from tightscatter.gw import (
    ORACLE,
    binomial_data,
    gw_extract,
    gw_sweep,
    tables_to_csv,
    tables_to_dict,
    write_gw_csv,
)


class TestGwExtract:
    def test_unit_ray(self):
        table = gw_extract(1, 1, 1, 1, 2)
        assert table[1] == 1
        assert table[2] == Fraction(-1, 4)

    def test_oracle_agrees(self):
        assert gw_extract(1, 1, 1, 1, 2, method=ORACLE).rows == gw_extract(1, 1, 1, 1, 2).rows

    def test_tight_agrees_with_oracle_on_2_1(self):
        tight = gw_extract(2, 1, 2, 1, 2)
        oracle = gw_extract(2, 1, 2, 1, 2, method=ORACLE)
        assert tight.rows == oracle.rows

    def test_bad_direction_raises(self):
        with pytest.raises(ValueError, match="coprime positive"):
            gw_extract(1, 1, 2, 2, 1)

    def test_bad_kmax_raises(self):
        with pytest.raises(ValueError, match="kmax must be >= 1"):
            gw_extract(1, 1, 1, 1, 0)

    def test_bad_method_raises(self):
        with pytest.raises(ValueError, match="Invalid method 'exact'"):
            gw_extract(1, 1, 1, 1, 1, method="exact")

    def test_binomial_data(self):
        data = binomial_data(2, 1)
        assert len(data.side_coeffs(1)) == 3


class TestGwSweep:
    def test_sweep_directions(self):
        tables = gw_sweep(1, 1, 3)
        assert [t.direction for t in tables] == [(2, 1), (1, 1), (1, 2)]
        assert tables[1].rows == {1: 1}

    def test_off_diagonal_rays_are_trivial(self):
        tables = gw_sweep(1, 1, 3)
        assert tables[0].rows == {1: 0}


class TestOutput:
    def test_csv(self):
        text = tables_to_csv([gw_extract(1, 1, 1, 1, 2)])
        assert text.splitlines() == ["l1,l2,a,b,k,N", "1,1,1,1,1,1", "1,1,1,1,2,-1/4"]

    def test_json(self):
        data = tables_to_dict([gw_extract(1, 1, 1, 1, 2)])
        assert data["schema_version"] == "1"
        assert data["tables"][0]["N"] == {"1": "1", "2": "-1/4"}

    def test_write_creates_parent(self, tmp_path):
        path = write_gw_csv([gw_extract(1, 1, 1, 1, 1)], tmp_path / "out" / "gw.csv")
        assert path.read_text().startswith("l1,l2")
