"""Tests for maximal Dyck paths and cyclic subpaths."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tightscatter.dyck import (
    brute_force_maximal_path,
    build_maximal_dyck_path,
    cyclic_subpath,
    walk_length,
)


class TestBuildMaximalDyckPath:
    def test_steps_7_4(self):
        path = build_maximal_dyck_path(7, 4)
        assert path.steps() == "EENEENEENEN"
        assert len(path.horizontal) == 7
        assert len(path.vertical) == 4

    def test_labels_and_anchors(self):
        path = build_maximal_dyck_path(5, 2)
        assert [e.label for e in path.edges] == ["u1", "u2", "u3", "v1", "u4", "u5", "v2"]
        assert path.edge("u1").anchor == (0, 0)
        assert path.edge("v1").anchor == (3, 1)
        assert path.edge("v2").anchor == (5, 2)

    def test_all_vertical(self):
        path = build_maximal_dyck_path(0, 3)
        assert path.steps() == "NNN"

    def test_empty(self):
        assert len(build_maximal_dyck_path(0, 0)) == 0

    def test_negative_size_raises(self):
        with pytest.raises(ValueError, match="nonnegative"):
            build_maximal_dyck_path(-1, 2)

    def test_unknown_label_raises(self):
        with pytest.raises(ValueError, match="No edge 'u9'"):
            build_maximal_dyck_path(3, 2).edge("u9")


class TestCyclicSubpath:
    def test_same_edge_is_empty(self):
        path = build_maximal_dyck_path(2, 1)
        u1 = path.edge("u1")
        assert cyclic_subpath(path, u1, u1) == ()

    def test_contains_horizontal_start_and_vertical_end(self):
        path = build_maximal_dyck_path(2, 1)
        walk = cyclic_subpath(path, path.edge("u2"), path.edge("v1"))
        assert [e.label for e in walk] == ["u2", "v1"]

    def test_excludes_vertical_start_and_horizontal_end(self):
        path = build_maximal_dyck_path(2, 1)
        walk = cyclic_subpath(path, path.edge("v1"), path.edge("u2"))
        assert [e.label for e in walk] == ["u1"]

    def test_shared_anchor_gives_full_cycle(self):
        path = build_maximal_dyck_path(2, 1)
        walk = cyclic_subpath(path, path.edge("u1"), path.edge("v1"))
        assert walk == path.edges

    def test_wraps_around(self):
        path = build_maximal_dyck_path(5, 2)
        walk = cyclic_subpath(path, path.edge("u4"), path.edge("v1"))
        assert [e.label for e in walk] == ["u4", "u5", "v2", "u1", "u2", "u3", "v1"]

    def test_walk_length_matches(self):
        path = build_maximal_dyck_path(7, 4)
        for e in path.edges:
            for f in path.edges:
                assert walk_length(path, e, f) == len(cyclic_subpath(path, e, f))

    def test_foreign_edge_raises(self):
        small = build_maximal_dyck_path(2, 1)
        big = build_maximal_dyck_path(5, 2)
        with pytest.raises(ValueError, match="is not on P"):
            cyclic_subpath(small, big.edge("u4"), small.edge("v1"))


@settings(max_examples=30, deadline=None)
@given(m=st.integers(1, 6), n=st.integers(0, 6))
def test_matches_brute_force(m, n):
    path = build_maximal_dyck_path(m, n)
    assert path.is_below_diagonal()
    assert path.steps() == brute_force_maximal_path(m, n)
