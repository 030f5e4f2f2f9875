"""Tests for walls, wall crossing and the two completions."""

import pytest

from tightscatter.coeffring import ONE, ZERO, BivariateSeries, p
from tightscatter.scattering import (
    LINE,
    RAY,
    InitialData,
    ScatteringDiagram,
    Wall,
    WallAutomorphism,
    apply_crossing,
    check_positivity,
    cluster_ray_directions,
    compare_tight_vs_oracle,
    coprime_directions,
    crossing_normal,
    diagram_from_dict,
    diagram_to_dict,
    is_consistent,
    ks_complete,
    loop_crossings,
    path_ordered_product,
    specialize_diagram,
    tight_diagram,
    wall_function_tight,
)


class TestWall:
    def test_non_primitive_raises(self):
        with pytest.raises(ValueError, match="not primitive"):
            Wall((2, 2), RAY, (ONE, ONE))

    def test_constant_term_must_be_one(self):
        with pytest.raises(ValueError, match="constant term 1"):
            Wall((1, 1), RAY, (ZERO, ONE))

    def test_bad_kind_raises(self):
        with pytest.raises(ValueError, match="Invalid wall kind"):
            Wall((1, 1), "segment", (ONE,))

    def test_coefficient_list_truncates(self):
        wall = Wall((2, 1), RAY, (ONE, p(1, 1), p(1, 2), p(1, 3)))
        assert wall.coefficient_list(7) == [ONE, p(1, 1), p(1, 2)]

    def test_trivial_rays_are_dropped(self):
        d = ScatteringDiagram((), {(1, 1): Wall((1, 1), RAY, (ONE, ZERO))})
        assert d.ray_directions() == []


class TestInitialData:
    def test_symbolic(self):
        data = InitialData.symbolic(2, 1)
        assert data.side_coeffs(1) == (ONE, p(1, 1), p(1, 2))
        assert data.is_symbolic()

    def test_cluster_bounds(self):
        bounds = InitialData.cluster(3, 2).bounds()
        assert bounds.vertical_support == frozenset({3})
        assert bounds.horizontal_support == frozenset({2})

    def test_duplicate_direction_raises(self):
        with pytest.raises(ValueError, match="Duplicate initial line"):
            InitialData((((1, 0), (ONE,)), ((1, 0), (ONE,))))

    def test_random_is_deterministic(self):
        assert InitialData.random_power_series(7) == InitialData.random_power_series(7)


class TestCrossing:
    def test_normal_points_against_travel(self):
        assert crossing_normal((1, 0), (0, 1)) == (0, -1)
        assert crossing_normal((1, 0), (0, -1)) == (0, 1)

    def test_parallel_travel_raises(self):
        with pytest.raises(ValueError, match="parallel"):
            crossing_normal((1, 1), (2, 2))

    def test_x_axis_acts_on_y(self):
        wall = Wall((1, 0), LINE, (ONE, p(1, 1)))
        y = BivariateSeries.monomial(3, 0, 1)
        out = apply_crossing(wall, (0, -1), y)
        assert out.coefficient(0, 1) == 1
        assert out.coefficient(1, 1) == p(1, 1)

    def test_crossing_there_and_back_is_identity(self):
        wall = Wall((1, 1), RAY, (ONE, p(1, 1)))
        theta = WallAutomorphism.crossing(wall, (1, -1), 4).then_cross(wall, (-1, 1))
        assert theta.is_identity()


class TestLoop:
    def test_each_line_crossed_twice(self):
        d = ScatteringDiagram(InitialData.symbolic(1, 1).walls(), {}, 2)
        crossings = loop_crossings(d)
        assert [c.half_ray for c in crossings] == [(1, 0), (0, 1), (-1, 0), (0, -1)]

    def test_initial_lines_alone_are_inconsistent(self):
        d = ScatteringDiagram(InitialData.symbolic(1, 1).walls(), {}, 2)
        assert not is_consistent(d)

    def test_completed_loop_product_is_identity(self, symbolic_11_diagram):
        assert path_ordered_product(symbolic_11_diagram).is_identity()


class TestKsComplete:
    def test_pentagon(self, symbolic_11_diagram):
        d = symbolic_11_diagram
        assert d.ray_directions() == [(1, 1)]
        assert d.ray(1, 1).coeffs == (ONE, p(1, 1) * p(2, 1))

    def test_consistent(self, symbolic_11_diagram):
        assert is_consistent(symbolic_11_diagram)

    def test_positive(self, symbolic_11_diagram):
        assert check_positivity(symbolic_11_diagram)

    def test_loop_start_does_not_matter(self, symbolic_11_diagram):
        rotated = ks_complete(InitialData.symbolic(1, 1), 4, loop_start=3)
        assert rotated.rays == symbolic_11_diagram.rays

    def test_progress_callback(self):
        seen = []
        ks_complete(InitialData.symbolic(1, 1), 3, progress=lambda deg, k: seen.append((deg, k)))
        assert seen == [(1, 3), (2, 3), (3, 3)]

    def test_accepts_plain_lists(self):
        d = ks_complete([((1, 0), [1, p(1, 1)]), ((0, 1), [1, p(2, 1)])], 2)
        assert d.ray(1, 1).coefficient(1) == p(1, 1) * p(2, 1)

    def test_malformed_initial_raises(self):
        with pytest.raises(ValueError, match="Malformed initial data"):
            ks_complete([((1, 0), [2])], 2)

    def test_specialization_commutes_with_completion(self):
        data = InitialData.from_polys([1, 2, 1], [1, 3])
        generic = ks_complete(InitialData.symbolic(2, 1), 6)
        assert specialize_diagram(generic, data.assignment()) == ks_complete(data, 6)

    @pytest.mark.slow
    def test_generic_3_1_rays(self):
        d = ks_complete(InitialData.symbolic(3, 1), 9)
        p11, p12, p13, p21 = p(1, 1), p(1, 2), p(1, 3), p(2, 1)
        assert d.ray(3, 1).coefficient(1) == p13 * p21
        assert [d.ray(2, 1).coefficient(k) for k in (1, 2, 3)] == [
            p12 * p21, p11 * p13 * p21 ** 2, p13 ** 2 * p21 ** 3,
        ]
        assert d.ray(3, 2).coefficient(1) == p13 * p21 ** 2
        assert [d.ray(1, 1).coefficient(k) for k in (1, 2, 3)] == [
            p11 * p21, p12 * p21 ** 2, p13 * p21 ** 3,
        ]

    @pytest.mark.slow
    def test_catalan_ray(self, cubic_quadratic_data):
        d = ks_complete(cubic_quadratic_data, 20)
        assert d.ray(3, 2).coeffs[:5] == (1, 1, 2, 5, 14)


class TestTightFormula:
    def test_unit_ray(self):
        wall = wall_function_tight(1, 1, InitialData.symbolic(1, 1), 4)
        assert wall.coeffs == (ONE, p(1, 1) * p(2, 1))

    def test_bad_direction_raises(self):
        with pytest.raises(ValueError, match="coprime positive"):
            wall_function_tight(2, 2, InitialData.symbolic(1, 1), 4)

    def test_specialized_data(self, cubic_quadratic_data):
        wall = wall_function_tight(3, 2, cubic_quadratic_data, 10)
        assert wall.coeffs == (1, 1, 2)

    def test_matches_oracle_on_pentagon(self):
        report = compare_tight_vs_oracle(InitialData.symbolic(1, 1), 4)
        assert report.equal

    def test_matches_oracle_on_2_1(self):
        report = compare_tight_vs_oracle(InitialData.symbolic(2, 1), 5)
        assert report.equal, report.discrepancies

    @pytest.mark.slow
    def test_matches_oracle_on_3_1(self):
        report = compare_tight_vs_oracle(InitialData.symbolic(3, 1), 9)
        assert report.equal, report.discrepancies

    def test_parallel_matches_serial(self):
        data = InitialData.symbolic(2, 1)
        assert tight_diagram(data, 4, workers=2).rays == tight_diagram(data, 4).rays

    @pytest.mark.parametrize("l1,l2", [(a, b) for a in (1, 2, 3) for b in (1, 2, 3)])
    def test_matches_oracle_on_small_sweep(self, l1, l2):
        report = compare_tight_vs_oracle(InitialData.symbolic(l1, l2), 5)
        assert report.equal, report.discrepancies

    @pytest.mark.parametrize("seed", [0, 1, 2])
    def test_matches_oracle_on_random_series(self, seed):
        data = InitialData.random_power_series(seed, j_max=3)
        report = compare_tight_vs_oracle(data, 6)
        assert report.equal, report.discrepancies

    def test_generic_3_1_polynomial_rays(self):
        data = InitialData.symbolic(3, 1)
        p11, p12, p13, p21 = p(1, 1), p(1, 2), p(1, 3), p(2, 1)
        assert wall_function_tight(3, 1, data, 8).coeffs == (ONE, p13 * p21)
        assert wall_function_tight(2, 1, data, 12).coeffs == (
            ONE, p12 * p21, p11 * p13 * p21 ** 2, p13 ** 2 * p21 ** 3,
        )
        assert wall_function_tight(3, 2, data, 10).coeffs == (ONE, p13 * p21 ** 2)
        assert wall_function_tight(1, 1, data, 8).coeffs == (
            ONE, p11 * p21, p12 * p21 ** 2, p13 * p21 ** 3,
        )
        assert wall_function_tight(1, 2, data, 9).coeffs == (ONE,)

    def test_catalan_coefficients(self, cubic_quadratic_data):
        wall = wall_function_tight(3, 2, cubic_quadratic_data, 20)
        assert wall.coeffs == (1, 1, 2, 5, 14)

    @pytest.mark.slow
    @pytest.mark.parametrize("l1,l2", [(a, b) for a in (1, 2, 3) for b in (1, 2, 3)])
    def test_matches_oracle_on_full_sweep(self, l1, l2):
        report = compare_tight_vs_oracle(InitialData.symbolic(l1, l2), 12)
        assert report.equal, report.discrepancies

    @pytest.mark.slow
    @pytest.mark.parametrize("seed", range(20))
    def test_matches_oracle_on_twenty_random_series(self, seed):
        report = compare_tight_vs_oracle(InitialData.random_power_series(seed), 10)
        assert report.equal, report.discrepancies


class TestDirections:
    def test_coprime_directions(self):
        assert coprime_directions(3) == [(2, 1), (1, 1), (1, 2)]

    def test_cluster_rays_of_2_2(self):
        dirs = cluster_ray_directions(2, 2, 7)
        assert (2, 1) in dirs and (3, 2) in dirs and (1, 2) in dirs
        assert (1, 1) not in dirs

    def test_cluster_rays_of_completed_2_2(self):
        d = ks_complete(InitialData.cluster(2, 2), 12)
        cluster = cluster_ray_directions(2, 2, 6)
        assert cluster == [(2, 1), (3, 2), (2, 3), (1, 2)]
        assert [w for w in d.ray_directions() if w != (1, 1)] == cluster
        assert d.ray(1, 1).coeffs == (1, 0, 2, 0, 3, 0, 4)


class TestSerialization:
    def test_reads_back(self, symbolic_11_diagram):
        data = diagram_to_dict(symbolic_11_diagram)
        assert diagram_from_dict(data) == symbolic_11_diagram

    def test_lines_before_rays(self, symbolic_11_diagram):
        kinds = [w["kind"] for w in diagram_to_dict(symbolic_11_diagram)["walls"]]
        assert kinds == ["line", "ray", "line"]

    def test_schema_version_checked(self):
        with pytest.raises(ValueError, match="Unsupported schema_version"):
            diagram_from_dict({"schema_version": "0", "walls": [], "order": "1"})
