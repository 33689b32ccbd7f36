import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kakutani import (
    IntPolynomial,
    ParameterError,
    ResourceLimitError,
    build_rho,
    build_three_interval_rule,
    char_poly,
    iterate_primitive,
    solve_alpha,
    solve_inflation,
    substitution_matrix,
    tile_counts,
    verify_cover,
)
from kakutani.cover import SubstitutionMatrix

from conftest import bisect_root, coprime_pairs, expansion_char_poly


class TestSolveInflation:
    def test_two_loops_match_alpha(self):
        for n, m in [(2, 1), (3, 2), (5, 3), (7, 4)]:
            xi = solve_inflation((n, m))
            assert xi == pytest.approx(solve_alpha(n, m) ** (-1.0 / n), abs=1e-12)

    def test_silver_ratio(self):
        # 2/x + 1/x^2 = 1 is the silver-ratio equation x^2 - 2x - 1 = 0
        xi = solve_inflation((2, 1, 1))
        assert xi == pytest.approx(1.0 + math.sqrt(2.0), abs=1e-12)

    def test_tribonacci(self):
        xi = solve_inflation((3, 2, 1))
        oracle = bisect_root(lambda x: x**3 - x**2 - x - 1, 1.0, 2.0)
        assert xi == pytest.approx(oracle, abs=1e-12)

    def test_defining_equation(self):
        for counts in [(2, 1), (4, 3), (3, 3, 1), (5, 2, 1)]:
            xi = solve_inflation(counts)
            assert sum(xi**-c for c in counts) == pytest.approx(1.0, abs=1e-12)

    def test_rejects_single_loop(self):
        with pytest.raises(ParameterError):
            solve_inflation((3,))

    def test_rejects_nonpositive_count(self):
        with pytest.raises(ParameterError):
            solve_inflation((2, 0))


class TestRuleStructure:
    def test_size_and_exponents(self):
        rule = build_rho(3, 2)
        # hub plus (3 - 1) + (2 - 1) chain prototiles
        assert rule.size == 4
        assert rule.length_exponents == (0, 2, 1, 1)
        assert rule.prototile_lengths[0] == 1.0

    def test_hub_children_order(self):
        # the alpha piece (longer loop) comes first, at offset zero
        rule = build_rho(3, 2)
        hub = rule.image_map[0]
        assert len(hub) == 2
        assert hub[0][0] == 2
        assert hub[0][1].terms == ()
        assert hub[1][0] == 4

    def test_chain_is_pass_through(self):
        rule = build_rho(4, 3)
        for label in range(2, rule.size + 1):
            image = rule.image_map[label - 1]
            assert len(image) == 1
            assert image[0][1].terms == ()

    def test_alpha_and_xi(self):
        rule = build_rho(2, 1)
        assert rule.alpha == pytest.approx(solve_alpha(2, 1), abs=0)
        assert rule.xi == pytest.approx(rule.alpha ** (-0.5), abs=1e-15)

    def test_rejects_lattice_pair(self):
        with pytest.raises(ParameterError):
            build_rho(1, 1)

    def test_rejects_common_factor(self):
        with pytest.raises(ParameterError):
            build_rho(4, 2)


class TestThreeIntervalRule:
    def test_silver_rule_has_hub_self_loop(self):
        # a loop of one edge maps the hub straight back to itself
        rule = build_three_interval_rule(2, 1, 1)
        assert rule.size == 2
        children = [child for child, _ in rule.image_map[0]]
        assert children == [2, 1, 1]
        assert rule.polynomial.coeffs == (-1, -2, 1)

    def test_tribonacci_rule(self):
        rule = build_three_interval_rule(3, 2, 1)
        assert rule.size == 4
        assert rule.polynomial.coeffs == (-1, -1, -1, 1)
        assert sum(rule.interval_lengths) == pytest.approx(1.0, abs=1e-12)

    def test_polynomial_vanishes_at_xi(self):
        for loops in [(2, 1, 1), (3, 2, 1), (4, 2, 1), (5, 1, 1), (5, 4, 2)]:
            rule = build_three_interval_rule(*loops)
            value = sum(c * rule.xi**k for k, c in enumerate(rule.polynomial.coeffs))
            assert abs(value) < 1e-9

    def test_rejects_bad_order(self):
        with pytest.raises(ParameterError):
            build_three_interval_rule(1, 2, 1)

    def test_rejects_common_factor(self):
        with pytest.raises(ParameterError):
            build_three_interval_rule(4, 2, 2)

    def test_rejects_lattice(self):
        with pytest.raises(ParameterError):
            build_three_interval_rule(1, 1, 1)


class TestSubstitutionMatrix:
    def test_golden_matrix(self):
        # hub -> chain tile + hub, chain tile -> hub: the Fibonacci matrix
        matrix = substitution_matrix(build_rho(2, 1))
        assert matrix.entries == ((1, 1), (1, 0))

    def test_column_sums(self):
        # hub image has one child per loop; chains are single children
        for n, m in [(3, 2), (5, 2), (7, 4)]:
            matrix = substitution_matrix(build_rho(n, m))
            sums = matrix.column_sums()
            assert sums[0] == 2
            assert all(s == 1 for s in sums[1:])

    def test_primitive(self):
        for n, m in coprime_pairs(6):
            assert substitution_matrix(build_rho(n, m)).is_primitive()

    def test_three_interval_primitive(self):
        for loops in [(2, 1, 1), (3, 2, 1), (4, 2, 1), (5, 1, 1)]:
            assert substitution_matrix(build_three_interval_rule(*loops)).is_primitive()

    def test_power_identity(self):
        matrix = substitution_matrix(build_rho(3, 1))
        assert matrix.power(0).entries == ((1, 0, 0), (0, 1, 0), (0, 0, 1))
        assert matrix.power(1).entries == matrix.entries

    def test_power_additivity(self):
        matrix = substitution_matrix(build_rho(4, 3))
        lhs = matrix.power(5)
        rhs = matrix.power(2)._matmul(matrix.power(3))
        assert lhs.entries == rhs.entries

    def test_rejects_ragged(self):
        with pytest.raises(ParameterError):
            SubstitutionMatrix(((1, 2), (3,)))

    def test_rejects_negative_power(self):
        matrix = substitution_matrix(build_rho(2, 1))
        with pytest.raises(ParameterError):
            matrix.power(-1)


class TestCharPoly:
    @pytest.mark.parametrize("pair", coprime_pairs(10))
    def test_trinomial_identity(self, pair):
        n, m = pair
        got = char_poly(substitution_matrix(build_rho(n, m)))
        want = IntPolynomial.from_terms({n + m - 1: 1, m - 1: -1, n - 1: -1})
        assert got == want

    @pytest.mark.parametrize("pair", coprime_pairs(5))
    def test_matches_expansion_oracle(self, pair):
        n, m = pair
        matrix = substitution_matrix(build_rho(n, m))
        got = char_poly(matrix)
        assert list(got.coeffs) == expansion_char_poly(matrix.entries)

    def test_three_interval_poly_divides_char_poly(self):
        # the rule polynomial is the minimal relation of xi; the full
        # characteristic polynomial picks up extra monomial factors
        for loops in [(3, 2, 1), (4, 2, 1), (5, 1, 1)]:
            rule = build_three_interval_rule(*loops)
            full = char_poly(substitution_matrix(rule))
            quotient, remainder = divmod(full, rule.polynomial)
            assert remainder.is_zero
            assert set(quotient.coeffs[:-1]) <= {0}


class TestIteratePrimitive:
    def test_step_zero_is_hub(self):
        patch = iterate_primitive(build_rho(3, 2), 0)
        assert len(patch) == 1
        assert patch.tiles[0].label == 1
        assert patch.tiles[0].length_value == 1.0

    def test_counts_match_matrix(self):
        for n, m in [(2, 1), (3, 2), (4, 1), (5, 3)]:
            rule = build_rho(n, m)
            matrix = substitution_matrix(rule)
            for ell in range(0, 9):
                patch = iterate_primitive(rule, ell)
                assert len(patch) == sum(tile_counts(matrix, ell))

    def test_label_histogram_matches_matrix(self):
        rule = build_rho(3, 2)
        matrix = substitution_matrix(rule)
        ell = 7
        patch = iterate_primitive(rule, ell)
        counts = [0] * rule.size
        for tile in patch.tiles:
            counts[tile.label - 1] += 1
        assert tuple(counts) == tile_counts(matrix, ell)

    def test_contiguous_and_anchored(self):
        rule = build_rho(3, 1)
        patch = iterate_primitive(rule, 6)
        xi = rule.xi
        assert patch.tiles[0].position_value == 0.0
        edge = 0.0
        for tile in patch.tiles:
            assert tile.position_value == pytest.approx(edge, abs=1e-9)
            edge = tile.position_value + tile.length_value
        assert edge == pytest.approx(xi**6, abs=1e-9)

    def test_tile_cap(self):
        with pytest.raises(ResourceLimitError):
            iterate_primitive(build_rho(2, 1), 10, max_tiles=20)

    def test_rejects_negative_ell(self):
        with pytest.raises(ParameterError):
            iterate_primitive(build_rho(2, 1), -1)


class TestVerifyCover:
    def test_golden_pair_exact(self):
        report = verify_cover(2, 1, 8)
        assert report.ok
        assert bool(report)
        assert report.first_mismatch is None
        assert report.tile_count == len(iterate_primitive(build_rho(2, 1), 8))

    def test_small_grid(self):
        for n, m in coprime_pairs(5):
            for ell in range(0, 8):
                assert verify_cover(n, m, ell).ok, (n, m, ell)

    def test_report_fields(self):
        report = verify_cover(3, 2, 5)
        assert (report.n, report.m, report.ell) == (3, 2, 5)
        assert isinstance(report.raw_equal, bool)

    def test_respects_tile_cap(self):
        with pytest.raises(ResourceLimitError):
            verify_cover(2, 1, 12, max_tiles=50)


class TestProperties:
    @settings(max_examples=40, deadline=None)
    @given(st.sampled_from(coprime_pairs(6)), st.integers(min_value=0, max_value=7))
    def test_patch_size_equals_count_vector(self, pair, ell):
        n, m = pair
        rule = build_rho(n, m)
        matrix = substitution_matrix(rule)
        patch = iterate_primitive(rule, ell)
        assert len(patch) == sum(tile_counts(matrix, ell))

    @settings(max_examples=40, deadline=None)
    @given(st.sampled_from(coprime_pairs(6)), st.integers(min_value=0, max_value=10))
    def test_counts_never_shrink(self, pair, ell):
        n, m = pair
        matrix = substitution_matrix(build_rho(n, m))
        assert sum(tile_counts(matrix, ell + 1)) >= sum(tile_counts(matrix, ell))
