"""Tests for the quadratic indices n = 5, 8, 10, 12."""

from math import isqrt

import pytest

from lucaslehmer.config import RunConfig
from lucaslehmer.exceptions import UnsupportedInputError
from lucaslehmer.forms import build_form, special_quartic_form
from lucaslehmer.smalln import (
    FALSIFIER_BOUND,
    QuarticShape,
    bounded_quartic_search,
    case_instance,
    locally_obstructed,
    quartic_unit_search,
    solve_case,
    special_to_wz,
    trace_fixture,
)


class TestSolveCase:
    """Tests for solve_case."""

    def test_fibonacci_equation(self, config: RunConfig) -> None:
        """Test F_5(X, Y) = 1, which contains the Fibonacci pair."""
        assert solve_case(5, 1, config=config) == [
            (-610, 377),
            (-5, 3),
            (-2, 1),
            (1, 0),
            (2, -1),
            (34, 55),
        ]

    def test_twelve_minus_three(self, config: RunConfig) -> None:
        """Test F_12(X, Y) = -3."""
        assert solve_case(12, -3, config=config) == [(-3, 2)]

    def test_twelve_one(self, config: RunConfig) -> None:
        """Test the three Ljunggren solutions of W^2 = 3Z^4 + 1 behind F_12 = 1."""
        assert solve_case(12, 1, config=config) == [
            (-26, 15),
            (-7, 4),
            (-2, 1),
            (1, 0),
            (2, -1),
            (2, 1),
        ]

    def test_ten_minus_five(self, config: RunConfig) -> None:
        """Test the Robbins case F_10(X, Y) = -5."""
        assert solve_case(10, -5, config=config) == [(-11, 18), (11, 7)]

    @pytest.mark.parametrize(("n", "k"), [(5, -5), (8, -2), (10, -1), (12, -1), (12, 2), (12, 3), (12, -6)])
    def test_obstructed(self, n: int, k: int, config: RunConfig) -> None:
        """Test that the locally obstructed cases have no solutions."""
        assert solve_case(n, k, config=config) == []

    @pytest.mark.parametrize("n", [5, 8, 10])
    def test_solutions_satisfy_form(self, n: int, config: RunConfig) -> None:
        """Test that every solution solves its equation with X + 2Y a square."""
        form = build_form(n)
        for k in (1, -1):
            for x, y in solve_case(n, k, config=config):
                assert form.evaluate(x, y) == k
                assert isqrt(x + 2 * y) ** 2 == x + 2 * y

    def test_rejects_thue_index(self) -> None:
        """Test that n = 7 is not a quadratic case."""
        with pytest.raises(UnsupportedInputError, match="not one of the quadratic cases"):
            solve_case(7, 1)

    def test_rejects_bad_target(self) -> None:
        """Test that an inadmissible k is rejected."""
        with pytest.raises(UnsupportedInputError, match="not an admissible"):
            solve_case(5, 2)

    def test_precomputed_quartic_solutions(self, config: RunConfig) -> None:
        """Test F_12 = -2 from supplied solutions of the auxiliary quartic."""
        assert solve_case(12, -2, config=config, thue_solutions=[(1, 0)]) == [(-5, 3), (-1, 1)]


class TestQuarticShapes:
    """Tests for the quartic shapes and their local obstructions."""

    def test_three_z4_search(self) -> None:
        """Test the bounded search for W^2 = 3Z^4 + 1."""
        assert bounded_quartic_search(QuarticShape.THREE_Z4, 1, 100) == [(1, 0), (2, 1), (7, 2)]

    def test_cited_lists_match_search(self) -> None:
        """Test that every cited list equals the bounded search."""
        for n, k in [(5, 1), (5, -1), (5, 5), (8, 1), (8, 2), (10, 5), (12, 6)]:
            inst = case_instance(n, k)
            found = bounded_quartic_search(inst.shape, inst.shape_k, FALSIFIER_BOUND)
            assert found == sorted(inst.known), (n, k)

    def test_obstruction(self) -> None:
        """Test that W^2 = 3Z^4 - 1 has no solution modulo 9."""
        assert locally_obstructed(QuarticShape.THREE_Z4, -1, 9)
        assert not locally_obstructed(QuarticShape.THREE_Z4, 1, 9)

    @pytest.mark.parametrize("k", [-1, 2, 3, -6])
    def test_obstructed_search_is_empty(self, k: int) -> None:
        """Test that the mod 3 cases have no solution up to Z = 10^4."""
        assert bounded_quartic_search(QuarticShape.THREE_Z4, k, 10**4) == []

    def test_quartic_unit_search(self) -> None:
        """Test that H^4 - 2K^4 = +-1 has only (1, 0) and (1, 1)."""
        assert quartic_unit_search() == [(1, 0), (1, 1)]

    def test_trace_fixture(self) -> None:
        """Test the (V, Z) read off the trace for n = 12, k = 6."""
        assert trace_fixture() == (1, 1)

    def test_special_quartic_map(self) -> None:
        """Test the map from the auxiliary quartic to W^2 + 2 = 3Z^4."""
        form = special_quartic_form()

        assert form.evaluate(1, 0) == 1
        w, z = special_to_wz(1, 0)
        assert w * w + 2 == 3 * z**4

    def test_special_quartic_search(self) -> None:
        """Test the small solutions of the auxiliary quartic."""
        found = bounded_quartic_search(QuarticShape.SPECIAL_THUE, 1, 20)

        assert (1, 0) in found
        assert all(special_quartic_form().evaluate(s, t) == 1 for s, t in found)


@pytest.mark.slow
class TestSpecialThue:
    """Tests that solve the auxiliary quartic Thue equation."""

    def test_twelve_minus_two(self) -> None:
        """Test F_12 = -2 through the full Thue solver."""
        assert solve_case(12, -2, config=RunConfig()) == [(-5, 3), (-1, 1)]
