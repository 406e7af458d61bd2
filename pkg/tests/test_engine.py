"""Tests for routing and the Enumerator."""

import pytest

from lucaslehmer import Enumerator
from lucaslehmer.config import RunConfig
from lucaslehmer.engine import pull_back, route_for
from lucaslehmer.exceptions import InvariantBreachError, UnsupportedInputError
from lucaslehmer.forms import reduce_even, reduce_to_core
from lucaslehmer.primdiv import LEHMER_TABLE, LUCAS_TABLE


class TestRouting:
    """Tests for route_for."""

    @pytest.mark.parametrize(
        ("n", "route"),
        [
            (5, ("smalln", None)),
            (10, ("smalln", None)),
            (7, ("thue", None)),
            (25, ("thue", None)),
            (14, ("even", 7)),
            (30, ("even", 15)),
            (27, ("power", 9)),
            (28, ("power", 14)),
        ],
    )
    def test_routes(self, n: int, route: tuple[str, int | None]) -> None:
        """Test the solver chosen for each index."""
        assert route_for(n) == route

    def test_excluded(self) -> None:
        """Test that n = 6 has no route."""
        with pytest.raises(UnsupportedInputError, match="excluded"):
            route_for(6)

    def test_beyond_catalog(self) -> None:
        """Test that a prime index beyond the catalog points to the scan."""
        with pytest.raises(UnsupportedInputError, match="use scan"):
            route_for(31)


class TestPullBack:
    """Tests for pull_back."""

    def test_even(self) -> None:
        """Test lifting a solution of F_7 to F_14."""
        assert pull_back(reduce_even(7), [(-1, 2, 1)]) == [(-1, -2, 1)]

    def test_power(self) -> None:
        """Test lifting a solution of F_9 to F_27."""
        assert pull_back(reduce_to_core(27), [(2, 1, 3)]) == [(-1, 1, 3), (2, 1, 3)]

    def test_no_preimage(self) -> None:
        """Test that a core pair whose y is not a cube lifts to nothing."""
        assert pull_back(reduce_to_core(27), [(1, 2, 3)]) == []

    def test_bad_core_pair(self) -> None:
        """Test that a pair failing re-verification is caught."""
        with pytest.raises(InvariantBreachError, match="does not solve") as excinfo:
            pull_back(reduce_even(7), [(-1, 2, 7)])

        assert excinfo.value.check == "pullback"


class TestEnumerator:
    """Tests for the Enumerator facade."""

    def test_solve_quadratic(self, config: RunConfig) -> None:
        """Test solving n = 5 through the quartic cases."""
        with Enumerator(config) as enum:
            report = enum.solve(5)

        assert report["route"] == "smalln"
        assert "ledger" not in report
        assert "core" not in report
        assert {c["pair"] for c in report["candidates"]} == LUCAS_TABLE[5]
        assert {s["provenance"] for s in report["solutions"]} == {"quartic"}

    def test_solve_single_rhs(self, config: RunConfig) -> None:
        """Test restricting to one right-hand side."""
        with Enumerator(config) as enum:
            report = enum.solve(10, m=-5)

        assert [(s["x"], s["y"], s["m"]) for s in report["solutions"]] == [
            (-11, 18, -5),
            (11, 7, -5),
        ]
        assert {c["pair"] for c in report["candidates"]} == {"(5±√-47)/2", "(5±√-3)/2"}

    def test_inadmissible_rhs(self, config: RunConfig) -> None:
        """Test that an inadmissible m is rejected."""
        with Enumerator(config) as enum, pytest.raises(UnsupportedInputError, match="m = 2"):
            enum.solve(5, m=2)

    def test_check_direct(self) -> None:
        """Test that direct checks run cleanly on the quadratic candidates."""
        with Enumerator(RunConfig(precision=60, check_direct=True)) as enum:
            report = enum.solve(8)

        assert len(report["candidates"]) == 2

    def test_solve_many_orders_results(self) -> None:
        """Test that reports come back in ascending n from the pool."""
        with Enumerator(RunConfig(precision=60, threads=3)) as enum:
            reports = enum.solve_many([10, 5, 8, 5])

        assert [r["n"] for r in reports] == [5, 8, 10]

    def test_tables_subset(self) -> None:
        """Test building the tables for a subset of indices."""
        config = RunConfig(precision=60, n_list=(5, 8, 10), check_direct=True)

        with Enumerator(config) as enum:
            lucas, lehmer = enum.tables()

        assert lucas.rendered() == {n: LUCAS_TABLE[n] for n in (5, 8, 10)}
        assert lehmer.rendered() == {}

    def test_scan_uses_config_box(self) -> None:
        """Test that the scan falls back to the configured box."""
        with Enumerator(RunConfig(precision=60, box=60)) as enum:
            report = enum.scan(31, 31)

        assert report["box"] == 60
        assert report["hits"] == {}


@pytest.mark.slow
class TestEnumeratorThue:
    """Tests that solve Thue equations through the Enumerator."""

    def test_even_route_shares_core(self) -> None:
        """Test that n = 14 is solved from the cached n = 7 equation."""
        with Enumerator() as enum:
            seven = enum.solve(7)
            fourteen = enum.solve(14)
            assert enum.thue(7) is enum.thue(7)

        assert fourteen["route"] == "even"
        assert fourteen["core"] == 7
        assert fourteen["ledger"] == seven["ledger"]
        assert {(s["x"], -s["y"]) for s in fourteen["solutions"]} == {
            (s["x"], s["y"]) for s in seven["solutions"]
        }

    def test_full_tables(self) -> None:
        """Test every row of both tables with direct checks."""
        with Enumerator(RunConfig(check_direct=True, threads=4)) as enum:
            lucas, lehmer = enum.tables()

        assert lucas.rendered() == LUCAS_TABLE
        assert lehmer.rendered() == LEHMER_TABLE
