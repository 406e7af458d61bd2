"""Tests for sequence pairs, primitive divisors and the tables."""

import pytest

from lucaslehmer.exceptions import (
    CriterionMismatchError,
    TableMismatchError,
    UnsupportedInputError,
)
from lucaslehmer.primdiv import (
    LEHMER_RANGE,
    LUCAS_RANGE,
    LUCAS_TABLE,
    SequenceCandidate,
    candidates_for,
    canonicalize,
    check_primitive_divisor,
    direct_check,
    emit_tables,
    is_degenerate,
    lehmer_terms,
    lucas_terms,
    primitive_part,
    reconstruct,
    render,
)


class TestReconstruct:
    """Tests for reconstruct and render."""

    def test_fibonacci(self, fibonacci: SequenceCandidate) -> None:
        """Test the Fibonacci pair."""
        assert fibonacci.kind == "lucas"
        assert fibonacci.valid
        assert (fibonacci.s, fibonacci.t) == (1, 5)
        assert render(fibonacci) == "(1±√5)/2"

    def test_even_trace(self) -> None:
        """Test the a/2 ± √(t/4) notation for an even trace."""
        assert render(reconstruct(34, 55)) == "6±√-19"
        assert render(reconstruct(-18, 11)) == "1±√-10"

    @pytest.mark.parametrize(
        ("x", "y", "pair"),
        [(-1, 2, "(√3±√-5)/2"), (3, 1, "(√5±√1)/2"), (-2, 3, "1±√-2")],
    )
    def test_render(self, x: int, y: int, pair: str) -> None:
        """Test rendering of Lehmer and Lucas pairs."""
        assert render(reconstruct(x, y)) == pair

    def test_lehmer_kind(self) -> None:
        """Test that a non-square s gives a Lehmer pair."""
        assert reconstruct(-1, 2).kind == "lehmer"

    @pytest.mark.parametrize(("x", "y"), [(1, 0), (2, 1), (-2, 1), (1, 1), (-1, 1), (0, 3)])
    def test_degenerate(self, x: int, y: int) -> None:
        """Test that alpha beta = 0 and root-of-unity ratios are degenerate."""
        assert is_degenerate(x, y)
        assert reconstruct(x, y).kind == "degenerate"

    def test_not_coprime(self) -> None:
        """Test that gcd(s, y) > 1 is flagged."""
        assert not reconstruct(3, 6).valid

    def test_canonicalize(self) -> None:
        """Test that s < 0 is sent to (-x, -y)."""
        cand = canonicalize(reconstruct(1, -2))

        assert (cand.x, cand.y) == (-1, 2)
        assert cand.canonical

    def test_canonicalize_degenerate(self) -> None:
        """Test that a degenerate pair cannot be canonicalized."""
        with pytest.raises(UnsupportedInputError, match="degenerate"):
            canonicalize(reconstruct(1, 0))


class TestTerms:
    """Tests for the sequence terms and primitive parts."""

    def test_fibonacci_terms(self, fibonacci: SequenceCandidate) -> None:
        """Test the first Fibonacci numbers."""
        assert lucas_terms(fibonacci, 10) == [0, 1, 1, 2, 3, 5, 8, 13, 21, 34, 55]

    def test_lehmer_terms(self) -> None:
        """Test the Lehmer sequence of (√3 ± √-5)/2 up to u_7 = 1."""
        assert lehmer_terms(reconstruct(-1, 2), 7) == [0, 1, 1, 1, -1, -5, -3, 1]

    def test_lucas_terms_need_square(self) -> None:
        """Test that a Lehmer pair has no Lucas sequence."""
        with pytest.raises(UnsupportedInputError, match="not a Lucas pair"):
            lucas_terms(reconstruct(-1, 2), 5)

    def test_primitive_part(self) -> None:
        """Test removing shared primes."""
        assert primitive_part(144, 2 * 3 * 5) == 1
        assert primitive_part(-233, 2 * 3) == 233

    def test_direct_check(self, fibonacci: SequenceCandidate) -> None:
        """Test u_12 = 144 without and u_13 = 233 with a primitive divisor."""
        twelve = direct_check(fibonacci, 12)
        thirteen = direct_check(fibonacci, 13)

        assert twelve.u_n == 144
        assert not twelve.has_primitive_divisor
        assert thirteen.primes == (233,)

    def test_direct_check_degenerate(self) -> None:
        """Test that a degenerate pair is rejected."""
        with pytest.raises(UnsupportedInputError, match="degenerate"):
            direct_check(reconstruct(1, 0), 7)


class TestCriterion:
    """Tests for check_primitive_divisor."""

    def test_fibonacci(self, fibonacci: SequenceCandidate) -> None:
        """Test that F_12 has no primitive divisor and F_13 has one."""
        assert check_primitive_divisor(fibonacci, 12) is False
        assert check_primitive_divisor(fibonacci, 13) is True

    def test_large_lucas_pair(self) -> None:
        """Test 6 ± √-341 at n = 5, where u_5 = 1."""
        assert check_primitive_divisor(reconstruct(-610, 377), 5) is False

    def test_lehmer_pair(self) -> None:
        """Test (√3 ± √-5)/2 at n = 7 and n = 11."""
        cand = reconstruct(-1, 2)

        assert check_primitive_divisor(cand, 7, "lehmer") is False
        assert check_primitive_divisor(cand, 11, "lehmer") is True

    def test_not_coprime(self) -> None:
        """Test that a non-coprime pair is rejected."""
        with pytest.raises(UnsupportedInputError, match="not coprime"):
            check_primitive_divisor(reconstruct(3, 6), 7)

    def test_mismatch_is_reported(self, monkeypatch: pytest.MonkeyPatch) -> None:
        """Test that a disagreement raises CriterionMismatchError."""
        monkeypatch.setattr("lucaslehmer.primdiv.criterion_holds", lambda cand, n: False)

        with pytest.raises(CriterionMismatchError) as excinfo:
            check_primitive_divisor(reconstruct(3, -1), 12)

        assert excinfo.value.check == "criterion"
        assert excinfo.value.details["u_n"] == "144"


class TestCandidates:
    """Tests for candidates_for."""

    def test_five(self, quadratic_solutions: dict[int, list[tuple[int, int]]]) -> None:
        """Test the seven Lucas pairs of n = 5 and the audit trail."""
        report = candidates_for(5, quadratic_solutions[5])

        assert {render(c) for c in report.candidates} == LUCAS_TABLE[5]
        assert {item["reason"] for item in report.filtered} == {"degenerate"}

    def test_duplicates(self) -> None:
        """Test that (x, y) and (-x, -y) give one candidate."""
        report = candidates_for(7, [(-1, 2), (1, -2)])

        assert [render(c) for c in report.candidates] == ["(√3±√-5)/2"]
        assert report.filtered[0]["reason"] == "duplicate"


class TestTables:
    """Tests for emit_tables."""

    def test_quadratic_rows(self, quadratic_solutions: dict[int, list[tuple[int, int]]]) -> None:
        """Test the Lucas rows of n = 5, 8, 10 with direct checks."""
        lucas, lehmer = emit_tables(quadratic_solutions, check_direct=True)

        assert lucas.rendered() == {n: LUCAS_TABLE[n] for n in (5, 8, 10)}
        assert lehmer.rendered() == {}
        assert lucas.to_text().splitlines()[0].startswith("5: ")
        assert lucas.as_dict()["8"] == ["(1±√-7)/2", "1±√-6"]

    def test_missing_row(self, quadratic_solutions: dict[int, list[tuple[int, int]]]) -> None:
        """Test that a dropped solution is reported as missing."""
        solved = dict(quadratic_solutions)
        solved[8] = [pair for pair in solved[8] if pair != (-10, 7)]

        with pytest.raises(TableMismatchError) as excinfo:
            emit_tables(solved)

        assert excinfo.value.missing == [(8, "1±√-6")]
        assert excinfo.value.unexpected == []
        assert excinfo.value.exit_code == 2

    def test_unexpected_row(self) -> None:
        """Test that an extra pair is reported as unexpected."""
        with pytest.raises(TableMismatchError) as excinfo:
            emit_tables({13: [(-3, 2), (-1, 2)]})

        assert (13, "(√3±√-5)/2") in excinfo.value.unexpected

    def test_ranges(self) -> None:
        """Test the index ranges of the two tables."""
        assert 6 not in LUCAS_RANGE
        assert 5 in LUCAS_RANGE and 5 not in LEHMER_RANGE
        assert {8, 10, 12}.isdisjoint(LEHMER_RANGE)
