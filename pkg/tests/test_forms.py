"""Tests for the cyclotomic binary forms."""

import random

import pytest
from sympy import Poly, Symbol, cyclotomic_poly

from lucaslehmer.exceptions import UnsupportedInputError
from lucaslehmer.forms import (
    build_form,
    coprime_residues,
    form_target,
    largest_prime_factor,
    parse_form_line,
    reduce_even,
    reduce_to_core,
    special_quartic_form,
)

_Z = Symbol("z")


class TestBuildForm:
    """Tests for build_form."""

    @pytest.mark.parametrize(
        ("n", "coeffs"),
        [
            (5, (1, 1, -1)),
            (7, (1, 1, -2, -1)),
            (8, (1, 0, -2)),
            (9, (1, 0, -3, 1)),
            (10, (1, -1, -1)),
            (12, (1, 0, -3)),
            (14, (1, -1, -2, 1)),
        ],
    )
    def test_coefficients(self, n: int, coeffs: tuple[int, ...]) -> None:
        """Test the coefficients of small forms."""
        assert build_form(n).coeffs == coeffs

    def test_dump(self) -> None:
        """Test the one-line rendering."""
        assert build_form(7).dump() == "7 3 1 1 -2 -1"

    def test_degree_is_half_totient(self) -> None:
        """Test that F_n has degree phi(n)/2 up to n = 30."""
        degrees = {n: build_form(n).degree for n in (11, 16, 24, 25, 29, 30)}

        assert degrees == {11: 5, 16: 4, 24: 4, 25: 10, 29: 14, 30: 4}

    def test_values_match_cyclotomic_polynomial(self) -> None:
        """Test F_n(a^2 + b^2, ab) = Phi_n(a, b) at a = 2, b = 1."""
        # Phi_7(2, 1) = 127, Phi_9(2, 1) = 73
        assert build_form(7).evaluate(5, 2) == 127
        assert build_form(9).evaluate(5, 2) == 73

    @pytest.mark.parametrize("n", [1, 2, 3, 4, 6])
    def test_excluded_indices(self, n: int) -> None:
        """Test that n <= 4 and n = 6 are rejected."""
        with pytest.raises(UnsupportedInputError, match="excluded"):
            build_form(n)

    def test_parse_form_line(self) -> None:
        """Test parsing a dumped form back."""
        form = parse_form_line("7 3 1 1 -2 -1")

        assert form == build_form(7)

    def test_parse_form_line_malformed(self) -> None:
        """Test that a line whose length disagrees with its degree is rejected."""
        with pytest.raises(UnsupportedInputError, match="malformed"):
            parse_form_line("7 3 1 1 -2")

    def test_special_quartic(self) -> None:
        """Test the auxiliary quartic of n = 12 and its single target."""
        form = special_quartic_form()

        assert form.kind == "quartic"
        assert form.evaluate(1, 0) == 1
        assert form.targets() == frozenset({1})


class TestTargets:
    """Tests for the admissible right-hand sides."""

    def test_largest_prime_factor(self) -> None:
        """Test P(n) including P(1) = 1."""
        assert [largest_prime_factor(n) for n in (1, 2, 10, 27, 30)] == [1, 2, 5, 3, 5]

    def test_generic_target(self) -> None:
        """Test that the targets are +-1 and +-P(n/(3, n))."""
        assert form_target(7).rhs_values == frozenset({1, -1, 7, -7})
        assert form_target(9).rhs_values == frozenset({1, -1, 3, -3})
        assert form_target(30).rhs_values == frozenset({1, -1, 5, -5})

    def test_twelve(self) -> None:
        """Test the eight targets of n = 12."""
        assert form_target(12).rhs_values == frozenset({1, -1, 2, -2, 3, -3, 6, -6})

    def test_coprime_residues(self) -> None:
        """Test the residues a_j below n/2."""
        assert coprime_residues(7) == [1, 2, 3]
        assert coprime_residues(12) == [1, 5]
        assert coprime_residues(30) == [1, 7, 11, 13]


class TestReductions:
    """Tests for the even and power reductions."""

    def test_reduce_even(self) -> None:
        """Test F_14(X, Y) = F_7(X, -Y)."""
        reduction = reduce_even(7)

        assert (reduction.n, reduction.m, reduction.kind) == (14, 7, "even")
        assert reduction.apply(1, 2) == (1, -2)
        assert reduction.pull_back(1, -2) == [(1, 2)]

    def test_reduce_even_rejects_even_t(self) -> None:
        """Test that reduce_even needs an odd t."""
        with pytest.raises(UnsupportedInputError, match="odd"):
            reduce_even(8)

    def test_reduce_to_core_power(self) -> None:
        """Test the cube reduction of n = 27 to n = 9."""
        reduction = reduce_to_core(27)

        assert (reduction.m, reduction.exponent, reduction.kind) == (9, 3, "power")
        assert reduction.apply(2, 1) == (2, 1)
        assert build_form(27).evaluate(2, 1) == build_form(9).evaluate(2, 1)

    def test_power_pull_back(self) -> None:
        """Test that pull_back inverts apply on a core pair."""
        reduction = reduce_to_core(27)

        assert reduction.pull_back(2, 1) == [(-1, 1), (2, 1)]
        assert reduction.pull_back(2, 2) == []

    def test_reduce_to_core_routes_2_mod_4(self) -> None:
        """Test that n = 2t with t odd uses the even reduction."""
        assert reduce_to_core(30).kind == "even"
        assert reduce_to_core(28).m == 14

    def test_no_core(self) -> None:
        """Test that a prime index has no smaller core."""
        with pytest.raises(UnsupportedInputError, match="no smaller core"):
            reduce_to_core(31)


def _homogeneous_cyclotomic(n: int, a: int, b: int) -> int:
    coeffs = Poly(cyclotomic_poly(n, _Z), _Z).all_coeffs()
    top = len(coeffs) - 1
    return sum(int(c) * a ** (top - k) * b**k for k, c in enumerate(coeffs))


class TestFormIdentities:
    """Tests for identities of F_n on seeded random points."""

    @pytest.mark.parametrize("n", [5, 7, 9, 11, 15, 16, 24, 25, 30])
    def test_pull_back_is_cyclotomic(self, n: int) -> None:
        """Test F_n(a^2 + b^2, ab) = Phi_n(a, b) for random a, b."""
        form = build_form(n)
        rng = random.Random(n)
        for _ in range(20):
            a, b = rng.randint(-40, 40), rng.randint(-40, 40)
            assert form.evaluate(a * a + b * b, a * b) == _homogeneous_cyclotomic(n, a, b)

    @pytest.mark.parametrize("n", [7, 12, 13, 20, 29])
    def test_sign_symmetry(self, n: int) -> None:
        """Test F(-x, -y) = (-1)^d F(x, y)."""
        form = build_form(n)
        rng = random.Random(100 + n)
        for _ in range(20):
            x, y = rng.randint(-10**6, 10**6), rng.randint(-10**6, 10**6)
            assert form.evaluate(-x, -y) == (-1) ** form.degree * form.evaluate(x, y)

    @pytest.mark.parametrize("t", [5, 7, 9, 11, 13, 15])
    def test_doubled_odd_index(self, t: int) -> None:
        """Test F_2t(x, y) = F_t(x, -y) for odd t."""
        rng = random.Random(200 + t)
        for _ in range(20):
            x, y = rng.randint(-1000, 1000), rng.randint(-1000, 1000)
            assert build_form(2 * t).evaluate(x, y) == build_form(t).evaluate(x, -y)
