"""Tests for continued fraction expansion."""

import random
from math import gcd

import pytest

from lucaslehmer.contfrac import convergents_up_to, determinant_identity_holds, expand
from lucaslehmer.numberfield import AlgebraicReal, make_context


def _real(descriptor: str, evaluator, prec: int = 50) -> AlgebraicReal:  # type: ignore[no-untyped-def]
    return AlgebraicReal.compute(descriptor, evaluator, make_context(prec))


class TestConvergents:
    """Tests for convergents_up_to."""

    def test_golden_ratio(self) -> None:
        """Test the Fibonacci convergents of the golden ratio."""
        phi = _real("phi", lambda c: (1 + c.sqrt(5)) / 2)

        assert convergents_up_to(phi, 3) == [(1, 1), (2, 1), (3, 2), (5, 3)]

    def test_sqrt_two(self) -> None:
        """Test the convergents of sqrt(2)."""
        root = _real("sqrt(2)", lambda c: c.sqrt(2))

        assert convergents_up_to(root, 12) == [(1, 1), (3, 2), (7, 5), (17, 12)]

    def test_zero_bound(self) -> None:
        """Test that qmax = 0 gives no convergents."""
        root = _real("sqrt(2)", lambda c: c.sqrt(2))

        assert convergents_up_to(root, 0) == []

    def test_negative_target(self) -> None:
        """Test the floor convention for negative numbers."""
        root = _real("2cos(6pi/7)", lambda c: 2 * c.cos(6 * c.pi / 7))

        first = convergents_up_to(root, 1)

        assert first == [(-2, 1)]

    def test_large_bound_escalates(self) -> None:
        """Test a denominator bound beyond the starting precision."""
        root = _real("2cos(2pi/7)", lambda c: 2 * c.cos(2 * c.pi / 7))
        qmax = 10**80

        convs = convergents_up_to(root, qmax)

        assert convs[-1][1] <= qmax
        assert determinant_identity_holds(convs)
        assert len(convs) > 50


class TestExpand:
    """Tests for the expansion record."""

    def test_quotients_match_convergents(self) -> None:
        """Test that the convergents are those of the recorded quotients."""
        phi = _real("phi", lambda c: (1 + c.sqrt(5)) / 2)

        stream = expand(phi, 100)

        assert set(stream.partial_quotients) == {1}
        assert stream.convergents[-1] == (144, 89)
        assert stream.target is phi

    def test_determinant_identity(self) -> None:
        """Test p_i q_{i-1} - p_{i-1} q_i = +-1."""
        assert determinant_identity_holds([(1, 1), (3, 2), (7, 5)])
        assert not determinant_identity_holds([(1, 1), (5, 3)])


class TestCosineRoots:
    """Tests for convergents of the roots 2 cos(2 pi a / n) on seeded random draws."""

    @pytest.mark.parametrize("seed", range(6))
    def test_convergents_of_random_roots(self, seed: int) -> None:
        """Test the determinant identity and |q x - p| < 1/q for each convergent."""
        rng = random.Random(seed)
        n = rng.randint(7, 60)
        a = rng.choice([v for v in range(1, n // 2 + 1) if gcd(v, n) == 1])
        root = _real(f"2cos(2pi*{a}/{n})", lambda c: 2 * c.cos(2 * c.pi * a / n), prec=80)
        ctx = make_context(80)

        convs = convergents_up_to(root, 10**12)

        assert convs
        assert determinant_identity_holds(convs)
        for p, q in convs:
            assert abs(q * root.value - p) < ctx.mpf(1) / q
