"""Cyclotomic binary forms F_n and the reductions between them."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from math import gcd
from typing import Any, Literal

import sympy
from sympy import Poly, Symbol, cyclotomic_poly, integer_nthroot, primefactors, totient

from .exceptions import InvariantBreachError, UnsupportedInputError
from .types import MPReal

log = logging.getLogger(__name__)

FormKind = Literal["cyclotomic", "quartic"]

_T = Symbol("t")
_X = Symbol("X")
_Y = Symbol("Y")

MIN_THUE_DEGREE = 3

# S^4 - 4 S^3 T - 12 S^2 T^2 + 8 S T^3 + 4 T^4, the auxiliary equation for n = 12, k = -2.
SPECIAL_QUARTIC_COEFFS = (1, -4, -12, 8, 4)


def largest_prime_factor(n: int) -> int:
    """Return P(n), the largest prime dividing n, with P(1) = 1."""
    factors = primefactors(n)
    return int(factors[-1]) if factors else 1


def coprime_residues(n: int) -> list[int]:
    """Return the increasing integers 1 = a_1 < a_2 < ... below n/2 coprime to n."""
    return [a for a in range(1, (n + 1) // 2) if gcd(a, n) == 1 and 2 * a < n]


def _check_index(n: int) -> None:
    if n <= 4 or n == 6:
        raise UnsupportedInputError(
            f"n = {n} is excluded: forms are defined for n > 4 with n != 6"
        )


def lucas_v(k: int, t: Any, q: Any = 1) -> Any:
    """V_k in (t, q) with V_0 = 2, V_1 = t, V_k = t V_{k-1} - q V_{k-2}."""
    prev, cur = 2 * sympy.Integer(1), t
    if k == 0:
        return prev
    for _ in range(k - 1):
        prev, cur = cur, sympy.expand(t * cur - q * prev)
    return cur


@dataclass(frozen=True)
class BinaryForm:
    """A homogeneous binary form with integer coefficients.

    Args:
        n: Index the form belongs to.
        coeffs: Coefficients in descending powers of X; ``coeffs[k]`` multiplies
            X^(degree - k) Y^k.
        kind: "cyclotomic" for F_n, "quartic" for the auxiliary n = 12 form.
    """

    n: int
    coeffs: tuple[int, ...]
    kind: FormKind = "cyclotomic"

    def __post_init__(self) -> None:
        if len(self.coeffs) < 2:
            raise UnsupportedInputError("a binary form needs degree at least 1")
        if self.coeffs[0] != 1:
            raise InvariantBreachError(
                f"form for n = {self.n} is not monic in X",
                "form-leading",
                {"coeffs": self.coeffs},
            )

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def evaluate(self, x: int, y: int) -> int:
        """Exact value of the form at (x, y)."""
        d = self.degree
        return sum(c * x ** (d - k) * y**k for k, c in enumerate(self.coeffs))

    def univariate(self) -> Poly:
        """g(X) = F(X, 1) as a sympy polynomial over ZZ."""
        return Poly(list(self.coeffs), _X, domain="ZZ")

    def slice_at(self, y: int, m: int = 0) -> list[int]:
        """Descending coefficients of F(X, y) - m as a polynomial in X."""
        d = self.degree
        out = [c * y**k for k, c in enumerate(self.coeffs)]
        out[d] -= m
        return out

    def dump(self) -> str:
        """Render as ``n degree c_0 ... c_d``."""
        return " ".join(str(v) for v in (self.n, self.degree, *self.coeffs))

    def targets(self) -> frozenset[int]:
        """Right-hand sides that characterise the absence of a primitive divisor."""
        if self.kind == "quartic":
            return frozenset({1})
        return form_target(self.n).rhs_values

    def __str__(self) -> str:
        expr = sum(c * _X ** (self.degree - k) * _Y**k for k, c in enumerate(self.coeffs))
        return str(expr)


@dataclass(frozen=True)
class FormTarget:
    """Admissible values of Phi_n(alpha, beta) for a sequence without primitive divisor."""

    n: int
    rhs_values: frozenset[int] = field(default_factory=frozenset)


def build_form(n: int) -> BinaryForm:
    """Construct F_n with F_n(a^2 + b^2, ab) = Phi_n(a, b).

    The coefficients come from the palindromic cyclotomic polynomial Phi_n(z)
    rewritten in w = z + 1/z, which is exact integer arithmetic throughout.

    Args:
        n: Index, n > 4 and n != 6.

    Returns:
        The form F_n of degree phi(n)/2.

    Raises:
        UnsupportedInputError: If n <= 4 or n == 6.

    Example:
        >>> build_form(7).coeffs
        (1, 1, -2, -1)
    """
    _check_index(n)
    phi = cyclotomic_poly(n, _T, polys=True)
    c = [int(v) for v in reversed(phi.all_coeffs())]
    d = len(c) // 2
    psi = sympy.Integer(c[d])
    for k in range(1, d + 1):
        psi += c[d + k] * lucas_v(k, _T)
    coeffs = tuple(int(v) for v in Poly(psi, _T).all_coeffs())
    form = BinaryForm(n, coeffs)
    if form.degree != int(totient(n)) // 2:
        raise InvariantBreachError(
            f"F_{n} has degree {form.degree}, expected phi(n)/2",
            "form-degree",
            {"n": n, "coeffs": coeffs},
        )
    log.debug("built F_%d: %s", n, form.dump())
    return form


def special_quartic_form() -> BinaryForm:
    """The quartic S^4 - 4S^3T - 12S^2T^2 + 8ST^3 + 4T^4 attached to n = 12, k = -2."""
    return BinaryForm(12, SPECIAL_QUARTIC_COEFFS, kind="quartic")


def evaluate(form: BinaryForm, x: int, y: int) -> int:
    """Exact value of ``form`` at (x, y)."""
    return form.evaluate(x, y)


def form_target(n: int) -> FormTarget:
    """Admissible right-hand sides of F_n(x, y) = m.

    Raises:
        UnsupportedInputError: If n is excluded.
    """
    _check_index(n)
    if n == 12:
        values = {1, -1, 2, -2, 3, -3, 6, -6}
    else:
        p = largest_prime_factor(n // gcd(n, 3))
        values = {1, -1, p, -p}
    return FormTarget(n, frozenset(values))


def cyclotomic_roots(n: int, ctx: Any) -> list[MPReal]:
    """Real roots xi_j = 2cos(2 pi a_j / n) of F_n(X, 1), in the a_j order.

    Args:
        n: Index.
        ctx: An mpmath context carrying the working precision.
    """
    return [2 * ctx.cos(2 * ctx.pi * a / n) for a in coprime_residues(n)]


def parse_form_line(line: str) -> BinaryForm:
    """Parse a ``n degree c_0 ... c_d`` line back into a form.

    Raises:
        UnsupportedInputError: If the line is malformed.
    """
    try:
        values = [int(part) for part in line.split()]
    except ValueError as exc:
        raise UnsupportedInputError(f"malformed form line {line!r}") from exc
    if len(values) < 4 or len(values) != values[1] + 3:
        raise UnsupportedInputError(f"malformed form line {line!r}")
    return BinaryForm(values[0], tuple(values[2:]))


@dataclass(frozen=True)
class CoreReduction:
    """A substitution sending solutions of F_n = k to solutions of F_m = k.

    Attributes:
        n: Index of the form being reduced.
        m: Core index.
        exponent: n / m for a power reduction, 1 for the even reduction.
        kind: "even" for F_{2t}(X, Y) = F_t(X, -Y), "power" for
            F_n(X, Y) = F_m(V_e(X, Y^2), Y^e).
    """

    n: int
    m: int
    exponent: int
    kind: Literal["even", "power"]

    def apply(self, x: int, y: int) -> tuple[int, int]:
        """Map (x, y) with F_n(x, y) = k to the pair with F_m = k."""
        if self.kind == "even":
            return x, -y
        return int(lucas_v(self.exponent, sympy.Integer(x), y * y)), y**self.exponent

    def pull_back(self, x_core: int, y_core: int) -> list[tuple[int, int]]:
        """All (x, y) that ``apply`` sends to (x_core, y_core)."""
        if self.kind == "even":
            return [(x_core, -y_core)]
        e = self.exponent
        root, exact = integer_nthroot(abs(y_core), e)
        if not exact or (y_core < 0 and e % 2 == 0):
            return []
        if y_core < 0:
            ys = [-int(root)]
        elif root == 0 or e % 2:
            ys = [int(root)]
        else:
            ys = [int(root), -int(root)]
        found: list[tuple[int, int]] = []
        for y in ys:
            poly = Poly(lucas_v(e, _X, y * y) - x_core, _X, domain="ZZ")
            for r in poly.ground_roots():
                if r.is_Integer and self.apply(int(r), y) == (x_core, y_core):
                    found.append((int(r), y))
        return sorted(found)


def reduce_even(t: int) -> CoreReduction:
    """Check F_{2t}(X, Y) = F_t(X, -Y) and return the substitution.

    Args:
        t: Odd index, t > 3.

    Raises:
        UnsupportedInputError: If t is even or t <= 3.
        InvariantBreachError: If the coefficient identity fails.

    Example:
        >>> reduce_even(7).apply(1, 2)
        (1, -2)
    """
    if t % 2 == 0 or t <= 3:
        raise UnsupportedInputError(f"reduce_even needs odd t > 3, got {t}")
    small, big = build_form(t), build_form(2 * t)
    flipped = tuple((-1) ** k * c for k, c in enumerate(small.coeffs))
    if flipped != big.coeffs:
        raise InvariantBreachError(
            f"F_{2 * t}(X, Y) != F_{t}(X, -Y)",
            "form-even",
            {"F_t": small.coeffs, "F_2t": big.coeffs},
        )
    return CoreReduction(2 * t, t, 1, "even")


def _radical(n: int) -> int:
    out = 1
    for p in primefactors(n):
        out *= int(p)
    return out


def reduce_to_core(n: int) -> CoreReduction:
    """Find the smallest core m of n and the substitution from F_n to F_m.

    For n = 2t with t odd and t > 3 this is the even reduction. Otherwise the
    core is the smallest proper divisor with the same prime support whose form
    still has degree at least three.

    Raises:
        UnsupportedInputError: If n has no smaller core.
        InvariantBreachError: If the composition identity or the target check fails.
    """
    _check_index(n)
    if n % 4 == 2 and n // 2 > 3:
        reduction = reduce_even(n // 2)
    else:
        rad = _radical(n)
        cores = [
            m
            for m in sympy.divisors(n)
            if m < n and _radical(m) == rad and int(totient(m)) // 2 >= MIN_THUE_DEGREE
        ]
        if not cores:
            raise UnsupportedInputError(f"n = {n} has no smaller core")
        m = min(cores)
        e = n // m
        big, small = build_form(n), build_form(m)
        lhs = sum(c * _X ** (big.degree - k) * _Y**k for k, c in enumerate(big.coeffs))
        xs, ys = lucas_v(e, _X, _Y**2), _Y**e
        rhs = sum(c * xs ** (small.degree - k) * ys**k for k, c in enumerate(small.coeffs))
        if sympy.expand(lhs - rhs) != 0:
            raise InvariantBreachError(
                f"F_{n} is not F_{m} composed with V_{e}",
                "form-power",
                {"n": n, "m": m},
            )
        reduction = CoreReduction(n, m, e, "power")
    m = reduction.m
    if largest_prime_factor(n // gcd(n, 3)) != largest_prime_factor(m // gcd(m, 3)):
        raise InvariantBreachError(
            f"P(n/(3,n)) differs between n = {n} and core {m}",
            "form-target",
            {"n": n, "m": m},
        )
    log.debug("reduced n = %d to core %d (%s)", n, m, reduction.kind)
    return reduction
