"""Field data for Q(2cos(2 pi / n)) and the quartic field attached to n = 12."""

from __future__ import annotations

import logging
from collections.abc import Callable, Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from importlib import resources
from math import gcd
from typing import Any, Literal

from mpmath.ctx_mp import MPContext
from sympy import QQ, Poly, Rational, Symbol

from .config import MIN_PRECISION
from .exceptions import (
    InvariantBreachError,
    PrecisionError,
    UnitArithmeticError,
    UnsupportedInputError,
)
from .forms import (
    build_form,
    coprime_residues,
    largest_prime_factor,
    lucas_v,
    special_quartic_form,
)
from .types import MPReal

log = logging.getLogger(__name__)

FieldKind = Literal["cyclotomic", "quartic"]

CATALOG_INDICES = (7, 9, 11, 12, 13, 15, 16, 17, 19, 20, 21, 23, 24, 25, 29)
QUARTIC_KEY = 12
QUARTIC_COMPOSITUM_DEGREE = 24

_R = Symbol("r")

# Roots of S^4 - 4S^3 - 12S^2 + 8S + 4 in their fixed order.
_QUARTIC_ROOTS: tuple[tuple[str, Callable[[Any], Any]], ...] = (
    ("1+sqrt(3)+sqrt(6+2sqrt(3))", lambda c: 1 + c.sqrt(3) + c.sqrt(6 + 2 * c.sqrt(3))),
    ("1+sqrt(3)-sqrt(6+2sqrt(3))", lambda c: 1 + c.sqrt(3) - c.sqrt(6 + 2 * c.sqrt(3))),
    ("1-sqrt(3)+sqrt(6-2sqrt(3))", lambda c: 1 - c.sqrt(3) + c.sqrt(6 - 2 * c.sqrt(3))),
    ("1-sqrt(3)-sqrt(6-2sqrt(3))", lambda c: 1 - c.sqrt(3) - c.sqrt(6 - 2 * c.sqrt(3))),
)


def make_context(prec: int) -> Any:
    """A private mpmath context at ``prec`` decimal digits.

    Every computation owns its context, so precision changes never leak
    between threads.
    """
    ctx = MPContext()
    ctx.dps = prec
    return ctx


def _to_poly(coeffs: Sequence[Fraction]) -> Poly:
    return Poly(
        [Rational(c.numerator, c.denominator) for c in reversed(coeffs)] or [0],
        _R,
        domain=QQ,
    )


def _from_poly(poly: Poly) -> tuple[Fraction, ...]:
    out = [Fraction(int(c.p), int(c.q)) for c in reversed(poly.all_coeffs())]
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return tuple(out)


@dataclass(frozen=True, eq=False)
class ExactElement:
    """An element of a number field on the power basis of its generator.

    Args:
        poly: Representative polynomial, reduced modulo ``modulus``.
        modulus: Monic minimal polynomial of the generator over QQ.
        n: Cyclotomic index for abelian fields, None otherwise. Needed by
            :meth:`conjugate`.
    """

    poly: Poly
    modulus: Poly
    n: int | None = None

    @classmethod
    def from_coefficients(
        cls, coeffs: Sequence[Fraction | int], modulus: Poly, n: int | None = None
    ) -> ExactElement:
        """Build from ascending coefficients."""
        poly = _to_poly([Fraction(c) for c in coeffs]).rem(modulus)
        return cls(poly, modulus, n)

    def _wrap(self, poly: Poly) -> ExactElement:
        return ExactElement(poly.rem(self.modulus), self.modulus, self.n)

    def _lift(self, other: ExactElement | int) -> Poly:
        if isinstance(other, ExactElement):
            return other.poly
        return Poly(other, _R, domain=QQ)

    def coefficients(self) -> tuple[Fraction, ...]:
        """Ascending rational coefficients."""
        return _from_poly(self.poly)

    def __add__(self, other: ExactElement | int) -> ExactElement:
        return self._wrap(self.poly + self._lift(other))

    def __sub__(self, other: ExactElement | int) -> ExactElement:
        return self._wrap(self.poly - self._lift(other))

    def __neg__(self) -> ExactElement:
        return self._wrap(-self.poly)

    def __mul__(self, other: ExactElement | int) -> ExactElement:
        return self._wrap(self.poly * self._lift(other))

    def norm(self) -> Fraction:
        """Exact field norm, the resultant of the minimal polynomial and the representative."""
        d = self.modulus.degree()
        if self.poly.degree() <= 0:
            value = Fraction(_from_poly(self.poly)[0]) ** d
        else:
            res = self.modulus.resultant(self.poly)
            value = Fraction(int(res.p), int(res.q))
        return value

    def is_unit(self) -> bool:
        return abs(self.norm()) == 1

    def inverse(self) -> ExactElement:
        """Multiplicative inverse.

        Raises:
            UnitArithmeticError: If the element is not a unit.
        """
        if not self.is_unit():
            raise UnitArithmeticError(
                f"cannot invert a non-unit (norm {self.norm()})"
            )
        return ExactElement(self.poly.invert(self.modulus), self.modulus, self.n)

    def __truediv__(self, other: ExactElement) -> ExactElement:
        return self * other.inverse()

    def __pow__(self, k: int) -> ExactElement:
        base = self if k >= 0 else self.inverse()
        k = abs(k)
        result = ExactElement.from_coefficients([1], self.modulus, self.n)
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ExactElement):
            return NotImplemented
        return self.coefficients() == other.coefficients()

    def __hash__(self) -> int:
        return hash(self.coefficients())

    def conjugate(self, a: int) -> ExactElement:
        """Image under the automorphism r -> 2cos(2 pi a / n).

        Raises:
            UnsupportedInputError: If the field is not abelian over QQ.
        """
        if self.n is None:
            raise UnsupportedInputError("conjugation needs an abelian field")
        image = Poly(lucas_v(a, _R), _R, domain=QQ)
        return self._wrap(self.poly.compose(image))

    def evaluate(self, x: MPReal) -> MPReal:
        """Value at the embedding sending the generator to ``x``."""
        ctx = x.context
        acc = ctx.mpf(0)
        for c in reversed(self.coefficients()):
            acc = acc * x + ctx.mpf(c.numerator) / c.denominator
        return acc

    def __repr__(self) -> str:
        return f"ExactElement({self.poly.as_expr()})"


@dataclass(frozen=True)
class AlgebraicReal:
    """A real algebraic number held at a finite precision.

    Attributes:
        descriptor: Human-readable origin, e.g. ``2cos(2pi*3/7)``.
        evaluator: Recomputes the value in a given mpmath context.
        prec: Decimal digits of ``value``.
        value: The approximation itself.
    """

    descriptor: str
    evaluator: Callable[[Any], Any] = field(repr=False, compare=False)
    prec: int
    value: MPReal = field(compare=False)

    @classmethod
    def compute(cls, descriptor: str, evaluator: Callable[[Any], Any], ctx: Any) -> AlgebraicReal:
        return cls(descriptor, evaluator, ctx.dps, evaluator(ctx))

    def at(self, prec: int) -> AlgebraicReal:
        """Re-evaluate at another precision."""
        return AlgebraicReal.compute(self.descriptor, self.evaluator, make_context(prec))

    def is_stable(self) -> bool:
        """Whether re-evaluating 20 digits higher agrees to prec - 5 digits."""
        ctx = make_context(self.prec + 20)
        higher = self.evaluator(ctx)
        tol = ctx.mpf(10) ** (5 - self.prec) * max(1, abs(higher))
        return bool(abs(higher - ctx.mpf(self.value)) <= tol)


@dataclass(frozen=True)
class CatalogEntry:
    """One field of the static unit catalog.

    Attributes:
        n: Catalog key.
        kind: "cyclotomic" or "quartic".
        minpoly: Ascending coefficients of the minimal polynomial.
        units: Ascending coefficients of each fundamental unit, reduced.
        descriptors: Origin of each unit as written in the catalog.
        generator: Ascending coefficients of the ideal generator, if any.
    """

    n: int
    kind: FieldKind
    minpoly: tuple[Fraction, ...]
    units: tuple[tuple[Fraction, ...], ...]
    descriptors: tuple[str, ...]
    generator: tuple[Fraction, ...] | None


def _sin_unit(n: int, a: int, modulus: Poly) -> tuple[Fraction, ...]:
    """sin(a pi/n)/sin(pi/n) = 1 + V_1(r) + ... + V_k(r) with k = (a' - 1)/2, a' odd."""
    odd = a if a % 2 else n - a
    expr = 1
    for j in range(1, (odd - 1) // 2 + 1):
        expr += lucas_v(j, _R)
    return _from_poly(Poly(expr, _R, domain=QQ).rem(modulus))


def parse_catalog(text: str) -> dict[int, CatalogEntry]:
    """Parse the ``n | index | kind | data`` unit table.

    Raises:
        UnsupportedInputError: On malformed lines or gaps in the unit indices.
    """
    rows: dict[int, list[tuple[str, str, list[str]]]] = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.split("#", 1)[0].strip()
        if not stripped:
            continue
        parts = [part.strip() for part in stripped.split("|")]
        if len(parts) != 4 or not parts[0].isdigit():
            raise UnsupportedInputError(f"unit catalog line {lineno}: expected n | index | kind | data")
        rows.setdefault(int(parts[0]), []).append((parts[1], parts[2], parts[3].split()))

    catalog: dict[int, CatalogEntry] = {}
    for n, entries in rows.items():
        quartic = any(kind == "alpha" for _, kind, _ in entries)
        if quartic:
            minpoly_rows = [data for index, _, data in entries if index == "min"]
            if len(minpoly_rows) != 1:
                raise UnsupportedInputError(f"unit catalog: n = {n} needs exactly one min row")
            minpoly = tuple(Fraction(v) for v in minpoly_rows[0])
            expected = tuple(Fraction(v) for v in reversed(special_quartic_form().coeffs))
            if minpoly != expected:
                raise UnsupportedInputError(f"unit catalog: minimal polynomial of {n} mismatch")
        else:
            minpoly = tuple(Fraction(v) for v in reversed(build_form(n).coeffs))
        modulus = _to_poly(minpoly)

        units: dict[int, tuple[tuple[Fraction, ...], str]] = {}
        generator: tuple[Fraction, ...] | None = None
        for index, kind, data in entries:
            if index == "min":
                continue
            try:
                if kind == "sin":
                    value = _sin_unit(n, int(data[0]), modulus)
                    descriptor = f"sin({data[0]}pi/{n})/sin(pi/{n})"
                elif kind in ("poly", "alpha"):
                    value = _from_poly(_to_poly([Fraction(v) for v in data]).rem(modulus))
                    descriptor = " ".join(data)
                else:
                    raise UnsupportedInputError(f"unit catalog: unknown kind {kind!r}")
            except (ValueError, IndexError, ZeroDivisionError) as exc:
                raise UnsupportedInputError(f"unit catalog: bad data for n = {n}") from exc
            if index == "mu":
                generator = value
            else:
                units[int(index)] = (value, descriptor)

        degree = len(minpoly) - 1
        if sorted(units) != list(range(1, degree)):
            raise UnsupportedInputError(
                f"unit catalog: n = {n} needs units 1..{degree - 1}, got {sorted(units)}"
            )
        catalog[n] = CatalogEntry(
            n=n,
            kind="quartic" if quartic else "cyclotomic",
            minpoly=minpoly,
            units=tuple(units[i][0] for i in range(1, degree)),
            descriptors=tuple(units[i][1] for i in range(1, degree)),
            generator=generator,
        )
    return catalog


@lru_cache(maxsize=1)
def load_catalog() -> dict[int, CatalogEntry]:
    """Load the unit catalog shipped with the package."""
    text = resources.files("lucaslehmer").joinpath("data/units.txt").read_text(encoding="utf-8")
    catalog = parse_catalog(text)
    log.debug("loaded unit catalog for %s", sorted(catalog))
    return catalog


@dataclass(frozen=True)
class UnitSystem:
    """Fundamental units of one field with their conjugate tables.

    Attributes:
        n: Catalog key.
        degree: Field degree d.
        exact_units: The d - 1 units on the power basis.
        conjugates: Signed values, ``conjugates[i][j]`` is the unit i at root j.
        units: ``units[i][j]`` is |eps_i^(j)| as an AlgebraicReal.
    """

    n: int
    degree: int
    exact_units: tuple[ExactElement, ...]
    conjugates: tuple[tuple[MPReal, ...], ...]
    units: tuple[tuple[AlgebraicReal, ...], ...]


@dataclass(frozen=True)
class RepresentativeSet:
    """Non-associated elements of norm m, one per class.

    Attributes:
        n: Catalog key.
        rhs: Right-hand side m.
        mus: The representatives.
        values: ``values[t][j]`` is representative t at root j.
    """

    n: int
    rhs: int
    mus: tuple[ExactElement, ...]
    values: tuple[tuple[MPReal, ...], ...]


@dataclass(frozen=True)
class FieldData:
    """Everything the Thue solver needs about one field, at one precision.

    Build instances with :func:`field_data`; they are immutable, but the mpmath
    context they carry should stay with one thread.
    """

    n: int
    kind: FieldKind
    degree: int
    prec: int
    ctx: Any = field(repr=False, compare=False)
    residues: tuple[int, ...]
    roots: tuple[AlgebraicReal, ...]
    modulus: Poly = field(repr=False)
    units: UnitSystem = field(repr=False)
    generator: ExactElement | None = field(repr=False)
    compositum_degree: int

    @property
    def xi(self) -> tuple[MPReal, ...]:
        """Root values xi^(1), ..., xi^(d)."""
        return tuple(root.value for root in self.roots)

    @property
    def is_abelian(self) -> bool:
        return self.kind == "cyclotomic"

    def at(self, prec: int) -> FieldData:
        """The same field recomputed at ``prec`` digits."""
        return field_data(self.n, prec)

    def element(self, coeffs: Sequence[Fraction | int]) -> ExactElement:
        """Element with the given ascending coefficients on the power basis."""
        return ExactElement.from_coefficients(
            coeffs, self.modulus, self.n if self.is_abelian else None
        )

    def generator_root(self) -> ExactElement:
        """The generator r (or alpha) itself."""
        return self.element([0, 1])

    def conjugate_values(self, element: ExactElement, ctx: Any = None) -> list[MPReal]:
        """Values of ``element`` at every root, optionally in another context."""
        if ctx is None:
            return [element.evaluate(x) for x in self.xi]
        return [element.evaluate(root.evaluator(ctx)) for root in self.roots]

    def galois_index(self, s: int, j: int) -> int:
        """Index of sigma_s(xi^(j)), where sigma_s sends r to 2cos(2 pi s / n).

        Raises:
            UnsupportedInputError: For the non-Galois quartic field.
        """
        if not self.is_abelian:
            raise UnsupportedInputError("the quartic field is not Galois")
        b = (s * self.residues[j]) % self.n
        return self.residues.index(min(b, self.n - b))

    def representatives(self, m: int) -> RepresentativeSet:
        """The set of non-associated elements of norm m.

        Raises:
            UnsupportedInputError: If no catalogued element has norm m.
        """
        if abs(m) == 1:
            mus = (self.element([1]),)
        elif self.generator is not None and abs(self.generator.norm()) == abs(m):
            mus = (self.generator,)
        else:
            raise UnsupportedInputError(f"right-hand side {m} is not admissible for n = {self.n}")
        values = tuple(tuple(self.conjugate_values(mu)) for mu in mus)
        return RepresentativeSet(self.n, m, mus, values)

    def check_units(self) -> None:
        """Verify unit norms exactly and numerically, and the generator norm.

        Raises:
            InvariantBreachError: If any check fails.
        """
        tol = self.ctx.mpf(10) ** (10 - self.prec)
        for i, unit in enumerate(self.units.exact_units, start=1):
            norm = unit.norm()
            if abs(norm) != 1:
                raise InvariantBreachError(
                    f"unit {i} of n = {self.n} has norm {norm}",
                    "unit-norm",
                    {"n": self.n, "unit": i, "norm": str(norm)},
                )
            product = self.ctx.fprod(self.units.conjugates[i - 1])
            if abs(abs(product) - 1) > tol:
                raise InvariantBreachError(
                    f"conjugates of unit {i} of n = {self.n} do not multiply to +-1",
                    "unit-norm",
                    {"n": self.n, "unit": i},
                )
        if self.generator is not None:
            expected = largest_prime_factor(self.n // gcd(self.n, 3))
            if abs(self.generator.norm()) != expected:
                raise InvariantBreachError(
                    f"generator of n = {self.n} has norm {self.generator.norm()}",
                    "generator-norm",
                    {"n": self.n, "expected": expected},
                )


def field_data(n: int, prec: int) -> FieldData:
    """Build the field data for catalog key ``n`` at ``prec`` digits.

    Args:
        n: One of 7, 9, 11, 13, 15, 16, 17, 19, 20, 21, 23, 24, 25, 29, or 12
            for the quartic field of the n = 12, k = -2 equation.
        prec: Working precision in decimal digits, at least 50.

    Returns:
        Roots, units, generator and degree of the compositum.

    Raises:
        UnsupportedInputError: If n is not catalogued or prec is below 50.
        InvariantBreachError: If the catalogued data fails its norm checks.

    Example:
        >>> data = field_data(7, 60)
        >>> data.degree, data.residues
        (3, (1, 2, 3))
    """
    if prec < MIN_PRECISION:
        raise UnsupportedInputError(f"precision must be at least {MIN_PRECISION} digits, got {prec}")
    catalog = load_catalog()
    if n not in catalog:
        raise UnsupportedInputError(
            f"n = {n} is not in the unit catalog {sorted(catalog)}"
        )
    entry = catalog[n]
    ctx = make_context(prec)
    modulus = _to_poly(entry.minpoly)
    degree = len(entry.minpoly) - 1

    if entry.kind == "quartic":
        residues: tuple[int, ...] = ()
        roots = tuple(AlgebraicReal.compute(desc, fn, ctx) for desc, fn in _QUARTIC_ROOTS)
        conj_n = None
        compositum = QUARTIC_COMPOSITUM_DEGREE
    else:
        residues = tuple(coprime_residues(n))

        def root_evaluator(a: int) -> Callable[[Any], Any]:
            return lambda c: 2 * c.cos(2 * c.pi * a / n)

        roots = tuple(
            AlgebraicReal.compute(f"2cos(2pi*{a}/{n})", root_evaluator(a), ctx) for a in residues
        )
        conj_n = n
        compositum = degree

    exact = tuple(ExactElement.from_coefficients(u, modulus, conj_n) for u in entry.units)
    conjugates = tuple(tuple(u.evaluate(root.value) for root in roots) for u in exact)

    def abs_evaluator(unit: ExactElement, root: AlgebraicReal) -> Callable[[Any], Any]:
        return lambda c: abs(unit.evaluate(root.evaluator(c)))

    units_table = tuple(
        tuple(
            AlgebraicReal(
                f"|{entry.descriptors[i]} at {root.descriptor}|",
                abs_evaluator(unit, root),
                prec,
                abs(conjugates[i][j]),
            )
            for j, root in enumerate(roots)
        )
        for i, unit in enumerate(exact)
    )
    generator = (
        ExactElement.from_coefficients(entry.generator, modulus, conj_n)
        if entry.generator is not None
        else None
    )
    data = FieldData(
        n=n,
        kind=entry.kind,
        degree=degree,
        prec=prec,
        ctx=ctx,
        residues=residues,
        roots=roots,
        modulus=modulus,
        units=UnitSystem(n, degree, exact, conjugates, units_table),
        generator=generator,
        compositum_degree=compositum,
    )
    data.check_units()
    log.debug("field data for n = %d at %d digits", n, prec)
    return data


def naive_height(values: Sequence[MPReal], ctx: Any, leading: int = 1) -> MPReal:
    """Absolute logarithmic height from a full conjugate list and the leading coefficient."""
    total = ctx.log(leading) + ctx.fsum(ctx.log(max(1, abs(v))) for v in values)
    return total / len(values)


def height(
    conjugates: Sequence[MPReal],
    compositum_degree: int,
    ctx: Any,
    leading: int = 1,
    norm: Fraction | None = None,
) -> MPReal:
    """Modified height h'(gamma) = max(h(gamma), |log gamma| / D, 1 / D).

    Args:
        conjugates: All conjugates of gamma; the first one is gamma itself.
        compositum_degree: D, the degree of the field generated by the terms.
        ctx: mpmath context.
        leading: Leading coefficient of the primitive minimal polynomial.
        norm: Expected absolute product of the conjugates, when known.

    Raises:
        InvariantBreachError: If the conjugate product disagrees with ``norm``.

    Example:
        >>> ctx = make_context(50)
        >>> height([ctx.mpf(1)], 3, ctx) == ctx.mpf(1) / 3
        True
    """
    if not conjugates:
        raise InvariantBreachError("empty conjugate table", "height")
    if norm is not None:
        product = abs(ctx.fprod(conjugates))
        expected = ctx.mpf(abs(norm.numerator)) / abs(norm.denominator)
        if abs(product - expected) > ctx.mpf(10) ** (10 - ctx.dps) * max(1, expected):
            raise InvariantBreachError(
                "conjugate product fails the norm check",
                "height",
                {"product": ctx.nstr(product, 15), "norm": str(norm)},
            )
    h = naive_height(conjugates, ctx, leading)
    D = ctx.mpf(compositum_degree)
    return max(h, abs(ctx.log(abs(conjugates[0]))) / D, 1 / D)


def integer_polynomial(
    numerators: Sequence[MPReal], denominators: Sequence[MPReal], ctx: Any
) -> tuple[int, ...]:
    """Descending integer coefficients of prod(D_s X - N_s), recovered by rounding.

    Raises:
        PrecisionError: If a coefficient is not within tolerance of an integer.
    """
    coeffs: list[MPReal] = [ctx.mpf(1)]
    for num, den in zip(numerators, denominators):
        nxt = [ctx.mpf(0)] * (len(coeffs) + 1)
        for idx, c in enumerate(coeffs):
            nxt[idx] += c * den
            nxt[idx + 1] -= c * num
        coeffs = nxt
    tol = ctx.mpf(10) ** (-(ctx.dps // 2))
    out: list[int] = []
    for c in coeffs:
        rounded = ctx.nint(c)
        if abs(c - rounded) > tol:
            raise PrecisionError(
                f"coefficient {ctx.nstr(c, 20)} is not an integer at {ctx.dps} digits"
            )
        out.append(int(rounded))
    return tuple(out)


def primitive_leading(coeffs: Sequence[int]) -> int:
    """|lead| / content of an integer polynomial."""
    content = 0
    for c in coeffs:
        content = gcd(content, c)
    return abs(coeffs[0]) // content if content else 1
