"""Thue equations F(X, Y) = m solved with linear forms in logarithms and LLL."""

from __future__ import annotations

import logging
import random
import time
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass, field, replace
from fractions import Fraction
from math import ceil, factorial, gcd, lcm, log10
from typing import Any

from sympy import integer_nthroot

from .config import RunConfig
from .contfrac import convergents_up_to
from .exceptions import (
    HypothesisError,
    InvariantBreachError,
    RelationError,
    UnsupportedInputError,
)
from .forms import (
    MIN_THUE_DEGREE,
    BinaryForm,
    build_form,
    coprime_residues,
    cyclotomic_roots,
    form_target,
)
from .lattice import (
    HypothesisResult,
    ReductionOutcome,
    check_hypothesis_nz,
    check_hypothesis_reduced,
    check_hypothesis_z,
    coords_of_target,
    lll_reduce,
    tw_basis,
    tw_target,
)
from .numberfield import (
    CATALOG_INDICES,
    AlgebraicReal,
    ExactElement,
    FieldData,
    field_data,
    height,
    integer_polynomial,
    make_context,
    naive_height,
    primitive_leading,
)
from .primdiv import reconstruct
from .types import LedgerRecord, MPReal, Provenance, ScanReport

log = logging.getLogger(__name__)

A_FLOOR = 6
PSLQ_MAXCOEFF = 1000
PSLQ_MAXSTEPS = 100_000
LATTICE_GUARD_DIGITS = 40
SCALING_SAMPLES = 5
SAMPLE_EXPONENT = 20
SCAN_FIRST_INDEX = 31

# Fields whose Baker bound is taken over the form with log alpha_0 eliminated.
# Elsewhere log alpha_0 stays in that form even when a relation removes it for LLL.
BAKER_ALPHA0_ELIMINATED = frozenset({7, 9})

# Two (j, k) choices per field, 1-based: the first unless i0 is one of its indices.
PAIR_CHOICES: dict[int, tuple[tuple[int, int], tuple[int, int]]] = {
    11: ((1, 2), (3, 5)),
    12: ((1, 3), (2, 4)),
    13: ((1, 5), (2, 3)),
    15: ((1, 2), (3, 4)),
    16: ((1, 4), (2, 3)),
    17: ((1, 4), (2, 8)),
    19: ((1, 7), (2, 5)),
    20: ((1, 2), (3, 4)),
    21: ((1, 5), (2, 4)),
    23: ((1, 2), (3, 6)),
    24: ((1, 2), (3, 4)),
    25: ((2, 9), (4, 3)),
    29: ((1, 12), (2, 5)),
}


@dataclass(frozen=True)
class UnitRelation:
    """t0 log alpha_e = sum t_i log alpha_i, with 1-based unit indices."""

    eliminated: int
    terms: tuple[tuple[int, int], ...]
    t0: int = 1


def _rel(eliminated: int, *terms: tuple[int, int], t0: int = 1) -> UnitRelation:
    return UnitRelation(eliminated, tuple(terms), t0)


UNIT_RELATIONS: dict[int, tuple[UnitRelation, ...]] = {
    13: (_rel(1, (3, 1), (5, 1), (2, -1)), _rel(4, (3, 1), (5, 1))),
    16: (_rel(3, (1, 1), (2, 1)),),
    17: (
        _rel(1, (5, 1), (6, 1), (7, -1)),
        _rel(2, (5, 1), (6, 1), (4, -1)),
        _rel(3, (5, 1), (6, 1)),
    ),
    19: (
        _rel(3, (1, 1), (2, 1), (4, 1), (5, -1), (8, -1)),
        _rel(6, (1, 1), (2, 1), (4, 1), (7, -1)),
    ),
    21: (_rel(4, (3, 1), (1, -1)), _rel(5, (1, -1))),
    24: (_rel(1, (2, 1), (3, 1), t0=3),),
    25: (
        _rel(1, (5, 1), (8, -1)),
        _rel(2, (5, 1), (3, -1)),
        _rel(4, (5, 1), (6, -1)),
        _rel(7, (5, 1), (9, -1)),
    ),
    29: (
        _rel(1, (10, 1), (12, 1), (4, -1)),
        _rel(2, (10, 1), (12, 1), (6, -1)),
        _rel(3, (10, 1), (12, 1), (9, -1)),
        _rel(5, (10, 1), (12, 1), (13, -1)),
        _rel(7, (10, 1), (12, 1), (8, -1)),
        _rel(11, (10, 1), (12, 1)),
    ),
}


def pair_for(n: int, d: int, i0: int) -> tuple[int, int]:
    """The 0-based (j, k) used with conjugate i0.

    Example:
        >>> pair_for(13, 6, 0)
        (1, 2)
    """
    if d == 3:
        j, k = (idx for idx in range(3) if idx != i0)
        return j, k
    if n not in PAIR_CHOICES:
        raise UnsupportedInputError(f"no (j, k) choice recorded for n = {n}")
    first, second = PAIR_CHOICES[n]
    j, k = second if i0 + 1 in first else first
    return j - 1, k - 1


@dataclass(frozen=True)
class RelationSet:
    """Unit eliminations for one (j, k) pair, on 0-based indices.

    Attributes:
        pair: The (j, k) pair.
        kept: Units whose logarithms survive, increasing.
        t0: Common multiplier of the eliminated logarithms.
        rows: (eliminated unit, t_ie over ``kept``) for each eliminated unit.
    """

    pair: tuple[int, int]
    kept: tuple[int, ...]
    t0: int = 1
    rows: tuple[tuple[int, tuple[int, ...]], ...] = ()

    @property
    def T(self) -> int:
        return max([self.t0] + [abs(t) for _, row in self.rows for t in row])

    @property
    def growth(self) -> Fraction:
        """Largest t0 + sum_e |t_ie| over the kept units, so |a_i'| <= growth * A."""
        best = self.t0
        for pos in range(len(self.kept)):
            best = max(best, self.t0 + sum(abs(row[pos]) for _, row in self.rows))
        return Fraction(best)

    def reduce(self, exponents: Sequence[int]) -> tuple[int, ...]:
        """a_i' = t0 a_i + sum_e t_ie a_e over the kept units."""
        out = []
        for pos, i in enumerate(self.kept):
            value = self.t0 * exponents[i]
            for e, row in self.rows:
                value += row[pos] * exponents[e]
            out.append(value)
        return tuple(out)


@dataclass(frozen=True)
class Alpha0Relation:
    """t0 log alpha_0 + sum t_i log alpha_i = 0 with t0 > 0."""

    t0: int
    coefficients: tuple[int, ...]

    @property
    def T(self) -> int:
        return max([self.t0] + [abs(t) for t in self.coefficients])

    @property
    def growth(self) -> Fraction:
        # |a_i'| <= T (A + 1) <= 7 T A / 6 once A >= 6
        return Fraction(7 * self.T, 6)


@dataclass(frozen=True)
class LogLinearForm:
    """Lambda(i0, j, k, mu) = log alpha_0 + sum a_i log alpha_i and its reduced form.

    Attributes:
        i0: Conjugate x/y approximates, 0-based.
        j: First auxiliary conjugate.
        k: Second auxiliary conjugate.
        rhs: |m|.
        mu: Representative of norm m.
        alpha0: |(xi_i0 - xi_j) mu_k / ((xi_i0 - xi_k) mu_j)|.
        alphas: |eps_i^(k) / eps_i^(j)| for every fundamental unit.
        relations: Unit eliminations of the pair.
        alpha0_relation: Relation eliminating alpha_0, if one exists.
    """

    i0: int
    j: int
    k: int
    rhs: int
    mu: ExactElement = field(repr=False)
    alpha0: AlgebraicReal
    alphas: tuple[AlgebraicReal, ...] = field(repr=False)
    relations: RelationSet
    alpha0_relation: Alpha0Relation | None = None

    @property
    def pair(self) -> tuple[int, int]:
        return self.j, self.k

    @property
    def homogeneous(self) -> bool:
        return self.alpha0_relation is not None

    @property
    def combined(self) -> bool:
        """Whether alpha_0 is eliminated on top of unit eliminations."""
        return self.alpha0_relation is not None and bool(self.relations.rows)

    @property
    def kept(self) -> tuple[int, ...]:
        return self.relations.kept

    @property
    def t0(self) -> int:
        if self.alpha0_relation is not None:
            return self.alpha0_relation.t0 * self.relations.t0
        return self.relations.t0

    @property
    def T(self) -> int:
        if self.alpha0_relation is not None:
            return max(self.alpha0_relation.T, self.relations.T)
        return self.relations.T

    @property
    def growth(self) -> Fraction:
        """Factor G with |a_i''| <= G A for A >= 6."""
        rel = self.alpha0_relation
        if rel is None:
            return self.relations.growth
        if not self.relations.rows:
            return rel.growth
        # a_i'' = s a_i' - t t_i with |a_i'| <= G' A and |t_i| <= T <= T A / 6
        return rel.t0 * self.relations.growth + Fraction(self.relations.t0 * rel.T, 6)

    @property
    def rank(self) -> int:
        """Number of logarithms in the reduced form."""
        return len(self.kept) if self.homogeneous else len(self.kept) + 1

    def reduced_exponents(self, exponents: Sequence[int]) -> tuple[int, ...]:
        """Coefficients of the kept logarithms in t0 Lambda."""
        reduced = self.relations.reduce(exponents)
        rel = self.alpha0_relation
        if rel is None:
            return reduced
        scale = self.relations.t0
        return tuple(
            rel.t0 * a - scale * rel.coefficients[i] for a, i in zip(reduced, self.kept)
        )

    def value(self, exponents: Sequence[int], ctx: Any) -> MPReal:
        """Lambda for the exponent vector (a_1, ..., a_{d-1})."""
        total = ctx.log(ctx.mpf(self.alpha0.value))
        for a, alpha in zip(exponents, self.alphas):
            total += a * ctx.log(ctx.mpf(alpha.value))
        return total

    def scaled_value(self, exponents: Sequence[int], ctx: Any) -> MPReal:
        """Lambda' = t0 Lambda computed from the reduced coefficients."""
        reduced = self.reduced_exponents(exponents)
        total = ctx.mpf(0)
        if not self.homogeneous:
            total = self.t0 * ctx.log(ctx.mpf(self.alpha0.value))
        for a, i in zip(reduced, self.kept):
            total += a * ctx.log(ctx.mpf(self.alphas[i].value))
        return total

    def direct_value(self, exponents: Sequence[int], field_: FieldData) -> MPReal:
        """Lambda from the conjugates of beta = mu prod eps_i^a_i, with no log expansion."""
        beta = self.mu
        for a, unit in zip(exponents, field_.units.exact_units):
            if a:
                beta = beta * unit**a
        xi = field_.xi
        ratio = (xi[self.i0] - xi[self.j]) * beta.evaluate(xi[self.k])
        ratio /= (xi[self.i0] - xi[self.k]) * beta.evaluate(xi[self.j])
        return field_.ctx.log(abs(ratio))

    def check_scaling(self, ctx: Any, seed: int = 0) -> None:
        """Compare Lambda' with t0 Lambda on sample exponent vectors.

        Raises:
            RelationError: If they differ beyond prec - 10 digits.
        """
        rng = random.Random(seed)
        tol = ctx.mpf(10) ** (10 - ctx.dps)
        for _ in range(SCALING_SAMPLES):
            exps = [rng.randint(-SAMPLE_EXPONENT, SAMPLE_EXPONENT) for _ in self.alphas]
            gap = abs(self.scaled_value(exps, ctx) - self.t0 * self.value(exps, ctx))
            if gap > tol:
                raise RelationError(
                    f"Lambda' != t0 Lambda for i0 = {self.i0 + 1}",
                    {"gap": ctx.nstr(gap, 5), "exponents": exps},
                )


@dataclass(frozen=True)
class BoundLedger:
    """Constants of one Thue equation, filled in stage by stage.

    Attributes:
        n: Field key.
        d: Degree.
        C5: Largest row-sum norm of the inverse unit-logarithm matrices.
        C6: Constant in |Lambda| < C6 exp(-d A / C5).
        Y1: Above this, x/y is a convergent.
        Y2p: Above this, the exponential bound for Lambda holds.
        r: Number of logarithms in the form the Baker bound was taken over.
        D: Degree of the field generated by the alphas.
        H: Product of modified heights.
        K4: Baker-Wustholz constant.
        C7: 2 K4.
        C9: Initial bound for A.
        t0: Largest multiplier of Lambda over the forms.
        T: Largest relation coefficient over the forms.
        a_floor: Lower convention for A, at least 6.
        d1: Exponent of c0 in the first reduction.
        A1: Bound for A after the first reduction.
        d2: Exponent of c0 in the second reduction.
        A2: Bound for A after the second reduction.
        Y3: Final search bound for |y|.
        X4: Largest |x| over the solutions.
        Y4: Largest |y| over the solutions.
        time: Wall time in seconds.
    """

    n: int
    d: int
    C5: MPReal
    C6: MPReal
    Y1: int
    Y2p: int
    r: int
    D: int
    H: MPReal
    K4: MPReal
    C7: MPReal
    C9: MPReal
    t0: int
    T: int
    a_floor: int
    ctx: Any = field(repr=False, compare=False)
    d1: int = 0
    A1: int = 0
    d2: int = 0
    A2: int = 0
    Y3: int = 0
    X4: int = 0
    Y4: int = 0
    time: float = 0.0

    def as_record(self) -> LedgerRecord:
        """The ledger as a JSON-ready record."""
        sci = lambda value: self.ctx.nstr(self.ctx.mpf(value), 3)  # noqa: E731
        return LedgerRecord(
            n=self.n,
            d=self.d,
            Y1=self.Y1,
            Y2p=self.Y2p,
            dOverC5=round(float(self.d / self.C5), 4),
            C6=sci(self.C6),
            H=float(self.H),
            C7=sci(self.C7),
            C9=sci(self.C9),
            d1=self.d1,
            A1=self.A1,
            d2=self.d2,
            A2=self.A2,
            Y3=sci(self.Y3),
            X4=self.X4,
            Y4=self.Y4,
            time=round(self.time, 3),
        )


@dataclass(frozen=True)
class ThueSolutionSet:
    """All solutions of F(x, y) = m.

    Attributes:
        n: Field key.
        m: Right-hand side.
        pairs: Solutions, sorted.
        provenance: How each pair was found.
    """

    n: int
    m: int
    pairs: tuple[tuple[int, int], ...]
    provenance: Mapping[tuple[int, int], Provenance] = field(default_factory=dict, compare=False)


@dataclass(frozen=True)
class ThueResult:
    """A solved Thue equation with its ledger.

    Attributes:
        form: The form.
        ledger: Final constants.
        solutions: Solution sets keyed by right-hand side.
        forms: The linear forms the bounds were derived from.
    """

    form: BinaryForm
    ledger: BoundLedger
    solutions: dict[int, ThueSolutionSet]
    forms: tuple[LogLinearForm, ...] = field(repr=False, default=())

    def all_pairs(self) -> list[tuple[int, int, int]]:
        """(x, y, m) over every right-hand side, sorted."""
        return sorted((x, y, m) for m, sols in self.solutions.items() for x, y in sols.pairs)


def _unit_ratio(field_: FieldData, i: int, j: int, k: int) -> AlgebraicReal:
    unit = field_.units.exact_units[i]
    root_j, root_k = field_.roots[j], field_.roots[k]

    def evaluator(c: Any) -> Any:
        return abs(unit.evaluate(root_k.evaluator(c)) / unit.evaluate(root_j.evaluator(c)))

    return AlgebraicReal.compute(f"|eps{i + 1}^({k + 1})/eps{i + 1}^({j + 1})|", evaluator, field_.ctx)


def unit_alphas(field_: FieldData, j: int, k: int) -> tuple[AlgebraicReal, ...]:
    """alpha_i = |eps_i^(k) / eps_i^(j)| for every fundamental unit."""
    return tuple(_unit_ratio(field_, i, j, k) for i in range(field_.degree - 1))


def alpha0(field_: FieldData, i0: int, j: int, k: int, mu: ExactElement) -> AlgebraicReal:
    """alpha_0 = |(xi_i0 - xi_j) mu^(k) / ((xi_i0 - xi_k) mu^(j))|."""
    roots = field_.roots

    def evaluator(c: Any) -> Any:
        xi_i, xi_j, xi_k = (roots[idx].evaluator(c) for idx in (i0, j, k))
        return abs((xi_i - xi_j) * mu.evaluate(xi_k) / ((xi_i - xi_k) * mu.evaluate(xi_j)))

    return AlgebraicReal.compute(f"alpha0(i0={i0 + 1},j={j + 1},k={k + 1})", evaluator, field_.ctx)


def relation_set(field_: FieldData, pair: tuple[int, int]) -> RelationSet:
    """The catalogued unit eliminations for ``pair``, scaled to a common t0."""
    relations = UNIT_RELATIONS.get(field_.n, ())
    units = field_.degree - 1
    eliminated = {rel.eliminated - 1 for rel in relations}
    kept = tuple(i for i in range(units) if i not in eliminated)
    t0 = lcm(*(rel.t0 for rel in relations)) if relations else 1
    rows = []
    for rel in relations:
        scale = t0 // rel.t0
        row = [0] * len(kept)
        for index, coef in rel.terms:
            if index - 1 not in kept:
                raise RelationError(
                    f"relation for unit {rel.eliminated} of n = {field_.n} uses eliminated unit {index}"
                )
            row[kept.index(index - 1)] += scale * coef
        rows.append((rel.eliminated - 1, tuple(row)))
    return RelationSet(pair, kept, t0, tuple(rows))


def _one(field_: FieldData) -> ExactElement:
    return field_.element([1])


def _unit_ratio_exact(field_: FieldData, i: int, j: int, k: int) -> ExactElement:
    a = field_.residues
    unit = field_.units.exact_units[i]
    return unit.conjugate(a[k]) / unit.conjugate(a[j])


def verify_relations(
    field_: FieldData, relations: RelationSet, alphas: Sequence[AlgebraicReal]
) -> list[MPReal]:
    """Confirm every elimination numerically and as an exact unit identity.

    Returns:
        The numerical residuals, one per relation.

    Raises:
        RelationError: If a relation fails either check.
    """
    ctx = field_.ctx
    tol = ctx.mpf(10) ** (10 - field_.prec)
    logs = [ctx.log(alpha.value) for alpha in alphas]
    j, k = relations.pair
    residuals = []
    for e, row in relations.rows:
        residual = relations.t0 * logs[e] - ctx.fsum(t * logs[i] for t, i in zip(row, relations.kept))
        if abs(residual) > tol:
            raise RelationError(
                f"relation for unit {e + 1} of n = {field_.n} fails numerically",
                {"residual": ctx.nstr(residual, 5), "pair": (j + 1, k + 1)},
            )
        if field_.is_abelian:
            eta = _unit_ratio_exact(field_, e, j, k) ** relations.t0
            for t, i in zip(row, relations.kept):
                if t:
                    eta = eta * _unit_ratio_exact(field_, i, j, k) ** (-t)
            if eta * eta != _one(field_):
                raise RelationError(
                    f"relation for unit {e + 1} of n = {field_.n} is not an exact identity",
                    {"pair": (j + 1, k + 1)},
                )
        residuals.append(residual)
    if relations.rows:
        log.debug("n = %d pair %s: %d relations verified", field_.n, (j + 1, k + 1), len(residuals))
    return residuals


def _verify_alpha0_exact(
    field_: FieldData, form_indices: tuple[int, int, int], mu: ExactElement, rel: Alpha0Relation
) -> None:
    i0, j, k = form_indices
    a = field_.residues
    r = field_.generator_root()
    num = (r.conjugate(a[i0]) - r.conjugate(a[j])) * mu.conjugate(a[k])
    den = (r.conjugate(a[i0]) - r.conjugate(a[k])) * mu.conjugate(a[j])
    units = _one(field_)
    for i, t in enumerate(rel.coefficients):
        if t:
            units = units * _unit_ratio_exact(field_, i, j, k) ** t
    lhs = num**rel.t0 * units
    rhs = den**rel.t0
    if lhs * lhs != rhs * rhs:
        raise RelationError(
            f"alpha_0 relation for n = {field_.n}, i0 = {i0 + 1} is not an exact identity",
            {"t0": rel.t0, "t": rel.coefficients},
        )


def find_alpha0_relation(
    field_: FieldData,
    a0: AlgebraicReal,
    alphas: Sequence[AlgebraicReal],
    kept: Sequence[int],
    form_indices: tuple[int, int, int],
    mu: ExactElement,
) -> Alpha0Relation | None:
    """Integer relation between log alpha_0 and the surviving unit logarithms.

    Returns:
        The relation with t0 > 0, or None when log alpha_0 is independent.

    Raises:
        RelationError: If the surviving logarithms are themselves dependent,
            or a relation found cannot be confirmed exactly.
    """
    ctx = field_.ctx
    vector = [ctx.log(a0.value)] + [ctx.log(alphas[i].value) for i in kept]
    found = ctx.pslq(vector, maxcoeff=PSLQ_MAXCOEFF, maxsteps=PSLQ_MAXSTEPS)
    if found is None:
        return None
    if found[0] == 0:
        raise RelationError(
            f"unit logarithms of n = {field_.n} are dependent after elimination",
            {"relation": list(found)},
        )
    sign = 1 if found[0] > 0 else -1
    common = 0
    for v in found:
        common = gcd(common, int(v))
    found = [sign * int(v) // common for v in found]
    coefficients = [0] * len(alphas)
    for pos, i in enumerate(kept):
        coefficients[i] = found[pos + 1]
    rel = Alpha0Relation(found[0], tuple(coefficients))
    residual = ctx.fsum(c * v for c, v in zip(found, vector))
    if abs(residual) > ctx.mpf(10) ** (10 - field_.prec):
        raise RelationError(
            f"alpha_0 relation for n = {field_.n} fails numerically",
            {"residual": ctx.nstr(residual, 5)},
        )
    if not field_.is_abelian:
        raise RelationError(
            f"alpha_0 relation for n = {field_.n} cannot be confirmed over a non-Galois field",
            {"relation": found},
        )
    _verify_alpha0_exact(field_, form_indices, mu, rel)
    return rel


def build_forms(field_: FieldData, rhs_values: Iterable[int]) -> list[LogLinearForm]:
    """Every Lambda(i0, j, k, mu) of the equation, relations applied.

    Raises:
        RelationError: If a relation fails verification.
    """
    d = field_.degree
    pairs: dict[tuple[int, int], tuple[RelationSet, tuple[AlgebraicReal, ...]]] = {}
    forms: list[LogLinearForm] = []
    for m in sorted({abs(v) for v in rhs_values}):
        reps = field_.representatives(m)
        for mu in reps.mus:
            for i0 in range(d):
                j, k = pair_for(field_.n, d, i0)
                if (j, k) not in pairs:
                    alphas = unit_alphas(field_, j, k)
                    relations = relation_set(field_, (j, k))
                    verify_relations(field_, relations, alphas)
                    pairs[(j, k)] = (relations, alphas)
                relations, alphas = pairs[(j, k)]
                a0 = alpha0(field_, i0, j, k, mu)
                rel0 = find_alpha0_relation(field_, a0, alphas, relations.kept, (i0, j, k), mu)
                form = LogLinearForm(i0, j, k, m, mu, a0, alphas, relations, rel0)
                if form.combined:
                    log.debug(
                        "n = %d, i0 = %d: alpha_0 eliminated after the unit relations, t0 = %d",
                        field_.n,
                        i0 + 1,
                        form.t0,
                    )
                form.check_scaling(field_.ctx, seed=field_.n * 100 + i0)
                forms.append(form)
    log.debug(
        "n = %d: %d linear forms, %d homogeneous",
        field_.n,
        len(forms),
        sum(f.homogeneous for f in forms),
    )
    return forms


def _c1(xi: Sequence[MPReal], max_m: int, ctx: Any) -> MPReal:
    d = len(xi)
    products = [
        ctx.fprod(abs(xi[i] - xi[j]) for j in range(d) if j != i) for i in range(d)
    ]
    return ctx.mpf(2) ** (d - 1) * max_m / min(products)


def y1_threshold(xi: Sequence[MPReal], max_m: int, ctx: Any) -> int:
    """Y1 = ceil((4 c1)^(1/(d-2))); above it every solution x/y is a convergent.

    Raises:
        UnsupportedInputError: If the degree is below 3.
    """
    d = len(xi)
    if d < MIN_THUE_DEGREE:
        raise UnsupportedInputError(f"Y1 needs degree at least {MIN_THUE_DEGREE}, got {d}")
    c1 = _c1(xi, max_m, ctx)
    return int(ctx.ceil((4 * c1) ** (ctx.mpf(1) / (d - 2))))


def _c5(field_: FieldData) -> MPReal:
    ctx = field_.ctx
    d = field_.degree
    conj = field_.units.conjugates
    best = ctx.mpf(0)
    for i0 in range(d):
        rows = [[ctx.log(abs(conj[i][j])) for i in range(d - 1)] for j in range(d) if j != i0]
        inv = ctx.inverse(ctx.matrix(rows))
        norm = max(ctx.fsum(abs(inv[r, c]) for c in range(d - 1)) for r in range(d - 1))
        best = max(best, norm)
    return best


def _baker_keeps_alpha0(form: LogLinearForm, n: int) -> bool:
    return not form.homogeneous or n not in BAKER_ALPHA0_ELIMINATED


def _baker_rank(form: LogLinearForm, n: int) -> int:
    """Number of logarithms the Baker bound is applied to."""
    return len(form.kept) + int(_baker_keeps_alpha0(form, n))


def _height_table(field_: FieldData, forms: Sequence[LogLinearForm], D: int) -> dict[Any, MPReal]:
    """h'(alpha) for every logarithm used by the reduced forms."""
    ctx = field_.ctx
    d = field_.degree
    table: dict[Any, MPReal] = {}
    if field_.is_abelian:
        g = field_.galois_index
        conj = field_.units.conjugates
        xi = field_.xi
        for form in forms:
            j, k = form.pair
            for i in form.kept:
                if (j, k, i) not in table:
                    vals = [conj[i][g(s, k)] / conj[i][g(s, j)] for s in field_.residues]
                    table[(j, k, i)] = height(vals, D, ctx, norm=Fraction(1))
            if _baker_keeps_alpha0(form, field_.n):
                key = (form.i0, j, k, form.rhs, id(form.mu))
                if key in table:
                    continue
                mu_vals = field_.conjugate_values(form.mu)
                nums = [(xi[g(s, form.i0)] - xi[g(s, j)]) * mu_vals[g(s, k)] for s in field_.residues]
                dens = [(xi[g(s, form.i0)] - xi[g(s, k)]) * mu_vals[g(s, j)] for s in field_.residues]
                lead = primitive_leading(integer_polynomial(nums, dens, ctx))
                table[key] = height([a / b for a, b in zip(nums, dens)], D, ctx, leading=lead)
        return table

    # non-Galois quartic: bound through the heights of the field elements themselves
    h_xi = naive_height(field_.xi, ctx)
    h_units = [naive_height(field_.units.conjugates[i], ctx) for i in range(d - 1)]
    for form in forms:
        j, k = form.pair
        for i in form.kept:
            value = form.alphas[i].value
            table[(j, k, i)] = max(2 * h_units[i], abs(ctx.log(value)) / D, ctx.mpf(1) / D)
        if _baker_keeps_alpha0(form, field_.n):
            bound = 2 * (2 * h_xi + ctx.log(2))
            value = form.alpha0.value
            table[(form.i0, j, k, form.rhs, id(form.mu))] = max(
                bound, abs(ctx.log(value)) / D, ctx.mpf(1) / D
            )
    return table


def _k4(r: int, D: int, H: MPReal, ctx: Any) -> MPReal:
    return (
        18
        * factorial(r + 1)
        * ctx.mpf(r) ** (r + 1)
        * ctx.mpf(32 * D) ** (r + 2)
        * ctx.log(2 * D * r)
        * H
    )


def constants(
    field_: FieldData, forms: Sequence[LogLinearForm], rhs_values: Iterable[int]
) -> BoundLedger:
    """C5, C6, Y1, Y2', the heights and the Baker bound C9 for one equation.

    Args:
        field_: Field data at ledger precision.
        forms: All linear forms of the equation.
        rhs_values: Right-hand sides m.

    Returns:
        A ledger with the reduction and search entries still unset.
    """
    ctx = field_.ctx
    d = field_.degree
    D = field_.compositum_degree
    xi = field_.xi
    rhs = sorted({abs(v) for v in rhs_values})
    max_m = max(rhs)

    c1 = _c1(xi, max_m, ctx)
    y1 = y1_threshold(xi, max_m, ctx)
    C5 = _c5(field_)

    y2p = y1
    C6 = ctx.mpf(0)
    half, three_halves = ctx.mpf(1) / 2, ctx.mpf(3) / 2
    for form in forms:
        i0, j, k = form.i0, form.j, form.k
        c3 = 2 * c1 * abs(xi[k] - xi[j]) / (abs(xi[i0] - xi[k]) * abs(xi[i0] - xi[j]))
        y2p = max(y2p, int(ctx.ceil((2 * c3) ** (ctx.mpf(1) / d))))
        mu_vals = field_.conjugate_values(form.mu)
        c4 = max(
            abs(ctx.log(abs(xi[i0] - xi[jj]) * f) - ctx.log(abs(mu_vals[jj])))
            for jj in range(d)
            if jj != i0
            for f in (half, three_halves)
        )
        C6 = max(C6, 2 * c3 * ctx.exp(d * c4))

    heights = _height_table(field_, forms, D)
    best_k4, best_r, best_h = ctx.mpf(0), 0, ctx.mpf(0)
    for form in forms:
        j, k = form.pair
        H = ctx.fprod(heights[(j, k, i)] for i in form.kept)
        rank = _baker_rank(form, field_.n)
        if _baker_keeps_alpha0(form, field_.n):
            H *= heights[(form.i0, j, k, form.rhs, id(form.mu))]
        K4 = _k4(rank, D, H, ctx)
        if K4 > best_k4:
            best_k4, best_r, best_h = K4, rank, H

    t0 = max(form.t0 for form in forms)
    T = max(form.T for form in forms)
    a_floor = max(A_FLOOR, ceil(max(form.growth for form in forms)))
    C7 = 2 * best_k4
    C9 = 2 * C5 / d * (ctx.log(t0 * C6) + C7 * ctx.log(C5 * C7 / d))
    ledger = BoundLedger(
        n=field_.n,
        d=d,
        C5=C5,
        C6=C6,
        Y1=y1,
        Y2p=y2p,
        r=best_r,
        D=D,
        H=best_h,
        K4=best_k4,
        C7=C7,
        C9=C9,
        t0=t0,
        T=T,
        a_floor=a_floor,
        ctx=ctx,
    )
    log.debug(
        "n = %d: d/C5 = %s, C6 = %s, H = %s, C9 = %s",
        field_.n,
        ctx.nstr(d / C5, 5),
        ctx.nstr(C6, 3),
        ctx.nstr(best_h, 3),
        ctx.nstr(C9, 3),
    )
    return ledger


def _kappa(form: LogLinearForm, d: int, p: int) -> float:
    if form.combined:
        return 2 ** ((p - 1) / 2) * (p * p + 5 * p + 3) ** 0.5 * float(form.growth)
    if form.homogeneous:
        return 1.17 * (d * d + d - 2) ** 0.5 * form.T / 2 ** ((d - 2) / 2)
    return 2 ** ((p - 1) / 2) * (p * p + 5 * p + 3) ** 0.5 * (d - p) * form.T


def _hypothesis(
    form: LogLinearForm,
    outcome: ReductionOutcome,
    ledger: BoundLedger,
    bound: MPReal,
    c0: int,
    ctx: Any,
) -> HypothesisResult:
    C5, C6 = ctx.mpf(ledger.C5), ctx.mpf(ledger.C6)
    if form.combined:
        return check_hypothesis_reduced(
            outcome,
            q=len(form.kept),
            d=ledger.d,
            growth=form.growth,
            C9=bound,
            C5=C5,
            C6=C6,
            c0=c0,
            t0=form.t0,
            ctx=ctx,
        )
    if form.homogeneous:
        return check_hypothesis_z(
            outcome, d=ledger.d, T=form.T, C9=bound, C5=C5, C6=C6, c0=c0, t0=form.t0, ctx=ctx
        )
    p = len(form.kept)
    log_alpha0 = ctx.log(form.alpha0.evaluator(ctx))
    target = coords_of_target(outcome, tw_target(log_alpha0, c0, form.t0, p, ctx))
    return check_hypothesis_nz(
        outcome,
        target,
        p=p,
        d=ledger.d,
        T=form.T,
        C9=bound,
        C5=C5,
        C6=C6,
        c0=c0,
        t0=form.t0,
        ctx=ctx,
    )


def _start_exponent(p: int, bound_log10: float, kappa: float, first: bool, margin: int) -> int:
    """Exponent of c0 at which a pass starts.

    The first pass needs c0 >= C9^p 10^margin and c0^(1/p) >= 10 kappa C9.
    The second starts at c0^(1/p) = kappa A1 and is searched upward.
    """
    if first:
        return max(ceil(p * bound_log10) + margin, ceil(p * (bound_log10 + log10(10 * kappa))))
    return max(1, ceil(p * (bound_log10 + log10(kappa))))


def _reduce_pass(
    forms: Sequence[LogLinearForm],
    ledger: BoundLedger,
    bound: MPReal,
    config: RunConfig,
    *,
    first: bool = True,
) -> tuple[int, int]:
    """One LLL pass over every (j, k) pair; returns (new bound, exponent of c0)."""
    groups: dict[tuple[int, int], list[LogLinearForm]] = {}
    for form in forms:
        groups.setdefault(form.pair, []).append(form)
    d = ledger.d
    bound_log10 = float(ledger.ctx.log10(bound))
    new_bounds: list[MPReal] = []
    exponent_used = 0
    for pair in sorted(groups):
        group = groups[pair]
        kept = group[0].kept
        p = len(kept)
        kappa = max(_kappa(form, d, p) for form in group)
        digits = _start_exponent(p, bound_log10, kappa, first, config.d1_margin)
        cap = config.escalation_cap if first else config.escalation_cap + max(p, config.d1_margin)
        for attempt in range(cap + 1):
            c0 = 10**digits
            ctx = make_context(digits + LATTICE_GUARD_DIGITS)
            logs = [ctx.log(group[0].alphas[i].evaluator(ctx)) for i in kept]
            basis = tw_basis(logs, c0, ctx)
            if config.dump_bases:
                log.debug("n = %d pair %s basis at 10^%d:\n%s", ledger.n, pair, digits, basis.dump())
            outcome = lll_reduce(basis)
            results = [_hypothesis(form, outcome, ledger, ctx.mpf(bound), c0, ctx) for form in group]
            if all(res.holds for res in results):
                new_bounds.extend(res.bound for res in results if res.bound is not None)
                exponent_used = max(exponent_used, digits)
                break
            if attempt < cap:
                log.log(
                    logging.WARNING if first else logging.DEBUG,
                    "n = %d pair %s: hypothesis fails at c0 = 10^%d, raising c0",
                    ledger.n,
                    (pair[0] + 1, pair[1] + 1),
                    digits,
                )
                digits += 1
        else:
            raise HypothesisError(
                f"lattice hypothesis for n = {ledger.n} still fails at c0 = 10^{digits}",
                attempts=cap + 1,
                last_exponent=digits,
            )
    ctx = ledger.ctx
    reduced = max(int(ctx.ceil(b)) for b in new_bounds)
    return max(ledger.a_floor, min(int(ctx.ceil(bound)), reduced)), exponent_used


def reduce_bounds(
    forms: Sequence[LogLinearForm], ledger: BoundLedger, config: RunConfig | None = None
) -> BoundLedger:
    """Two LLL passes: c0 = 10^d1 against C9, then c0 = 10^d2 against A1.

    The second exponent is the smallest one, counting up from p log10(kappa A1),
    at which every hypothesis holds.

    Raises:
        HypothesisError: If a pass fails after the escalation cap.
    """
    config = config or RunConfig()
    a1, d1 = _reduce_pass(forms, ledger, ledger.C9, config)
    a2, d2 = _reduce_pass(forms, ledger, ledger.ctx.mpf(a1), config, first=False)
    log.info("n = %d: A <= %d (c0 = 10^%d), then A <= %d (c0 = 10^%d)", ledger.n, a1, d1, a2, d2)
    return replace(ledger, d1=d1, A1=a1, d2=d2, A2=a2)


def y3_bound(ledger: BoundLedger, field_: FieldData, mu_values: Iterable[Sequence[MPReal]], a2: int) -> int:
    """Y3 = min over j1 < j2 of mu_+ (E_j1^A2 + E_j2^A2) / |xi_j1 - xi_j2|."""
    ctx = field_.ctx
    d = field_.degree
    conj = field_.units.conjugates
    log_e = [ctx.fsum(abs(ctx.log(abs(conj[i][j]))) for i in range(d - 1)) for j in range(d)]
    mu_plus = max(abs(v) for values in mu_values for v in values)
    xi = field_.xi
    best = None
    for j1 in range(d):
        for j2 in range(j1 + 1, d):
            value = mu_plus * (ctx.exp(a2 * log_e[j1]) + ctx.exp(a2 * log_e[j2])) / abs(xi[j1] - xi[j2])
            best = value if best is None else min(best, value)
    assert best is not None
    y3 = int(ctx.ceil(best)) + 1
    log.debug("n = %d: Y3 = %s", ledger.n, ctx.nstr(ctx.mpf(y3), 3))
    return y3


def small_y_search(
    form: BinaryForm, roots: Sequence[MPReal], rhs_values: Iterable[int], ymax: int
) -> list[tuple[int, int]]:
    """All (x, y) with |y| <= ymax and F(x, y) in ``rhs_values``.

    For y != 0 some factor |x - xi y| is at most |m|^(1/d), so only integers
    in that window around each xi y are evaluated.
    """
    targets = set(rhs_values)
    d = form.degree
    width = max(int(integer_nthroot(abs(m), d)[0]) for m in targets) + 1
    found: set[tuple[int, int]] = set()
    for m in targets:
        root, exact = integer_nthroot(abs(m), d)
        if exact:
            for x in {int(root), -int(root)}:
                if form.evaluate(x, 0) == m:
                    found.add((x, 0))
    for y in range(-ymax, ymax + 1):
        if y == 0:
            continue
        xs: set[int] = set()
        for xi in roots:
            centre = int(xi * y)
            xs.update(range(centre - width - 1, centre + width + 2))
        for x in xs:
            if form.evaluate(x, y) in targets:
                found.add((x, y))
    return sorted(found)


def final_search(
    form: BinaryForm,
    roots: Sequence[AlgebraicReal],
    rhs_values: Iterable[int],
    y1: int,
    y3: int,
    config: RunConfig | None = None,
) -> dict[int, ThueSolutionSet]:
    """Direct search up to Y1 plus every convergent with denominator up to Y3.

    Raises:
        InvariantBreachError: If a reported pair fails exact re-verification.
    """
    config = config or RunConfig()
    targets = sorted(set(rhs_values))
    origin: dict[tuple[int, int], Provenance] = {}
    for pair in small_y_search(form, [root.value for root in roots], targets, y1):
        origin[pair] = "small-y"
    for root in roots:
        for p, q in convergents_up_to(root, y3, config.escalation_cap):
            for pair in ((p, q), (-p, -q)):
                if pair not in origin and form.evaluate(*pair) in targets:
                    origin[pair] = "convergent"
    sets: dict[int, ThueSolutionSet] = {}
    for m in targets:
        pairs = tuple(sorted(pair for pair in origin if form.evaluate(*pair) == m))
        sets[m] = ThueSolutionSet(form.n, m, pairs, {pair: origin[pair] for pair in pairs})
    for m, sols in sets.items():
        for x, y in sols.pairs:
            if form.evaluate(x, y) != m:
                raise InvariantBreachError(
                    f"({x}, {y}) does not solve F = {m}", "thue-solution", {"n": form.n}
                )
    return sets


def _field_key(form: BinaryForm) -> int:
    if form.degree < MIN_THUE_DEGREE:
        raise UnsupportedInputError(f"F_{form.n} has degree {form.degree}; Thue needs at least 3")
    if form.n not in CATALOG_INDICES:
        raise UnsupportedInputError(f"n = {form.n} has no catalogued unit system")
    return form.n


def solve_thue(form: BinaryForm | int, config: RunConfig | None = None) -> ThueResult:
    """Solve F(X, Y) = m for every admissible m of a catalogued form.

    Args:
        form: F_n, or its index n, for n in the unit catalog; or the quartic
            of n = 12, k = -2.
        config: Precision, c0 policy and escalation cap.

    Returns:
        The ledger and the complete solution sets.

    Raises:
        UnsupportedInputError: If the form has no catalogued field.
        RelationError: If a dependence relation fails verification.
        HypothesisError: If the lattice reduction cannot lower the bound.
        InvariantBreachError: If the ledger or a solution fails its check.

    Example:
        >>> result = solve_thue(7)
        >>> result.ledger.X4, result.ledger.Y4
        (9, 9)
    """
    config = config or RunConfig()
    if isinstance(form, int):
        form = build_form(form)
    key = _field_key(form)
    start = time.perf_counter()
    field_ = field_data(key, config.precision)
    rhs_values = sorted(form.targets())
    forms = build_forms(field_, rhs_values)
    ledger = constants(field_, forms, rhs_values)
    ledger = reduce_bounds(forms, ledger, config)
    if not ledger.A2 <= ledger.A1 <= ledger.C9:
        raise InvariantBreachError(
            f"bounds for n = {key} are not decreasing",
            "ledger-monotonic",
            {"A1": ledger.A1, "A2": ledger.A2},
        )
    mu_values = [
        values
        for m in sorted({abs(v) for v in rhs_values})
        for values in field_.representatives(m).values
    ]
    y3 = y3_bound(ledger, field_, mu_values, ledger.A2)
    solutions = final_search(form, field_.roots, rhs_values, ledger.Y1, y3, config)
    every = [pair for sols in solutions.values() for pair in sols.pairs]
    ledger = replace(
        ledger,
        Y3=y3,
        X4=max((abs(x) for x, _ in every), default=0),
        Y4=max((abs(y) for _, y in every), default=0),
        time=time.perf_counter() - start,
    )
    log.info(
        "n = %d solved: %d solutions, (X4, Y4) = (%d, %d) in %.1fs",
        key,
        len(every),
        ledger.X4,
        ledger.Y4,
        ledger.time,
    )
    return ThueResult(form, ledger, solutions, tuple(forms))


def brute_force(form: BinaryForm, rhs_values: Iterable[int], box: int) -> list[tuple[int, int]]:
    """Every (x, y) with max(|x|, |y|) <= box and F(x, y) in ``rhs_values``."""
    targets = set(rhs_values)
    return [
        (x, y)
        for x in range(-box, box + 1)
        for y in range(-box, box + 1)
        if form.evaluate(x, y) in targets
    ]


def scan(nmin: int, nmax: int, box: int, config: RunConfig | None = None) -> ScanReport:
    """Search every F_n(x, y) = m with nmin <= n <= nmax and max(|x|, |y|) <= box.

    Values |y| up to Y1 are searched directly and larger |y| through the
    convergents of the roots of F_n(X, 1).

    Returns:
        The report; ``hits`` lists only pairs that give a non-degenerate
        sequence with coprime (alpha + beta)^2 and alpha beta.

    Raises:
        UnsupportedInputError: If the range or box is empty, or the range
            starts inside the solved indices.
    """
    config = config or RunConfig()
    if nmin > nmax or box < 1:
        raise UnsupportedInputError(f"empty scan range {nmin}..{nmax} with box {box}")
    if nmin < SCAN_FIRST_INDEX:
        raise UnsupportedInputError(
            f"scan starts at n = {SCAN_FIRST_INDEX}, got {nmin}; smaller indices are solved exactly"
        )
    hits: dict[int, list[tuple[int, int]]] = {}
    checked = 0
    for n in range(nmin, nmax + 1):
        form = build_form(n)
        targets = form_target(n).rhs_values
        ctx = make_context(max(config.precision, 2 * len(str(box)) + 30))
        xi = cyclotomic_roots(n, ctx)
        ymax = min(box, y1_threshold(xi, max(abs(m) for m in targets), ctx))
        found = small_y_search(form, xi, targets, ymax)
        checked += (2 * ymax + 1) * len(xi)
        for a, value in zip(coprime_residues(n), xi):
            root = AlgebraicReal(f"2cos(2pi*{a}/{n})", _cos_evaluator(n, a), ctx.dps, value)
            for p, q in convergents_up_to(root, box, config.escalation_cap):
                for pair in ((p, q), (-p, -q)):
                    checked += 1
                    if form.evaluate(*pair) in targets:
                        found.append(pair)
        inside = sorted({(x, y) for x, y in found if max(abs(x), abs(y)) <= box})
        qualifying = []
        for x, y in inside:
            cand = reconstruct(x, y)
            if cand.kind != "degenerate" and cand.valid:
                qualifying.append((x, y))
        if qualifying:
            log.info("n = %d: qualifying solutions %s", n, qualifying)
            hits[n] = qualifying
        else:
            log.debug("n = %d: no qualifying solutions in box %d", n, box)
    return ScanReport(nmin=nmin, nmax=nmax, box=box, hits=hits, checked=checked)


def _cos_evaluator(n: int, a: int) -> Any:
    return lambda c: 2 * c.cos(2 * c.pi * a / n)
