"""Integral LLL reduction and the lattice bounds built on it."""

from __future__ import annotations

import logging
from collections.abc import Sequence
from dataclasses import dataclass
from fractions import Fraction
from math import floor
from typing import Any

from .exceptions import LatticeError, UnsupportedInputError
from .types import MPReal

log = logging.getLogger(__name__)

# Reduction parameter delta = 3/4, used as 4 d_k d_{k-2} < 3 d_{k-1}^2 - 4 lambda^2.
DELTA = Fraction(3, 4)


@dataclass(frozen=True)
class LatticeBasis:
    """A lattice basis given by its columns.

    Attributes:
        columns: p integer vectors of length p.
    """

    columns: tuple[tuple[int, ...], ...]

    @property
    def dim(self) -> int:
        return len(self.columns)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[int]]) -> LatticeBasis:
        return cls(tuple(tuple(int(v) for v in col) for col in columns))

    def rows(self) -> list[list[int]]:
        return [list(row) for row in zip(*self.columns)]

    def dump(self) -> str:
        """Integer rows, one per line."""
        return "\n".join(" ".join(str(v) for v in row) for row in self.rows())


@dataclass(frozen=True)
class ReductionOutcome:
    """Result of an LLL run.

    Attributes:
        original: The input basis.
        reduced: The reduced basis.
        transform: ``transform[k][i]`` is the coefficient of original column i
            in reduced column k.
    """

    original: LatticeBasis
    reduced: LatticeBasis
    transform: tuple[tuple[int, ...], ...]

    @property
    def b1_norm_squared(self) -> int:
        return sum(v * v for v in self.reduced.columns[0])

    def b1_norm(self, ctx: Any) -> MPReal:
        return ctx.sqrt(self.b1_norm_squared)


@dataclass(frozen=True)
class TargetCoordinates:
    """Coordinates of a target vector in a reduced basis.

    Attributes:
        coords: Exact rational s_1, ..., s_p.
        k_index: Largest index (0-based) with a non-integral coordinate, or None.
        distance: ||s_k||, the distance of s_k to the nearest integer.
    """

    coords: tuple[Fraction, ...]
    k_index: int | None
    distance: Fraction

    @property
    def in_lattice(self) -> bool:
        return self.k_index is None


@dataclass(frozen=True)
class HypothesisResult:
    """Outcome of a reduced-bound lemma.

    Attributes:
        holds: Whether the hypothesis inequality holds.
        bound: The new bound for A when it holds.
        lhs: Left-hand side of the hypothesis.
        rhs: Right-hand side of the hypothesis.
    """

    holds: bool
    bound: MPReal | None
    lhs: MPReal
    rhs: MPReal


def _dot(u: Sequence[int], v: Sequence[int]) -> int:
    return sum(a * b for a, b in zip(u, v))


def determinant(matrix: Sequence[Sequence[int]]) -> int:
    """Exact determinant by fraction-free Bareiss elimination."""
    a = [list(row) for row in matrix]
    size = len(a)
    if size == 0:
        return 1
    sign, prev = 1, 1
    for k in range(size - 1):
        if a[k][k] == 0:
            pivot = next((i for i in range(k + 1, size) if a[i][k] != 0), None)
            if pivot is None:
                return 0
            a[k], a[pivot] = a[pivot], a[k]
            sign = -sign
        for i in range(k + 1, size):
            for j in range(k + 1, size):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[size - 1][size - 1]


def lll_reduce(basis: LatticeBasis) -> ReductionOutcome:
    """Reduce ``basis`` with the all-integer LLL algorithm, delta = 3/4.

    Gram-Schmidt data is kept as integers d_i and lambda_ij, so every step is
    exact.

    Args:
        basis: Linearly independent integer columns.

    Returns:
        The reduced basis with the unimodular transform.

    Raises:
        LatticeError: If the columns are linearly dependent.

    Example:
        >>> out = lll_reduce(LatticeBasis.from_columns([[1, 1], [0, 5]]))
        >>> out.b1_norm_squared
        2
    """
    p = basis.dim
    if p == 0:
        raise LatticeError("empty basis")
    # 1-based storage with a leading pad, so d[0] = d_0 = 1.
    b: list[list[int]] = [[]] + [list(col) for col in basis.columns]
    h: list[list[int]] = [[]] + [[int(i == j) for j in range(p)] for i in range(p)]
    d: list[int] = [1] + [0] * p
    lam: list[list[int]] = [[0] * (p + 1) for _ in range(p + 1)]

    def red(k: int, l: int) -> None:
        if 2 * abs(lam[k][l]) > d[l]:
            q = (2 * lam[k][l] + d[l]) // (2 * d[l])
            b[k] = [x - q * y for x, y in zip(b[k], b[l])]
            h[k] = [x - q * y for x, y in zip(h[k], h[l])]
            lam[k][l] -= q * d[l]
            for i in range(1, l):
                lam[k][i] -= q * lam[l][i]

    def swap(k: int, kmax: int) -> None:
        b[k], b[k - 1] = b[k - 1], b[k]
        h[k], h[k - 1] = h[k - 1], h[k]
        for j in range(1, k - 1):
            lam[k][j], lam[k - 1][j] = lam[k - 1][j], lam[k][j]
        lk = lam[k][k - 1]
        big = (d[k - 2] * d[k] + lk * lk) // d[k - 1]
        for i in range(k + 1, kmax + 1):
            t = lam[i][k]
            lam[i][k] = (d[k] * lam[i][k - 1] - lk * t) // d[k - 1]
            lam[i][k - 1] = (big * t + lk * lam[i][k]) // d[k]
        d[k - 1] = big

    d[1] = _dot(b[1], b[1])
    if d[1] == 0:
        raise LatticeError("zero column in basis")
    k, kmax = 2, 1
    while k <= p:
        if k > kmax:
            kmax = k
            for j in range(1, k + 1):
                u = _dot(b[k], b[j])
                for i in range(1, j):
                    u = (d[i] * u - lam[k][i] * lam[j][i]) // d[i - 1]
                if j < k:
                    lam[k][j] = u
                else:
                    d[k] = u
            if d[k] == 0:
                raise LatticeError(f"columns are linearly dependent (column {k})")
        red(k, k - 1)
        if 4 * d[k] * d[k - 2] < 3 * d[k - 1] ** 2 - 4 * lam[k][k - 1] ** 2:
            swap(k, kmax)
            k = max(2, k - 1)
        else:
            for l in range(k - 2, 0, -1):
                red(k, l)
            k += 1

    reduced = LatticeBasis.from_columns(b[1:])
    transform = tuple(tuple(row) for row in h[1:])
    log.debug("LLL on dimension %d: |b1|^2 = %d", p, _dot(b[1], b[1]))
    return ReductionOutcome(basis, reduced, transform)


def is_reduced(basis: LatticeBasis, delta: Fraction = DELTA) -> bool:
    """Check size reduction and the Lovasz condition with exact rationals."""
    cols = [[Fraction(v) for v in col] for col in basis.columns]
    star: list[list[Fraction]] = []
    norms: list[Fraction] = []
    mu = [[Fraction(0)] * len(cols) for _ in cols]
    for i, col in enumerate(cols):
        v = list(col)
        for j in range(i):
            mu[i][j] = sum((a * c for a, c in zip(col, star[j])), Fraction(0)) / norms[j]
            v = [x - mu[i][j] * y for x, y in zip(v, star[j])]
        star.append(v)
        norms.append(sum((x * x for x in v), Fraction(0)))
    for i in range(len(cols)):
        if any(abs(mu[i][j]) > Fraction(1, 2) for j in range(i)):
            return False
        if i and norms[i] < (delta - mu[i][i - 1] ** 2) * norms[i - 1]:
            return False
    return True


def round_half_away(value: MPReal, ctx: Any) -> int:
    """Nearest integer, ties away from zero."""
    magnitude = int(ctx.floor(abs(value) + ctx.mpf(1) / 2))
    return magnitude if value >= 0 else -magnitude


def tw_basis(logs: Sequence[MPReal], c0: int, ctx: Any) -> LatticeBasis:
    """The matrix with identity rows on top and [c0 log alpha_i] as last row.

    Args:
        logs: log alpha_1, ..., log alpha_p.
        c0: Scaling constant, usually a power of ten.
        ctx: mpmath context with precision above log10(c0).
    """
    p = len(logs)
    columns = []
    for i, value in enumerate(logs):
        col = [int(i == r) for r in range(p - 1)]
        col.append(round_half_away(c0 * value, ctx))
        columns.append(col)
    return LatticeBasis.from_columns(columns)


def tw_target(log_alpha0: MPReal, c0: int, t0: int, p: int, ctx: Any) -> tuple[int, ...]:
    """The vector (0, ..., 0, -[c0 t0 log alpha_0])."""
    return tuple([0] * (p - 1) + [-round_half_away(c0 * t0 * log_alpha0, ctx)])


def coords_of_target(outcome: ReductionOutcome, x: Sequence[int]) -> TargetCoordinates:
    """Solve x = sum s_i b_i exactly over the reduced basis.

    Raises:
        LatticeError: If the system is singular.
    """
    cols = outcome.reduced.columns
    p = len(cols)
    # augmented rows of [B | x]
    rows = [[Fraction(cols[c][r]) for c in range(p)] + [Fraction(x[r])] for r in range(p)]
    for c in range(p):
        pivot = next((r for r in range(c, p) if rows[r][c] != 0), None)
        if pivot is None:
            raise LatticeError("reduced basis is singular")
        rows[c], rows[pivot] = rows[pivot], rows[c]
        inv = 1 / rows[c][c]
        rows[c] = [v * inv for v in rows[c]]
        for r in range(p):
            if r != c and rows[r][c] != 0:
                factor = rows[r][c]
                rows[r] = [a - factor * b for a, b in zip(rows[r], rows[c])]
    coords = tuple(rows[r][p] for r in range(p))
    k_index = None
    for idx in range(p - 1, -1, -1):
        if coords[idx].denominator != 1:
            k_index = idx
            break
    if k_index is None:
        return TargetCoordinates(coords, None, Fraction(0))
    s = coords[k_index]
    frac = s - floor(s)
    return TargetCoordinates(coords, k_index, min(frac, 1 - frac))


def check_hypothesis_nz(
    outcome: ReductionOutcome,
    target: TargetCoordinates,
    *,
    p: int,
    d: int,
    T: int,
    C9: MPReal,
    C5: MPReal,
    C6: MPReal,
    c0: int,
    t0: int,
    ctx: Any,
) -> HypothesisResult:
    """Reduced bound when log alpha_0 is independent of the unit logarithms.

    If 2^(-(p-1)/2) ||s_k|| |b_1| >= sqrt(p^2 + 5p + 3) (d - p) T C9, then
    A <= (C5 / d) log(c0 t0 C6 / ((d - p) T C9)).
    """
    rhs = ctx.sqrt(p * p + 5 * p + 3) * (d - p) * T * C9
    if target.in_lattice:
        return HypothesisResult(False, None, ctx.mpf(0), rhs)
    dist = ctx.mpf(target.distance.numerator) / target.distance.denominator
    lhs = ctx.power(2, -ctx.mpf(p - 1) / 2) * dist * outcome.b1_norm(ctx)
    if lhs < rhs:
        return HypothesisResult(False, None, lhs, rhs)
    bound = C5 / d * ctx.log(c0 * t0 * C6 / ((d - p) * T * C9))
    return HypothesisResult(True, bound, lhs, rhs)


def check_hypothesis_z(
    outcome: ReductionOutcome,
    *,
    d: int,
    T: int,
    C9: MPReal,
    C5: MPReal,
    C6: MPReal,
    c0: int,
    t0: int,
    ctx: Any,
) -> HypothesisResult:
    """Reduced bound when log alpha_0 was eliminated through a relation.

    If 2^((d-2)/2) |b_1| > 1.17 sqrt(d^2 + d - 2) T C9, then
    A <= ((1.16 C5 T / d) log(0.85 c0 C6 / C9) + T) / t0.

    Raises:
        UnsupportedInputError: If d < 3.
    """
    if d < 3:
        raise UnsupportedInputError(f"the lattice bound needs degree at least 3, got {d}")
    lhs = ctx.power(2, ctx.mpf(d - 2) / 2) * outcome.b1_norm(ctx)
    rhs = ctx.mpf("1.17") * ctx.sqrt(d * d + d - 2) * T * C9
    if lhs <= rhs:
        return HypothesisResult(False, None, lhs, rhs)
    inner = ctx.mpf("0.85") * c0 * C6 / C9
    bound = (ctx.mpf("1.16") * C5 * T / d * ctx.log(inner) + T) / t0
    return HypothesisResult(True, bound, lhs, rhs)


def check_hypothesis_reduced(
    outcome: ReductionOutcome,
    *,
    q: int,
    d: int,
    growth: Fraction,
    C9: MPReal,
    C5: MPReal,
    C6: MPReal,
    c0: int,
    t0: int,
    ctx: Any,
) -> HypothesisResult:
    """Reduced bound for a homogeneous form in q logarithms with |a_i| <= growth * A.

    The coefficient vector lies in the lattice, so its image has length at
    least 2^(-(q-1)/2) |b_1|. If that exceeds sqrt(q^2 + 5q + 3) X with
    X = growth C9, then c0 |t0 Lambda| >= X and
    A <= (C5 / d) log(c0 t0 C6 / X).

    Raises:
        UnsupportedInputError: If q < 1.
    """
    if q < 1:
        raise UnsupportedInputError(f"the lattice bound needs at least one logarithm, got {q}")
    x = ctx.mpf(growth.numerator) / growth.denominator * C9
    lhs = ctx.power(2, -ctx.mpf(q - 1) / 2) * outcome.b1_norm(ctx)
    rhs = ctx.sqrt(q * q + 5 * q + 3) * x
    if lhs < rhs:
        return HypothesisResult(False, None, lhs, rhs)
    bound = C5 / d * ctx.log(c0 * t0 * C6 / x)
    return HypothesisResult(True, bound, lhs, rhs)
