"""Lucas and Lehmer pairs from form solutions, primitive divisors and the result tables."""

from __future__ import annotations

import logging
from collections.abc import Iterable, Mapping
from dataclasses import dataclass, field
from math import gcd, isqrt

from sympy import primefactors

from .exceptions import CriterionMismatchError, TableMismatchError, UnsupportedInputError
from .forms import build_form, form_target
from .types import CandidateRecord, SequenceKind

log = logging.getLogger(__name__)

# Rows of the complete tables for 4 < n <= 30, in the notation of :func:`render`.
LUCAS_TABLE: dict[int, frozenset[str]] = {
    5: frozenset(
        {"(1±√5)/2", "(1±√-7)/2", "1±√-10", "(1±√-11)/2", "(1±√-15)/2", "6±√-19", "6±√-341"}
    ),
    7: frozenset({"(1±√-7)/2", "(1±√-19)/2"}),
    8: frozenset({"1±√-6", "(1±√-7)/2"}),
    10: frozenset({"1±√-2", "(5±√-3)/2", "(5±√-47)/2"}),
    12: frozenset(
        {"(1±√5)/2", "(1±√-7)/2", "(1±√-11)/2", "1±√-14", "(1±√-15)/2", "(1±√-19)/2"}
    ),
    13: frozenset({"(1±√-7)/2"}),
    18: frozenset({"(1±√-7)/2"}),
    30: frozenset({"(1±√-7)/2"}),
}

LEHMER_TABLE: dict[int, frozenset[str]] = {
    7: frozenset(
        {
            "(1±√-7)/2",
            "(1±√-19)/2",
            "(√3±√-5)/2",
            "(√5±√-7)/2",
            "(√13±√-3)/2",
            "(√14±√-22)/2",
        }
    ),
    9: frozenset({"(√5±√-3)/2", "(√7±√-1)/2", "(√7±√-5)/2"}),
    13: frozenset({"(1±√-7)/2"}),
    14: frozenset(
        {
            "(√3±√-13)/2",
            "(√5±√-3)/2",
            "(√7±√-1)/2",
            "(√7±√-5)/2",
            "(√19±√-1)/2",
            "(√22±√-14)/2",
        }
    ),
    15: frozenset({"(√7±√-1)/2", "(√10±√-2)/2"}),
    18: frozenset({"(1±√-7)/2", "(√3±√-5)/2", "(√5±√-7)/2"}),
    24: frozenset({"(√3±√-5)/2", "(√5±√-3)/2"}),
    26: frozenset({"(√7±√-1)/2"}),
    30: frozenset({"(1±√-7)/2", "(√2±√-10)/2"}),
}

LUCAS_RANGE = tuple(n for n in range(5, 31) if n != 6)
LEHMER_RANGE = tuple(n for n in range(7, 31) if n not in (8, 10, 12))


def _is_square(value: int) -> bool:
    return value >= 0 and isqrt(value) ** 2 == value


@dataclass(frozen=True)
class SequenceCandidate:
    """The pair alpha, beta = (sqrt(s) +- sqrt(t)) / 2 behind a solution (x, y).

    Attributes:
        x: alpha^2 + beta^2.
        y: alpha * beta.
        kind: "lucas" when s is a square, "lehmer" otherwise, "degenerate"
            when alpha beta = 0 or alpha / beta is a root of unity.
        valid: Whether s = (alpha + beta)^2 and y are coprime.
    """

    x: int
    y: int
    kind: SequenceKind
    valid: bool

    @property
    def s(self) -> int:
        """(alpha + beta)^2 = x + 2y."""
        return self.x + 2 * self.y

    @property
    def t(self) -> int:
        """(alpha - beta)^2 = x - 2y."""
        return self.x - 2 * self.y

    @property
    def canonical(self) -> bool:
        return self.s > 0

    def as_record(self) -> CandidateRecord:
        return CandidateRecord(x=self.x, y=self.y, kind=self.kind, pair=render(self), valid=self.valid)


def is_degenerate(x: int, y: int) -> bool:
    """alpha beta = 0, or alpha / beta a root of unity.

    alpha^2 + beta^2 = (zeta + 1/zeta) alpha beta forces x / y into {0, +-1, +-2}.
    """
    return y == 0 or x in (0, y, -y, 2 * y, -2 * y)


def _classify(x: int, y: int) -> SequenceKind:
    if is_degenerate(x, y):
        return "degenerate"
    return "lucas" if _is_square(x + 2 * y) else "lehmer"


def reconstruct(x: int, y: int) -> SequenceCandidate:
    """The pair whose alpha^2 + beta^2 and alpha beta are x and y.

    Alpha and beta are the roots of X^2 - sqrt(x + 2y) X + y. Nothing is
    rejected here; degenerate and non-coprime pairs are only flagged.

    Example:
        >>> reconstruct(34, 55).kind
        'lucas'
        >>> render(reconstruct(34, 55))
        '6±√-19'
    """
    return SequenceCandidate(x, y, _classify(x, y), gcd(x + 2 * y, y) == 1)


def canonicalize(candidate: SequenceCandidate) -> SequenceCandidate:
    """The representative with s > 0.

    Changing the sign of alpha and beta leaves (x, y) fixed; multiplying both
    by i sends (x, y) to (-x, -y). A pair with s < 0 is therefore moved to
    (-x, -y) and reclassified.

    Raises:
        UnsupportedInputError: If the candidate is degenerate.
    """
    if candidate.kind == "degenerate":
        raise UnsupportedInputError(f"({candidate.x}, {candidate.y}) is degenerate")
    if candidate.s > 0:
        return candidate
    return reconstruct(-candidate.x, -candidate.y)


def render(candidate: SequenceCandidate) -> str:
    """Surd notation: ``(a±√t)/2`` or ``a±√t`` for Lucas pairs, ``(√s±√t)/2`` otherwise."""
    s, t = candidate.s, candidate.t
    if candidate.kind == "lucas":
        a = isqrt(s)
        if a % 2 == 0:
            return f"{a // 2}±√{t // 4}"
        return f"({a}±√{t})/2"
    if s % 4 == 0 and t % 4 == 0:
        return f"√{s // 4}±√{t // 4}"
    return f"(√{s}±√{t})/2"


def lucas_terms(candidate: SequenceCandidate, n: int) -> list[int]:
    """u_0, ..., u_n of the Lucas sequence, u_{k+1} = (alpha + beta) u_k - y u_{k-1}.

    Raises:
        UnsupportedInputError: If alpha + beta is not an integer.
    """
    if not _is_square(candidate.s):
        raise UnsupportedInputError(f"({candidate.x}, {candidate.y}) is not a Lucas pair")
    a = isqrt(candidate.s)
    terms = [0, 1]
    for _ in range(n - 1):
        terms.append(a * terms[-1] - candidate.y * terms[-2])
    return terms[: n + 1]


def lehmer_terms(candidate: SequenceCandidate, n: int) -> list[int]:
    """u_0, ..., u_n of the Lehmer sequence.

    With the even-index terms divided by alpha + beta, the recurrence becomes
    u_{k+1} = s u_k - y u_{k-1} for even k and u_{k+1} = u_k - y u_{k-1} for odd k.
    """
    s, y = candidate.s, candidate.y
    terms = [0, 1]
    for k in range(1, n):
        factor = s if k % 2 == 0 else 1
        terms.append(factor * terms[k] - y * terms[k - 1])
    return terms[: n + 1]


def base_product(candidate: SequenceCandidate, n: int, kind: SequenceKind) -> int:
    """The product whose primes a primitive divisor of u_n must avoid.

    Lucas: (alpha - beta)^2 u_2 ... u_{n-1}. Lehmer: (alpha^2 - beta^2)^2 u_3 ... u_{n-1}.
    """
    if kind == "lucas":
        terms = lucas_terms(candidate, n)
        product = candidate.t
        first = 2
    else:
        terms = lehmer_terms(candidate, n)
        product = candidate.s * candidate.t
        first = 3
    for value in terms[first:n]:
        product *= value
    return product


def primitive_part(value: int, base: int) -> int:
    """|value| with every prime it shares with ``base`` removed."""
    value = abs(value)
    common = gcd(value, base)
    while common > 1:
        value //= common
        common = gcd(value, base)
    return value


@dataclass(frozen=True)
class DirectCheck:
    """Outcome of the definition-based primitive divisor test.

    Attributes:
        n: Index.
        kind: Sequence definition used.
        u_n: The n-th term.
        primitive: Primitive part of u_n.
        primes: Primitive prime divisors of u_n.
    """

    n: int
    kind: SequenceKind
    u_n: int
    primitive: int
    primes: tuple[int, ...]

    @property
    def has_primitive_divisor(self) -> bool:
        return self.primitive > 1


def direct_check(candidate: SequenceCandidate, n: int, kind: SequenceKind | None = None) -> DirectCheck:
    """Compute u_n exactly and factor its primitive part.

    Example:
        >>> fib = reconstruct(3, -1)
        >>> direct_check(fib, 12).u_n, direct_check(fib, 13).primes
        (144, (233,))
    """
    kind = kind or candidate.kind
    if kind == "degenerate":
        raise UnsupportedInputError(f"({candidate.x}, {candidate.y}) is degenerate")
    terms = lucas_terms(candidate, n) if kind == "lucas" else lehmer_terms(candidate, n)
    primitive = primitive_part(terms[n], base_product(candidate, n, kind))
    primes = tuple(int(p) for p in primefactors(primitive)) if primitive > 1 else ()
    return DirectCheck(n, kind, terms[n], primitive, primes)


def criterion_holds(candidate: SequenceCandidate, n: int) -> bool:
    """Whether F_n(x, y) is one of the values that rule out a primitive divisor."""
    return build_form(n).evaluate(candidate.x, candidate.y) in form_target(n).rhs_values


def check_primitive_divisor(
    candidate: SequenceCandidate, n: int, kind: SequenceKind | None = None
) -> bool:
    """Whether u_n has a primitive divisor, by the form criterion and by direct computation.

    Args:
        candidate: A non-degenerate, coprime pair.
        n: Index, n > 4 and n != 6.
        kind: Sequence definition to use; defaults to the candidate's kind.

    Returns:
        True if u_n has a primitive divisor.

    Raises:
        CriterionMismatchError: If the two computations disagree.
        UnsupportedInputError: If the candidate is degenerate or not coprime.
    """
    if not candidate.valid:
        raise UnsupportedInputError(f"({candidate.x}, {candidate.y}): s and y are not coprime")
    by_form = not criterion_holds(candidate, n)
    direct = direct_check(candidate, n, kind)
    if by_form != direct.has_primitive_divisor:
        raise CriterionMismatchError(
            f"criterion and direct computation disagree for n = {n} at {render(candidate)}",
            {
                "x": candidate.x,
                "y": candidate.y,
                "kind": direct.kind,
                "u_n": str(direct.u_n),
                "primitive_part": str(direct.primitive),
            },
        )
    return by_form


@dataclass(frozen=True)
class CandidateReport:
    """Canonical candidates of one index and the audit trail of dropped solutions.

    Attributes:
        n: Index.
        candidates: Distinct canonical, coprime, non-degenerate pairs.
        filtered: One entry per dropped solution with the reason.
    """

    n: int
    candidates: tuple[SequenceCandidate, ...]
    filtered: tuple[dict[str, object], ...] = ()


def candidates_for(n: int, solutions: Iterable[tuple[int, int]]) -> CandidateReport:
    """Reconstruct, filter and canonicalize every solution of index n."""
    kept: dict[tuple[int, int], SequenceCandidate] = {}
    filtered: list[dict[str, object]] = []
    for x, y in sorted(set(solutions)):
        cand = reconstruct(x, y)
        if cand.kind == "degenerate":
            filtered.append({"x": x, "y": y, "reason": "degenerate"})
            continue
        if not cand.valid:
            filtered.append({"x": x, "y": y, "reason": "not coprime"})
            continue
        canon = canonicalize(cand)
        key = (canon.x, canon.y)
        if key in kept:
            filtered.append({"x": x, "y": y, "reason": "duplicate", "of": render(canon)})
            continue
        kept[key] = canon
    ordered = tuple(sorted(kept.values(), key=lambda c: (c.s, c.t)))
    log.debug("n = %d: %d candidates, %d filtered", n, len(ordered), len(filtered))
    return CandidateReport(n, ordered, tuple(filtered))


@dataclass(frozen=True)
class SequenceTable:
    """Pairs whose n-th term has no primitive divisor, by n.

    Attributes:
        kind: "lucas" or "lehmer".
        rows: Canonical candidates by index.
    """

    kind: SequenceKind
    rows: dict[int, tuple[SequenceCandidate, ...]] = field(default_factory=dict)

    def rendered(self) -> dict[int, frozenset[str]]:
        return {n: frozenset(render(c) for c in row) for n, row in self.rows.items() if row}

    def to_text(self) -> str:
        """One line per index: ``n: pair, pair, ...`` sorted."""
        lines = []
        for n, row in sorted(self.rendered().items()):
            lines.append(f"{n}: " + ", ".join(sorted(row)))
        return "\n".join(lines)

    def as_dict(self) -> dict[str, list[str]]:
        return {str(n): sorted(row) for n, row in sorted(self.rendered().items())}


def _compare(table: SequenceTable, reference: Mapping[int, frozenset[str]], scope: Iterable[int]) -> None:
    got = table.rendered()
    missing: list[tuple[int, str]] = []
    unexpected: list[tuple[int, str]] = []
    for n in scope:
        want = reference.get(n, frozenset())
        have = got.get(n, frozenset())
        missing.extend((n, p) for p in sorted(want - have))
        unexpected.extend((n, p) for p in sorted(have - want))
    if missing or unexpected:
        raise TableMismatchError(
            f"{table.kind} table differs from the reference", missing=missing, unexpected=unexpected
        )


def emit_tables(
    solved: Mapping[int, Iterable[tuple[int, int]]], *, check_direct: bool = False
) -> tuple[SequenceTable, SequenceTable]:
    """Assemble the Lucas and Lehmer tables from the solutions of every index.

    Args:
        solved: All solutions (x, y) of F_n(X, Y) in the target set, by n.
        check_direct: Confirm each entry against the sequence definition.

    Returns:
        The Lucas table and the Lehmer table.

    Raises:
        TableMismatchError: If a row of a solved index differs from the reference.
        CriterionMismatchError: If a direct check contradicts the criterion.
    """
    lucas: dict[int, tuple[SequenceCandidate, ...]] = {}
    lehmer: dict[int, tuple[SequenceCandidate, ...]] = {}
    for n in sorted(solved):
        report = candidates_for(n, solved[n])
        if n in LUCAS_RANGE:
            row = tuple(c for c in report.candidates if c.kind == "lucas")
            if check_direct:
                for cand in row:
                    check_primitive_divisor(cand, n, "lucas")
            lucas[n] = row
        if n in LEHMER_RANGE:
            row = report.candidates
            if check_direct:
                for cand in row:
                    check_primitive_divisor(cand, n, "lehmer")
            lehmer[n] = row
    lucas_table = SequenceTable("lucas", lucas)
    lehmer_table = SequenceTable("lehmer", lehmer)
    _compare(lucas_table, LUCAS_TABLE, [n for n in solved if n in LUCAS_RANGE])
    _compare(lehmer_table, LEHMER_TABLE, [n for n in solved if n in LEHMER_RANGE])
    log.info(
        "tables: %d Lucas rows, %d Lehmer rows",
        len(lucas_table.rendered()),
        len(lehmer_table.rendered()),
    )
    return lucas_table, lehmer_table
