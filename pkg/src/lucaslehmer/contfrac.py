"""Continued fraction expansion of real algebraic numbers."""

from __future__ import annotations

import logging
from collections.abc import Callable
from dataclasses import dataclass
from typing import Any

from .config import DEFAULT_ESCALATION_CAP
from .exceptions import PrecisionError
from .numberfield import AlgebraicReal, make_context

log = logging.getLogger(__name__)

# A quotient is trusted only if it survives recomputation this many digits higher.
GUARD_DIGITS = 50


@dataclass(frozen=True)
class ConvergentStream:
    """Partial quotients of a target and its convergents up to a denominator bound.

    Attributes:
        target: The expanded number.
        partial_quotients: a_0, a_1, ... as far as they were certain.
        convergents: (p_i, q_i) with q_i <= qmax, q_i increasing.
    """

    target: AlgebraicReal
    partial_quotients: tuple[int, ...]
    convergents: tuple[tuple[int, int], ...]


def _expand(evaluator: Callable[[Any], Any], prec: int, qmax: int) -> tuple[list[int], bool]:
    """Quotients at ``prec`` digits until q exceeds qmax.

    Returns the quotients and whether the expansion reached its end (q > qmax
    or an exact rational), as opposed to running out of precision.
    """
    ctx = make_context(prec)
    value = evaluator(ctx)
    limit = ctx.mpf(10) ** (prec - 10)
    quotients: list[int] = []
    q_prev, q = 1, 0
    while True:
        a = int(ctx.floor(value))
        quotients.append(a)
        q_prev, q = q, a * q + q_prev
        if q > qmax:
            return quotients, True
        frac = value - a
        if frac == 0:
            return quotients, True
        if q * q > limit:
            return quotients, False
        value = 1 / frac


def _convergents(quotients: list[int]) -> list[tuple[int, int]]:
    out: list[tuple[int, int]] = []
    p_prev, p = 1, quotients[0]
    q_prev, q = 0, 1
    out.append((p, q))
    for a in quotients[1:]:
        p_prev, p = p, a * p + p_prev
        q_prev, q = q, a * q + q_prev
        out.append((p, q))
    return out


def expand(
    x: AlgebraicReal,
    qmax: int,
    escalation_cap: int = DEFAULT_ESCALATION_CAP,
) -> ConvergentStream:
    """Expand ``x`` until the convergent denominators pass ``qmax``.

    Each expansion is repeated with extra guard digits; only the common prefix
    is used, and the precision doubles until that prefix covers qmax.

    Raises:
        PrecisionError: If the escalation cap is reached first.
    """
    if qmax < 1:
        return ConvergentStream(x, (), ())
    prec = max(x.prec, 2 * len(str(qmax)) + 30)
    for attempt in range(escalation_cap + 1):
        low, low_done = _expand(x.evaluator, prec, qmax)
        high, high_done = _expand(x.evaluator, prec + GUARD_DIGITS, qmax)
        common = 0
        while common < min(len(low), len(high)) and low[common] == high[common]:
            common += 1
        prefix = low[:common]
        if prefix:
            convs = _convergents(prefix)
            covered = convs[-1][1] > qmax or (low_done and high_done and low == high)
            if covered:
                kept = tuple(pq for pq in convs if pq[1] <= qmax)
                log.debug(
                    "%d convergents of %s below %d at %d digits",
                    len(kept),
                    x.descriptor,
                    qmax,
                    prec,
                )
                return ConvergentStream(x, tuple(prefix), kept)
        if attempt < escalation_cap:
            log.warning(
                "continued fraction of %s ambiguous at %d digits, doubling", x.descriptor, prec
            )
        prec *= 2
    raise PrecisionError(
        f"continued fraction of {x.descriptor} not certain up to q = {qmax} "
        f"after {escalation_cap} escalations"
    )


def convergents_up_to(
    x: AlgebraicReal,
    qmax: int,
    escalation_cap: int = DEFAULT_ESCALATION_CAP,
) -> list[tuple[int, int]]:
    """All convergents p/q of ``x`` with q <= qmax.

    Args:
        x: Target number.
        qmax: Denominator bound; 0 gives an empty list.
        escalation_cap: Maximum number of precision doublings.

    Returns:
        The convergents as integer pairs, denominators increasing.

    Raises:
        PrecisionError: If the expansion stays ambiguous.

    Example:
        >>> ctx = make_context(50)
        >>> phi = AlgebraicReal.compute("phi", lambda c: (1 + c.sqrt(5)) / 2, ctx)
        >>> convergents_up_to(phi, 3)
        [(1, 1), (2, 1), (3, 2), (5, 3)]
    """
    return list(expand(x, qmax, escalation_cap).convergents)


def determinant_identity_holds(convergents: list[tuple[int, int]]) -> bool:
    """Whether p_i q_{i-1} - p_{i-1} q_i = +-1 for every consecutive pair."""
    return all(
        abs(p * q0 - p0 * q) == 1
        for (p0, q0), (p, q) in zip(convergents, convergents[1:])
    )
