"""Custom exceptions for the lucaslehmer package."""

from __future__ import annotations

from collections.abc import Iterable, Mapping
from typing import Any

EXIT_OK = 0
EXIT_INVARIANT_BREACH = 2
EXIT_UNSUPPORTED = 3


class LucasLehmerError(Exception):
    """Base exception for all lucaslehmer errors.

    Attributes:
        exit_code: Process exit code the command line maps this error to.
    """

    exit_code = EXIT_INVARIANT_BREACH


class UnsupportedInputError(LucasLehmerError):
    """Exception raised for inputs outside the supported domain.

    Covers excluded indices (n <= 4, n = 6), indices missing from the field
    catalog, inadmissible right-hand sides and malformed configuration.
    """

    exit_code = EXIT_UNSUPPORTED


class InvariantBreachError(LucasLehmerError):
    """Exception raised when an internal cross-check fails.

    Attributes:
        check: Short name of the failed check.
        details: Diagnostic values that explain the failure.
    """

    def __init__(
        self,
        message: str,
        check: str,
        details: Mapping[str, Any] | None = None,
    ) -> None:
        super().__init__(message)
        self.check = check
        self.details = dict(details or {})


class RelationError(InvariantBreachError):
    """Exception raised when a dependence relation fails verification."""

    def __init__(self, message: str, details: Mapping[str, Any] | None = None) -> None:
        super().__init__(message, "relation", details)


class CriterionMismatchError(InvariantBreachError):
    """Exception raised when the form criterion and the direct computation disagree."""

    def __init__(self, message: str, details: Mapping[str, Any] | None = None) -> None:
        super().__init__(message, "criterion", details)


class TableMismatchError(InvariantBreachError):
    """Exception raised when emitted tables differ from the reference tables.

    Attributes:
        missing: Reference entries that were not produced, as (n, entry) pairs.
        unexpected: Produced entries absent from the reference, as (n, entry) pairs.
    """

    def __init__(
        self,
        message: str,
        missing: Iterable[tuple[int, str]],
        unexpected: Iterable[tuple[int, str]],
    ) -> None:
        self.missing = sorted(missing)
        self.unexpected = sorted(unexpected)
        super().__init__(
            message,
            "tables",
            {"missing": self.missing, "unexpected": self.unexpected},
        )


class PrecisionError(LucasLehmerError):
    """Exception raised when the precision escalation cap is reached."""

    pass


class LatticeError(LucasLehmerError):
    """Exception raised for degenerate lattice input (dependent columns)."""

    pass


class HypothesisError(LucasLehmerError):
    """Exception raised when an LLL hypothesis still fails after escalating c0.

    Attributes:
        attempts: Number of c0 values tried.
        last_exponent: Decimal exponent of the last c0 tried.
    """

    def __init__(self, message: str, attempts: int, last_exponent: int) -> None:
        super().__init__(message)
        self.attempts = attempts
        self.last_exponent = last_exponent


class UnitArithmeticError(LucasLehmerError):
    """Exception raised when exact unit arithmetic divides by a non-unit."""

    pass
