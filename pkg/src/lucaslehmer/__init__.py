"""
lucaslehmer
===========

Lucas and Lehmer pairs whose n-th term has no primitive divisor, for 4 < n <= 30.

Basic Usage:
    >>> from lucaslehmer import Enumerator
    >>>
    >>> with Enumerator() as enum:
    ...     report = enum.solve(7)
    >>> [c["pair"] for c in report["candidates"]]

Tables:
    >>> with Enumerator() as enum:
    ...     lucas, lehmer = enum.tables()
    >>> print(lehmer.to_text())

Single pairs:
    >>> from lucaslehmer import check_primitive_divisor, reconstruct
    >>>
    >>> check_primitive_divisor(reconstruct(3, -1), 12)
    False
"""

from .config import RunConfig, load_config, parse_config
from .engine import Enumerator, route_for
from .exceptions import (
    CriterionMismatchError,
    HypothesisError,
    InvariantBreachError,
    LatticeError,
    LucasLehmerError,
    PrecisionError,
    RelationError,
    TableMismatchError,
    UnitArithmeticError,
    UnsupportedInputError,
)
from .forms import BinaryForm, build_form, form_target, reduce_even, reduce_to_core
from .primdiv import (
    LEHMER_TABLE,
    LUCAS_TABLE,
    SequenceCandidate,
    SequenceTable,
    check_primitive_divisor,
    direct_check,
    emit_tables,
    reconstruct,
    render,
)
from .thue import ThueResult, solve_thue
from .types import CandidateRecord, LedgerRecord, ScanReport, SolutionRecord, SolveReport

__version__ = "1.0.0"

__all__ = [
    # Orchestration
    "Enumerator",
    "route_for",
    # Configuration
    "RunConfig",
    "load_config",
    "parse_config",
    # Forms and solvers
    "BinaryForm",
    "build_form",
    "form_target",
    "reduce_even",
    "reduce_to_core",
    "ThueResult",
    "solve_thue",
    # Sequences
    "SequenceCandidate",
    "SequenceTable",
    "LUCAS_TABLE",
    "LEHMER_TABLE",
    "check_primitive_divisor",
    "direct_check",
    "emit_tables",
    "reconstruct",
    "render",
    # Exceptions
    "LucasLehmerError",
    "UnsupportedInputError",
    "InvariantBreachError",
    "RelationError",
    "CriterionMismatchError",
    "TableMismatchError",
    "PrecisionError",
    "LatticeError",
    "HypothesisError",
    "UnitArithmeticError",
    # Types
    "CandidateRecord",
    "LedgerRecord",
    "ScanReport",
    "SolutionRecord",
    "SolveReport",
]
