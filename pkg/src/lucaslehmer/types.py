"""Type definitions for the lucaslehmer package."""

from __future__ import annotations

from typing import Any, Literal, TypedDict

# mpmath values carry no static types; this alias marks where one is expected.
MPReal = Any

SequenceKind = Literal["lucas", "lehmer", "degenerate"]

Provenance = Literal["small-y", "convergent", "quartic", "pullback"]

OutputFormat = Literal["text", "json"]


class LedgerRecord(TypedDict, total=False):
    """Constants of one solved Thue equation, stage by stage.

    Attributes:
        n: Index of the cyclotomic form.
        d: Degree of the form.
        Y1: Direct-search threshold for |y|.
        Y2p: Threshold above which the linear form is nonzero and small.
        dOverC5: d / C5.
        C6: Constant of the exponential upper bound for |Lambda|.
        H: Product of modified heights.
        C7: Twice the Baker-Wustholz constant K4.
        C9: Initial upper bound for A.
        d1: Decimal exponent of c0 in the first reduction.
        A1: Bound for A after the first reduction.
        d2: Decimal exponent of c0 in the second reduction.
        A2: Bound for A after the second reduction.
        Y3: Final search bound for |y|.
        X4: Largest |x| over all solutions.
        Y4: Largest |y| over all solutions.
        time: Wall time in seconds.
    """

    n: int
    d: int
    Y1: int
    Y2p: int
    dOverC5: float
    C6: str
    H: float
    C7: str
    C9: str
    d1: int
    A1: int
    d2: int
    A2: int
    Y3: str
    X4: int
    Y4: int
    time: float


class SolutionRecord(TypedDict):
    """One solution of F_n(x, y) = m.

    Attributes:
        x: First coordinate.
        y: Second coordinate.
        m: Right-hand side it satisfies.
        provenance: How the solution was found.
    """

    x: int
    y: int
    m: int
    provenance: Provenance


class CandidateRecord(TypedDict):
    """A sequence pair reconstructed from a solution.

    Attributes:
        x: Value of alpha^2 + beta^2.
        y: Value of alpha * beta.
        kind: Lucas, Lehmer or degenerate.
        pair: Surd notation for alpha, beta.
        valid: Whether (alpha + beta)^2 and alpha * beta are coprime.
    """

    x: int
    y: int
    kind: SequenceKind
    pair: str
    valid: bool


class SolveReport(TypedDict, total=False):
    """Report for one index n.

    Attributes:
        n: Index.
        route: Which solver produced the solutions.
        core: Index the solutions were pulled back from, if any.
        ledger: Constants of the Thue equation, when one was solved.
        solutions: All solutions, sorted.
        candidates: Canonical non-degenerate sequence pairs.
        filtered: Audit trail of discarded solutions.
    """

    n: int
    route: str
    core: int
    ledger: LedgerRecord
    solutions: list[SolutionRecord]
    candidates: list[CandidateRecord]
    filtered: list[dict[str, Any]]


class ScanReport(TypedDict):
    """Report of the conjecture scan.

    Attributes:
        nmin: First index scanned.
        nmax: Last index scanned.
        box: Bound on max(|x|, |y|).
        hits: Qualifying solutions found, by index.
        checked: Number of candidate pairs evaluated.
    """

    nmin: int
    nmax: int
    box: int
    hits: dict[int, list[tuple[int, int]]]
    checked: int
