"""Run orchestration: route each index to its solver and assemble the reports."""

from __future__ import annotations

import logging
import sys
import threading
from collections.abc import Iterable
from concurrent.futures import ThreadPoolExecutor
from typing import Any, Literal

if sys.version_info >= (3, 11):
    from typing import Self
else:
    from typing_extensions import Self

from .config import RunConfig
from .exceptions import InvariantBreachError, UnsupportedInputError
from .forms import (
    CoreReduction,
    build_form,
    form_target,
    reduce_even,
    reduce_to_core,
    special_quartic_form,
)
from .numberfield import CATALOG_INDICES, QUARTIC_KEY
from .primdiv import (
    LEHMER_RANGE,
    LUCAS_RANGE,
    SequenceTable,
    candidates_for,
    check_primitive_divisor,
    emit_tables,
)
from .smalln import SMALL_INDICES, solve_case
from .thue import ThueResult, scan, solve_thue
from .types import Provenance, ScanReport, SolutionRecord, SolveReport

log = logging.getLogger(__name__)

Route = Literal["smalln", "thue", "even", "power"]

TABLE_INDICES = tuple(n for n in range(5, 31) if n != 6)

_ThueKey = tuple[str, int]


def route_for(n: int) -> tuple[Route, int | None]:
    """Which solver handles index n, and the core index for pulled-back routes.

    Raises:
        UnsupportedInputError: If n is excluded or no route reaches it.

    Example:
        >>> route_for(14), route_for(27)
        (('even', 7), ('power', 9))
    """
    form_target(n)
    if n in SMALL_INDICES:
        return "smalln", None
    if n in CATALOG_INDICES:
        return "thue", None
    if n % 4 == 2 and (n // 2) > 3:
        return "even", n // 2
    try:
        reduction = reduce_to_core(n)
    except UnsupportedInputError:
        raise UnsupportedInputError(
            f"n = {n} is outside the unit catalog and has no smaller core; use scan"
        ) from None
    return "power", reduction.m


def pull_back(
    reduction: CoreReduction, core_solutions: Iterable[tuple[int, int, int]]
) -> list[tuple[int, int, int]]:
    """Lift solutions (x, y, m) of the core form to the form of ``reduction.n``.

    Raises:
        InvariantBreachError: If a lifted pair fails exact re-verification.
    """
    form = build_form(reduction.n)
    lifted: set[tuple[int, int, int]] = set()
    for xc, yc, m in core_solutions:
        for x, y in reduction.pull_back(xc, yc):
            if form.evaluate(x, y) != m or reduction.apply(x, y) != (xc, yc):
                raise InvariantBreachError(
                    f"pulled-back ({x}, {y}) does not solve F_{reduction.n} = {m}",
                    "pullback",
                    {"core": reduction.m, "core_pair": (xc, yc)},
                )
            lifted.add((x, y, m))
    return sorted(lifted)


class Enumerator:
    """Solve the equations behind every index and build the tables.

    Solved Thue equations are cached, so an index and the indices pulled back
    from it share one computation. Independent indices run on a thread pool.

    Args:
        config: Run configuration. Defaults to :class:`RunConfig` defaults.

    Example:
        >>> from lucaslehmer import Enumerator
        >>>
        >>> with Enumerator() as enum:
        ...     report = enum.solve(14)
        >>> report["route"], report["core"]
        ('even', 7)
    """

    def __init__(self, config: RunConfig | None = None) -> None:
        self._config = config or RunConfig()
        self._pool = ThreadPoolExecutor(
            max_workers=self._config.threads, thread_name_prefix="lucaslehmer"
        )
        self._results: dict[_ThueKey, ThueResult] = {}
        self._locks: dict[_ThueKey, threading.Lock] = {}
        self._guard = threading.Lock()

    @property
    def config(self) -> RunConfig:
        return self._config

    def close(self) -> None:
        """Shut the worker pool down."""
        self._pool.shutdown(wait=True)

    def __enter__(self) -> Self:
        return self

    def __exit__(self, *args: Any) -> None:
        self.close()

    def thue(self, n: int, *, quartic: bool = False) -> ThueResult:
        """The solved Thue equation of F_n, or of the n = 12 quartic, cached."""
        key: _ThueKey = ("quartic" if quartic else "cyclotomic", n)
        with self._guard:
            lock = self._locks.setdefault(key, threading.Lock())
        with lock:
            if key not in self._results:
                form = special_quartic_form() if quartic else build_form(n)
                log.info("solving Thue equation %s for n = %d", key[0], n)
                self._results[key] = solve_thue(form, self._config)
            return self._results[key]

    def _solutions(self, n: int) -> tuple[list[tuple[int, int, int, Provenance]], ThueResult | None]:
        route, core = route_for(n)
        if route == "smalln":
            ledger_source = None
            found: list[tuple[int, int, int, Provenance]] = []
            for k in sorted(form_target(n).rhs_values):
                if n == QUARTIC_KEY and k == -2:
                    ledger_source = self.thue(QUARTIC_KEY, quartic=True)
                    pairs = solve_case(
                        n, k, config=self._config, thue_solutions=ledger_source.solutions[1].pairs
                    )
                else:
                    pairs = solve_case(n, k, config=self._config)
                found.extend((x, y, k, "quartic") for x, y in pairs)
            return sorted(found), ledger_source
        if route == "thue":
            result = self.thue(n)
            return [
                (x, y, m, sols.provenance[(x, y)])
                for m, sols in sorted(result.solutions.items())
                for x, y in sols.pairs
            ], result
        assert core is not None
        reduction = reduce_even(core) if route == "even" else reduce_to_core(n)
        core_found, core_result = self._solutions(core)
        lifted = pull_back(reduction, [(x, y, m) for x, y, m, _ in core_found])
        return [(x, y, m, "pullback") for x, y, m in lifted], core_result

    def solve(self, n: int, m: int | None = None) -> SolveReport:
        """All solutions of F_n(X, Y) = m for the admissible m, with their candidates.

        Args:
            n: Index, 4 < n <= 30 and n != 6.
            m: Restrict to one right-hand side.

        Returns:
            The report: route, ledger, solutions, canonical candidates and
            the audit trail of dropped solutions.

        Raises:
            UnsupportedInputError: If n or m is not admissible.
            InvariantBreachError: If any cross-check fails.
        """
        route, core = route_for(n)
        if m is not None and m not in form_target(n).rhs_values:
            raise UnsupportedInputError(f"m = {m} is not admissible for n = {n}")
        found, result = self._solutions(n)
        if m is not None:
            found = [item for item in found if item[2] == m]
        report = candidates_for(n, [(x, y) for x, y, _, _ in found])
        if self._config.check_direct:
            for cand in report.candidates:
                if n in LUCAS_RANGE and cand.kind == "lucas":
                    check_primitive_divisor(cand, n, "lucas")
                if n in LEHMER_RANGE:
                    check_primitive_divisor(cand, n, "lehmer")
        out = SolveReport(
            n=n,
            route=route,
            solutions=[SolutionRecord(x=x, y=y, m=k, provenance=p) for x, y, k, p in found],
            candidates=[c.as_record() for c in report.candidates],
            filtered=list(report.filtered),
        )
        if core is not None:
            out["core"] = core
        if result is not None:
            out["ledger"] = result.ledger.as_record()
        log.info("n = %d via %s: %d solutions, %d candidates", n, route, len(found), len(report.candidates))
        return out

    def solve_many(self, ns: Iterable[int]) -> list[SolveReport]:
        """Solve several indices on the pool; reports come back in ascending n."""
        indices = sorted(set(ns))
        futures = {n: self._pool.submit(self.solve, n) for n in indices}
        return [futures[n].result() for n in indices]

    def tables(self) -> tuple[SequenceTable, SequenceTable]:
        """Solve every index 4 < n <= 30 and build the Lucas and Lehmer tables.

        Raises:
            TableMismatchError: If a row differs from the reference tables.
        """
        reports = self.solve_many(self._config.n_list or TABLE_INDICES)
        solved = {r["n"]: [(s["x"], s["y"]) for s in r["solutions"]] for r in reports}
        return emit_tables(solved, check_direct=self._config.check_direct)

    def scan(self, nmin: int, nmax: int, box: int | None = None) -> ScanReport:
        """Bounded search for qualifying solutions beyond the solved range."""
        return scan(nmin, nmax, box or self._config.box, self._config)
