"""Run configuration for the lucaslehmer package."""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

from .exceptions import UnsupportedInputError
from .types import OutputFormat

DEFAULT_PRECISION = 200
MIN_PRECISION = 50
DEFAULT_BOX = 10_000
DEFAULT_D1_MARGIN = 10
DEFAULT_ESCALATION_CAP = 5
DEFAULT_THREADS = 1

_INT_KEYS = ("precision", "box", "d1_margin", "escalation_cap", "threads")
_BOOL_KEYS = ("check_direct", "dump_bases")
_TRUE = {"1", "true", "yes", "on"}
_FALSE = {"0", "false", "no", "off"}


@dataclass(frozen=True)
class RunConfig:
    """Settings shared by every computation of one run.

    Args:
        precision: Working precision in decimal digits. At least 50.
        n_list: Indices to process; empty means "all in scope".
        box: Bound on max(|x|, |y|) for scans and oracle searches.
        d1_margin: Extra decimal digits added to the first c0 exponent.
        escalation_cap: Maximum number of times c0 or the precision is escalated.
        output: Output file, or None for stdout.
        output_format: "text" or "json".
        threads: Worker threads for independent equations.
        check_direct: Verify every candidate against the sequence definition.
        dump_bases: Log the integer LLL bases at DEBUG level.

    Raises:
        UnsupportedInputError: If a field is out of range.
    """

    precision: int = DEFAULT_PRECISION
    n_list: tuple[int, ...] = field(default_factory=tuple)
    box: int = DEFAULT_BOX
    d1_margin: int = DEFAULT_D1_MARGIN
    escalation_cap: int = DEFAULT_ESCALATION_CAP
    output: Path | None = None
    output_format: OutputFormat = "text"
    threads: int = DEFAULT_THREADS
    check_direct: bool = False
    dump_bases: bool = False

    def __post_init__(self) -> None:
        if self.precision < MIN_PRECISION:
            raise UnsupportedInputError(
                f"precision must be at least {MIN_PRECISION} digits, got {self.precision}"
            )
        if self.box < 1:
            raise UnsupportedInputError(f"box must be at least 1, got {self.box}")
        if self.threads < 1:
            raise UnsupportedInputError(f"threads must be at least 1, got {self.threads}")
        if self.escalation_cap < 0:
            raise UnsupportedInputError("escalation_cap must be nonnegative")
        if self.output_format not in ("text", "json"):
            raise UnsupportedInputError(f"unknown output format {self.output_format!r}")

    def merged(self, **overrides: Any) -> RunConfig:
        """Return a copy with the non-None overrides applied.

        Args:
            **overrides: Field values, typically parsed command-line flags.

        Returns:
            A new validated RunConfig.

        Example:
            >>> base = RunConfig(precision=300)
            >>> base.merged(threads=4, precision=None).precision
            300
        """
        names = {f.name for f in dataclasses.fields(self)}
        unknown = set(overrides) - names
        if unknown:
            raise UnsupportedInputError(f"unknown config keys: {', '.join(sorted(unknown))}")
        changes = {key: value for key, value in overrides.items() if value is not None}
        if "n_list" in changes:
            changes["n_list"] = tuple(changes["n_list"])
        return dataclasses.replace(self, **changes)


def _parse_value(key: str, raw: str) -> Any:
    if key in _INT_KEYS:
        try:
            return int(raw)
        except ValueError as exc:
            raise UnsupportedInputError(f"{key} expects an integer, got {raw!r}") from exc
    if key in _BOOL_KEYS:
        lowered = raw.lower()
        if lowered in _TRUE:
            return True
        if lowered in _FALSE:
            return False
        raise UnsupportedInputError(f"{key} expects a boolean, got {raw!r}")
    if key == "n_list":
        try:
            return tuple(int(part) for part in raw.replace(",", " ").split())
        except ValueError as exc:
            raise UnsupportedInputError(f"n_list expects integers, got {raw!r}") from exc
    if key == "output":
        return Path(raw) if raw else None
    if key == "output_format":
        return raw
    raise UnsupportedInputError(f"unknown config key {key!r}")


def parse_config(text: str, base: RunConfig | None = None) -> RunConfig:
    """Parse flat ``key = value`` text on top of ``base``.

    Blank lines and ``#`` comments are ignored. Unknown keys are rejected.
    """
    values: dict[str, Any] = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.split("#", 1)[0].strip()
        if not stripped:
            continue
        if "=" not in stripped:
            raise UnsupportedInputError(f"config line {lineno}: expected key = value")
        key, raw = (part.strip() for part in stripped.split("=", 1))
        values[key] = _parse_value(key, raw)
    return (base or RunConfig()).merged(**values)


def load_config(path: str | Path) -> RunConfig:
    """Load a RunConfig from a flat ``key = value`` file.

    Args:
        path: Path of the configuration file.

    Returns:
        The parsed configuration, defaults filled in.

    Raises:
        UnsupportedInputError: If the file is malformed or holds an invalid value.
    """
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise UnsupportedInputError(f"cannot read config file {path}: {exc}") from exc
    return parse_config(text)
