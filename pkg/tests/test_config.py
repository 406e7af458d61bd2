"""Tests for run configuration."""

from pathlib import Path

import pytest

from lucaslehmer.config import DEFAULT_BOX, DEFAULT_PRECISION, RunConfig, load_config, parse_config
from lucaslehmer.exceptions import EXIT_UNSUPPORTED, UnsupportedInputError


class TestRunConfig:
    """Tests for the RunConfig dataclass."""

    def test_defaults(self) -> None:
        """Test the default values."""
        config = RunConfig()

        assert config.precision == DEFAULT_PRECISION
        assert config.box == DEFAULT_BOX
        assert config.threads == 1
        assert config.n_list == ()
        assert config.output is None
        assert config.output_format == "text"
        assert not config.check_direct

    def test_precision_floor(self) -> None:
        """Test that precision below 50 digits is rejected."""
        with pytest.raises(UnsupportedInputError, match="at least 50"):
            RunConfig(precision=40)

    def test_rejects_bad_threads(self) -> None:
        """Test that zero threads are rejected."""
        with pytest.raises(UnsupportedInputError, match="threads"):
            RunConfig(threads=0)

    def test_rejects_unknown_format(self) -> None:
        """Test that output formats other than text and json are rejected."""
        with pytest.raises(UnsupportedInputError, match="output format"):
            RunConfig(output_format="xml")  # type: ignore[arg-type]

    def test_merged_skips_none(self) -> None:
        """Test that None overrides leave the base value alone."""
        base = RunConfig(precision=300)
        merged = base.merged(precision=None, threads=4)

        assert merged.precision == 300
        assert merged.threads == 4
        assert base.threads == 1

    def test_merged_rejects_unknown_keys(self) -> None:
        """Test that merging an unknown key fails."""
        with pytest.raises(UnsupportedInputError, match="unknown config keys: colour"):
            RunConfig().merged(colour="red")

    def test_merged_revalidates(self) -> None:
        """Test that merged copies are validated again."""
        with pytest.raises(UnsupportedInputError):
            RunConfig().merged(box=0)

    def test_unsupported_exit_code(self) -> None:
        """Test that configuration errors map to the unsupported-input exit code."""
        with pytest.raises(UnsupportedInputError) as excinfo:
            RunConfig(precision=10)

        assert excinfo.value.exit_code == EXIT_UNSUPPORTED


class TestParseConfig:
    """Tests for the key = value configuration format."""

    def test_parse_values(self) -> None:
        """Test parsing every kind of value."""
        config = parse_config(
            """
            # run settings
            precision = 250
            n_list = 7, 9 13
            check_direct = yes
            output_format = json   # for the regression job
            output = tables.json
            """
        )

        assert config.precision == 250
        assert config.n_list == (7, 9, 13)
        assert config.check_direct is True
        assert config.output_format == "json"
        assert config.output == Path("tables.json")

    def test_parse_on_base(self) -> None:
        """Test that parsed values are layered over a base configuration."""
        config = parse_config("box = 50", RunConfig(threads=3))

        assert config.box == 50
        assert config.threads == 3

    def test_bad_integer(self) -> None:
        """Test that a non-integer precision is rejected."""
        with pytest.raises(UnsupportedInputError, match="precision expects an integer"):
            parse_config("precision = high")

    def test_bad_boolean(self) -> None:
        """Test that an unrecognised boolean is rejected."""
        with pytest.raises(UnsupportedInputError, match="dump_bases expects a boolean"):
            parse_config("dump_bases = maybe")

    def test_missing_equals(self) -> None:
        """Test that a line without '=' is rejected with its line number."""
        with pytest.raises(UnsupportedInputError, match="line 2"):
            parse_config("box = 5\nprecision 100")

    def test_unknown_key(self) -> None:
        """Test that unknown keys are rejected."""
        with pytest.raises(UnsupportedInputError, match="unknown config key"):
            parse_config("colour = red")


class TestLoadConfig:
    """Tests for loading configuration files."""

    def test_load(self, tmp_path: Path) -> None:
        """Test loading a configuration file from disk."""
        path = tmp_path / "run.conf"
        path.write_text("precision = 120\nthreads = 2\n", encoding="utf-8")

        config = load_config(path)

        assert config.precision == 120
        assert config.threads == 2

    def test_missing_file(self, tmp_path: Path) -> None:
        """Test that a missing file raises UnsupportedInputError."""
        with pytest.raises(UnsupportedInputError, match="cannot read config file"):
            load_config(tmp_path / "absent.conf")
