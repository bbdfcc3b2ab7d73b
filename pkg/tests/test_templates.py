from __future__ import annotations

import pytest

from ratbound.templates import (
    SUPPORTED_SCHEMA_VERSIONS,
    get_template_metadata,
    list_template_files,
    load_template_file,
)


class TestTemplates:
    """Bundled YAML data."""

    def test_list_template_files(self) -> None:
        """Both bundled files are found."""
        assert list_template_files() == ["simulation_defaults.yaml", "theorem_table.yaml"]

    def test_schema_versions(self) -> None:
        """Every bundled file declares a supported schema version."""
        for name in list_template_files():
            assert str(load_template_file(name)["schema_version"]) in SUPPORTED_SCHEMA_VERSIONS

    def test_theorem_table_rows(self) -> None:
        """The table lists 36 rows covering theorems 1 to 23."""
        rows = load_template_file("theorem_table.yaml")["rows"]
        assert len(rows) == 36
        assert {row["id"] for row in rows} == set(range(1, 24))

    def test_metadata(self) -> None:
        """Metadata names the sections besides version and description."""
        meta = get_template_metadata("simulation_defaults.yaml")
        assert meta["schema_version"] == "1.0"
        assert meta["sections"] == ["settings"]

    def test_missing_file(self) -> None:
        """Unknown names raise FileNotFoundError."""
        with pytest.raises(FileNotFoundError):
            load_template_file("nonexistent.yaml")
