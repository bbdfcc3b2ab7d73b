"""
Template Loading Module
=======================

Loads the declarative data bundled with ratbound: the boundedness hypothesis
table and the simulator defaults. Both are YAML files carrying a
``schema_version`` and are read through ``importlib.resources`` so they work
from wheels and zip imports alike.
"""

from __future__ import annotations

import warnings
from importlib import resources
from typing import Any

import yaml

SUPPORTED_SCHEMA_VERSIONS = ("1.0",)


def _get_templates_path() -> resources.abc.Traversable:
    """Get the path to the templates directory using importlib.resources."""
    return resources.files("ratbound.templates")


def list_template_files() -> list[str]:
    """
    List all bundled template YAML files.

    Returns:
        Sorted list of template file names (without path).
    """
    templates_dir = _get_templates_path()
    return sorted(
        f.name for f in templates_dir.iterdir() if f.is_file() and f.name.endswith(".yaml")
    )


def load_template_file(filename: str) -> dict[str, Any]:
    """
    Load a single template file and return its parsed contents.

    Args:
        filename: Name of the template file (e.g., "theorem_table.yaml").

    Returns:
        Parsed YAML contents as a dictionary.

    Raises:
        FileNotFoundError: If the template file doesn't exist.
        yaml.YAMLError: If the YAML is malformed.
    """
    template_file = _get_templates_path().joinpath(filename)
    if not template_file.is_file():
        raise FileNotFoundError(f"Template file not found: {filename}")

    result = yaml.safe_load(template_file.read_text(encoding="utf-8"))
    if not isinstance(result, dict):
        raise yaml.YAMLError(f"Template file {filename} does not contain a mapping")

    version = str(result.get("schema_version", "unknown"))
    if version not in SUPPORTED_SCHEMA_VERSIONS:
        warnings.warn(
            f"Template file {filename} has unsupported schema_version {version!r}",
            UserWarning,
            stacklevel=2,
        )
    return result


def get_template_metadata(filename: str) -> dict[str, Any]:
    """
    Get metadata from a template file (schema_version, description, top-level sections).

    Args:
        filename: Name of the template file.

    Returns:
        Dictionary containing metadata fields.
    """
    file_data = load_template_file(filename)
    return {
        "schema_version": file_data.get("schema_version", "unknown"),
        "description": file_data.get("description", ""),
        "sections": [k for k in file_data if k not in ("schema_version", "description")],
    }
