"""
Bundled Example Corpus
======================

Ten example systems with every displayed parameter set to 1, stored as system
documents, and ``expected.yaml`` listing the derivation each must reproduce:
comparability facts, theorem applications, eta values and verdicts.

Key Functions:
    - list_examples: Names and descriptions of the bundled systems
    - load_example: Parse one bundled document
    - check_example / check_corpus: Compare an analysis with its expected derivation
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass
from decimal import Decimal
from importlib import resources
from typing import Any, Optional

import yaml

from ..comparability import Orientation, Shape
from ..loader import SystemDocument, parse_system
from ..model import to_fraction
from ..theorems import AnalysisReport, analyze

logger = logging.getLogger(__name__)


def _corpus_path() -> resources.abc.Traversable:
    return resources.files("ratbound.corpus")


def example_names() -> list[str]:
    return sorted(
        f.name[: -len(".json")] for f in _corpus_path().iterdir() if f.name.endswith(".json")
    )


def load_example(name: str) -> SystemDocument:
    """Parse the bundled document ``name`` (e.g. ``"example03"``).

    Raises:
        FileNotFoundError: If there is no such example.
    """
    resource = _corpus_path().joinpath(f"{name}.json")
    if not resource.is_file():
        raise FileNotFoundError(f"No bundled example named {name!r}")
    return parse_system(json.loads(resource.read_text(encoding="utf-8"), parse_float=Decimal))


def list_examples() -> list[tuple[str, str]]:
    return [(name, load_example(name).description or "") for name in example_names()]


def expected_derivations() -> dict[str, dict[str, Any]]:
    data = yaml.safe_load(_corpus_path().joinpath("expected.yaml").read_text(encoding="utf-8"))
    examples: dict[str, dict[str, Any]] = data["examples"]
    return examples


@dataclass(frozen=True)
class CorpusResult:
    """Outcome of checking one example: what was found and what was missing."""

    name: str
    found: tuple[str, ...]
    missing: tuple[str, ...]

    @property
    def ok(self) -> bool:
        return not self.missing


def check_example(
    name: str, expected: dict[str, Any], report: Optional[AnalysisReport] = None
) -> CorpusResult:
    """Check one example's analysis against its expected derivation."""
    if report is None:
        document = load_example(name)
        report = analyze(document.system, document.facts, document.bounds)
    found: list[str] = []
    missing: list[str] = []

    for entry in expected.get("facts", []):
        fact = report.facts.get(Shape(entry["shape"]), Orientation(entry["direction"]))
        label = f"{entry['shape']} {entry['direction']}"
        ok = fact is not None
        if ok and fact is not None:
            if "provenance" in entry and fact.provenance.value != entry["provenance"]:
                ok = False
            if entry.get("strict") and not fact.strict:
                ok = False
            if "constants" in entry:
                wanted = tuple(to_fraction(c) for c in entry["constants"])
                ok = ok and fact.constants == wanted
        (found if ok else missing).append(f"fact {label}")

    for entry in expected.get("applications", []):
        orientation = Orientation(entry["orientation"])
        label = f"T{entry['theorem']}" + (f"({entry['case']})" if entry.get("case") else "")
        if orientation is Orientation.SWAPPED:
            label += " swapped"
        ok = report.has_application(entry["theorem"], entry.get("case"), orientation)
        (found if ok else missing).append(label)

    decisions = [d for app in report.applications for d in app.eta_evidence]
    for entry in expected.get("eta", []):
        label = f"eta({entry['source']} -> {entry['target']}) = {entry['eta_min']}"
        ok = any(
            list(d.query.source.sorted()) == entry["source"]
            and list(d.query.target.sorted()) == entry["target"]
            and d.eta_min == entry["eta_min"]
            for d in decisions
        )
        (found if ok else missing).append(label)

    for sequence in expected.get("bounded", []):
        ok = report.verdict(sequence).proven_bounded
        (found if ok else missing).append(f"{sequence} bounded")
    for sequence in expected.get("unproven", []):
        ok = not report.verdict(sequence).proven_bounded
        (found if ok else missing).append(f"{sequence} unproven")

    if missing:
        logger.info("%s: missing %s", name, ", ".join(missing))
    return CorpusResult(name, tuple(found), tuple(missing))


def check_corpus() -> list[CorpusResult]:
    """Check every bundled example in name order."""
    expected = expected_derivations()
    return [check_example(name, expected[name]) for name in sorted(expected)]
