"""
Results Module
==============

Formatting and saving of analysis reports, verification summaries and
trajectories.

Key Functions:
--------------
- **report_to_dict**: Machine-readable form of an AnalysisReport.
- **format_report_text**: Human-readable report.
- **save_report**: Write a report as JSON or text, chosen by file suffix.
- **trajectory_to_dataframe** / **save_trajectory_csv**: Trajectory export.
- **verification_to_dict** / **format_verification_text**: Output of ``verify``.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any, Union

import pandas as pd

from .loader import serialize_system
from .model import index_sets
from .simulator import BoundKind, SimulationMode, Trajectory, VerificationSummary
from .theorems import AnalysisReport

EVENTUAL_NOTE = (
    "Theorem conclusions hold for all n > N with N unspecified; "
    "empirical checks use a burn-in in its place."
)
NO_NECESSITY_NOTE = "'unproven' means no theorem case applied, not that the sequence is unbounded."


def report_to_dict(report: AnalysisReport) -> dict[str, Any]:
    """Serialize a report; key order is fixed so output is byte-stable."""
    return {
        "table_version": report.table_version,
        "system": serialize_system(report.system),
        "equations": report.system.describe().splitlines(),
        "index_sets": index_sets(report.system).to_dict(),
        "comparability": report.facts.to_list(),
        "bounds": [b.to_dict() for b in report.bounds],
        "applications": [a.to_dict() for a in report.applications],
        "verdicts": [v.to_dict() for v in report.verdicts],
        "passes": report.passes,
        "notes": [EVENTUAL_NOTE, NO_NECESSITY_NOTE],
    }


def format_report_text(report: AnalysisReport) -> str:
    """Render a report for terminals and text files."""
    lines = ["System:"]
    lines += [f"  {line}" for line in report.system.describe().splitlines()]
    sets = index_sets(report.system).to_dict()
    lines.append("Index sets:")
    lines.append("  " + ", ".join(f"I_{name}={_set_text(v)}" for name, v in sets.items()))

    lines.append("Comparability:")
    if not len(report.facts):
        lines.append("  none")
    for fact in report.facts:
        suffix = f"  ({fact.note})" if fact.note else ""
        lines.append(f"  [{fact.provenance.value}] {fact.describe()}{suffix}")

    lines.append("Theorem applications:")
    if not report.applications:
        lines.append("  none")
    for app in report.applications:
        lines.append(f"  {app.label}: {app.conclusion.value} [{app.rigor.value}]")
        for fact in app.facts_used:
            lines.append(f"    uses {fact.describe()} [{fact.provenance.value}]")
        for bound in app.bounds_used:
            lines.append(f"    uses {bound.sequence} bounded ({bound.source})")
        for decision in app.eta_evidence:
            q = decision.query
            lines.append(f"    eta({q.source} -> {q.target}) = {decision.eta_min}")

    lines.append("Verdicts:")
    for verdict in report.verdicts:
        detail = f" by {', '.join(verdict.by)} [{verdict.rigor.value}]" if verdict.rigor else ""
        lines.append(f"  {verdict.sequence}: {verdict.status}{detail}")
    lines.append(f"Table version {report.table_version}; {EVENTUAL_NOTE}")
    return "\n".join(lines) + "\n"


def _set_text(members: list[int]) -> str:
    return "{" + ",".join(str(m) for m in members) + "}"


def save_report(report: AnalysisReport, path: Union[str, Path]) -> None:
    """Write ``report`` to ``path``: ``.json`` gets the document, anything else text."""
    path = Path(path)
    if path.suffix.lower() == ".json":
        path.write_text(json.dumps(report_to_dict(report), indent=2) + "\n", encoding="utf-8")
    else:
        path.write_text(format_report_text(report), encoding="utf-8")


# =============================================================================
# Trajectories
# =============================================================================


def trajectory_to_dataframe(traj: Trajectory) -> pd.DataFrame:
    """
    One row per generated index.

    Columns ``n, x, y``; exact trajectories add ``x_num, x_den, y_num, y_den``.
    """
    data: dict[str, Any] = {
        "n": range(1, len(traj) + 1),
        "x": traj.as_float("x"),
        "y": traj.as_float("y"),
    }
    if traj.mode is SimulationMode.EXACT:
        for name in ("x", "y"):
            values = traj.values(name)
            data[f"{name}_num"] = pd.Series([v.numerator for v in values], dtype=object)
            data[f"{name}_den"] = pd.Series([v.denominator for v in values], dtype=object)
    return pd.DataFrame(data)


def save_trajectory_csv(traj: Trajectory, path: Union[str, Path]) -> None:
    """Write the trajectory as CSV with 17 significant digits."""
    trajectory_to_dataframe(traj).to_csv(path, index=False, float_format="%.17g")


# =============================================================================
# Verification
# =============================================================================


def verification_to_dict(summary: VerificationSummary) -> dict[str, Any]:
    return {
        "ok": summary.ok,
        "violations": list(summary.violations),
        "conflicts": list(summary.conflicts),
        "verdict_counts": {
            seq: {kind.value: summary.count(seq, kind) for kind in BoundKind} for seq in ("x", "y")
        },
        "trials": [
            {
                "index": t.index,
                "status": str(t.status),
                "x": t.verdict("x").to_dict(),
                "y": t.verdict("y").to_dict(),
                "certificates": [
                    {
                        "fact": f.describe(),
                        "provenance": f.provenance.value,
                        "result": str(c),
                        "checked_steps": c.checked_steps,
                        "partial": c.partial,
                    }
                    for f, c in t.certificates
                ],
            }
            for t in summary.trials
        ],
    }


def format_verification_text(summary: VerificationSummary) -> str:
    lines = [f"Trials: {len(summary.trials)}"]
    for seq in ("x", "y"):
        counts = ", ".join(f"{kind.value} {summary.count(seq, kind)}" for kind in BoundKind)
        lines.append(f"  {seq}: {counts}")
    checked = sum(len(t.certificates) for t in summary.trials)
    partial = sum(c.partial for t in summary.trials for _, c in t.certificates)
    lines.append(
        f"Certificate checks: {checked} ({partial} partial), violations: {len(summary.violations)}"
    )
    lines += [f"  {v}" for v in summary.violations]
    if summary.conflicts:
        lines.append(f"Conflicts: {len(summary.conflicts)}")
        lines += [f"  {c}" for c in summary.conflicts]
    lines.append("Result: " + ("consistent" if summary.ok else "violations found"))
    return "\n".join(lines) + "\n"
