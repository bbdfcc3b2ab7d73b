"""
Boundedness Theorem Engine
==========================

Evaluates the declarative hypothesis table (``templates/theorem_table.yaml``)
against a system, its comparability facts and any boundedness already known,
and collects every theorem case that applies.

Each row is evaluated on the system itself (DIRECT) and on its swap (SWAPPED),
with conclusions mapped back to the original variables. Rows that need a prior
bound on y (theorems 9 and 11) can be enabled by other applications, so the
engine iterates to a fixed point.

Key Classes:
    - SetExpr: parsed set expression over the eight index sets
    - TheoremHypotheses: one transcribed theorem case
    - TheoremTable: versioned, immutable collection of rows
    - BoundednessFact: a known bound on one sequence and how far it can be trusted
    - TheoremApplication: a row that holds, with the evidence that made it hold
    - AnalysisReport: everything :func:`analyze` found

Example:
    >>> report = analyze(system)
    >>> report.verdict("x").proven_bounded
    True
"""

from __future__ import annotations

import logging
import re
import warnings
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Any, Iterable, Optional, Sequence, Union

from .comparability import (
    ComparabilityFact,
    ComparabilityFacts,
    Orientation,
    Rigor,
    Shape,
    derive_comparability,
)
from .errors import PreconditionError, TableError
from .eta import EtaDecision, EtaQuery, eta_decide
from .model import (
    CONSTANT_GROUPS,
    VECTOR_GROUPS,
    IndexSet,
    IndexSets,
    RationalSystem,
    index_sets,
    swap_system,
)
from .templates import load_template_file

logger = logging.getLogger(__name__)

CASE_ORDER = {None: 0, "i": 1, "ii": 2, "iii": 3}
MAX_PASSES = 16

# =============================================================================
# Set expressions
# =============================================================================

_TOKEN = re.compile(r"\s*(?:([A-Za-z]+)|(\|)|(-)|(\()|(\)))")

Ast = Union[tuple[str, str], tuple[str, Any, Any]]


def _tokenize(text: str) -> list[str]:
    tokens: list[str] = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        match = _TOKEN.match(text, pos)
        if match is None:
            raise TableError(f"Unexpected character in set expression {text!r} at {pos}")
        tokens.append(next(g for g in match.groups() if g is not None))
        pos = match.end()
    return tokens


class _Parser:
    """Recursive descent: ``expr := term (('|' | '-') term)*``, ``term := NAME | '(' expr ')'``."""

    def __init__(self, text: str) -> None:
        self.text = text
        self.tokens = _tokenize(text)
        self.pos = 0

    def parse(self) -> Ast:
        if not self.tokens:
            raise TableError("Empty set expression")
        ast = self._expr()
        if self.pos != len(self.tokens):
            raise TableError(f"Trailing tokens in set expression {self.text!r}")
        return ast

    def _peek(self) -> Optional[str]:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def _expr(self) -> Ast:
        left = self._term()
        while self._peek() in ("|", "-"):
            op = self.tokens[self.pos]
            self.pos += 1
            left = (op, left, self._term())
        return left

    def _term(self) -> Ast:
        token = self._peek()
        if token is None:
            raise TableError(f"Set expression {self.text!r} ends unexpectedly")
        self.pos += 1
        if token == "(":
            inner = self._expr()
            if self._peek() != ")":
                raise TableError(f"Unbalanced parentheses in {self.text!r}")
            self.pos += 1
            return inner
        if token not in VECTOR_GROUPS:
            raise TableError(f"Unknown index set {token!r} in {self.text!r}")
        return ("name", token)


@dataclass(frozen=True)
class SetExpr:
    """A set expression such as ``beta|(gamma-C)``."""

    text: str
    ast: Any = field(compare=False, repr=False)

    @classmethod
    def parse(cls, text: str) -> "SetExpr":
        return cls(text.replace(" ", ""), _Parser(text).parse())

    def evaluate(self, sets: IndexSets) -> IndexSet:
        return _evaluate(self.ast, sets)

    def names(self) -> set[str]:
        found: set[str] = set()
        _collect(self.ast, found)
        return found

    def __str__(self) -> str:
        return self.text


def _evaluate(ast: Any, sets: IndexSets) -> IndexSet:
    if ast[0] == "name":
        return sets.lookup(ast[1])
    left, right = _evaluate(ast[1], sets), _evaluate(ast[2], sets)
    return left | right if ast[0] == "|" else left - right


def _collect(ast: Any, found: set[str]) -> None:
    if ast[0] == "name":
        found.add(ast[1])
    else:
        _collect(ast[1], found)
        _collect(ast[2], found)


# =============================================================================
# Hypothesis table
# =============================================================================


class Conclusion(str, Enum):
    BOTH = "both_bounded"
    X = "x_bounded"
    Y = "y_bounded"

    def flipped(self) -> "Conclusion":
        return {Conclusion.X: Conclusion.Y, Conclusion.Y: Conclusion.X}.get(self, self)

    @property
    def sequences(self) -> tuple[str, ...]:
        return {"both_bounded": ("x", "y"), "x_bounded": ("x",), "y_bounded": ("y",)}[self.value]


_CONCLUSIONS = {"both": Conclusion.BOTH, "x": Conclusion.X, "y": Conclusion.Y}
_BOUNDED_INPUTS = (None, "above", "above_below")


@dataclass(frozen=True)
class TheoremHypotheses:
    """
    One transcribed theorem case.

    Attributes:
        id: Theorem number.
        case_id: Case label ("i", "ii", "iii") or None.
        signs: ``(constant, "positive" | "zero")`` requirements, read literally.
        subsets: ``(lhs, rhs)`` pairs requiring ``lhs`` to be a subset of ``rhs``.
        nonempty: Expressions that must be non-empty.
        eta: ``(source, target)`` iteration conditions.
        comparability: Required comparability shape (DIRECT orientation), if any.
        strict: Whether a required two-sided affine fact must be strict.
        bounded_input: Required prior bound on y: "above", "above_below" or None.
        conclusion: What the row proves, in the row's own coordinates.
        family: Grouping label used in reports.
        summary: One-line description of the hypotheses.
        notes: Transcription remarks.
    """

    id: int
    case_id: Optional[str]
    signs: tuple[tuple[str, str], ...]
    subsets: tuple[tuple[SetExpr, SetExpr], ...]
    nonempty: tuple[SetExpr, ...]
    eta: tuple[tuple[SetExpr, SetExpr], ...]
    comparability: Optional[Shape]
    strict: bool
    bounded_input: Optional[str]
    conclusion: Conclusion
    family: str = ""
    summary: str = ""
    notes: str = ""

    @property
    def label(self) -> str:
        return f"T{self.id}" + (f"({self.case_id})" if self.case_id else "")

    @property
    def sort_key(self) -> tuple[int, int]:
        return (self.id, CASE_ORDER.get(self.case_id, 9))

    def to_dict(self) -> dict[str, Any]:
        return {
            "id": self.id,
            "case": self.case_id,
            "family": self.family,
            "summary": self.summary,
            "signs": dict(self.signs),
            "subsets": [[str(a), str(b)] for a, b in self.subsets],
            "nonempty": [str(e) for e in self.nonempty],
            "eta": [[str(a), str(b)] for a, b in self.eta],
            "comparability": self.comparability.value if self.comparability else None,
            "strict": self.strict,
            "bounded_input": self.bounded_input,
            "conclusion": next(k for k, v in _CONCLUSIONS.items() if v is self.conclusion),
            "notes": self.notes,
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "TheoremHypotheses":
        """Build a row from its table form.

        Raises:
            TableError: On unknown keys, names or values.
        """
        try:
            signs = data.get("signs") or {}
            for name, requirement in signs.items():
                if name not in CONSTANT_GROUPS or requirement not in ("positive", "zero"):
                    raise TableError(f"Bad sign requirement {name}: {requirement}")
            eta = tuple((SetExpr.parse(a), SetExpr.parse(b)) for a, b in data.get("eta") or [])
            if len(eta) > 2:
                raise TableError("A row carries at most two eta conditions")
            bounded_input = data.get("bounded_input")
            if bounded_input not in _BOUNDED_INPUTS:
                raise TableError(f"Bad bounded_input {bounded_input!r}")
            shape = data.get("comparability")
            case = data.get("case")
            return cls(
                id=int(data["id"]),
                case_id=None if case is None else str(case),
                signs=tuple(sorted(signs.items())),
                subsets=tuple(
                    (SetExpr.parse(a), SetExpr.parse(b)) for a, b in data.get("subsets") or []
                ),
                nonempty=tuple(SetExpr.parse(e) for e in data.get("nonempty") or []),
                eta=eta,
                comparability=None if shape is None else Shape(shape),
                strict=bool(data.get("strict", False)),
                bounded_input=bounded_input,
                conclusion=_CONCLUSIONS[data["conclusion"]],
                family=str(data.get("family", "")),
                summary=str(data.get("summary", "")),
                notes=str(data.get("notes", "")),
            )
        except (KeyError, ValueError, TypeError) as e:
            if isinstance(e, TableError):
                raise
            raise TableError(f"Malformed theorem row {data.get('id')!r}: {e}") from e


@dataclass(frozen=True)
class TheoremTable:
    """
    Versioned, immutable hypothesis table.

    Attributes:
        version: Semantic version of the transcription.
        rows: Rows in (theorem, case) order.
    """

    version: str
    rows: tuple[TheoremHypotheses, ...]

    def find(self, theorem_id: int, case_id: Optional[str] = None) -> TheoremHypotheses:
        """Look up one row.

        Raises:
            PreconditionError: If no such row exists.
        """
        for row in self.rows:
            if row.id == theorem_id and row.case_id == case_id:
                return row
        raise PreconditionError(f"No theorem row T{theorem_id} case {case_id!r}")

    def cases(self, theorem_id: int) -> list[TheoremHypotheses]:
        return [r for r in self.rows if r.id == theorem_id]

    def to_dict(self) -> dict[str, Any]:
        return {"table_version": self.version, "rows": [r.to_dict() for r in self.rows]}

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "TheoremTable":
        rows = tuple(TheoremHypotheses.from_dict(r) for r in data.get("rows") or [])
        keys = [(r.id, r.case_id) for r in rows]
        if len(set(keys)) != len(keys):
            raise TableError("Duplicate theorem rows in table")
        return cls(version=str(data["table_version"]), rows=tuple(sorted(rows, key=lambda r: r.sort_key)))

    @classmethod
    def get_version(cls, version: str) -> "TheoremTable":
        """
        Get a table for a specific version from the registry.

        Raises:
            TableError: If the version is not in the registry.
        """
        if version not in TABLE_REGISTRY:
            raise TableError(
                f"Unknown theorem table version: {version}. "
                f"Available versions: {list(TABLE_REGISTRY.keys())}"
            )
        return TABLE_REGISTRY[version]


THEOREM_TABLE_V1_0_0 = TheoremTable.from_dict(load_template_file("theorem_table.yaml"))

TABLE_REGISTRY: dict[str, TheoremTable] = {
    "1.0.0": THEOREM_TABLE_V1_0_0,
}

CURRENT_TABLE_VERSION = "1.0.0"


def get_default_table() -> TheoremTable:
    """Get the current default theorem table."""
    return TABLE_REGISTRY[CURRENT_TABLE_VERSION]


# =============================================================================
# Evaluation
# =============================================================================


@dataclass(frozen=True)
class BoundednessFact:
    """
    A known bound on one sequence.

    Attributes:
        sequence: "x" or "y".
        above: Bounded above.
        below: Bounded below by a positive constant.
        rigor: How the bound was obtained.
        source: Label of the theorem application, "user" or "empirical".
    """

    sequence: str
    above: bool
    below: bool
    rigor: Rigor
    source: str

    def swapped(self) -> "BoundednessFact":
        return replace(self, sequence="y" if self.sequence == "x" else "x")

    def to_dict(self) -> dict[str, Any]:
        return {
            "sequence": self.sequence,
            "above": self.above,
            "below": self.below,
            "rigor": self.rigor.value,
            "source": self.source,
        }


@dataclass(frozen=True)
class ClauseResult:
    """Outcome of one hypothesis clause of a row."""

    clause: str
    passed: bool
    detail: str = ""


@dataclass(frozen=True)
class TheoremApplication:
    """
    A theorem case whose hypotheses all hold.

    Facts, bounds and the conclusion are always expressed in the variables of the
    analyzed system, whatever the orientation the row was evaluated in.
    """

    theorem_id: int
    case_id: Optional[str]
    orientation: Orientation
    conclusion: Conclusion
    facts_used: tuple[ComparabilityFact, ...] = ()
    bounds_used: tuple[BoundednessFact, ...] = ()
    eta_evidence: tuple[EtaDecision, ...] = ()
    rigor: Rigor = Rigor.RIGOROUS

    @property
    def label(self) -> str:
        base = f"T{self.theorem_id}" + (f"({self.case_id})" if self.case_id else "")
        return base if self.orientation is Orientation.DIRECT else f"{base} swapped"

    @property
    def sort_key(self) -> tuple[int, int, int]:
        return (
            self.theorem_id,
            CASE_ORDER.get(self.case_id, 9),
            0 if self.orientation is Orientation.DIRECT else 1,
        )

    def swapped(self) -> "TheoremApplication":
        """Re-express an application found on the swapped system."""
        return replace(
            self,
            orientation=self.orientation.flipped(),
            conclusion=self.conclusion.flipped(),
            facts_used=tuple(f.swapped() for f in self.facts_used),
            bounds_used=tuple(b.swapped() for b in self.bounds_used),
        )

    def to_dict(self) -> dict[str, Any]:
        return {
            "theorem": self.theorem_id,
            "case": self.case_id,
            "orientation": self.orientation.value,
            "label": self.label,
            "conclusion": self.conclusion.value,
            "rigor": self.rigor.value,
            "facts_used": [f.to_dict() for f in self.facts_used],
            "bounds_used": [b.to_dict() for b in self.bounds_used],
            "eta_evidence": [d.to_dict() for d in self.eta_evidence],
        }


def _best_bound(
    bounds: Sequence[BoundednessFact], sequence: str, need_below: bool
) -> Optional[BoundednessFact]:
    candidates = [
        b for b in bounds if b.sequence == sequence and b.above and (b.below or not need_below)
    ]
    # max() keeps the first of equally rigorous candidates: caller bounds, then table order.
    return max(candidates, key=lambda b: b.rigor.rank, default=None)


def _evaluate_clauses(
    sys: RationalSystem,
    row: TheoremHypotheses,
    facts: ComparabilityFacts,
    bounds: Sequence[BoundednessFact],
    stop_early: bool,
) -> tuple[list[ClauseResult], list[ComparabilityFact], list[BoundednessFact], list[EtaDecision]]:
    results: list[ClauseResult] = []
    facts_used: list[ComparabilityFact] = []
    bounds_used: list[BoundednessFact] = []
    decisions: list[EtaDecision] = []
    sets = index_sets(sys)

    def record(clause: str, passed: bool, detail: str = "") -> bool:
        results.append(ClauseResult(clause, passed, detail))
        return passed or not stop_early

    for name, requirement in row.signs:
        value = sys.constant(name)
        ok = value > 0 if requirement == "positive" else value == 0
        if not record(f"{name} {'> 0' if requirement == 'positive' else '= 0'}", ok, f"{name} = {value}"):
            return results, facts_used, bounds_used, decisions

    for lhs, rhs in row.subsets:
        left, right = lhs.evaluate(sets), rhs.evaluate(sets)
        if not record(f"{lhs} <= {rhs}", left <= right, f"{left} vs {right}"):
            return results, facts_used, bounds_used, decisions

    for expr in row.nonempty:
        value = expr.evaluate(sets)
        if not record(f"{expr} non-empty", bool(value), str(value)):
            return results, facts_used, bounds_used, decisions

    for source, target in row.eta:
        query = EtaQuery(sys.k, source.evaluate(sets), target.evaluate(sets))
        decision = eta_decide(query)
        decisions.append(decision)
        detail = (
            f"eta_min = {decision.eta_min}" if decision.holds else f"{query.source} -> {query.target} fails"
        )
        if not record(f"eta({source} -> {target})", decision.holds, detail):
            return results, facts_used, bounds_used, decisions

    if row.comparability is not None:
        fact = facts.get(row.comparability, Orientation.DIRECT)
        ok = fact is not None and (fact.strict or not row.strict)
        label = row.comparability.value + (" (strict)" if row.strict else "")
        if ok and fact is not None:
            facts_used.append(fact)
        if not record(f"comparability {label}", ok, fact.describe() if fact else "absent"):
            return results, facts_used, bounds_used, decisions

    if row.bounded_input is not None:
        need_below = row.bounded_input == "above_below"
        bound = _best_bound(bounds, "y", need_below)
        if bound is not None:
            bounds_used.append(bound)
        wanted = "y bounded above" + (" and below" if need_below else "")
        record(wanted, bound is not None, bound.source if bound else "unknown")

    return results, facts_used, bounds_used, decisions


def evaluate_theorem(
    sys: RationalSystem,
    row: TheoremHypotheses,
    facts: ComparabilityFacts,
    prior: Sequence[TheoremApplication] = (),
    bounds: Sequence[BoundednessFact] = (),
) -> Optional[TheoremApplication]:
    """Check one row against ``sys`` in its own coordinates.

    Args:
        sys: The system, already in the orientation the row should read.
        row: One transcribed theorem case.
        facts: Comparability facts expressed in the same coordinates as ``sys``.
        prior: Earlier applications; their conclusions count as rigorous-or-weaker bounds.
        bounds: Additional known bounds (user assertions, empirical verdicts).

    Returns:
        A DIRECT application when every clause holds, else None.
    """
    known = list(bounds) + bounds_from_applications(prior)
    results, facts_used, bounds_used, decisions = _evaluate_clauses(
        sys, row, facts, known, stop_early=True
    )
    failed = next((r for r in results if not r.passed), None)
    if failed is not None:
        logger.debug("%s rejected at %s (%s)", row.label, failed.clause, failed.detail)
        return None
    rigor = Rigor.weakest([f.rigor for f in facts_used] + [b.rigor for b in bounds_used])
    return TheoremApplication(
        theorem_id=row.id,
        case_id=row.case_id,
        orientation=Orientation.DIRECT,
        conclusion=row.conclusion,
        facts_used=tuple(facts_used),
        bounds_used=tuple(bounds_used),
        eta_evidence=tuple(decisions),
        rigor=rigor,
    )


def bounds_from_applications(apps: Iterable[TheoremApplication]) -> list[BoundednessFact]:
    """Upper bounds established by theorem applications.

    No row concludes a positive lower bound, so every derived bound has
    ``below=False``. Theorem 9, which needs y bounded above and below, is
    therefore enabled only by user or empirical bounds and never by chaining.
    """
    return [
        BoundednessFact(seq, above=True, below=False, rigor=app.rigor, source=app.label)
        for app in apps
        for seq in app.conclusion.sequences
    ]


def explain(
    sys: RationalSystem,
    theorem_id: int,
    case_id: Optional[str] = None,
    *,
    orientation: Orientation = Orientation.DIRECT,
    user_facts: Iterable[ComparabilityFact] = (),
    bounds: Sequence[BoundednessFact] = (),
    table: Optional[TheoremTable] = None,
) -> list[ClauseResult]:
    """Per-clause trace of one row, evaluated without stopping at the first failure.

    With ``orientation=SWAPPED`` the row is read on the swapped system.
    """
    table = table or get_default_table()
    row = table.find(theorem_id, case_id)
    facts = derive_comparability(sys, user_facts)
    target, known = sys, list(bounds)
    if orientation is Orientation.SWAPPED:
        target, facts, known = swap_system(sys), facts.swapped(), [b.swapped() for b in known]
    results, _, _, _ = _evaluate_clauses(target, row, facts, known, stop_early=False)
    return results


# =============================================================================
# Analysis
# =============================================================================


@dataclass(frozen=True)
class SequenceVerdict:
    """Overall verdict for one sequence; ``unproven`` never means unbounded."""

    sequence: str
    proven_bounded: bool
    by: tuple[str, ...] = ()
    rigor: Optional[Rigor] = None

    @property
    def status(self) -> str:
        return "proven_bounded" if self.proven_bounded else "unproven"

    def to_dict(self) -> dict[str, Any]:
        return {
            "sequence": self.sequence,
            "status": self.status,
            "by": list(self.by),
            "rigor": self.rigor.value if self.rigor else None,
        }


@dataclass(frozen=True)
class AnalysisReport:
    """
    Result of :func:`analyze`.

    Attributes:
        system: The analyzed system.
        facts: Comparability facts after merging and closure.
        applications: Every applicable row, ordered by (theorem, case, orientation).
        verdicts: One verdict per sequence, x first.
        bounds: Bounds supplied by the caller.
        table_version: Version of the hypothesis table used.
        passes: Fixed-point passes needed.
    """

    system: RationalSystem
    facts: ComparabilityFacts
    applications: tuple[TheoremApplication, ...]
    verdicts: tuple[SequenceVerdict, SequenceVerdict]
    bounds: tuple[BoundednessFact, ...] = ()
    table_version: str = CURRENT_TABLE_VERSION
    passes: int = 1

    def verdict(self, sequence: str) -> SequenceVerdict:
        for v in self.verdicts:
            if v.sequence == sequence:
                return v
        raise PreconditionError(f"Unknown sequence {sequence!r}")

    def find(
        self,
        theorem_id: int,
        case_id: Optional[str] = None,
        orientation: Optional[Orientation] = None,
    ) -> list[TheoremApplication]:
        return [
            a
            for a in self.applications
            if a.theorem_id == theorem_id
            and (case_id is None or a.case_id == case_id)
            and (orientation is None or a.orientation is orientation)
        ]

    def has_application(
        self,
        theorem_id: int,
        case_id: Optional[str] = None,
        orientation: Optional[Orientation] = None,
    ) -> bool:
        return bool(self.find(theorem_id, case_id, orientation))


def _one_pass(
    sys: RationalSystem,
    swapped_sys: RationalSystem,
    table: TheoremTable,
    facts: ComparabilityFacts,
    known: list[BoundednessFact],
) -> tuple[TheoremApplication, ...]:
    swapped_facts = facts.swapped()
    swapped_known = [b.swapped() for b in known]
    found: list[TheoremApplication] = []
    for row in table.rows:
        direct = evaluate_theorem(sys, row, facts, bounds=known)
        if direct is not None:
            found.append(direct)
        mirrored = evaluate_theorem(swapped_sys, row, swapped_facts, bounds=swapped_known)
        if mirrored is not None:
            found.append(mirrored.swapped())
    return tuple(sorted(found, key=lambda a: a.sort_key))


def analyze(
    sys: RationalSystem,
    user_facts: Iterable[ComparabilityFact] = (),
    bounds: Iterable[BoundednessFact] = (),
    *,
    table: Optional[TheoremTable] = None,
) -> AnalysisReport:
    """Find every theorem case that applies to ``sys``.

    Args:
        sys: A valid system.
        user_facts: Comparability facts asserted by the caller.
        bounds: Bounds asserted by the caller or observed by simulation.
        table: Hypothesis table; defaults to the current version.

    Returns:
        The analysis report. The result depends only on the arguments.
    """
    table = table or get_default_table()
    bounds = tuple(bounds)
    facts = derive_comparability(sys, user_facts)
    swapped_sys = swap_system(sys)

    # An application keeps the justification of the pass that first found it, so
    # bounds only flow from earlier passes and never justify each other in a cycle.
    accepted: dict[tuple[int, Optional[str], Orientation], TheoremApplication] = {}
    passes = 0
    while passes < MAX_PASSES:
        passes += 1
        known = list(bounds) + bounds_from_applications(accepted.values())
        new = [
            a
            for a in _one_pass(sys, swapped_sys, table, facts, known)
            if (a.theorem_id, a.case_id, a.orientation) not in accepted
        ]
        logger.debug("Pass %d: %d new applications", passes, len(new))
        if not new:
            break
        for app in new:
            accepted[(app.theorem_id, app.case_id, app.orientation)] = app
    applications = tuple(sorted(accepted.values(), key=lambda a: a.sort_key))

    verdicts = tuple(_verdict(seq, applications) for seq in ("x", "y"))
    if any(a.rigor is Rigor.EMPIRICAL for a in applications):
        warnings.warn(
            "Some theorem applications rest on empirical bounds and are not rigorous",
            UserWarning,
            stacklevel=2,
        )
    logger.info(
        "Analysis: %d applications; x %s, y %s",
        len(applications),
        verdicts[0].status,
        verdicts[1].status,
    )
    return AnalysisReport(
        system=sys,
        facts=facts,
        applications=applications,
        verdicts=(verdicts[0], verdicts[1]),
        bounds=bounds,
        table_version=table.version,
        passes=passes,
    )


def _verdict(sequence: str, applications: Sequence[TheoremApplication]) -> SequenceVerdict:
    covering = [a for a in applications if sequence in a.conclusion.sequences]
    if not covering:
        return SequenceVerdict(sequence, False)
    return SequenceVerdict(
        sequence,
        True,
        by=tuple(a.label for a in covering),
        rigor=Rigor.strongest(a.rigor for a in covering),
    )
