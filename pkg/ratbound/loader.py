"""
System Document Loading
=======================

Reads and writes the JSON description of a system:

.. code-block:: json

    {
      "k": 2,
      "x": {"num": {"const": 1, "x": [1, 0], "y": [0, 0]},
            "den": {"const": 1, "x": [0, 0], "y": [0, 1]}},
      "y": {"num": {"const": 1, "x": [1, 0], "y": [0, 0]},
            "den": {"const": 1, "x": [0, 0], "y": [0, 1]}}
    }

Position ``i - 1`` of an array holds the lag-``i`` coefficient. Optional keys:
``name``, ``description``, ``asserted_comparability`` (facts the caller vouches
for), ``asserted_bounds`` and ``init`` (initial conditions).

Numbers are read as exact decimals; strings such as ``"1/3"`` are accepted so that
every rational survives a round trip. Parsing either succeeds completely or
raises :class:`DocumentError` listing every problem with its JSON pointer.

Key Functions:
    - parse_system: Mapping -> SystemDocument
    - load_system: File path -> SystemDocument
    - serialize_system: Canonical mapping of a system and its extras
    - save_system: Write the canonical document
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass
from decimal import Decimal
from fractions import Fraction
from pathlib import Path
from typing import Any, Iterable, Mapping, Optional, Union

from .comparability import ComparabilityFact, Orientation, Rigor, Shape, assert_fact
from .errors import DocumentError, PreconditionError
from .model import RationalSystem, to_fraction
from .simulator import InitialConditions
from .theorems import BoundednessFact

logger = logging.getLogger(__name__)

TOP_KEYS = frozenset(
    {"name", "description", "k", "x", "y", "asserted_comparability", "asserted_bounds", "init"}
)
FACT_KEYS = frozenset({"shape", "direction", "constants", "strict", "note"})
BOUND_KEYS = frozenset({"sequence", "above", "below"})

# (equation, side, part) -> conventional parameter name
DOCUMENT_GROUPS: dict[tuple[str, str, str], str] = {
    ("x", "num", "const"): "alpha",
    ("x", "num", "x"): "beta",
    ("x", "num", "y"): "gamma",
    ("x", "den", "const"): "A",
    ("x", "den", "x"): "B",
    ("x", "den", "y"): "C",
    ("y", "num", "const"): "p",
    ("y", "num", "x"): "delta",
    ("y", "num", "y"): "epsilon",
    ("y", "den", "const"): "q",
    ("y", "den", "x"): "D",
    ("y", "den", "y"): "E",
}


@dataclass(frozen=True)
class SystemDocument:
    """
    A parsed system document.

    Attributes:
        system: The rational system.
        facts: Comparability facts asserted by the author.
        bounds: Boundedness asserted by the author.
        init: Initial conditions, if given.
        name: Optional short name.
        description: Optional free text.
    """

    system: RationalSystem
    facts: tuple[ComparabilityFact, ...] = ()
    bounds: tuple[BoundednessFact, ...] = ()
    init: Optional[InitialConditions] = None
    name: Optional[str] = None
    description: Optional[str] = None


class _Collector:
    """Accumulates ``(pointer, message)`` violations."""

    def __init__(self) -> None:
        self.violations: list[tuple[str, str]] = []

    def add(self, pointer: str, message: str) -> None:
        self.violations.append((pointer, message))

    def mapping(self, value: Any, pointer: str, allowed: Iterable[str]) -> Optional[Mapping[str, Any]]:
        if not isinstance(value, Mapping):
            self.add(pointer, "expected an object")
            return None
        for key in sorted(set(value) - set(allowed)):
            self.add(f"{pointer}/{key}", "unknown key")
        return value

    def number(self, value: Any, pointer: str) -> Optional[Fraction]:
        if isinstance(value, bool) or not isinstance(value, (int, float, Decimal, str)):
            self.add(pointer, "expected a number")
            return None
        try:
            result = to_fraction(value)
        except PreconditionError as e:
            self.add(pointer, str(e))
            return None
        if result < 0:
            self.add(pointer, f"must be non-negative, got {value}")
            return None
        return result

    def numbers(self, value: Any, pointer: str, length: Optional[int]) -> Optional[list[Fraction]]:
        if not isinstance(value, list):
            self.add(pointer, "expected an array")
            return None
        if length is not None and len(value) != length:
            self.add(pointer, f"expected {length} entries, got {len(value)}")
            return None
        parsed = [self.number(v, f"{pointer}/{i}") for i, v in enumerate(value)]
        if any(v is None for v in parsed):
            return None
        return [v for v in parsed if v is not None]


def parse_system(doc: Any) -> SystemDocument:
    """
    Parse a system document.

    Args:
        doc: The decoded JSON object.

    Returns:
        The parsed document.

    Raises:
        DocumentError: With every violation found; nothing is returned partially.
    """
    c = _Collector()
    top = c.mapping(doc, "", TOP_KEYS)
    if top is None:
        raise DocumentError(c.violations)

    k = top.get("k")
    if isinstance(k, bool) or not isinstance(k, int) or k < 1:
        c.add("/k", "order k must be a positive integer")
        k = None

    params: dict[str, Any] = {}
    for equation in ("x", "y"):
        eq = c.mapping(top.get(equation), f"/{equation}", ("num", "den"))
        if eq is None:
            continue
        for side in ("num", "den"):
            pointer = f"/{equation}/{side}"
            part = c.mapping(eq.get(side), pointer, ("const", "x", "y"))
            if part is None:
                continue
            const = c.number(part.get("const", 0), f"{pointer}/const")
            params[DOCUMENT_GROUPS[(equation, side, "const")]] = const
            for var in ("x", "y"):
                group = DOCUMENT_GROUPS[(equation, side, var)]
                if var in part:
                    params[group] = c.numbers(part[var], f"{pointer}/{var}", k)
                elif k is not None:
                    params[group] = [Fraction(0)] * k
            if side == "den" and k is not None:
                _check_denominator(c, pointer, params, equation)

    facts = tuple(_parse_facts(c, top.get("asserted_comparability", [])))
    bounds = tuple(_parse_bounds(c, top.get("asserted_bounds", [])))
    init = _parse_init(c, top["init"], k) if "init" in top else None

    name, description = top.get("name"), top.get("description")
    for key, value in (("name", name), ("description", description)):
        if value is not None and not isinstance(value, str):
            c.add(f"/{key}", "expected a string")

    if c.violations or k is None:
        raise DocumentError(c.violations)
    system = RationalSystem.build(k, **params)
    logger.debug("Parsed system %s (k=%d)", name or "<unnamed>", k)
    return SystemDocument(system, facts, bounds, init, name, description)


def _check_denominator(c: _Collector, pointer: str, params: dict[str, Any], equation: str) -> None:
    names = [DOCUMENT_GROUPS[(equation, "den", part)] for part in ("const", "x", "y")]
    values = [params.get(n) for n in names]
    if any(v is None for v in values):
        return
    const, xs, ys = values
    if const == 0 and not any(xs) and not any(ys):
        c.add(pointer, "denominator is identically zero")


def _parse_facts(c: _Collector, raw: Any) -> list[ComparabilityFact]:
    if not isinstance(raw, list):
        c.add("/asserted_comparability", "expected an array")
        return []
    facts: list[ComparabilityFact] = []
    for i, item in enumerate(raw):
        pointer = f"/asserted_comparability/{i}"
        entry = c.mapping(item, pointer, FACT_KEYS)
        if entry is None:
            continue
        constants = entry.get("constants")
        if constants is not None:
            parsed = c.numbers(constants, f"{pointer}/constants", None)
            if parsed is None:
                continue
            constants = parsed
        try:
            facts.append(
                assert_fact(
                    entry.get("shape", ""),
                    entry.get("direction", Orientation.DIRECT.value),
                    constants,
                    strict=bool(entry.get("strict", False)),
                    note=str(entry.get("note", "")),
                )
            )
        except PreconditionError as e:
            c.add(pointer, str(e))
    return facts


def _parse_bounds(c: _Collector, raw: Any) -> list[BoundednessFact]:
    if not isinstance(raw, list):
        c.add("/asserted_bounds", "expected an array")
        return []
    bounds: list[BoundednessFact] = []
    for i, item in enumerate(raw):
        pointer = f"/asserted_bounds/{i}"
        entry = c.mapping(item, pointer, BOUND_KEYS)
        if entry is None:
            continue
        sequence = entry.get("sequence")
        if sequence not in ("x", "y"):
            c.add(f"{pointer}/sequence", "must be 'x' or 'y'")
            continue
        above, below = entry.get("above", True), entry.get("below", False)
        if not isinstance(above, bool) or not isinstance(below, bool):
            c.add(pointer, "above and below must be booleans")
            continue
        bounds.append(BoundednessFact(sequence, above, below, Rigor.USER_ASSERTED, "user"))
    return bounds


def _parse_init(c: _Collector, raw: Any, k: Optional[int]) -> Optional[InitialConditions]:
    entry = c.mapping(raw, "/init", ("x", "y"))
    if entry is None:
        return None
    xs = c.numbers(entry.get("x"), "/init/x", k)
    ys = c.numbers(entry.get("y"), "/init/y", k)
    if xs is None or ys is None:
        return None
    return InitialConditions(tuple(xs), tuple(ys))


def read_json(path: Union[str, Path]) -> Any:
    """Decode a JSON file with exact decimals.

    Raises:
        DocumentError: If the file is not valid JSON.
        OSError: If the file cannot be read.
    """
    text = Path(path).read_text(encoding="utf-8")
    try:
        return json.loads(text, parse_float=Decimal)
    except json.JSONDecodeError as e:
        raise DocumentError([("", f"invalid JSON: {e}")]) from e


def load_system(path: Union[str, Path]) -> SystemDocument:
    """
    Load and validate a system document from disk.

    Raises:
        DocumentError: On schema violations.
        SystemValidationError: If the system breaks a model invariant.
        OSError: If the file cannot be read.
    """
    document = parse_system(read_json(path))
    document.system.checked()
    return document


# =============================================================================
# Serialization
# =============================================================================


def number_text(value: Fraction) -> Union[int, str]:
    """Canonical JSON form of a rational.

    Integers stay integers, finite decimals become their shortest decimal string,
    anything else becomes ``"num/den"``.
    """
    if value.denominator == 1:
        return value.numerator
    den, twos, fives = value.denominator, 0, 0
    while den % 2 == 0:
        den, twos = den // 2, twos + 1
    while den % 5 == 0:
        den, fives = den // 5, fives + 1
    if den != 1:
        return f"{value.numerator}/{value.denominator}"
    places = max(twos, fives)
    scaled = abs(value.numerator) * 10**places // value.denominator
    digits = str(scaled).rjust(places + 1, "0")
    text = f"{digits[:-places]}.{digits[-places:]}".rstrip("0").rstrip(".")
    return "-" + text if value < 0 else text


def serialize_system(
    sys: RationalSystem,
    facts: Iterable[ComparabilityFact] = (),
    init: Optional[InitialConditions] = None,
    bounds: Iterable[BoundednessFact] = (),
    *,
    name: Optional[str] = None,
    description: Optional[str] = None,
) -> dict[str, Any]:
    """The canonical document for a system; ``parse_system`` reads it back unchanged."""
    doc: dict[str, Any] = {"k": sys.k}
    for equation in ("x", "y"):
        doc[equation] = {
            side: {
                "const": number_text(sys.constant(DOCUMENT_GROUPS[(equation, side, "const")])),
                "x": [number_text(v) for v in sys.vector(DOCUMENT_GROUPS[(equation, side, "x")])],
                "y": [number_text(v) for v in sys.vector(DOCUMENT_GROUPS[(equation, side, "y")])],
            }
            for side in ("num", "den")
        }
    if name is not None:
        doc["name"] = name
    if description is not None:
        doc["description"] = description
    fact_list = [_fact_entry(f) for f in facts]
    if fact_list:
        doc["asserted_comparability"] = fact_list
    bound_list = [{"sequence": b.sequence, "above": b.above, "below": b.below} for b in bounds]
    if bound_list:
        doc["asserted_bounds"] = bound_list
    if init is not None:
        doc["init"] = {"x": [number_text(v) for v in init.x], "y": [number_text(v) for v in init.y]}
    return doc


def _fact_entry(fact: ComparabilityFact) -> dict[str, Any]:
    entry: dict[str, Any] = {
        "shape": fact.shape.value,
        "direction": fact.orientation.value,
        "constants": None if fact.constants is None else [number_text(c) for c in fact.constants],
    }
    if fact.shape is Shape.TWO_SIDED_AFFINE:
        entry["strict"] = fact.strict
    if fact.note:
        entry["note"] = fact.note
    return entry


def dumps_document(doc: Mapping[str, Any]) -> str:
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def save_system(document: SystemDocument, path: Union[str, Path]) -> None:
    """Write the canonical form of ``document`` to ``path``."""
    doc = serialize_system(
        document.system,
        document.facts,
        document.init,
        document.bounds,
        name=document.name,
        description=document.description,
    )
    Path(path).write_text(dumps_document(doc), encoding="utf-8")
