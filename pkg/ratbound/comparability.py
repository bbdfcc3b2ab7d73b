"""
Comparability Facts
===================

Inequalities that link the two solution sequences of a system, the hypotheses
under which they are known to hold, and the explicit constants that come with
them.

Four shapes are supported. With ``u`` the bounded-by variable and ``v`` the other
one (``u = x, v = y`` in the DIRECT orientation, ``u = y, v = x`` when SWAPPED):

- **one_sided_linear**:  ``v <= M1 u``
- **two_sided_linear**:  ``M1 v <= u <= M2 v``
- **one_sided_affine**:  ``v <= M1 u + M2``
- **two_sided_affine**:  ``u <= M1 v + M2 <= M3 u + M4``

Constants are exact fractions. When the formula has no positive operand in one
of its max/min groups, the fact is kept as *existential*: the inequality holds
for some constants but none are materialized.

Key Functions:
--------------
- **check_thm24** ... **check_thm27**: the four syntactic comparability tests.
- **derive_comparability**: runs every test in both orientations, merges user facts
  and closes the collection under the implications between shapes.
- **assert_fact**: validated construction of a user-asserted fact.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field, replace
from enum import Enum
from fractions import Fraction
from typing import Any, Iterable, Iterator, Optional, Sequence

from .errors import PreconditionError
from .model import (
    CoefficientVector,
    IndexSets,
    Number,
    RationalSystem,
    index_sets,
    swap_system,
    to_fraction,
)

logger = logging.getLogger(__name__)


class Shape(str, Enum):
    ONE_SIDED_LINEAR = "one_sided_linear"
    TWO_SIDED_LINEAR = "two_sided_linear"
    ONE_SIDED_AFFINE = "one_sided_affine"
    TWO_SIDED_AFFINE = "two_sided_affine"

    @property
    def arity(self) -> int:
        return _ARITY[self]


_ARITY = {
    Shape.ONE_SIDED_LINEAR: 1,
    Shape.TWO_SIDED_LINEAR: 2,
    Shape.ONE_SIDED_AFFINE: 2,
    Shape.TWO_SIDED_AFFINE: 4,
}


class Orientation(str, Enum):
    DIRECT = "direct"
    SWAPPED = "swapped"

    def flipped(self) -> "Orientation":
        return Orientation.SWAPPED if self is Orientation.DIRECT else Orientation.DIRECT


class Provenance(str, Enum):
    THEOREM24 = "theorem24"
    THEOREM25 = "theorem25"
    THEOREM26 = "theorem26"
    THEOREM27 = "theorem27"
    USER_ASSERTED = "user_asserted"
    EMPIRICAL = "empirical"


class Rigor(str, Enum):
    """How much a conclusion can be trusted; ordered RIGOROUS > USER_ASSERTED > EMPIRICAL."""

    RIGOROUS = "rigorous"
    USER_ASSERTED = "user_asserted"
    EMPIRICAL = "empirical"

    @property
    def rank(self) -> int:
        return {"rigorous": 2, "user_asserted": 1, "empirical": 0}[self.value]

    @staticmethod
    def weakest(rigors: Iterable["Rigor"]) -> "Rigor":
        return min(rigors, key=lambda r: r.rank, default=Rigor.RIGOROUS)

    @staticmethod
    def strongest(rigors: Iterable["Rigor"]) -> "Rigor":
        return max(rigors, key=lambda r: r.rank, default=Rigor.EMPIRICAL)


_PROVENANCE_RIGOR = {
    Provenance.USER_ASSERTED: Rigor.USER_ASSERTED,
    Provenance.EMPIRICAL: Rigor.EMPIRICAL,
}

# (x coefficient, y coefficient, constant) of one side of an inequality.
LinearForm = tuple[Fraction, Fraction, Fraction]


@dataclass(frozen=True)
class ComparabilityFact:
    """
    One comparability inequality.

    Attributes:
        shape: Inequality shape.
        orientation: DIRECT reads the shape with ``u = x``; SWAPPED with ``u = y``.
        constants: ``M1 .. Mn`` in shape order, or None when only existence is known.
        provenance: Where the fact came from.
        strict: For two_sided_affine, whether ``M4 > M2 > 0`` is guaranteed.
        note: Free-text derivation remark shown in reports.
    """

    shape: Shape
    orientation: Orientation
    constants: Optional[tuple[Fraction, ...]]
    provenance: Provenance
    strict: bool = False
    note: str = ""

    @property
    def key(self) -> tuple[Shape, Orientation]:
        return (self.shape, self.orientation)

    @property
    def existential(self) -> bool:
        return self.constants is None

    @property
    def rigor(self) -> Rigor:
        return _PROVENANCE_RIGOR.get(self.provenance, Rigor.RIGOROUS)

    def swapped(self) -> "ComparabilityFact":
        """The same inequality described in the coordinates of the swapped system."""
        return replace(self, orientation=self.orientation.flipped())

    def padded(self) -> "ComparabilityFact":
        """Strict two-sided affine variant: add 1 to M2 and 2 to M4.

        ``u <= M1 v + M2 + 1 <= M3 u + M4 + 2`` follows from the unpadded chain, and
        ``M4 + 2 > M2 + 1 > 0`` whenever ``M4 >= M2 >= 0``.
        """
        if self.shape is not Shape.TWO_SIDED_AFFINE:
            raise PreconditionError("Only two-sided affine facts can be padded")
        if self.strict:
            return self
        constants = None
        if self.constants is not None:
            m1, m2, m3, m4 = self.constants
            constants = (m1, m2 + 1, m3, m4 + 2)
        note = (self.note + "; " if self.note else "") + "padded to strict (+1 on M2, +2 on M4)"
        return replace(self, constants=constants, strict=True, note=note)

    def inequalities(self) -> list[tuple[LinearForm, LinearForm]]:
        """The fact as ``lhs <= rhs`` pairs of linear forms in ``(x, y)``.

        Raises:
            PreconditionError: For existential facts.
        """
        if self.constants is None:
            raise PreconditionError("Existential fact has no concrete inequality")
        zero, one = Fraction(0), Fraction(1)

        def form(u: Fraction, v: Fraction, c: Fraction) -> LinearForm:
            # u multiplies the bounded-by variable, v the other one.
            if self.orientation is Orientation.DIRECT:
                return (u, v, c)
            return (v, u, c)

        m = self.constants
        if self.shape is Shape.ONE_SIDED_LINEAR:
            return [(form(zero, one, zero), form(m[0], zero, zero))]
        if self.shape is Shape.TWO_SIDED_LINEAR:
            return [
                (form(zero, m[0], zero), form(one, zero, zero)),
                (form(one, zero, zero), form(zero, m[1], zero)),
            ]
        if self.shape is Shape.ONE_SIDED_AFFINE:
            return [(form(zero, one, zero), form(m[0], zero, m[1]))]
        return [
            (form(one, zero, zero), form(zero, m[0], m[1])),
            (form(zero, m[0], m[1]), form(m[2], zero, m[3])),
        ]

    def describe(self) -> str:
        """Human-readable inequality, e.g. ``y <= 1*x + 1``."""
        u, v = ("x", "y") if self.orientation is Orientation.DIRECT else ("y", "x")
        names = [f"M{i}" for i in range(1, self.shape.arity + 1)]
        if self.constants is not None:
            names = [_fmt(c) for c in self.constants]
        if self.shape is Shape.ONE_SIDED_LINEAR:
            text = f"{v} <= {names[0]}*{u}"
        elif self.shape is Shape.TWO_SIDED_LINEAR:
            text = f"{names[0]}*{v} <= {u} <= {names[1]}*{v}"
        elif self.shape is Shape.ONE_SIDED_AFFINE:
            text = f"{v} <= {names[0]}*{u} + {names[1]}"
        else:
            text = f"{u} <= {names[0]}*{v} + {names[1]} <= {names[2]}*{u} + {names[3]}"
        return text + (" (strict)" if self.strict else "")

    def to_dict(self) -> dict[str, Any]:
        return {
            "shape": self.shape.value,
            "direction": self.orientation.value,
            "constants": None if self.constants is None else [_fmt(c) for c in self.constants],
            "provenance": self.provenance.value,
            "rigor": self.rigor.value,
            "strict": self.strict,
            "inequality": self.describe(),
            "note": self.note,
        }


def _fmt(value: Fraction) -> str:
    return str(value.numerator) if value.denominator == 1 else str(value)


def assert_fact(
    shape: Shape | str,
    orientation: Orientation | str,
    constants: Optional[Sequence[Number]],
    *,
    strict: bool = False,
    provenance: Provenance = Provenance.USER_ASSERTED,
    note: str = "",
) -> ComparabilityFact:
    """Build and validate a fact supplied from outside the theorem checks.

    Constants must be non-negative and match the shape's arity. Two-sided shapes need
    ``M1 > 0`` (their implied one-sided forms divide by it) and two-sided affine facts
    need ``M4 >= M2``, or ``M4 > M2 > 0`` when ``strict``.

    Raises:
        PreconditionError: On any violated constraint.
    """
    try:
        shape = Shape(shape)
        orientation = Orientation(orientation)
    except ValueError as e:
        raise PreconditionError(str(e)) from e

    values: Optional[tuple[Fraction, ...]] = None
    if constants is not None:
        values = tuple(to_fraction(c) for c in constants)
        if len(values) != shape.arity:
            raise PreconditionError(
                f"{shape.value} takes {shape.arity} constants, got {len(values)}"
            )
        if any(v < 0 for v in values):
            raise PreconditionError("Comparability constants must be non-negative")
        if shape in (Shape.TWO_SIDED_LINEAR, Shape.TWO_SIDED_AFFINE) and values[0] <= 0:
            raise PreconditionError(f"{shape.value} needs M1 > 0")
        if shape is Shape.TWO_SIDED_AFFINE:
            m1, m2, m3, m4 = values
            if m3 <= 0:
                raise PreconditionError("two_sided_affine needs M3 > 0")
            if m4 < m2:
                raise PreconditionError("two_sided_affine needs M4 >= M2")
            if strict and not (m4 > m2 > 0):
                raise PreconditionError("strict two_sided_affine needs M4 > M2 > 0")
    if strict and shape is not Shape.TWO_SIDED_AFFINE:
        raise PreconditionError("Only two_sided_affine facts can be strict")
    return ComparabilityFact(shape, orientation, values, provenance, strict=strict, note=note)


# =============================================================================
# Fact collections
# =============================================================================


@dataclass(frozen=True)
class ComparabilityFacts:
    """An immutable set of facts with at most one fact per (shape, orientation)."""

    facts: tuple[ComparabilityFact, ...] = field(default_factory=tuple)

    def __iter__(self) -> Iterator[ComparabilityFact]:
        return iter(self.facts)

    def __len__(self) -> int:
        return len(self.facts)

    def get(self, shape: Shape, orientation: Orientation) -> Optional[ComparabilityFact]:
        for fact in self.facts:
            if fact.key == (shape, orientation):
                return fact
        return None

    def swapped(self) -> "ComparabilityFacts":
        """The collection seen from the swapped system."""
        return ComparabilityFacts(tuple(f.swapped() for f in self.facts)).sorted()

    def sorted(self) -> "ComparabilityFacts":
        order = {s: i for i, s in enumerate(Shape)}
        return ComparabilityFacts(
            tuple(sorted(self.facts, key=lambda f: (order[f.shape], f.orientation.value)))
        )

    def with_fact(self, fact: ComparabilityFact) -> "ComparabilityFacts":
        """Add ``fact``, merging with any fact already stored under the same key.

        User-asserted constants replace computed ones, while a theorem provenance
        already on record is kept. Between two computed facts the existing one stays
        unless it is existential and the new one is concrete.
        """
        existing = self.get(*fact.key)
        if existing is None:
            return ComparabilityFacts(self.facts + (fact,)).sorted()
        merged = _merge(existing, fact)
        if merged is existing:
            return self
        rest = tuple(f for f in self.facts if f.key != fact.key)
        return ComparabilityFacts(rest + (merged,)).sorted()

    def merged(self, others: Iterable[ComparabilityFact]) -> "ComparabilityFacts":
        result = self
        for fact in others:
            result = result.with_fact(fact)
        return result

    def closure(self) -> "ComparabilityFacts":
        """Add every fact implied by the stored ones; existing keys are never overwritten."""
        result = self
        changed = True
        while changed:
            changed = False
            for fact in result.facts:
                for implied in _implications(fact):
                    if result.get(*implied.key) is None:
                        result = ComparabilityFacts(result.facts + (implied,))
                        changed = True
        return result.sorted()

    def to_list(self) -> list[dict[str, Any]]:
        return [f.to_dict() for f in self.facts]


def _merge(existing: ComparabilityFact, new: ComparabilityFact) -> ComparabilityFact:
    user = Provenance.USER_ASSERTED
    if (new.provenance is user) != (existing.provenance is user):
        computed, asserted = (existing, new) if new.provenance is user else (new, existing)
        if asserted.constants is None:
            return replace(computed, strict=computed.strict or asserted.strict)
        return replace(
            computed,
            constants=asserted.constants,
            strict=asserted.strict,
            note="constants asserted by user",
        )
    if existing.existential and not new.existential:
        return new
    if new.rigor.rank > existing.rigor.rank:
        return new
    return existing


Constants = Optional[tuple[Fraction, ...]]


def _implications(fact: ComparabilityFact) -> list[ComparabilityFact]:
    o = fact.orientation
    zero = Fraction(0)
    note = f"implied by {fact.shape.value} ({o.value})"

    def derived(shape: Shape, orientation: Orientation, constants: Constants,
                strict: bool = False) -> ComparabilityFact:
        return ComparabilityFact(
            shape, orientation, constants, fact.provenance, strict=strict, note=note
        )

    c = fact.constants
    if fact.shape is Shape.TWO_SIDED_LINEAR:
        targets = [
            (Shape.ONE_SIDED_LINEAR, o),
            (Shape.ONE_SIDED_LINEAR, o.flipped()),
            (Shape.TWO_SIDED_LINEAR, o.flipped()),
            (Shape.TWO_SIDED_AFFINE, o),
            (Shape.TWO_SIDED_AFFINE, o.flipped()),
        ]
        if c is None:
            return [derived(shape, orientation, None) for shape, orientation in targets]
        m1, m2 = c
        values: list[tuple[Fraction, ...]] = [
            (1 / m1,),
            (m2,),
            (1 / m2, 1 / m1),
            (m2, zero, m2 / m1, zero),
            (1 / m1, zero, m2 / m1, zero),
        ]
        return [derived(s, ori, v) for (s, ori), v in zip(targets, values)]
    if fact.shape is Shape.ONE_SIDED_LINEAR:
        return [derived(Shape.ONE_SIDED_AFFINE, o, None if c is None else (c[0], zero))]
    if fact.shape is Shape.TWO_SIDED_AFFINE:
        if c is None:
            return [
                derived(Shape.ONE_SIDED_AFFINE, o.flipped(), None),
                derived(Shape.ONE_SIDED_AFFINE, o, None),
                derived(Shape.TWO_SIDED_AFFINE, o.flipped(), None, strict=fact.strict),
            ]
        m1, m2, m3, m4 = c
        return [
            derived(Shape.ONE_SIDED_AFFINE, o.flipped(), (m1, m2)),
            derived(Shape.ONE_SIDED_AFFINE, o, (m3 / m1, (m4 - m2) / m1)),
            derived(
                Shape.TWO_SIDED_AFFINE,
                o.flipped(),
                (m3 / m1, (m4 - m2) / m1, m3, (m3 * m2 + m4 - m2) / m1),
                strict=fact.strict,
            ),
        ]
    return []


# =============================================================================
# Theorem checks
# =============================================================================


def _positive(values: Iterable[Fraction]) -> list[Fraction]:
    return [v for v in values if v > 0]


def _group(const: Fraction, *vectors: CoefficientVector) -> list[Fraction]:
    values = [const]
    for vector in vectors:
        values.extend(vector)
    return _positive(values)


def _ratio(numerators: list[list[Fraction]], denominators: list[list[Fraction]]
           ) -> Optional[Fraction]:
    """Product of group maxima over product of group minima; None if a group is empty."""
    if any(not g for g in numerators + denominators):
        return None
    result = Fraction(1)
    for g in numerators:
        result *= max(g)
    for g in denominators:
        result /= min(g)
    return result


def _thm24_hypotheses(s: RationalSystem, sets: IndexSets) -> bool:
    return (
        sets.delta <= sets.beta
        and sets.B <= sets.D
        and sets.epsilon <= sets.gamma
        and sets.C <= sets.E
        and (s.A <= 0 or s.q > 0)
        and (s.p <= 0 or s.alpha > 0)
    )


def _thm26_hypotheses(s: RationalSystem, sets: IndexSets) -> bool:
    return (
        sets.delta <= sets.beta | sets.B
        and sets.B <= sets.D
        and sets.epsilon <= sets.gamma | sets.C
        and sets.C <= sets.E
        and (s.A <= 0 or s.q > 0)
        and (s.p <= 0 or s.alpha > 0 or s.A > 0)
    )


def thm24_constant(sys: RationalSystem) -> Optional[Fraction]:
    """Eventual constant M with ``y_n <= M x_n``.

    Every case of the sign split over ``(A, q, p, alpha)`` reduces to

        max+(A, B, C) * max+(p, delta, epsilon) / (min+(alpha, beta, gamma) * min+(q, D, E))

    where each constant takes part only when it is positive. None when a group has
    no positive entry.
    """
    return _ratio(
        [_group(sys.A, sys.x_den_x, sys.x_den_y), _group(sys.p, sys.y_num_x, sys.y_num_y)],
        [_group(sys.alpha, sys.x_num_x, sys.x_num_y), _group(sys.q, sys.y_den_x, sys.y_den_y)],
    )


def thm26_constant(sys: RationalSystem) -> Optional[Fraction]:
    """Eventual constant M1 with ``y_n <= M1 (x_n + 1)``.

    Same shape as :func:`thm24_constant` with the x-numerator group replaced by
    ``min+(alpha + A, beta_i + B_i, gamma_i + C_i)``.
    """
    return _ratio(
        [_group(sys.A, sys.x_den_x, sys.x_den_y), _group(sys.p, sys.y_num_x, sys.y_num_y)],
        [
            _group(sys.alpha + sys.A, sys.x_num_x + sys.x_den_x, sys.x_num_y + sys.x_den_y),
            _group(sys.q, sys.y_den_x, sys.y_den_y),
        ],
    )


def check_thm24(sys: RationalSystem) -> Optional[ComparabilityFact]:
    """One-sided linear comparability ``y <= M x``.

    Requires ``I_delta <= I_beta``, ``I_B <= I_D``, ``I_epsilon <= I_gamma``,
    ``I_C <= I_E``, ``A > 0 => q > 0`` and ``p > 0 => alpha > 0``.

    Returns:
        A DIRECT one_sided_linear fact, or None when a hypothesis fails.
    """
    if not _thm24_hypotheses(sys, index_sets(sys)):
        return None
    m = thm24_constant(sys)
    return ComparabilityFact(
        Shape.ONE_SIDED_LINEAR,
        Orientation.DIRECT,
        None if m is None else (m,),
        Provenance.THEOREM24,
        note="eventual bound; initial terms exempt",
    )


def check_thm25(sys: RationalSystem) -> Optional[ComparabilityFact]:
    """Two-sided linear comparability ``M1 y <= x <= M2 y``.

    The hypotheses are exactly those of :func:`check_thm24` on the system and on
    its swap; ``M1`` is the reciprocal of the direct constant and ``M2`` the
    swapped one.
    """
    direct = check_thm24(sys)
    if direct is None:
        return None
    swapped = check_thm24(swap_system(sys))
    if swapped is None:
        return None
    constants = None
    if direct.constants is not None and swapped.constants is not None:
        constants = (1 / direct.constants[0], swapped.constants[0])
    return ComparabilityFact(
        Shape.TWO_SIDED_LINEAR, Orientation.DIRECT, constants, Provenance.THEOREM25
    )


def check_thm26(sys: RationalSystem) -> Optional[ComparabilityFact]:
    """One-sided affine comparability ``y <= M1 x + M2`` with ``M2 = M1``."""
    if not _thm26_hypotheses(sys, index_sets(sys)):
        return None
    m = thm26_constant(sys)
    return ComparabilityFact(
        Shape.ONE_SIDED_AFFINE,
        Orientation.DIRECT,
        None if m is None else (m, m),
        Provenance.THEOREM26,
        note="eventual bound y <= M1 (x + 1); initial terms exempt",
    )


def check_thm27(sys: RationalSystem) -> Optional[ComparabilityFact]:
    """Two-sided affine comparability ``x <= M1 y + M2 <= M3 x + M4``.

    Composed from :func:`check_thm26` on the swapped system (``x <= M1 y + M2``)
    and on the system itself (``y <= M5 x + M6``): ``M3 = M1 M5``, ``M4 = M1 M6 + M2``.
    """
    forward = check_thm26(sys)
    if forward is None:
        return None
    backward = check_thm26(swap_system(sys))
    if backward is None:
        return None
    constants = None
    if forward.constants is not None and backward.constants is not None:
        m5, m6 = forward.constants
        m1, m2 = backward.constants
        constants = (m1, m2, m1 * m5, m1 * m6 + m2)
    return ComparabilityFact(
        Shape.TWO_SIDED_AFFINE, Orientation.DIRECT, constants, Provenance.THEOREM27
    )


CHECKS = (check_thm24, check_thm25, check_thm26, check_thm27)


def derive_comparability(
    sys: RationalSystem, user_facts: Iterable[ComparabilityFact] = ()
) -> ComparabilityFacts:
    """All comparability facts available for ``sys``.

    Every check runs on the system (DIRECT facts) and on its swap (re-labelled
    SWAPPED). User facts are then merged and the result is closed under the
    implications between shapes. Two-sided affine facts are finally padded to
    their strict form, which the A = 0 and q = 0 affine rows require and which
    every other consumer accepts.
    """
    facts = ComparabilityFacts()
    swapped_sys = swap_system(sys)
    for check in CHECKS:
        direct = check(sys)
        if direct is not None:
            facts = facts.with_fact(direct)
        mirrored = check(swapped_sys)
        if mirrored is not None:
            facts = facts.with_fact(mirrored.swapped())
    facts = facts.merged(user_facts).closure()
    facts = ComparabilityFacts(
        tuple(f.padded() if f.shape is Shape.TWO_SIDED_AFFINE else f for f in facts)
    )

    existential = [f for f in facts if f.existential]
    if existential:
        logger.debug("%d comparability facts carry existential constants", len(existential))
    logger.debug("Derived %d comparability facts", len(facts))
    return facts
