"""
System Model
============

Immutable representation of a k-th order system of two rational difference
equations

    x[n] = (alpha + sum beta_i x[n-i] + sum gamma_i y[n-i]) / (A + sum B_j x[n-j] + sum C_j y[n-j])
    y[n] = (p + sum delta_i x[n-i] + sum epsilon_i y[n-i]) / (q + sum D_j x[n-j] + sum E_j y[n-j])

together with the index sets the boundedness theorems are phrased in.

Key Types:
----------
- **CoefficientVector**: the k lag coefficients of one sum, stored as exact fractions.
- **RationalSystem**: the twelve parameter groups of a system.
- **IndexSet**: the set of lags whose coefficient is strictly positive.
- **IndexSets**: all eight index sets of a system, addressable by their base names.

Parameters are kept as :class:`fractions.Fraction` values derived from decimal
text. Every hypothesis check is a sign or set test, so the float view
(:meth:`CoefficientVector.as_float`) is only ever used for simulation.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, fields
from decimal import Decimal
from fractions import Fraction
from typing import Any, Iterable, Iterator, Optional, Sequence, Union

import numpy as np
from numpy import typing as npt

from .errors import PreconditionError, SystemValidationError

logger = logging.getLogger(__name__)

Number = Union[Fraction, Decimal, int, float, str]

# Base names used by the theorem table, mapped to RationalSystem fields.
VECTOR_GROUPS: dict[str, str] = {
    "beta": "x_num_x",
    "gamma": "x_num_y",
    "B": "x_den_x",
    "C": "x_den_y",
    "delta": "y_num_x",
    "epsilon": "y_num_y",
    "D": "y_den_x",
    "E": "y_den_y",
}

CONSTANT_GROUPS: dict[str, str] = {
    "alpha": "x_num_const",
    "A": "x_den_const",
    "p": "y_num_const",
    "q": "y_den_const",
}

# Renaming used to apply an x-theorem to y: beta<->epsilon, B<->E, gamma<->delta,
# C<->D, alpha<->p, A<->q.
SWAP_FIELDS: dict[str, str] = {
    "x_num_const": "y_num_const",
    "x_num_x": "y_num_y",
    "x_num_y": "y_num_x",
    "x_den_const": "y_den_const",
    "x_den_x": "y_den_y",
    "x_den_y": "y_den_x",
    "y_num_const": "x_num_const",
    "y_num_x": "x_num_y",
    "y_num_y": "x_num_x",
    "y_den_const": "x_den_const",
    "y_den_x": "x_den_y",
    "y_den_y": "x_den_x",
}


def to_fraction(value: Number) -> Fraction:
    """Convert a parameter value to an exact fraction.

    Floats go through their shortest decimal representation so that ``0.1``
    becomes ``1/10`` rather than the binary expansion.

    Raises:
        PreconditionError: If the value is not a finite number.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise PreconditionError(f"Expected a number, got boolean {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, Decimal):
        if not value.is_finite():
            raise PreconditionError(f"Parameter must be finite, got {value}")
        return Fraction(value)
    if isinstance(value, float):
        if not math.isfinite(value):
            raise PreconditionError(f"Parameter must be finite, got {value}")
        return Fraction(Decimal(repr(float(value))))
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as e:
            raise PreconditionError(f"Cannot parse {value!r} as a number") from e
    raise PreconditionError(f"Unsupported parameter type: {type(value).__name__}")


def min_plus(*values: Number) -> Fraction:
    """Minimum over the strictly positive arguments.

    Args:
        *values: Non-negative numbers; at least one must be non-zero.

    Returns:
        The smallest positive argument.

    Raises:
        PreconditionError: If no argument is positive.

    Example:
        >>> min_plus(0, 5)
        Fraction(5, 1)
    """
    positive = [f for f in (to_fraction(v) for v in values) if f > 0]
    if not positive:
        raise PreconditionError("min_plus needs at least one non-zero argument")
    return min(positive)


def max_plus(*values: Number) -> Fraction:
    """Maximum over the strictly positive arguments (same precondition as min_plus)."""
    positive = [f for f in (to_fraction(v) for v in values) if f > 0]
    if not positive:
        raise PreconditionError("max_plus needs at least one non-zero argument")
    return max(positive)


# =============================================================================
# Index sets
# =============================================================================


@dataclass(frozen=True)
class IndexSet:
    """A set of lags in {1..k}."""

    members: frozenset[int] = frozenset()

    @classmethod
    def of(cls, *lags: int) -> "IndexSet":
        return cls(frozenset(lags))

    def __or__(self, other: "IndexSet") -> "IndexSet":
        return IndexSet(self.members | other.members)

    def __sub__(self, other: "IndexSet") -> "IndexSet":
        return IndexSet(self.members - other.members)

    def __and__(self, other: "IndexSet") -> "IndexSet":
        return IndexSet(self.members & other.members)

    def __le__(self, other: "IndexSet") -> bool:
        return self.members <= other.members

    def __iter__(self) -> Iterator[int]:
        return iter(sorted(self.members))

    def __len__(self) -> int:
        return len(self.members)

    def __bool__(self) -> bool:
        return bool(self.members)

    def __contains__(self, lag: object) -> bool:
        return lag in self.members

    def sorted(self) -> tuple[int, ...]:
        return tuple(sorted(self.members))

    def within(self, k: int) -> bool:
        """True if every member lies in {1..k}."""
        return all(1 <= m <= k for m in self.members)

    def __str__(self) -> str:
        if not self.members:
            return "{}"
        return "{" + ",".join(str(m) for m in self.sorted()) + "}"


# =============================================================================
# Coefficient vectors and systems
# =============================================================================


@dataclass(frozen=True)
class CoefficientVector:
    """The lag coefficients of one sum; ``entries[i]`` multiplies the term at lag ``i + 1``."""

    entries: tuple[Fraction, ...]

    @classmethod
    def of(cls, values: Iterable[Number]) -> "CoefficientVector":
        return cls(tuple(to_fraction(v) for v in values))

    @classmethod
    def zeros(cls, k: int) -> "CoefficientVector":
        return cls(tuple(Fraction(0) for _ in range(k)))

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self) -> Iterator[Fraction]:
        return iter(self.entries)

    def lag(self, i: int) -> Fraction:
        """Coefficient of the term at lag ``i`` (1-based)."""
        return self.entries[i - 1]

    def positive_entries(self) -> list[Fraction]:
        return [e for e in self.entries if e > 0]

    def as_float(self) -> npt.NDArray[np.float64]:
        return np.array([float(e) for e in self.entries], dtype=np.float64)

    def __add__(self, other: "CoefficientVector") -> "CoefficientVector":
        if len(self) != len(other):
            raise PreconditionError("Cannot add coefficient vectors of different length")
        return CoefficientVector(tuple(a + b for a, b in zip(self.entries, other.entries)))


def index_set(coeffs: CoefficientVector) -> IndexSet:
    """Lags whose coefficient is strictly positive."""
    return IndexSet(frozenset(i + 1 for i, v in enumerate(coeffs.entries) if v > 0))


@dataclass(frozen=True)
class RationalSystem:
    """
    A k-th order system of two rational difference equations.

    Field names follow the position of each group in the recursion: ``x_num_y`` is
    the coefficient vector of the y-lags in the numerator of the x-equation (gamma),
    ``y_den_const`` is the constant of the y-denominator (q), and so on. Use
    :meth:`build` to construct a system with the conventional parameter names.

    Construction never validates; call :func:`validate_system` or :meth:`checked`.
    """

    k: int
    x_num_const: Fraction
    x_num_x: CoefficientVector
    x_num_y: CoefficientVector
    x_den_const: Fraction
    x_den_x: CoefficientVector
    x_den_y: CoefficientVector
    y_num_const: Fraction
    y_num_x: CoefficientVector
    y_num_y: CoefficientVector
    y_den_const: Fraction
    y_den_x: CoefficientVector
    y_den_y: CoefficientVector

    @classmethod
    def build(
        cls,
        k: int,
        *,
        alpha: Number = 0,
        beta: Optional[Sequence[Number]] = None,
        gamma: Optional[Sequence[Number]] = None,
        A: Number = 0,
        B: Optional[Sequence[Number]] = None,
        C: Optional[Sequence[Number]] = None,
        p: Number = 0,
        delta: Optional[Sequence[Number]] = None,
        epsilon: Optional[Sequence[Number]] = None,
        q: Number = 0,
        D: Optional[Sequence[Number]] = None,
        E: Optional[Sequence[Number]] = None,
    ) -> "RationalSystem":
        """Build a system from the conventional parameter names; omitted vectors are zero.

        Example:
            ```python
            # x[n] = (1 + x[n-1]) / (1 + y[n-2]),  y[n] = (1 + x[n-1]) / (1 + y[n-2])
            sys = RationalSystem.build(
                2, alpha=1, beta=[1, 0], A=1, C=[0, 1],
                p=1, delta=[1, 0], q=1, E=[0, 1],
            )
            ```
        """

        def vec(values: Optional[Sequence[Number]]) -> CoefficientVector:
            return CoefficientVector.zeros(k) if values is None else CoefficientVector.of(values)

        return cls(
            k=k,
            x_num_const=to_fraction(alpha),
            x_num_x=vec(beta),
            x_num_y=vec(gamma),
            x_den_const=to_fraction(A),
            x_den_x=vec(B),
            x_den_y=vec(C),
            y_num_const=to_fraction(p),
            y_num_x=vec(delta),
            y_num_y=vec(epsilon),
            y_den_const=to_fraction(q),
            y_den_x=vec(D),
            y_den_y=vec(E),
        )

    def checked(self) -> "RationalSystem":
        """Return self if valid.

        Raises:
            SystemValidationError: Listing every violated invariant.
        """
        violations = validate_system(self)
        if violations:
            raise SystemValidationError(violations)
        return self

    # Conventional names -------------------------------------------------------

    def constant(self, name: str) -> Fraction:
        """Constant by conventional name (``alpha``, ``A``, ``p`` or ``q``)."""
        value: Fraction = getattr(self, CONSTANT_GROUPS[name])
        return value

    def vector(self, name: str) -> CoefficientVector:
        """Coefficient vector by conventional name (``beta`` ... ``E``)."""
        value: CoefficientVector = getattr(self, VECTOR_GROUPS[name])
        return value

    @property
    def alpha(self) -> Fraction:
        return self.x_num_const

    @property
    def A(self) -> Fraction:
        return self.x_den_const

    @property
    def p(self) -> Fraction:
        return self.y_num_const

    @property
    def q(self) -> Fraction:
        return self.y_den_const

    def is_symmetric(self) -> bool:
        """True if the system is a fixed point of :func:`swap_system`."""
        return swap_system(self) == self

    def describe(self) -> str:
        """Render both equations with only their positive terms."""
        return "\n".join(
            [
                "x[n] = " + _render_fraction(self, "alpha", "beta", "gamma", "A", "B", "C"),
                "y[n] = " + _render_fraction(self, "p", "delta", "epsilon", "q", "D", "E"),
            ]
        )


def _render_fraction(
    sys: RationalSystem, num_c: str, num_x: str, num_y: str, den_c: str, den_x: str, den_y: str
) -> str:
    def side(const: str, xs: str, ys: str) -> str:
        terms: list[str] = []
        if sys.constant(const) != 0:
            terms.append(_fmt(sys.constant(const)))
        for name, var in ((xs, "x"), (ys, "y")):
            for i, coeff in enumerate(sys.vector(name), start=1):
                if coeff != 0:
                    terms.append(f"{_fmt(coeff)}*{var}[n-{i}]")
        return " + ".join(terms) if terms else "0"

    return f"({side(num_c, num_x, num_y)}) / ({side(den_c, den_x, den_y)})"


def _fmt(value: Fraction) -> str:
    return str(value.numerator) if value.denominator == 1 else str(value)


def swap_system(sys: RationalSystem) -> RationalSystem:
    """Exchange the two equations under the renaming x <-> y.

    The result maps beta <-> epsilon, B <-> E, gamma <-> delta, C <-> D,
    alpha <-> p and A <-> q. The transform is an involution.
    """
    values: dict[str, Any] = {"k": sys.k}
    for name, source in SWAP_FIELDS.items():
        values[name] = getattr(sys, source)
    return RationalSystem(**values)


def validate_system(sys: RationalSystem) -> list[str]:
    """Check every RationalSystem invariant.

    Returns:
        A list of human-readable violations; empty when the system is valid.
        Never raises.
    """
    violations: list[str] = []
    if not isinstance(sys.k, int) or isinstance(sys.k, bool) or sys.k < 1:
        violations.append(f"order k must be a positive integer, got {sys.k!r}")
        return violations

    for name, field_name in CONSTANT_GROUPS.items():
        value = getattr(sys, field_name)
        if value < 0:
            violations.append(f"negative parameter: {name} = {value}")

    for name, field_name in VECTOR_GROUPS.items():
        vector: CoefficientVector = getattr(sys, field_name)
        if len(vector) != sys.k:
            violations.append(
                f"length mismatch: {name} has {len(vector)} entries, expected k = {sys.k}"
            )
        for i, value in enumerate(vector, start=1):
            if value < 0:
                violations.append(f"negative parameter: {name}[{i}] = {value}")

    for label, const, xs, ys in (("x", "A", "B", "C"), ("y", "q", "D", "E")):
        if sys.constant(const) <= 0 and not any(
            v > 0 for v in list(sys.vector(xs)) + list(sys.vector(ys))
        ):
            violations.append(
                f"denominator identically zero: {const}, {xs} and {ys} of the "
                f"{label}-equation are all zero"
            )

    if violations:
        logger.debug("System failed validation: %s", violations)
    return violations


@dataclass(frozen=True)
class IndexSets:
    """The eight index sets of a system.

    Attributes are named after the coefficient groups they are derived from.
    """

    beta: IndexSet
    gamma: IndexSet
    delta: IndexSet
    epsilon: IndexSet
    B: IndexSet
    C: IndexSet
    D: IndexSet
    E: IndexSet

    def lookup(self, name: str) -> IndexSet:
        if name not in VECTOR_GROUPS:
            raise PreconditionError(f"Unknown index set name: {name!r}")
        value: IndexSet = getattr(self, name)
        return value

    def to_dict(self) -> dict[str, list[int]]:
        return {f.name: list(getattr(self, f.name).sorted()) for f in fields(self)}


def index_sets(sys: RationalSystem) -> IndexSets:
    """Compute all eight index sets of ``sys``."""
    return IndexSets(**{name: index_set(sys.vector(name)) for name in VECTOR_GROUPS})
