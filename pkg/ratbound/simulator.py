"""
Trajectory Simulator
====================

Generates solutions of a system from non-negative initial conditions and turns
them into empirical evidence: bound verdicts, certificate checks for
comparability facts, and empirical comparability constants.

Two modes are available. ``float64`` runs a compiled Numba kernel over numpy
arrays; ``exact_rational`` iterates with :class:`fractions.Fraction` and is the
reference the float mode is tested against.

Initial conditions are indexed ``x[1-k] .. x[0]``; generation starts at ``n = 1``.

Key Functions:
    - simulate: Generate a trajectory
    - empirical_bound: Stabilized / diverging / inconclusive verdict for one sequence
    - validate_certificate: Check a comparability fact along a trajectory
    - empirical_comparability: Observed comparability constants
    - run_trials: Seeded batch of trajectories, optionally in a process pool
"""

from __future__ import annotations

import logging
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, fields
from decimal import ROUND_CEILING, Decimal
from enum import Enum
from fractions import Fraction
from typing import TYPE_CHECKING, Any, Iterable, Optional, Sequence, Union

import numpy as np
import numpy.typing as npt
from numba import jit
from tqdm import tqdm

from .comparability import ComparabilityFact, Orientation, Provenance, Shape
from .errors import PreconditionError
from .model import Number, RationalSystem, to_fraction
from .templates import load_template_file

if TYPE_CHECKING:
    from .theorems import AnalysisReport

logger = logging.getLogger(__name__)

# Order of the coefficient rows handed to the float kernel.
KERNEL_VECTORS = ("beta", "gamma", "B", "C", "delta", "epsilon", "D", "E")
KERNEL_CONSTANTS = ("alpha", "A", "p", "q")

_LOG10_2 = math.log10(2)

# =============================================================================
# Settings
# =============================================================================


@dataclass(frozen=True)
class SimulationSettings:
    """
    Thresholds and heuristics of the simulator.

    Attributes:
        zero_threshold: Float denominators below this stop the run.
        overflow_threshold: Float values above this stop the run.
        digit_budget: Decimal digits allowed in an exact numerator or denominator.
        rel_tol: Relative tolerance for float comparisons.
        divergence_windows: Number of equal windows the trajectory is split into.
        divergence_run: How many trailing windows must each grow.
        divergence_ratio: Minimum growth ratio between consecutive window maxima.
        burn_in_fraction: Default burn-in as a fraction of the trajectory length.
        init_low: Lower end of random initial conditions.
        init_high: Upper end of random initial conditions.
        positive_init_low: Lower end used when positive initial conditions are required.
        init_decimals: Random initial conditions are rounded to this many decimal places.
    """

    zero_threshold: float = 1e-300
    overflow_threshold: float = 1e300
    digit_budget: int = 4096
    rel_tol: float = 1e-9
    divergence_windows: int = 10
    divergence_run: int = 5
    divergence_ratio: float = 1.1
    burn_in_fraction: float = 0.5
    init_low: float = 0.0
    init_high: float = 10.0
    positive_init_low: float = 1e-3
    init_decimals: int = 3

    def to_dict(self) -> dict[str, Any]:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "SimulationSettings":
        """Build settings from a mapping; missing keys keep their defaults.

        Raises:
            PreconditionError: On unknown keys or inconsistent values.
        """
        unknown = sorted(set(data) - {f.name for f in fields(cls)})
        if unknown:
            raise PreconditionError(f"Unknown simulation settings: {unknown}")
        settings = cls(**data)
        if settings.divergence_run >= settings.divergence_windows:
            raise PreconditionError("divergence_run must be smaller than divergence_windows")
        if not 0 <= settings.burn_in_fraction < 1:
            raise PreconditionError("burn_in_fraction must lie in [0, 1)")
        if settings.init_decimals < 0:
            raise PreconditionError("init_decimals must be non-negative")
        return settings

    @classmethod
    def default(cls) -> "SimulationSettings":
        """Settings from the bundled ``simulation_defaults.yaml``."""
        return cls.from_dict(dict(load_template_file("simulation_defaults.yaml")["settings"]))


DEFAULT_SETTINGS = SimulationSettings.default()

# =============================================================================
# Data types
# =============================================================================


class SimulationMode(str, Enum):
    FLOAT64 = "float64"
    EXACT = "exact_rational"


class StatusKind(str, Enum):
    COMPLETED = "completed"
    ZERO_DENOMINATOR = "zero_denominator"
    OVERFLOW = "overflow"


@dataclass(frozen=True)
class TrajectoryStatus:
    """How a run ended; ``step`` is the index n that could not be generated."""

    kind: StatusKind
    step: Optional[int] = None
    equation: Optional[str] = None

    @property
    def completed(self) -> bool:
        return self.kind is StatusKind.COMPLETED

    def __str__(self) -> str:
        if self.kind is StatusKind.COMPLETED:
            return "completed"
        if self.kind is StatusKind.ZERO_DENOMINATOR:
            return f"zero_denominator_at({self.step}, {self.equation})"
        return f"overflow_at({self.step})"


@dataclass(frozen=True)
class InitialConditions:
    """Values ``x[1-k] .. x[0]`` and ``y[1-k] .. y[0]``, oldest first."""

    x: tuple[Fraction, ...]
    y: tuple[Fraction, ...]

    @classmethod
    def of(cls, x: Iterable[Number], y: Iterable[Number]) -> "InitialConditions":
        """Build from numbers.

        Raises:
            PreconditionError: On negative, non-finite or unequal-length input.
        """
        xs = tuple(to_fraction(v) for v in x)
        ys = tuple(to_fraction(v) for v in y)
        if len(xs) != len(ys) or not xs:
            raise PreconditionError("x and y initial conditions must have the same positive length")
        if any(v < 0 for v in xs + ys):
            raise PreconditionError("initial conditions must be non-negative")
        return cls(xs, ys)

    @classmethod
    def constant(cls, k: int, value: Number = 1) -> "InitialConditions":
        return cls.of([value] * k, [value] * k)

    @classmethod
    def random(
        cls,
        k: int,
        rng: np.random.Generator,
        low: float = DEFAULT_SETTINGS.init_low,
        high: float = DEFAULT_SETTINGS.init_high,
        decimals: int = DEFAULT_SETTINGS.init_decimals,
    ) -> "InitialConditions":
        """Uniform draws on ``[low, high]``, x first then y, rounded to ``decimals`` places."""
        step = Decimal(1).scaleb(-decimals)
        lowest = Decimal(repr(float(low))).quantize(step, rounding=ROUND_CEILING)
        draws = [
            max(Decimal(float(v)).quantize(step), lowest)
            for v in rng.uniform(low, high, size=2 * k)
        ]
        return cls.of(draws[:k], draws[k:])

    @property
    def k(self) -> int:
        return len(self.x)

    def to_dict(self) -> dict[str, list[str]]:
        return {"x": [_fraction_text(v) for v in self.x], "y": [_fraction_text(v) for v in self.y]}


def _fraction_text(value: Fraction) -> str:
    return str(value.numerator) if value.denominator == 1 else str(value)


Values = Union[npt.NDArray[np.float64], tuple[Fraction, ...]]


@dataclass(frozen=True, eq=False)
class Trajectory:
    """
    Generated terms ``x[1] .. x[N]`` and ``y[1] .. y[N]``.

    Attributes:
        init: The initial conditions the run started from.
        x: Generated x values (numpy array in float mode, Fractions in exact mode).
        y: Generated y values.
        mode: Arithmetic used.
        status: How the run ended; values up to the stop are kept.
        steps_requested: Number of steps asked for.
    """

    init: InitialConditions
    x: Values
    y: Values
    mode: SimulationMode
    status: TrajectoryStatus
    steps_requested: int

    def __len__(self) -> int:
        return len(self.x)

    @property
    def completed(self) -> bool:
        return self.status.completed

    def values(self, which: str) -> Values:
        if which not in ("x", "y"):
            raise PreconditionError(f"which must be 'x' or 'y', got {which!r}")
        return self.x if which == "x" else self.y

    def as_float(self, which: str) -> npt.NDArray[np.float64]:
        values = self.values(which)
        if isinstance(values, np.ndarray):
            return values
        return np.array([float(v) for v in values], dtype=np.float64)

    def history_tail(self) -> InitialConditions:
        """The last k values of the full history, to continue the run from."""
        k = self.init.k
        # shortest-repr conversion round-trips float64 values exactly
        hx = list(self.init.x) + [to_fraction(v) for v in self.x[-k:]]
        hy = list(self.init.y) + [to_fraction(v) for v in self.y[-k:]]
        return InitialConditions(tuple(hx[-k:]), tuple(hy[-k:]))


# =============================================================================
# Simulation
# =============================================================================


@jit(nopython=True, cache=True, error_model="numpy")  # type: ignore
def _iterate_float(
    hx: npt.NDArray[np.float64],
    hy: npt.NDArray[np.float64],
    consts: npt.NDArray[np.float64],
    vecs: npt.NDArray[np.float64],
    k: int,
    steps: int,
    zero_threshold: float,
    overflow_threshold: float,
) -> tuple[int, int]:
    """Fill ``hx[k:]``/``hy[k:]`` in place.

    Returns:
        (generated, code) with code 0 = completed, 1 = x denominator vanished,
        2 = y denominator vanished, 3 = overflow.
    """
    for n in range(steps):
        t = k + n
        num_x = consts[0]
        den_x = consts[1]
        num_y = consts[2]
        den_y = consts[3]
        for i in range(1, k + 1):
            xl = hx[t - i]
            yl = hy[t - i]
            num_x += vecs[0, i - 1] * xl + vecs[1, i - 1] * yl
            den_x += vecs[2, i - 1] * xl + vecs[3, i - 1] * yl
            num_y += vecs[4, i - 1] * xl + vecs[5, i - 1] * yl
            den_y += vecs[6, i - 1] * xl + vecs[7, i - 1] * yl
        if den_x < zero_threshold:
            return n, 1
        if den_y < zero_threshold:
            return n, 2
        xv = num_x / den_x
        yv = num_y / den_y
        # NaN fails both comparisons
        if not (xv <= overflow_threshold and yv <= overflow_threshold):
            return n, 3
        hx[t] = xv
        hy[t] = yv
    return steps, 0


def kernel_arrays(sys: RationalSystem) -> tuple[npt.NDArray[np.float64], npt.NDArray[np.float64]]:
    """Constants ``(alpha, A, p, q)`` and the 8 x k coefficient matrix for the kernel."""
    consts = np.array([float(sys.constant(c)) for c in KERNEL_CONSTANTS], dtype=np.float64)
    vecs = np.vstack([sys.vector(v).as_float() for v in KERNEL_VECTORS]).astype(np.float64)
    return consts, np.ascontiguousarray(vecs)


def _status_from_code(code: int, step: int) -> TrajectoryStatus:
    if code == 0:
        return TrajectoryStatus(StatusKind.COMPLETED)
    if code == 3:
        return TrajectoryStatus(StatusKind.OVERFLOW, step=step)
    return TrajectoryStatus(StatusKind.ZERO_DENOMINATOR, step=step, equation="x" if code == 1 else "y")


def _simulate_float(
    sys: RationalSystem, init: InitialConditions, steps: int, settings: SimulationSettings
) -> Trajectory:
    k = sys.k
    hx = np.zeros(k + steps, dtype=np.float64)
    hy = np.zeros(k + steps, dtype=np.float64)
    hx[:k] = [float(v) for v in init.x]
    hy[:k] = [float(v) for v in init.y]
    consts, vecs = kernel_arrays(sys)
    generated, code = _iterate_float(
        hx, hy, consts, vecs, k, steps, settings.zero_threshold, settings.overflow_threshold
    )
    status = _status_from_code(int(code), int(generated) + 1)
    return Trajectory(
        init=init,
        x=hx[k : k + generated].copy(),
        y=hy[k : k + generated].copy(),
        mode=SimulationMode.FLOAT64,
        status=status,
        steps_requested=steps,
    )


def _digits(value: Fraction) -> int:
    return int(max(value.numerator, value.denominator).bit_length() * _LOG10_2) + 1


def _simulate_exact(
    sys: RationalSystem, init: InitialConditions, steps: int, settings: SimulationSettings
) -> Trajectory:
    k = sys.k
    hx: list[Fraction] = list(init.x)
    hy: list[Fraction] = list(init.y)
    groups = {name: list(sys.vector(name)) for name in KERNEL_VECTORS}
    status = TrajectoryStatus(StatusKind.COMPLETED)

    def side(const: str, on_x: str, on_y: str, t: int) -> Fraction:
        total = sys.constant(const)
        for i in range(1, k + 1):
            a, b = groups[on_x][i - 1], groups[on_y][i - 1]
            if a:
                total += a * hx[t - i]
            if b:
                total += b * hy[t - i]
        return total

    for n in range(1, steps + 1):
        t = k + n - 1
        den_x = side("A", "B", "C", t)
        if den_x == 0:
            status = TrajectoryStatus(StatusKind.ZERO_DENOMINATOR, step=n, equation="x")
            break
        den_y = side("q", "D", "E", t)
        if den_y == 0:
            status = TrajectoryStatus(StatusKind.ZERO_DENOMINATOR, step=n, equation="y")
            break
        xv = side("alpha", "beta", "gamma", t) / den_x
        yv = side("p", "delta", "epsilon", t) / den_y
        if max(_digits(xv), _digits(yv)) > settings.digit_budget:
            status = TrajectoryStatus(StatusKind.OVERFLOW, step=n)
            break
        hx.append(xv)
        hy.append(yv)

    return Trajectory(
        init=init,
        x=tuple(hx[k:]),
        y=tuple(hy[k:]),
        mode=SimulationMode.EXACT,
        status=status,
        steps_requested=steps,
    )


def simulate(
    sys: RationalSystem,
    init: InitialConditions,
    steps: int,
    mode: SimulationMode = SimulationMode.FLOAT64,
    settings: Optional[SimulationSettings] = None,
) -> Trajectory:
    """
    Iterate both equations for ``n = 1 .. steps``.

    Args:
        sys: A valid system.
        init: Initial conditions of length ``sys.k``.
        steps: Number of terms to generate.
        mode: ``float64`` (compiled kernel) or ``exact_rational``.
        settings: Thresholds; defaults to the bundled ones.

    Returns:
        The trajectory. Vanishing denominators and overflow are reported in
        ``status``; the values generated before the stop are kept.

    Raises:
        PreconditionError: If ``steps < 1`` or the initial conditions have the wrong length.

    Example:
        >>> traj = simulate(example3, InitialConditions.constant(2), 2, SimulationMode.EXACT)
        >>> traj.y
        (Fraction(3, 1), Fraction(5, 1))
    """
    settings = settings or DEFAULT_SETTINGS
    if not isinstance(steps, int) or steps < 1:
        raise PreconditionError(f"steps must be a positive integer, got {steps!r}")
    if init.k != sys.k:
        raise PreconditionError(f"initial conditions have length {init.k}, system order is {sys.k}")
    mode = SimulationMode(mode)
    if mode is SimulationMode.EXACT:
        traj = _simulate_exact(sys, init, steps, settings)
    else:
        traj = _simulate_float(sys, init, steps, settings)
    if traj.completed:
        logger.debug("Simulated %d steps (%s)", len(traj), mode.value)
    else:
        logger.info("Simulation stopped after %d of %d steps: %s", len(traj), steps, traj.status)
    return traj


# =============================================================================
# Empirical verdicts
# =============================================================================


class BoundKind(str, Enum):
    STABILIZED = "stabilized"
    DIVERGING = "diverging"
    INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class BoundVerdict:
    """
    Empirical verdict for one sequence.

    Attributes:
        kind: stabilized, diverging or inconclusive.
        burn_in: Number of leading terms treated as transient.
        max_value: Largest value up to the burn-in (stabilized only).
        attained_at: Index n at which ``max_value`` occurs.
        growth_witness: Trailing window maxima (diverging only).
        reason: Explanation for inconclusive verdicts.
    """

    kind: BoundKind
    burn_in: int
    max_value: Optional[float] = None
    attained_at: Optional[int] = None
    growth_witness: tuple[float, ...] = ()
    reason: str = ""

    def to_dict(self) -> dict[str, Any]:
        return {
            "kind": self.kind.value,
            "burn_in": self.burn_in,
            "max_value": self.max_value,
            "attained_at": self.attained_at,
            "growth_witness": list(self.growth_witness),
            "reason": self.reason,
        }


def _window_maxima(values: npt.NDArray[np.float64], windows: int) -> Optional[npt.NDArray[np.float64]]:
    width = len(values) // windows
    if width == 0:
        return None
    # leading remainder is dropped so the last window ends at the last term
    tail = values[len(values) - width * windows :]
    return tail.reshape(windows, width).max(axis=1)


def empirical_bound(
    traj: Trajectory,
    which: str,
    burn_in: Optional[int] = None,
    settings: Optional[SimulationSettings] = None,
) -> BoundVerdict:
    """
    Classify one sequence of a trajectory.

    Stabilized when no term after the burn-in exceeds the burn-in maximum by more
    than the relative tolerance. Diverging when the maxima of the trailing
    ``divergence_run`` windows each exceed their predecessor by
    ``divergence_ratio``. Inconclusive otherwise. These verdicts are heuristics.

    Raises:
        PreconditionError: If ``burn_in`` is not smaller than the trajectory length.
    """
    settings = settings or DEFAULT_SETTINGS
    if burn_in is None:
        burn_in = int(len(traj) * settings.burn_in_fraction)
    if not traj.completed:
        return BoundVerdict(BoundKind.INCONCLUSIVE, burn_in, reason=f"trajectory {traj.status}")
    values = traj.as_float(which)
    if not 0 <= burn_in < len(values):
        raise PreconditionError(f"burn_in {burn_in} must lie in [0, {len(values)})")

    head = values[: max(burn_in, 1)]
    peak_index = int(np.argmax(head))
    peak = float(head[peak_index])
    if float(values[burn_in:].max()) <= peak * (1 + settings.rel_tol):
        return BoundVerdict(BoundKind.STABILIZED, burn_in, max_value=peak, attained_at=peak_index + 1)

    maxima = _window_maxima(values, settings.divergence_windows)
    if maxima is not None:
        run = maxima[-(settings.divergence_run + 1) :]
        with np.errstate(divide="ignore", invalid="ignore"):
            growth = run[1:] / run[:-1]
        if bool(np.all(growth >= settings.divergence_ratio)):
            return BoundVerdict(
                BoundKind.DIVERGING, burn_in, growth_witness=tuple(float(m) for m in run)
            )
    return BoundVerdict(
        BoundKind.INCONCLUSIVE, burn_in, reason="neither stabilized nor steadily growing"
    )


class CertificateStatus(str, Enum):
    HOLDS = "holds"
    VIOLATED = "violated"
    NOT_APPLICABLE = "not_applicable"


@dataclass(frozen=True)
class CertificateCheck:
    """
    Result of checking a comparability fact along a trajectory.

    Attributes:
        status: holds, violated or not applicable.
        violated_at: First index n where an inequality fails.
        checked_steps: Number of generated indices inspected.
        partial: The trajectory stopped early and only its generated prefix was checked.
        reason: Explanation for not-applicable results and partial checks.
    """

    status: CertificateStatus
    violated_at: Optional[int] = None
    checked_steps: int = 0
    partial: bool = False
    reason: str = ""

    def __str__(self) -> str:
        if self.status is CertificateStatus.VIOLATED:
            return f"violated_at({self.violated_at})"
        if self.status is CertificateStatus.HOLDS and self.partial:
            return f"holds (first {self.checked_steps} steps)"
        return self.status.value


def validate_certificate(
    traj: Trajectory, fact: ComparabilityFact, settings: Optional[SimulationSettings] = None
) -> CertificateCheck:
    """
    Check every inequality of ``fact`` at each generated index.

    Initial conditions are exempt. Exact trajectories are compared exactly; float
    trajectories within the relative tolerance. A trajectory that stopped early is
    checked over the terms it generated and the result is marked partial.
    """
    settings = settings or DEFAULT_SETTINGS
    if fact.existential:
        return CertificateCheck(CertificateStatus.NOT_APPLICABLE, reason="existential constants")
    partial = not traj.completed
    reason = f"trajectory {traj.status}" if partial else ""
    if len(traj) == 0:
        return CertificateCheck(CertificateStatus.NOT_APPLICABLE, partial=True, reason=reason)

    first: Optional[int] = None
    for lhs, rhs in fact.inequalities():
        if traj.mode is SimulationMode.EXACT:
            bad = _first_exact_violation(traj, lhs, rhs)
        else:
            bad = _first_float_violation(traj, lhs, rhs, settings.rel_tol)
        if bad is not None and (first is None or bad < first):
            first = bad
    if first is None:
        return CertificateCheck(
            CertificateStatus.HOLDS, checked_steps=len(traj), partial=partial, reason=reason
        )
    return CertificateCheck(
        CertificateStatus.VIOLATED,
        violated_at=first,
        checked_steps=len(traj),
        partial=partial,
        reason=reason,
    )


def _first_exact_violation(
    traj: Trajectory, lhs: tuple[Fraction, ...], rhs: tuple[Fraction, ...]
) -> Optional[int]:
    for n, (x, y) in enumerate(zip(traj.x, traj.y), start=1):
        left = lhs[0] * x + lhs[1] * y + lhs[2]
        right = rhs[0] * x + rhs[1] * y + rhs[2]
        if left > right:
            return n
    return None


def _first_float_violation(
    traj: Trajectory, lhs: tuple[Fraction, ...], rhs: tuple[Fraction, ...], rel_tol: float
) -> Optional[int]:
    x, y = traj.as_float("x"), traj.as_float("y")
    left = float(lhs[0]) * x + float(lhs[1]) * y + float(lhs[2])
    right = float(rhs[0]) * x + float(rhs[1]) * y + float(rhs[2])
    slack = rel_tol * np.maximum(np.abs(left), np.abs(right))
    bad = np.flatnonzero(left > right + slack)
    return int(bad[0]) + 1 if bad.size else None


def empirical_comparability(
    trajectories: Sequence[Trajectory],
    shape: Shape,
    orientation: Orientation = Orientation.DIRECT,
    burn_in: Optional[int] = None,
    settings: Optional[SimulationSettings] = None,
) -> Optional[ComparabilityFact]:
    """
    Comparability constants observed along trajectories.

    Supports one-sided and two-sided linear shapes. Ratios are taken after the
    burn-in and widened by the relative tolerance.

    Returns:
        An empirical fact, or None when the observed ratios are unbounded
        (a zero denominator with positive numerator) or no terms remain.

    Raises:
        PreconditionError: For affine shapes.
    """
    settings = settings or DEFAULT_SETTINGS
    if shape not in (Shape.ONE_SIDED_LINEAR, Shape.TWO_SIDED_LINEAR):
        raise PreconditionError(f"empirical constants are not available for {shape.value}")
    ratios_lo: list[float] = []
    ratios_hi: list[float] = []
    for traj in trajectories:
        if not traj.completed:
            continue
        start = int(len(traj) * settings.burn_in_fraction) if burn_in is None else burn_in
        u, v = traj.as_float("x")[start:], traj.as_float("y")[start:]
        if orientation is Orientation.SWAPPED:
            u, v = v, u
        if u.size == 0:
            continue
        if shape is Shape.ONE_SIDED_LINEAR:
            # v <= M * u
            if bool(np.any((u == 0) & (v > 0))):
                return None
            mask = u > 0
            if bool(mask.any()):
                ratios_hi.append(float((v[mask] / u[mask]).max()))
            else:
                ratios_hi.append(0.0)
        else:
            # M1 * v <= u <= M2 * v
            if bool(np.any(v == 0)):
                return None
            ratio = u / v
            ratios_lo.append(float(ratio.min()))
            ratios_hi.append(float(ratio.max()))
    if not ratios_hi:
        return None

    widen = 1 + settings.rel_tol
    if shape is Shape.ONE_SIDED_LINEAR:
        constants: tuple[Fraction, ...] = (to_fraction(max(ratios_hi) * widen),)
    else:
        low = min(ratios_lo) / widen
        if low <= 0:
            return None
        constants = (to_fraction(low), to_fraction(max(ratios_hi) * widen))
    return ComparabilityFact(
        shape,
        orientation,
        constants,
        Provenance.EMPIRICAL,
        note=f"observed on {len(trajectories)} trajectories after burn-in",
    )


# =============================================================================
# Batches
# =============================================================================


def trial_initial_conditions(
    k: int,
    trials: int,
    seed: int,
    *,
    positive: bool = False,
    settings: Optional[SimulationSettings] = None,
) -> list[InitialConditions]:
    """Seeded initial conditions, one independent stream per trial index."""
    settings = settings or DEFAULT_SETTINGS
    low = settings.positive_init_low if positive else settings.init_low
    streams = np.random.SeedSequence(seed).spawn(trials)
    return [
        InitialConditions.random(
            k, np.random.default_rng(s), low, settings.init_high, settings.init_decimals
        )
        for s in streams
    ]


TrialJob = tuple[RationalSystem, InitialConditions, int, SimulationMode, SimulationSettings]


def _run_one(args: TrialJob) -> Trajectory:
    return simulate(*args)


def run_trials(
    sys: RationalSystem,
    trials: int,
    steps: int,
    seed: int,
    *,
    mode: SimulationMode = SimulationMode.FLOAT64,
    positive_init: bool = False,
    workers: int = 1,
    show_progress: bool = True,
    settings: Optional[SimulationSettings] = None,
) -> list[Trajectory]:
    """
    Simulate ``trials`` seeded random initial conditions.

    Results are ordered by trial index and do not depend on ``workers``.

    Args:
        sys: A valid system.
        trials: Number of trajectories.
        steps: Steps per trajectory.
        seed: Seed of the initial-condition generator.
        mode: Arithmetic mode.
        positive_init: Draw strictly positive initial conditions.
        workers: Process count; 1 runs in-process.
        show_progress: Show a tqdm progress bar.
        settings: Simulator settings.
    """
    settings = settings or DEFAULT_SETTINGS
    if trials < 1:
        raise PreconditionError(f"trials must be positive, got {trials}")
    inits = trial_initial_conditions(sys.k, trials, seed, positive=positive_init, settings=settings)
    jobs = [(sys, init, steps, mode, settings) for init in inits]
    desc = f"Simulating {trials} trials"
    if workers <= 1:
        return [_run_one(job) for job in tqdm(jobs, desc=desc, disable=not show_progress)]
    with ProcessPoolExecutor(max_workers=workers) as executor:
        # map preserves submission order
        return list(
            tqdm(
                executor.map(_run_one, jobs),
                total=len(jobs),
                desc=desc,
                disable=not show_progress,
            )
        )


# =============================================================================
# Cross-checking an analysis
# =============================================================================


@dataclass(frozen=True)
class TrialOutcome:
    """Empirical findings for one trajectory of a verification batch."""

    index: int
    status: TrajectoryStatus
    verdicts: tuple[BoundVerdict, BoundVerdict]
    certificates: tuple[tuple[ComparabilityFact, CertificateCheck], ...]

    def verdict(self, sequence: str) -> BoundVerdict:
        return self.verdicts[0 if sequence == "x" else 1]


@dataclass(frozen=True)
class VerificationSummary:
    """
    Outcome of checking an analysis against simulated trajectories.

    Attributes:
        trials: Per-trial findings, ordered by trial index.
        violations: Certificate violations, one message per failing (trial, fact).
        conflicts: Sequences reported bounded that a trial saw diverging.
    """

    trials: tuple[TrialOutcome, ...]
    violations: tuple[str, ...]
    conflicts: tuple[str, ...]

    @property
    def ok(self) -> bool:
        return not self.violations and not self.conflicts

    def count(self, sequence: str, kind: BoundKind) -> int:
        return sum(1 for t in self.trials if t.verdict(sequence).kind is kind)


def cross_check(
    report: "AnalysisReport",
    trajectories: Sequence[Trajectory],
    burn_in: Optional[int] = None,
    settings: Optional[SimulationSettings] = None,
) -> VerificationSummary:
    """
    Compare an analysis with simulated trajectories.

    Every concrete, non-empirical comparability fact of the report is checked along
    every trajectory, and every sequence the report proves bounded must not be
    seen diverging.
    """
    settings = settings or DEFAULT_SETTINGS
    checked_facts = [
        f for f in report.facts if not f.existential and f.provenance is not Provenance.EMPIRICAL
    ]
    outcomes: list[TrialOutcome] = []
    violations: list[str] = []
    conflicts: list[str] = []
    for index, traj in enumerate(trajectories):
        verdicts = (
            _safe_bound(traj, "x", burn_in, settings),
            _safe_bound(traj, "y", burn_in, settings),
        )
        certificates = tuple((f, validate_certificate(traj, f, settings)) for f in checked_facts)
        for fact, check in certificates:
            if check.status is CertificateStatus.VIOLATED:
                violations.append(
                    f"trial {index}: {fact.describe()} [{fact.provenance.value}] {check}"
                )
        for verdict in report.verdicts:
            seen = verdicts[0 if verdict.sequence == "x" else 1]
            if verdict.proven_bounded and seen.kind is BoundKind.DIVERGING:
                conflicts.append(
                    f"trial {index}: {verdict.sequence} reported bounded by "
                    f"{', '.join(verdict.by)} but diverging"
                )
        outcomes.append(TrialOutcome(index, traj.status, verdicts, certificates))
    if violations or conflicts:
        logger.info("Verification found %d violations, %d conflicts", len(violations), len(conflicts))
    return VerificationSummary(tuple(outcomes), tuple(violations), tuple(conflicts))


def _safe_bound(
    traj: Trajectory, which: str, burn_in: Optional[int], settings: SimulationSettings
) -> BoundVerdict:
    if burn_in is not None and burn_in >= len(traj):
        return BoundVerdict(BoundKind.INCONCLUSIVE, burn_in, reason="trajectory shorter than burn-in")
    return empirical_bound(traj, which, burn_in, settings)
