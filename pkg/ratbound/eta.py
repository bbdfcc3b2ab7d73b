"""
Iteration Condition
===================

Decides the window-sum condition that almost every boundedness theorem carries as
a hypothesis: given a source set ``S`` and a target set ``T`` of lags, is there a
positive integer eta such that every sequence ``c_1, c_2, ...`` with entries in
``S`` has a contiguous window ``c_a + ... + c_b`` (``a <= b <= eta``) whose sum
lies in ``T``?

The decision procedure walks a subset automaton. A state is the set of suffix
window sums of the sequence read so far, capped at ``k`` because targets never
exceed ``k`` and every symbol is at least 1. Reading symbol ``c`` maps state ``P``
to ``{s + c : s in P, s + c <= k} | {c}``. A state that meets ``T`` ends the
sequence. The condition holds exactly when the graph of reachable, non-hitting
states is acyclic, and the minimal eta is one more than its longest path.

Key Functions:
--------------
- **eta_decide**: automaton decision with minimal eta and a witness.
- **eta_oracle**: exhaustive enumeration used to cross-check the decider.
- **accepts_eta**: whether a user-supplied eta is large enough.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import Any, Iterable, Optional, Sequence

import numpy as np

from .errors import PreconditionError
from .model import IndexSet

logger = logging.getLogger(__name__)

State = frozenset[int]


class EtaStatus(str, Enum):
    """Outcome of an eta query."""

    HOLDS = "holds"
    FAILS = "fails"
    UNDETERMINED = "undetermined"
    BUDGET_EXCEEDED = "budget_exceeded"


@dataclass(frozen=True)
class EtaQuery:
    """A source/target pair over lags ``1..k``."""

    k: int
    source: IndexSet
    target: IndexSet

    @classmethod
    def of(cls, k: int, source: Iterable[int], target: Iterable[int]) -> "EtaQuery":
        return cls(k, IndexSet(frozenset(source)), IndexSet(frozenset(target))).validated()

    def validated(self) -> "EtaQuery":
        """Return self, or raise PreconditionError if a set escapes ``1..k``."""
        if not isinstance(self.k, int) or self.k < 1:
            raise PreconditionError(f"k must be a positive integer, got {self.k!r}")
        for label, members in (("source", self.source), ("target", self.target)):
            if not members.within(self.k):
                raise PreconditionError(f"{label} {members} is not a subset of 1..{self.k}")
        return self


@dataclass(frozen=True)
class EtaDecision:
    """
    Verdict of an eta query.

    Attributes:
        query: The query that was decided.
        status: Outcome; only the oracle reports UNDETERMINED or BUDGET_EXCEEDED.
        eta_min: Minimal eta, present iff the condition holds.
        witness: When the condition holds, a longest sequence over the source
            with no window sum in the target (length ``eta_min - 1``). When the
            oracle is undetermined, a surviving sequence of the maximal length.
        cycle_prefix: Symbols leading from the start state into the failure cycle.
        cycle_block: Symbols of the failure cycle; repeating it after the prefix
            yields arbitrarily long sequences that never hit the target.
        cycle_states: Automaton states visited by the cycle, in order.
        states_explored: Reachable non-hitting automaton states (decider), or
            sequences enumerated (oracle).
    """

    query: EtaQuery
    status: EtaStatus
    eta_min: Optional[int] = None
    witness: Optional[tuple[int, ...]] = None
    cycle_prefix: Optional[tuple[int, ...]] = None
    cycle_block: Optional[tuple[int, ...]] = None
    cycle_states: Optional[tuple[State, ...]] = None
    states_explored: int = 0

    @property
    def holds(self) -> bool:
        return self.status is EtaStatus.HOLDS

    def failure_sequence(self, length: int) -> tuple[int, ...]:
        """First ``length`` symbols of the infinite non-hitting sequence."""
        if self.cycle_block is None or self.cycle_prefix is None:
            raise PreconditionError("Decision carries no failure cycle")
        seq = list(self.cycle_prefix)
        while len(seq) < length:
            seq.extend(self.cycle_block)
        return tuple(seq[:length])

    def to_dict(self) -> dict[str, Any]:
        data: dict[str, Any] = {
            "k": self.query.k,
            "source": list(self.query.source.sorted()),
            "target": list(self.query.target.sorted()),
            "status": self.status.value,
            "holds": self.holds,
            "eta_min": self.eta_min,
            "witness": list(self.witness) if self.witness is not None else None,
        }
        if self.cycle_block is not None:
            data["cycle"] = {
                "prefix": list(self.cycle_prefix or ()),
                "block": list(self.cycle_block),
                "states": [sorted(s) for s in self.cycle_states or ()],
            }
        return data


def parse_index_list(text: str) -> IndexSet:
    """Parse ``"1,2"`` into an IndexSet; an empty string is the empty set.

    Raises:
        PreconditionError: If an entry is not a positive integer.
    """
    members: set[int] = set()
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        try:
            value = int(part)
        except ValueError as e:
            raise PreconditionError(f"Not a lag index: {part!r}") from e
        if value < 1:
            raise PreconditionError(f"Lag indices start at 1, got {value}")
        members.add(value)
    return IndexSet(frozenset(members))


def _successor(state: State, symbol: int, k: int) -> State:
    return frozenset({s + symbol for s in state if s + symbol <= k} | {symbol})


def _crawl(query: EtaQuery) -> tuple[list[State], list[list[tuple[int, int]]]]:
    """Breadth-first exploration of the non-hitting part of the automaton.

    Returns the states (start state first) and, per state, the ``(symbol, target)``
    edges that stay non-hitting.
    """
    symbols = query.source.sorted()
    target = query.target.members
    start: State = frozenset()
    states: list[State] = [start]
    index: dict[State, int] = {start: 0}
    edges: list[list[tuple[int, int]]] = []

    i = 0
    while i < len(states):
        out: list[tuple[int, int]] = []
        for c in symbols:
            nxt = _successor(states[i], c, query.k)
            if nxt & target:
                continue
            if nxt not in index:
                index[nxt] = len(states)
                states.append(nxt)
            out.append((c, index[nxt]))
        edges.append(out)
        i += 1
    return states, edges


@lru_cache(maxsize=4096)
def eta_decide(query: EtaQuery) -> EtaDecision:
    """Decide the iteration condition and compute the minimal eta.

    An empty source holds vacuously with ``eta_min = 1``. An empty target with a
    non-empty source always fails.

    Args:
        query: A query whose sets lie in ``1..k``.

    Returns:
        EtaDecision with status HOLDS or FAILS.

    Example:
        >>> eta_decide(EtaQuery.of(2, [1], [2])).eta_min
        2
    """
    query.validated()
    if not query.source:
        return EtaDecision(query, EtaStatus.HOLDS, eta_min=1, witness=())

    states, edges = _crawl(query)
    logger.debug("eta automaton for %s -> %s: %d states", query.source, query.target, len(states))

    # Iterative DFS: detects a reachable cycle, otherwise fills longest-path lengths.
    white, grey, black = 0, 1, 2
    colour = [white] * len(states)
    longest = [0] * len(states)
    stack: list[tuple[int, int]] = [(0, 0)]
    via: list[int] = []  # symbol used to enter stack[i + 1]
    colour[0] = grey
    while stack:
        node, pos = stack[-1]
        if pos < len(edges[node]):
            stack[-1] = (node, pos + 1)
            symbol, nxt = edges[node][pos]
            if colour[nxt] == grey:
                return _failure(query, states, stack, via, symbol, nxt)
            if colour[nxt] == white:
                colour[nxt] = grey
                stack.append((nxt, 0))
                via.append(symbol)
            continue
        colour[node] = black
        longest[node] = max((1 + longest[t] for _, t in edges[node]), default=0)
        stack.pop()
        if via:
            via.pop()

    witness: list[int] = []
    node = 0
    while longest[node] > 0:
        for symbol, nxt in edges[node]:
            if 1 + longest[nxt] == longest[node]:
                witness.append(symbol)
                node = nxt
                break
    return EtaDecision(
        query,
        EtaStatus.HOLDS,
        eta_min=longest[0] + 1,
        witness=tuple(witness),
        states_explored=len(states),
    )


def _failure(
    query: EtaQuery,
    states: list[State],
    stack: list[tuple[int, int]],
    via: list[int],
    closing_symbol: int,
    closing_node: int,
) -> EtaDecision:
    start = next(i for i, (node, _) in enumerate(stack) if node == closing_node)
    prefix = tuple(via[:start])
    block = tuple(via[start:]) + (closing_symbol,)
    cycle_states = tuple(states[node] for node, _ in stack[start:])
    return EtaDecision(
        query,
        EtaStatus.FAILS,
        cycle_prefix=prefix,
        cycle_block=block,
        cycle_states=cycle_states,
        states_explored=len(states),
    )


def eta_oracle(query: EtaQuery, max_len: int, budget: int = 2_000_000) -> EtaDecision:
    """Decide the condition by enumerating every sequence up to ``max_len``.

    Sequences are grown one symbol at a time; a sequence is dropped as soon as one
    of its windows ending at the newest symbol sums into the target, so only the
    new suffix sums need checking at each step.

    Args:
        query: The query to decide.
        max_len: Longest sequence length to enumerate.
        budget: Maximum number of sequences to enumerate in total.

    Returns:
        HOLDS with the minimal eta when every sequence of some length ``L <= max_len``
        hits the target, UNDETERMINED when survivors remain at ``max_len``, or
        BUDGET_EXCEEDED when the enumeration would exceed ``budget``.
    """
    query.validated()
    if max_len < 1:
        raise PreconditionError(f"max_len must be positive, got {max_len}")
    if not query.source:
        return EtaDecision(query, EtaStatus.HOLDS, eta_min=1, witness=())

    symbols = np.array(query.source.sorted(), dtype=np.int64)
    target = np.array(query.target.sorted(), dtype=np.int64)
    survivors = np.zeros((1, 0), dtype=np.int64)
    enumerated = 0

    for length in range(1, max_len + 1):
        n = survivors.shape[0] * symbols.size
        if enumerated + n > budget:
            return EtaDecision(query, EtaStatus.BUDGET_EXCEEDED, states_explored=enumerated)
        enumerated += n
        prefixes = np.repeat(survivors, symbols.size, axis=0)
        last = np.tile(symbols, survivors.shape[0])[:, None]
        grown = np.concatenate([prefixes, last], axis=1)
        suffix_sums = np.cumsum(grown[:, ::-1], axis=1)
        hit = np.isin(suffix_sums, target).any(axis=1)
        if hit.all():
            return EtaDecision(
                query,
                EtaStatus.HOLDS,
                eta_min=length,
                witness=tuple(int(c) for c in survivors[0]),
                states_explored=enumerated,
            )
        survivors = grown[~hit]

    return EtaDecision(
        query,
        EtaStatus.UNDETERMINED,
        witness=tuple(int(c) for c in survivors[0]),
        states_explored=enumerated,
    )


def accepts_eta(query: EtaQuery, eta: int) -> bool:
    """True if ``eta`` satisfies the condition, i.e. it holds and ``eta >= eta_min``."""
    decision = eta_decide(query)
    return decision.holds and decision.eta_min is not None and eta >= decision.eta_min


def surviving_sequence_ok(query: EtaQuery, seq: Sequence[int]) -> bool:
    """True if ``seq`` uses only source symbols and no window of it sums into the target."""
    if any(c not in query.source for c in seq):
        return False
    target = query.target.members
    for end in range(len(seq)):
        total = 0
        for start in range(end, -1, -1):
            total += seq[start]
            if total in target:
                return False
    return True
