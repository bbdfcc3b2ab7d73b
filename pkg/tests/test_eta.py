from __future__ import annotations

from itertools import chain, combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ratbound.errors import PreconditionError
from ratbound.eta import (
    EtaQuery,
    EtaStatus,
    accepts_eta,
    eta_decide,
    eta_oracle,
    parse_index_list,
    surviving_sequence_ok,
)
from ratbound.model import IndexSet


def subsets(k: int) -> list[tuple[int, ...]]:
    lags = range(1, k + 1)
    return list(chain.from_iterable(combinations(lags, r) for r in range(k + 1)))


class TestEtaDecide:
    """Exact decisions for small queries."""

    @pytest.mark.parametrize(
        "k, source, target, eta_min",
        [
            (2, [1], [2], 2),
            (2, [1, 2], [1, 2], 1),
            (2, [1, 2], [2], 2),
            (2, [2], [1, 2], 1),
            (3, [1], [3], 3),
            (3, [1, 2], [2, 3], 2),
        ],
    )
    def test_holds(self, k: int, source: list[int], target: list[int], eta_min: int) -> None:
        """Minimal eta of queries that hold."""
        decision = eta_decide(EtaQuery.of(k, source, target))
        assert decision.status is EtaStatus.HOLDS
        assert decision.eta_min == eta_min
        assert decision.witness is not None
        assert len(decision.witness) == eta_min - 1

    def test_witness_is_longest_survivor(self) -> None:
        """With source {1} and target {3} the survivor is 1,1."""
        decision = eta_decide(EtaQuery.of(3, [1], [3]))
        assert decision.witness == (1, 1)

    def test_parity_obstruction_fails(self) -> None:
        """Sums of 2s are even, so the target {3} is never reached."""
        decision = eta_decide(EtaQuery.of(3, [2], [3]))
        assert decision.status is EtaStatus.FAILS
        assert decision.eta_min is None
        assert decision.cycle_block == (2,)
        assert decision.failure_sequence(7) == (2,) * 7

    def test_empty_source_is_vacuous(self) -> None:
        """No sequences over an empty source: holds with eta 1."""
        for target in ([], [1], [1, 2]):
            decision = eta_decide(EtaQuery.of(2, [], target))
            assert decision.holds
            assert decision.eta_min == 1

    def test_empty_target_fails(self) -> None:
        """A non-empty source can never hit an empty target."""
        assert not eta_decide(EtaQuery.of(2, [1], [])).holds

    def test_target_above_source_sums(self) -> None:
        """Source {1, 3} avoids target {2} by repeating 3."""
        decision = eta_decide(EtaQuery.of(3, [1, 3], [2]))
        assert decision.status is EtaStatus.FAILS
        assert surviving_sequence_ok(decision.query, decision.failure_sequence(12))

    def test_rejects_out_of_range(self) -> None:
        """Sets must lie in 1..k."""
        with pytest.raises(PreconditionError):
            EtaQuery.of(2, [3], [1])
        with pytest.raises(PreconditionError):
            EtaQuery.of(0, [], [])

    def test_failure_sequence_needs_cycle(self) -> None:
        """Only failed decisions carry a failure cycle."""
        decision = eta_decide(EtaQuery.of(2, [1], [2]))
        with pytest.raises(PreconditionError):
            decision.failure_sequence(3)

    def test_to_dict(self) -> None:
        """Serialized decisions list lags in ascending order."""
        data = eta_decide(EtaQuery.of(2, [2, 1], [2])).to_dict()
        assert data["source"] == [1, 2]
        assert data["holds"] is True
        assert data["eta_min"] == 2
        failed = eta_decide(EtaQuery.of(3, [2], [3])).to_dict()
        assert failed["cycle"]["block"] == [2]


class TestAcceptsEta:
    def test_any_eta_above_minimum(self) -> None:
        """A larger eta than the minimum is accepted."""
        query = EtaQuery.of(2, [1], [2])
        assert not accepts_eta(query, 1)
        assert accepts_eta(query, 2)
        assert accepts_eta(query, 5)

    def test_failing_query(self) -> None:
        """No eta satisfies a failing condition."""
        assert not accepts_eta(EtaQuery.of(3, [2], [3]), 100)


class TestEtaOracle:
    """Brute-force enumeration."""

    def test_single_symbol(self) -> None:
        """Over the single sequence 1,1,... the target {2} is hit at length 2."""
        decision = eta_oracle(EtaQuery.of(2, [1], [2]), max_len=4)
        assert decision.status is EtaStatus.HOLDS
        assert decision.eta_min == 2

    def test_two_symbols(self) -> None:
        """All sequences over {1, 2} of length 2 contain a window summing to 2."""
        decision = eta_oracle(EtaQuery.of(2, [1, 2], [2]), max_len=4)
        assert decision.eta_min == 2

    def test_parity_undetermined(self) -> None:
        """The repeated 2 survives at every length the oracle tries."""
        decision = eta_oracle(EtaQuery.of(3, [2], [3]), max_len=12)
        assert decision.status is EtaStatus.UNDETERMINED
        assert decision.witness == (2,) * 12

    def test_budget_exceeded(self) -> None:
        """A too small budget is reported, never silently truncated."""
        decision = eta_oracle(EtaQuery.of(3, [1, 3], [2]), max_len=20, budget=10)
        assert decision.status is EtaStatus.BUDGET_EXCEEDED

    def test_bad_max_len(self) -> None:
        """max_len must be positive."""
        with pytest.raises(PreconditionError):
            eta_oracle(EtaQuery.of(2, [1], [2]), max_len=0)

    def test_agrees_with_decider_for_k3(self) -> None:
        """All 64 source/target pairs over 1..3 agree wherever the oracle is determined."""
        checked = 0
        for source in subsets(3):
            for target in subsets(3):
                query = EtaQuery.of(3, source, target)
                decided = eta_decide(query)
                oracle = eta_oracle(query, max_len=9)
                if oracle.status is EtaStatus.HOLDS:
                    assert decided.holds, query
                    assert decided.eta_min == oracle.eta_min, query
                    checked += 1
                else:
                    assert oracle.status is EtaStatus.UNDETERMINED
                    assert not decided.holds, query
        assert checked > 0


lag_sets = st.frozensets(st.integers(min_value=1, max_value=4), max_size=4)


class TestEtaProperties:
    """Properties of the decider on random queries with k = 4."""

    @settings(max_examples=200, deadline=None)
    @given(source=lag_sets, target=lag_sets)
    def test_witness_and_failure_sequences_survive(
        self, source: frozenset[int], target: frozenset[int]
    ) -> None:
        """Witnesses and failure sequences never hit the target; one more symbol always does."""
        query = EtaQuery(4, IndexSet(source), IndexSet(target))
        decision = eta_decide(query)
        if decision.holds:
            assert decision.witness is not None
            assert surviving_sequence_ok(query, decision.witness)
            for symbol in source:
                extended = decision.witness + (symbol,)
                assert not surviving_sequence_ok(query, extended)
        else:
            assert surviving_sequence_ok(query, decision.failure_sequence(30))

    @settings(max_examples=200, deadline=None)
    @given(source=lag_sets, target=lag_sets, extra=lag_sets)
    def test_monotone_in_sets(
        self, source: frozenset[int], target: frozenset[int], extra: frozenset[int]
    ) -> None:
        """A larger target or a smaller source never needs a larger eta."""
        base = eta_decide(EtaQuery(4, IndexSet(source), IndexSet(target)))
        if not base.holds:
            return
        assert base.eta_min is not None
        wider = eta_decide(EtaQuery(4, IndexSet(source), IndexSet(target | extra)))
        narrower = eta_decide(EtaQuery(4, IndexSet(source - extra), IndexSet(target)))
        for decision in (wider, narrower):
            assert decision.holds
            assert decision.eta_min is not None and decision.eta_min <= base.eta_min

    @settings(max_examples=200, deadline=None)
    @given(source=lag_sets, target=lag_sets)
    def test_eta_min_bounded_by_states(
        self, source: frozenset[int], target: frozenset[int]
    ) -> None:
        """eta_min never exceeds 2^k + 1; a source inside the target needs eta 1."""
        decision = eta_decide(EtaQuery(4, IndexSet(source), IndexSet(target)))
        if decision.holds:
            assert decision.eta_min is not None and decision.eta_min <= 2**4 + 1
        if source and source <= target:
            assert decision.eta_min == 1

    @settings(max_examples=100, deadline=None)
    @given(source=lag_sets, target=lag_sets, eta=st.integers(min_value=1, max_value=12))
    def test_monotone_in_eta(
        self, source: frozenset[int], target: frozenset[int], eta: int
    ) -> None:
        """If eta is accepted, so is every larger value."""
        query = EtaQuery(4, IndexSet(source), IndexSet(target))
        if accepts_eta(query, eta):
            assert accepts_eta(query, eta + 1)


class TestParseIndexList:
    def test_parses_commas(self) -> None:
        """Comma-separated lags, whitespace tolerated."""
        assert parse_index_list("1, 2") == IndexSet.of(1, 2)

    def test_empty(self) -> None:
        """An empty string is the empty set."""
        assert parse_index_list("") == IndexSet()

    def test_rejects_garbage(self) -> None:
        """Non-integers are rejected."""
        with pytest.raises(PreconditionError):
            parse_index_list("1,a")
