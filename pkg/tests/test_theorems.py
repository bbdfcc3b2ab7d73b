from __future__ import annotations

import warnings
from typing import Optional

import pytest

from ratbound.comparability import (
    ComparabilityFacts,
    Orientation,
    Provenance,
    Rigor,
    Shape,
    assert_fact,
    derive_comparability,
)
from ratbound.corpus import check_example, expected_derivations, load_example
from ratbound.errors import PreconditionError, TableError
from ratbound.model import RationalSystem, index_sets, swap_system
from ratbound.theorems import (
    CURRENT_TABLE_VERSION,
    TABLE_REGISTRY,
    BoundednessFact,
    Conclusion,
    SetExpr,
    TheoremHypotheses,
    TheoremTable,
    analyze,
    bounds_from_applications,
    evaluate_theorem,
    explain,
    get_default_table,
)

DIRECT, SWAPPED = Orientation.DIRECT, Orientation.SWAPPED

# (row on sys, mirrored row on swap(sys))
MIRRORED_ROWS = [
    ((2, None), (1, None)),
    ((21, None), (20, None)),
    ((4, "i"), (3, "ii")),
    ((4, "ii"), (3, "iii")),
    ((4, "iii"), (3, "i")),
]


def applies(system: RationalSystem, theorem: int, case: Optional[str]) -> bool:
    row = get_default_table().find(theorem, case)
    return evaluate_theorem(system, row, derive_comparability(system)) is not None


class TestSetExpr:
    """Set expressions over the eight index sets."""

    def test_union_and_difference(self, example3: RationalSystem) -> None:
        """Operators associate to the left; parentheses group."""
        sets = index_sets(example3)
        assert SetExpr.parse("beta|gamma").evaluate(sets).sorted() == (1,)
        assert SetExpr.parse("beta|B-C").evaluate(sets).sorted() == (2,)
        assert SetExpr.parse("beta|(B-C)").evaluate(sets).sorted() == (1, 2)

    def test_names(self) -> None:
        """Referenced set names are collected."""
        assert SetExpr.parse("beta | (gamma - C)").names() == {"beta", "gamma", "C"}
        assert str(SetExpr.parse("beta | (gamma - C)")) == "beta|(gamma-C)"

    @pytest.mark.parametrize("text", ["", "beta|", "(beta", "beta)", "zeta", "beta & C"])
    def test_malformed(self, text: str) -> None:
        """Malformed expressions raise TableError."""
        with pytest.raises(TableError):
            SetExpr.parse(text)


class TestTheoremTable:
    """The transcribed hypothesis table."""

    def test_registry(self) -> None:
        """The default table is the current registered version."""
        assert get_default_table() is TABLE_REGISTRY[CURRENT_TABLE_VERSION]
        assert TheoremTable.get_version("1.0.0").version == "1.0.0"

    def test_unknown_version(self) -> None:
        """Unknown versions list the available ones."""
        with pytest.raises(TableError, match="Unknown theorem table version"):
            TheoremTable.get_version("0.0.1")

    def test_covers_every_theorem(self) -> None:
        """Theorems 1 to 23 each have at least one row; 36 rows in all."""
        table = get_default_table()
        assert {r.id for r in table.rows} == set(range(1, 24))
        assert len(table.rows) == 36

    def test_rows_sorted(self) -> None:
        """Rows are ordered by theorem and case."""
        keys = [r.sort_key for r in get_default_table().rows]
        assert keys == sorted(keys)

    def test_case_rows(self) -> None:
        """Case-split theorems expose every case."""
        table = get_default_table()
        assert [r.case_id for r in table.cases(10)] == ["i", "ii", "iii"]
        assert table.find(14, "ii").label == "T14(ii)"
        with pytest.raises(PreconditionError):
            table.find(14, "iii")

    def test_conclusions(self) -> None:
        """Theorems 7 to 11 bound x alone."""
        table = get_default_table()
        for row in table.rows:
            expected = Conclusion.X if 7 <= row.id <= 11 else Conclusion.BOTH
            assert row.conclusion is expected, row.label

    def test_strict_rows(self) -> None:
        """Only theorems 22 and 23 need a strict two-sided affine fact."""
        strict = {r.id for r in get_default_table().rows if r.strict}
        assert strict == {22, 23}

    def test_round_trip(self) -> None:
        """to_dict and from_dict preserve every row."""
        table = get_default_table()
        assert TheoremTable.from_dict(table.to_dict()) == table

    def test_duplicate_rows_rejected(self) -> None:
        """Two rows with the same theorem and case are an error."""
        row = get_default_table().find(1).to_dict()
        with pytest.raises(TableError, match="Duplicate"):
            TheoremTable.from_dict({"table_version": "x", "rows": [row, row]})

    @pytest.mark.parametrize(
        "patch",
        [
            {"signs": {"zeta": "positive"}},
            {"signs": {"A": "negative"}},
            {"bounded_input": "sideways"},
            {"conclusion": "z"},
            {"comparability": "three_sided"},
            {"eta": [["beta", "B"], ["gamma", "C"], ["delta", "D"]]},
        ],
    )
    def test_malformed_rows(self, patch: dict) -> None:
        """Bad names or values in a row raise TableError."""
        row = get_default_table().find(1).to_dict()
        row.update(patch)
        with pytest.raises(TableError):
            TheoremHypotheses.from_dict(row)


class TestEvaluateTheorem:
    """Single-row evaluation."""

    def test_example1_theorem1(self, example1: RationalSystem) -> None:
        """Theorem 1 applies using the two-sided linear fact."""
        row = get_default_table().find(1)
        app = evaluate_theorem(example1, row, derive_comparability(example1))
        assert app is not None
        assert app.conclusion is Conclusion.BOTH
        assert app.facts_used[0].shape is Shape.TWO_SIDED_LINEAR
        assert app.eta_evidence[0].eta_min == 2
        assert app.rigor is Rigor.RIGOROUS

    def test_example3_theorem10_case_iii(self, example3: RationalSystem) -> None:
        """Theorem 10 case (iii) bounds x without any comparability."""
        row = get_default_table().find(10, "iii")
        app = evaluate_theorem(example3, row, derive_comparability(example3))
        assert app is not None
        assert app.conclusion is Conclusion.X
        assert app.facts_used == ()

    def test_example7_theorem21(self) -> None:
        """Theorem 21 applies to the seventh example."""
        assert applies(load_example("example07").system, 21, None)

    def test_example1_theorem6_sign_fails(self, example1: RationalSystem) -> None:
        """alpha > 0 violates theorem 6."""
        assert not applies(example1, 6, None)

    def test_strict_requirement(self) -> None:
        """A non-strict two-sided affine fact does not satisfy theorem 22."""
        system = load_example("example10").system
        row = get_default_table().find(22, "ii")
        loose = assert_fact("two_sided_affine", "direct", [1, 1, 1, 2])
        strict = loose.padded()
        assert evaluate_theorem(system, row, ComparabilityFacts((loose,))) is None
        assert evaluate_theorem(system, row, ComparabilityFacts((strict,))) is not None

    def test_bounded_input(self) -> None:
        """Theorem 11 needs a bound on y; theorem 9 also needs it away from zero."""
        system = RationalSystem.build(1, alpha=1, beta=[1], A=1, B=[1], C=[1], p=1, q=1)
        table = get_default_table()
        facts = derive_comparability(system)
        above = BoundednessFact("y", True, False, Rigor.USER_ASSERTED, "user")
        both = BoundednessFact("y", True, True, Rigor.USER_ASSERTED, "user")
        assert evaluate_theorem(system, table.find(11), facts) is None
        app = evaluate_theorem(system, table.find(11), facts, bounds=[above])
        assert app is not None and app.rigor is Rigor.USER_ASSERTED
        assert evaluate_theorem(system, table.find(9), facts, bounds=[above]) is None
        assert evaluate_theorem(system, table.find(9), facts, bounds=[both]) is not None


class TestSwapMirror:
    """Rows that are mirror images of each other agree under the swap."""

    @pytest.mark.parametrize("row, mirror", MIRRORED_ROWS)
    def test_corpus(self, row: tuple, mirror: tuple) -> None:
        """Mirrored rows agree on every bundled example."""
        for name in expected_derivations():
            system = load_example(name).system
            assert applies(system, *row) == applies(swap_system(system), *mirror), name

    def test_random_systems(self, random_systems: list[RationalSystem]) -> None:
        """Zero mismatches over 1,000 seeded random systems."""
        mismatches = []
        hits = 0
        for system in random_systems:
            swapped = swap_system(system)
            for row, mirror in MIRRORED_ROWS:
                left, right = applies(system, *row), applies(swapped, *mirror)
                hits += left
                if left != right:
                    mismatches.append((system.describe(), row, mirror))
        assert mismatches == []
        assert hits > 0

    def test_analysis_of_swap(self, random_systems: list[RationalSystem]) -> None:
        """Analyzing the swapped system flips every orientation and verdict."""
        for system in random_systems:
            report = analyze(system)
            mirrored = analyze(swap_system(system))
            labels = {(a.theorem_id, a.case_id, a.orientation.flipped()) for a in report.applications}
            assert labels == {(a.theorem_id, a.case_id, a.orientation) for a in mirrored.applications}
            assert report.verdict("x").proven_bounded == mirrored.verdict("y").proven_bounded


class TestAnalyze:
    """Whole-system analysis."""

    @pytest.mark.parametrize("name", sorted(expected_derivations()))
    def test_corpus(self, name: str) -> None:
        """Each bundled example reproduces its expected derivation."""
        result = check_example(name, expected_derivations()[name])
        assert result.ok, result.missing

    def test_example9_swapped(self) -> None:
        """Theorem 14 case (ii) applies to the swapped ninth example."""
        report = analyze(load_example("example09").system)
        (app,) = report.find(14, "ii", SWAPPED)
        assert app.label == "T14(ii) swapped"
        assert app.conclusion is Conclusion.BOTH
        assert all(f.orientation is SWAPPED for f in app.facts_used)

    def test_example8_strict_fact(self) -> None:
        """Theorem 22 case (i) uses the padded fact from theorem 27."""
        report = analyze(load_example("example08").system)
        (app,) = report.find(22, "i", DIRECT)
        (fact,) = app.facts_used
        assert fact.strict
        assert fact.provenance is Provenance.THEOREM27

    def test_zero_numerators(self) -> None:
        """x = 0/A and y = 0/q are bounded through a vacuous eta condition."""
        report = analyze(RationalSystem.build(2, A=1, q=1))
        assert report.has_application(1, None, DIRECT)
        assert report.verdict("x").proven_bounded
        assert report.verdict("y").proven_bounded

    def test_unproven_is_not_unbounded(self, example3: RationalSystem) -> None:
        """A sequence no row covers is reported unproven with no rigor."""
        verdict = analyze(example3).verdict("y")
        assert verdict.status == "unproven"
        assert verdict.rigor is None
        assert verdict.to_dict()["by"] == []

    def test_user_fact_lowers_rigor(self) -> None:
        """Applications resting on user assertions are user_asserted."""
        document = load_example("example02")
        report = analyze(document.system, document.facts)
        assert report.verdict("x").rigor is Rigor.USER_ASSERTED

    def test_bounds_enable_theorem11(self) -> None:
        """A user bound on y lets theorem 11 bound x."""
        system = RationalSystem.build(1, alpha=1, beta=[1], A=1, B=[1], C=[1], p=1, q=1)
        bound = BoundednessFact("y", True, False, Rigor.USER_ASSERTED, "user")
        report = analyze(system, bounds=[bound])
        assert report.has_application(11)
        assert report.bounds == (bound,)

    def test_empirical_bound_warns(self) -> None:
        """Applications resting on empirical bounds trigger a UserWarning."""
        system = RationalSystem.build(1, alpha=1, beta=[1], A=1, B=[1], C=[1], p=1, q=1)
        bound = BoundednessFact("y", True, False, Rigor.EMPIRICAL, "empirical")
        with pytest.warns(UserWarning, match="empirical"):
            report = analyze(system, bounds=[bound])
        assert report.verdict("x").rigor is not None

    def test_deterministic(self, example1: RationalSystem) -> None:
        """Repeated analysis gives the same report."""
        with warnings.catch_warnings():
            warnings.simplefilter("error")
            assert analyze(example1) == analyze(example1)

    def test_facts_only_add_applications(self, random_systems: list[RationalSystem]) -> None:
        """Asserting a fact never removes a theorem application."""
        extra = [assert_fact("two_sided_linear", "direct", None)]
        for system in random_systems:
            before = {(a.theorem_id, a.case_id, a.orientation) for a in analyze(system).applications}
            after = {(a.theorem_id, a.case_id, a.orientation) for a in analyze(system, extra).applications}
            assert before <= after, system.describe()

    def test_chained_bounds_are_upper_only(self, example1: RationalSystem) -> None:
        """Bounds from applications carry no positive lower bound, so theorem 9 never chains."""
        report = analyze(example1)
        derived = bounds_from_applications(report.applications)
        assert derived
        assert all(b.above and not b.below for b in derived)
        assert not report.has_application(9)

    def test_unknown_sequence(self, example1: RationalSystem) -> None:
        """Only x and y have verdicts."""
        with pytest.raises(PreconditionError):
            analyze(example1).verdict("z")


class TestExplain:
    """Clause-by-clause traces."""

    def test_all_clauses_reported(self, example1: RationalSystem) -> None:
        """Evaluation continues past the first failing clause."""
        trace = explain(example1, 6)
        assert [c.passed for c in trace] == [False, False, False, True]
        assert trace[-1].clause == "comparability two_sided_linear"

    def test_passing_row(self, example1: RationalSystem) -> None:
        """Every clause of an applicable row passes."""
        trace = explain(example1, 1)
        assert all(c.passed for c in trace)
        assert any(c.clause.startswith("eta(") and "eta_min = 2" in c.detail for c in trace)

    def test_swapped(self) -> None:
        """The swapped reading of the ninth example passes theorem 14 case (ii)."""
        system = load_example("example09").system
        assert all(c.passed for c in explain(system, 14, "ii", orientation=SWAPPED))
        assert not all(c.passed for c in explain(system, 14, "ii"))

    def test_unknown_row(self, example1: RationalSystem) -> None:
        """Unknown rows raise."""
        with pytest.raises(PreconditionError):
            explain(example1, 99)
