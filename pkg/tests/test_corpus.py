from __future__ import annotations

import pytest

from ratbound.corpus import (
    check_corpus,
    check_example,
    example_names,
    expected_derivations,
    list_examples,
    load_example,
)


class TestCorpus:
    """Bundled example systems."""

    def test_names(self) -> None:
        """Ten examples, each with an expected derivation."""
        names = example_names()
        assert names == [f"example{i:02d}" for i in range(1, 11)]
        assert sorted(expected_derivations()) == names

    def test_examples_are_valid(self) -> None:
        """Every bundled document describes a valid system."""
        for name in example_names():
            document = load_example(name)
            assert document.name == name
            assert document.system.checked() is document.system

    def test_list_examples(self) -> None:
        """Listing pairs names with descriptions."""
        listed = dict(list_examples())
        assert set(listed) == set(example_names())
        assert all(listed.values())

    def test_unknown_example(self) -> None:
        """Unknown names raise FileNotFoundError."""
        with pytest.raises(FileNotFoundError):
            load_example("example99")

    def test_check_corpus(self) -> None:
        """Every expected derivation is reproduced."""
        results = check_corpus()
        assert len(results) == 10
        assert all(r.ok for r in results), [r.missing for r in results if not r.ok]

    def test_missing_items_reported(self) -> None:
        """Expectations that do not hold are listed as missing."""
        expected = {
            "applications": [{"theorem": 99, "case": None, "orientation": "direct"}],
            "eta": [{"source": [1], "target": [2], "eta_min": 3}],
            "bounded": ["x"],
            "unproven": ["x"],
        }
        result = check_example("example01", expected)
        assert not result.ok
        assert result.missing == ("T99", "eta([1] -> [2]) = 3", "x unproven")
        assert result.found == ("x bounded",)

    def test_fact_provenance_checked(self) -> None:
        """A fact of the right shape but another provenance does not match."""
        fact = {"shape": "one_sided_linear", "direction": "swapped", "provenance": "theorem24"}
        assert expected_derivations()["example09"]["facts"] == [fact]
        assert check_example("example09", {"facts": [fact]}).ok
        other = check_example("example09", {"facts": [{**fact, "provenance": "theorem26"}]})
        assert other.missing == ("fact one_sided_linear swapped",)
