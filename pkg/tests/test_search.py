from __future__ import annotations

import pytest

from dseq.groups import build_group, cyclic_group
from dseq.search import (
    find_d_sequence,
    find_r_sequencing,
    find_sequencing,
    find_terrace,
    search_all,
)
from dseq.sequences import (
    verify_d_sequence,
    verify_r_sequencing,
    verify_sequencing,
    verify_terrace,
)


def test_find_sequencing_examples():
    assert find_sequencing(cyclic_group(4)).items == [0, 1, 2, 3]
    assert find_sequencing(cyclic_group(1)).items == [0]
    assert find_sequencing(build_group("D6")).status == "none"
    assert find_sequencing(build_group("Q8")).status == "none"


def test_known_sequencing_negatives_are_exhaustive():
    # absence proofs, not budget timeouts
    for spec in ["D6", "D8", "Q8", "Z3", "Z5", "Z2xZ2"]:
        res = find_sequencing(build_group(spec), budget=None)
        assert res.status == "none", spec


def test_find_r_sequencing_examples():
    assert find_r_sequencing(cyclic_group(3)).items == [1, 2]
    res = find_r_sequencing(cyclic_group(5))
    assert res.items == [1, 2, 4, 3]
    assert verify_r_sequencing(cyclic_group(5), res.items)
    assert find_r_sequencing(cyclic_group(2)).status == "none"


def test_find_d_sequence_examples():
    res = find_d_sequence(build_group("Z2xZ2"))
    assert res.items == [0, 1, 2, 1, 3, 3, 2, 0]
    assert find_d_sequence(cyclic_group(1)).items == [0, 0]
    res = find_d_sequence(build_group("Q8"))
    assert res.found
    assert verify_d_sequence(build_group("Q8"), res.items).valid


def test_find_terrace_examples():
    assert find_terrace(cyclic_group(3)).items == [0, 1, 2]
    assert find_terrace(cyclic_group(2)).items == [0, 1]
    assert find_terrace(build_group("Z2xZ2"), budget=None).status == "none"


def test_searchers_are_sound_on_catalog():
    for spec in ["Z1", "Z2", "Z4", "Z6", "Z8", "D6", "D8", "Q8", "Z2xZ4", "D10"]:
        g = build_group(spec)
        res = find_sequencing(g, budget=500_000)
        if res.found:
            assert verify_sequencing(g, res.items), spec
        res = find_r_sequencing(g, budget=500_000)
        if res.found:
            assert verify_r_sequencing(g, res.items), spec
        res = find_d_sequence(g, budget=500_000)
        if res.found:
            assert verify_d_sequence(g, res.items).valid, spec
        res = find_terrace(g, budget=500_000)
        if res.found:
            assert verify_terrace(g, res.items), spec


def test_budget_outcome_is_distinct_from_none():
    res = find_d_sequence(build_group("Z2xZ16"), budget=1000)
    assert res.status == "budget"
    assert res.items is None


def test_determinism_across_runs():
    for spec in ["Z6", "D8", "Z2xZ4"]:
        g = build_group(spec)
        first = find_d_sequence(g, budget=400_000)
        second = find_d_sequence(g, budget=400_000)
        assert first.status == second.status
        assert first.items == second.items
        assert first.nodes == second.nodes


def test_restart_phase_finds_hard_witnesses():
    g = build_group("Z2xZ12")
    res = find_r_sequencing(g, budget=2_000_000)
    assert res.found
    assert verify_r_sequencing(g, res.items)


def test_require_cyclic():
    res = find_d_sequence(build_group("D6"), require_cyclic=True, budget=500_000)
    assert res.found
    assert res.items[-1] == 0
    assert verify_d_sequence(build_group("D6"), res.items).cyclic


def test_search_all_enumeration():
    z3 = cyclic_group(3)
    assert search_all(z3, "rseq").solutions == [[1, 2], [2, 1]]
    # exhaustive terrace enumeration on Z4: every solution verifies, and the
    # list is stable
    z4 = cyclic_group(4)
    res = search_all(z4, "terrace")
    assert res.solutions and all(verify_terrace(z4, s) for s in res.solutions)
    assert res.solutions == search_all(z4, "terrace").solutions
    with pytest.raises(ValueError):
        search_all(build_group("Z8"), "terrace")


def test_trivial_group_edge_cases():
    triv = cyclic_group(1)
    assert find_sequencing(triv).items == [0]
    assert find_r_sequencing(triv).items == []
    assert find_d_sequence(triv).items == [0, 0]
    assert find_terrace(triv).items == [0]
