import pytest

from oracles import exhaustive_chain_classes
from ssekit.errors import DomainError
from ssekit.factor import SearchBudget, verify_chain
from ssekit.intmat import IntMatrix
from ssekit.ksse import compare_invariant_pairs, full_units_check, ksse_enumerate
from ssekit.ktheory import class_of

GOLDEN = IntMatrix.from_rows([[1, 1], [1, 0]])


def M(rows):
    return IntMatrix.from_rows(rows)


def B(inner, entry):
    return SearchBudget(inner, entry)


# --- preconditions ---


@pytest.mark.parametrize(
    "bad",
    [
        M([[1, 0]]),
        M([[-1]]),
        M([[1, 1], [0, 1]]),
        M([[0, 1], [1, 0]]),
        M([[1]]),
    ],
)
def test_base_matrix_requirements(bad):
    with pytest.raises(DomainError):
        ksse_enumerate(bad, 1, B(1, 1))


def test_depth_must_be_nonnegative():
    with pytest.raises(DomainError):
        ksse_enumerate(M([[2]]), -1, B(1, 2))


# --- frozen runs ---


def test_trivial_group_saturates_at_root():
    result = ksse_enumerate(M([[2]]), 0, B(1, 2))
    assert result.coords() == ((0,),)
    assert result.saturated
    assert not result.exhausted
    assert result.states_visited == 1
    assert result.witnesses[(0,)].lag == 0


def test_inner_dim_one_cannot_move_the_class():
    # every lag-1 neighbor of [3] through a 1x1 factor is [3] again with a
    # transfer column in the same class, so the search exhausts immediately
    result = ksse_enumerate(M([[3]]), 2, B(1, 3))
    assert result.coords() == ((1,),)
    assert not result.saturated
    assert result.exhausted
    assert result.states_visited == 1


def test_inner_dim_two_reaches_both_classes():
    result = ksse_enumerate(M([[3]]), 1, B(2, 3))
    assert result.coords() == ((0,), (1,))
    assert result.saturated
    assert result.witnesses[(1,)].lag == 0
    assert result.witnesses[(0,)].lag == 1


def test_max_results_is_ignored_by_enumeration():
    capped = SearchBudget(2, 3, 1)
    result = ksse_enumerate(M([[3]]), 1, capped)
    assert result.coords() == ((0,), (1,))


def test_full_units_frozen():
    report = full_units_check(M([[2]]), 1, B(2, 2))
    assert report.certified_full
    assert report.verdict == "certified_full"
    assert report.group_order == 1

    report = full_units_check(M([[3]]), 2, B(1, 3))
    assert not report.certified_full
    assert report.verdict == "not_yet_full_within_budget"
    assert report.group_order == 2


def test_golden_mean_certified_at_depth_zero():
    report = full_units_check(GOLDEN, 0, B(2, 1))
    assert report.certified_full
    assert report.group_order == 1


# --- dedup soundness ---


@pytest.mark.parametrize(
    "a,depth,inner,entry",
    [
        (M([[2]]), 2, 2, 2),
        (M([[3]]), 2, 2, 2),
        (GOLDEN, 2, 2, 1),
        (M([[1, 1], [1, 1]]), 2, 2, 1),
    ],
)
def test_bfs_dedup_matches_exhaustive_chains(a, depth, inner, entry):
    result = ksse_enumerate(a, depth, B(inner, entry))
    want = exhaustive_chain_classes(a, depth, inner, entry)
    assert set(result.coords()) == want


# --- witnesses ---


def test_witness_replay_lands_on_recorded_class():
    result = ksse_enumerate(M([[5]]), 1, B(5, 5))
    assert result.saturated
    pres = result.presentation
    for coords, chain in result.witnesses.items():
        assert chain.matrices[0] == M([[5]])
        assert chain.lag <= 1
        report = verify_chain(chain)
        assert class_of(report.unit_image, pres).coords == coords


def test_witnesses_have_minimal_depth():
    result = ksse_enumerate(M([[3]]), 3, B(2, 3))
    root_class = class_of((1,), result.presentation).coords
    assert result.witnesses[root_class].lag == 0
    other = next(c for c in result.coords() if c != root_class)
    assert result.witnesses[other].lag == 1


# --- comparison ---


def test_compare_distinguishes_by_determinant():
    report = compare_invariant_pairs(GOLDEN, M([[3, 1], [1, 2]]), 1, B(2, 3))
    assert report.groups_isomorphic
    assert (report.det_a, report.det_b) == (-1, 1)
    assert report.verdict == "distinguished"
    assert len(report.reasons) == 1
    assert "det" in report.reasons[0]


def test_compare_distinguishes_by_group():
    report = compare_invariant_pairs(M([[2]]), M([[3]]), 1, B(2, 3))
    assert not report.groups_isomorphic
    assert report.verdict == "distinguished"
    assert any("group" in r for r in report.reasons)


def test_compare_compatible():
    relabeled = M([[0, 1], [1, 1]])
    report = compare_invariant_pairs(GOLDEN, relabeled, 1, B(2, 1))
    assert report.groups_isomorphic
    assert report.det_a == report.det_b == -1
    assert report.verdict == "compatible_within_budget"
    assert report.reasons == ()
    assert report.order_multiset_a == report.order_multiset_b


def test_compare_order_multisets_reported():
    report = compare_invariant_pairs(M([[5]]), M([[5]]), 1, B(5, 5))
    assert report.order_multiset_a == (1, 2, 4, 4)
    assert report.verdict == "compatible_within_budget"
