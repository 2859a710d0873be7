import pytest
from hypothesis import given, strategies as st

from sptree.core import (
    InvalidPairError,
    InvalidProfileError,
    InvalidSubsetError,
    InvalidTreeError,
    Profile,
    Ranking,
    Tree,
    format_profile,
    format_tree,
    pairwise_margin,
    parse_profile,
    parse_tree,
    restrict,
    weak_condorcet_set,
)
from sptree.spcheck import sample_sp_profile
from sptree.tree_analysis import nonisomorphic_trees, random_tree


@pytest.mark.parametrize("r, subset, expected", [
    ([2, 0, 1], {0, 1}, (0, 1)),
    ([2, 0, 1], {0, 1, 2}, (2, 0, 1)),
    ([3, 1, 2, 0], {0, 2, 3}, (3, 2, 0)),
])
def test_restrict_examples(r, subset, expected):
    assert restrict(r, subset).order == expected


def test_restrict_rejects_unknown_candidate():
    with pytest.raises(InvalidSubsetError):
        restrict([1, 0], {0, 5})


@given(st.permutations(range(7)), st.data())
def test_restrict_composes(order, data):
    a = data.draw(st.sets(st.integers(0, 6)))
    b = data.draw(st.sets(st.sampled_from(sorted(a)))) if a else set()
    r = Ranking(tuple(order))
    assert restrict(r, range(7)) == r
    assert restrict(restrict(r, a), b) == restrict(r, b)


def test_ranking_position_is_inverse():
    r = Ranking((3, 0, 2, 1))
    assert all(r.position[r.order[i]] == i for i in range(4))
    assert r.prefers(3, 1) and not r.prefers(1, 3)
    with pytest.raises(InvalidProfileError):
        Ranking((0, 0, 1))


@pytest.mark.parametrize("votes, x, y, expected", [
    ([[0, 1], [0, 1], [1, 0]], 0, 1, 1),
    ([[0, 1], [1, 0]], 0, 1, 0),
    ([[2, 0, 1], [1, 2, 0], [2, 1, 0]], 2, 1, 1),
])
def test_pairwise_margin_examples(votes, x, y, expected):
    assert pairwise_margin(Profile.from_lists(votes), x, y) == expected


def test_pairwise_margin_rejects_same_candidate():
    with pytest.raises(InvalidPairError):
        pairwise_margin(Profile.from_lists([[0, 1]]), 1, 1)


@given(st.lists(st.permutations(range(5)), min_size=1, max_size=8), st.data())
def test_margin_antisymmetric_with_parity(votes, data):
    p = Profile.from_lists(votes)
    x, y = data.draw(st.lists(st.integers(0, 4), min_size=2, max_size=2, unique=True))
    mg = pairwise_margin(p, x, y)
    assert mg == -pairwise_margin(p, y, x)
    assert -p.n <= mg <= p.n and (mg - p.n) % 2 == 0


@pytest.mark.parametrize("votes, expected", [
    ([[0, 1, 2]], {0}),
    ([[0, 1], [1, 0]], {0, 1}),
    ([[1, 0, 2], [1, 2, 0], [0, 1, 2]], {1}),
])
def test_weak_condorcet_set_examples(votes, expected):
    assert weak_condorcet_set(Profile.from_lists(votes)) == expected


def test_weak_condorcet_set_can_be_empty():
    # the Condorcet cycle
    assert weak_condorcet_set(Profile.from_lists([[0, 1, 2], [1, 2, 0], [2, 0, 1]])) == set()


def test_single_peaked_profiles_have_weak_winner():
    for m in range(1, 8):
        for t in nonisomorphic_trees(m):
            for n in range(1, 6):
                for seed in range(4):
                    p = sample_sp_profile(t, n, seed)
                    wcw = weak_condorcet_set(p)
                    assert wcw
                    if n % 2:
                        assert len(wcw) == 1


def test_profile_validation():
    with pytest.raises(InvalidProfileError):
        Profile(3, (Ranking((0, 1)),))
    with pytest.raises(InvalidProfileError):
        Profile(2, ())


@pytest.mark.parametrize("m, edges", [
    (3, [(0, 1)]),
    (3, [(0, 1), (0, 1)]),
    (3, [(0, 0), (1, 2)]),
    (4, [(0, 1), (1, 2), (2, 0)]),
    (2, [(0, 2)]),
])
def test_tree_validation(m, edges):
    with pytest.raises(InvalidTreeError):
        Tree(m, edges)


def test_tree_paths():
    t = Tree(5, [(0, 1), (1, 2), (1, 3), (3, 4)])
    assert t.path(4, 2) == [4, 3, 1, 2]
    assert not t.is_path()
    assert Tree(3, [(2, 0), (0, 1)]).path_axis().order == (1, 0, 2)


def test_file_round_trips():
    p = Profile.from_lists([[1, 0, 2], [2, 1, 0]])
    assert format_profile(p) == "3 2\n1 0 2\n2 1 0\n"
    assert parse_profile(format_profile(p)) == p
    t = random_tree(9, seed=3)
    assert parse_tree(format_tree(t)) == t
    with pytest.raises(InvalidProfileError):
        parse_profile("3 2\n0 1 2\n")
