from itertools import permutations

import pytest

from sptree.core import Tree
from sptree.spcheck import is_single_peaked_on_tree
from sptree.tree_analysis import make_tree, nonisomorphic_trees

NAMED_SPECS = [
    "path:m=1",
    "path:m=2",
    "path:m=5",
    "star:m=4",
    "star:m=6",
    "bstar:l=3,t=2",
    "sstar:legs=1/2/3",
    "caterpillar:path=3,legs=0/1/0",
    "caterpillar:path=4,legs=2",
    "binary:h=2",
]


def all_small_trees(max_m):
    """Every unlabeled tree up to max_m nodes plus the named families that fit."""
    out = []
    for m in range(1, max_m + 1):
        out.extend(nonisomorphic_trees(m))
    for spec in NAMED_SPECS:
        t = make_tree(spec)
        if t.m <= max_m:
            out.append(t)
    return out


def brute_sp_votes(t: Tree):
    """Filter all m! orders through the definition-level checker."""
    return sorted(p for p in permutations(range(t.m)) if is_single_peaked_on_tree(p, t))


def star(m):
    return Tree(m, [(0, i) for i in range(1, m)])


def path(m):
    return Tree(m, [(i, i + 1) for i in range(m - 1)])


@pytest.fixture
def star4():
    return star(4)


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[num])
