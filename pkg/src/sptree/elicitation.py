"""Recovering votes through comparison queries.

Every routine here talks to the voter only through ``oracle.query`` and is
charged by the oracle's ledger. Per-voter worst cases for the
implementations below:

==========================  =====================================
sorting (merge sort)        ``m * ceil(log2 m)``
path (endpoint elimination) ``m - 1``
path cover, ``k'`` parts    ``m * (1 + ceil(log2 k'))``
distance ``d`` from path    ``2m + d * ceil(log2 d)``
==========================  =====================================
"""

from __future__ import annotations

from typing import Iterable, Optional, Sequence

from .core import (
    Axis,
    InvalidDeletionSetError,
    InvalidPartitionError,
    InvalidSpecError,
    NotSinglePeakedError,
    Profile,
    Ranking,
    Tree,
    as_axis,
    as_ranking,
)
from .oracle import Oracle
from .spcheck import is_single_peaked_on_axis
from .tree_analysis import (
    ceil_log2,
    distance_from_path,
    induced_path,
    min_path_cover,
    validate_partition,
)

STRATEGIES = ("sorting", "path", "pathcover", "distpath", "auto")


def _check_answers(o: Oracle, voter: int, r: Ranking) -> None:
    """Fail if ``r`` disagrees with anything this voter already answered."""
    pos = r.position
    for w, l in o.ledger.answers_for(voter):
        if w in pos and l in pos and pos[w] > pos[l]:
            raise NotSinglePeakedError(
                f"voter {voter}: answered {w} > {l} but reconstruction puts {l} first"
            )


def _merge(o: Oracle, voter: int, a: Sequence[int], b: Sequence[int]) -> list[int]:
    out = []
    i = j = 0
    while i < len(a) and j < len(b):
        if o.query(voter, a[i], b[j]):
            out.append(a[i])
            i += 1
        else:
            out.append(b[j])
            j += 1
    out.extend(a[i:])
    out.extend(b[j:])
    return out


def _merge_sort(o: Oracle, voter: int, items: list[int]) -> list[int]:
    if len(items) <= 1:
        return items
    mid = len(items) // 2
    return _merge(o, voter, _merge_sort(o, voter, items[:mid]), _merge_sort(o, voter, items[mid:]))


def elicit_by_sorting(o: Oracle, voter: int, candidates: Iterable[int]) -> Ranking:
    """Top-down merge sort of ``candidates`` by the voter's answers."""
    cands = sorted(set(candidates))
    if not cands:
        raise ValueError("need at least one candidate")
    return Ranking(tuple(_merge_sort(o, voter, cands)))


def merge_orders(o: Oracle, voter: int, r1, r2) -> Ranking:
    """Linear merge of the voter's orders over two disjoint candidate sets."""
    r1, r2 = as_ranking(r1), as_ranking(r2)
    if r1.candidates & r2.candidates:
        raise InvalidPartitionError(
            f"orders overlap on {sorted(r1.candidates & r2.candidates)}"
        )
    return Ranking(tuple(_merge(o, voter, r1.order, r2.order)))


def elicit_on_path(o: Oracle, voter: int, a: Axis | Sequence[int]) -> Ranking:
    """Exactly ``len(a) - 1`` queries for a vote single peaked on axis ``a``.

    The least preferred remaining candidate is always one of the two ends of
    what is left of the axis, so comparing the ends peels the vote off from
    the bottom.
    """
    a = as_axis(a)
    if len(a) == 0:
        raise ValueError("empty axis")
    lo, hi = 0, len(a) - 1
    bottom_up = []
    while lo < hi:
        if o.query(voter, a[lo], a[hi]):
            bottom_up.append(a[hi])
            hi -= 1
        else:
            bottom_up.append(a[lo])
            lo += 1
    bottom_up.append(a[lo])
    r = Ranking(tuple(reversed(bottom_up)))
    if not is_single_peaked_on_axis(r, a):
        raise NotSinglePeakedError(f"voter {voter}: {r.order} is not single peaked on {a.order}")
    _check_answers(o, voter, r)
    return r


def merge_many(o: Oracle, voter: int, parts: Sequence[Ranking]) -> Ranking:
    """Balanced rounds of pairwise merges, ``ceil(log2 len(parts))`` rounds.

    Each round pairs the largest remaining order with the smallest (ties by
    part index); an odd one out waits for the next round.
    """
    items = [(i, as_ranking(p)) for i, p in enumerate(parts)]
    if not items:
        raise ValueError("nothing to merge")
    while len(items) > 1:
        by_size = sorted(items, key=lambda it: (len(it[1]), it[0]))
        merged = []
        half = len(by_size) // 2
        for i in range(half):
            small, large = by_size[i], by_size[-1 - i]
            merged.append((min(small[0], large[0]), merge_orders(o, voter, large[1], small[1])))
        if len(by_size) % 2:
            merged.append(by_size[half])
        items = sorted(merged, key=lambda it: it[0])
    return items[0][1]


def elicit_on_tree_pathcover(o: Oracle, voter: int, t: Tree, pp: Sequence[Sequence[int]]) -> Ranking:
    """Elicit each path of the partition, then merge the pieces."""
    validate_partition(t, pp)
    parts = [elicit_on_path(o, voter, Axis(tuple(p))) for p in pp]
    return merge_many(o, voter, parts)


def elicit_on_tree_distpath(o: Oracle, voter: int, t: Tree, deleted: Iterable[int]) -> Ranking:
    """Sort the deleted nodes, peel the remaining path, merge the two."""
    deleted = set(deleted)
    if any(not 0 <= u < t.m for u in deleted):
        raise InvalidDeletionSetError("deletion set has nodes outside the tree")
    axis = induced_path(t, set(range(t.m)) - deleted)
    if axis is None:
        raise InvalidDeletionSetError(f"removing {sorted(deleted)} does not leave a path")
    if not deleted:
        return elicit_on_path(o, voter, axis)
    off_path = elicit_by_sorting(o, voter, deleted)
    on_path = elicit_on_path(o, voter, axis)
    return merge_orders(o, voter, on_path, off_path)


def query_bound(strategy: str, m: int, k: int = 1, d: int = 0) -> int:
    """Guaranteed per-voter query count of a strategy (see module table)."""
    if strategy == "sorting":
        return m * ceil_log2(m)
    if strategy == "path":
        return max(m - 1, 0)
    if strategy == "pathcover":
        return m * (1 + ceil_log2(k))
    if strategy == "distpath":
        return 2 * m + d * ceil_log2(d)
    raise InvalidSpecError(f"unknown strategy {strategy!r}")


def choose_strategy(t: Tree, threshold: Optional[int] = None, pp=None) -> str:
    """Resolve ``auto``: distpath when d <= threshold, else pathcover.

    Without a threshold the strategy with the smaller guaranteed bound wins
    (pathcover on ties).
    """
    d, _ = distance_from_path(t)
    if threshold is not None:
        return "distpath" if d <= threshold else "pathcover"
    k = len(pp) if pp is not None else len(min_path_cover(t))
    if query_bound("distpath", t.m, d=d) < query_bound("pathcover", t.m, k=k):
        return "distpath"
    return "pathcover"


def elicit_profile(
    o: Oracle,
    t: Tree,
    strategy: str = "auto",
    pp: Optional[Sequence[Sequence[int]]] = None,
    deleted: Optional[Iterable[int]] = None,
    threshold: Optional[int] = None,
) -> Profile:
    """Elicit every voter in turn; one voter's queries never interleave another's.

    ``pp`` defaults to a minimum path cover and ``deleted`` to an optimal
    deletion set.
    """
    if strategy not in STRATEGIES:
        raise InvalidSpecError(f"unknown strategy {strategy!r}")
    if o.m != t.m:
        raise InvalidSpecError(f"oracle has {o.m} candidates, tree has {t.m}")
    if strategy == "auto":
        strategy = choose_strategy(t, threshold, pp)
    if strategy == "pathcover" and pp is None:
        pp = min_path_cover(t)
    if strategy == "distpath" and deleted is None:
        deleted = distance_from_path(t)[1]
    if strategy == "distpath":
        deleted = set(deleted)
    if strategy == "path":
        axis = t.path_axis()

    votes = []
    for v in range(o.n):
        if strategy == "sorting":
            r = elicit_by_sorting(o, v, range(t.m))
        elif strategy == "path":
            r = elicit_on_path(o, v, axis)
        elif strategy == "pathcover":
            r = elicit_on_tree_pathcover(o, v, t, pp)
        else:
            r = elicit_on_tree_distpath(o, v, t, deleted)
        votes.append(r)
    return Profile(t.m, tuple(votes))
