"""Finding a weak Condorcet winner with few comparison queries."""

from __future__ import annotations

from typing import Iterable, Optional, Sequence

from .core import Axis, NotSinglePeakedError, Tree, as_axis
from .oracle import Oracle
from .tree_analysis import validate_partition


def find_peak(o: Oracle, voter: int, a: Axis | Sequence[int]) -> int:
    """Top candidate of a vote single peaked on ``a``, by binary search.

    Comparing neighbours ``a[i]`` and ``a[i+1]`` tells on which side of the
    gap the peak lies. At most ``ceil(log2 len(a))`` queries.
    """
    a = as_axis(a)
    lo, hi = 0, len(a) - 1
    while lo < hi:
        mid = (lo + hi) // 2
        if o.query(voter, a[mid], a[mid + 1]):
            hi = mid
        else:
            lo = mid + 1
    peak = a[lo]
    on_axis = set(a.order)
    for w, l in o.ledger.answers_for(voter):
        if l == peak and w in on_axis:
            raise NotSinglePeakedError(f"voter {voter}: {w} was preferred to the located peak {peak}")
    return peak


def cw_pairwise_elimination(o: Oracle, candidates: Iterable[int], voters: Sequence[int]) -> int:
    """Champion-vs-challenger elimination in ascending id order.

    Each round asks every voter about one pair; the challenger replaces the
    champion only with a strict majority. Returns the Condorcet winner of the
    restricted profile whenever one exists.
    """
    cands = sorted(set(candidates))
    if not cands:
        raise ValueError("no candidates")
    champion = cands[0]
    need = len(voters) // 2 + 1
    for challenger in cands[1:]:
        wins = sum(1 for v in voters if o.query(v, challenger, champion))
        if wins >= need:
            champion = challenger
    return champion


def _odd_voters(n: int) -> list[int]:
    # dropping the last voter of an even electorate keeps a weak winner
    return list(range(n - 1 if n % 2 == 0 and n > 1 else n))


def weak_cw_tree(o: Oracle, t: Tree, n: Optional[int] = None) -> int:
    """``(m-1) * n`` queries at most, for any profile single peaked on a tree."""
    n = o.n if n is None else n
    return cw_pairwise_elimination(o, range(t.m), _odd_voters(n))


def weighted_median(a: Axis, peaks: Sequence[int]) -> int:
    """Leftmost axis candidate with at most floor(n/2) peaks strictly on each side."""
    index = {c: i for i, c in enumerate(a.order)}
    counts = [0] * len(a)
    for p in peaks:
        counts[index[p]] += 1
    half = len(peaks) // 2
    left = 0
    right = len(peaks)
    for i, c in enumerate(counts):
        right -= c
        if left <= half and right <= half:
            return a[i]
        left += c
    raise AssertionError("a weighted median always exists")


def weak_cw_median_path(
    o: Oracle, a: Axis | Sequence[int], n: Optional[int] = None, voters: Optional[Sequence[int]] = None
) -> int:
    """Locate every voter's peak one voter at a time, return the median peak."""
    a = as_axis(a)
    if voters is None:
        voters = range(o.n if n is None else n)
    peaks = [find_peak(o, v, a) for v in voters]
    return weighted_median(a, peaks)


def weak_cw_pathcover(o: Oracle, t: Tree, pp: Sequence[Sequence[int]], n: Optional[int] = None) -> int:
    """Median winner on each path of the cover, then elimination among them."""
    validate_partition(t, pp)
    voters = _odd_voters(o.n if n is None else n)
    finalists = [weak_cw_median_path(o, Axis(tuple(p)), voters=voters) for p in pp]
    return cw_pairwise_elimination(o, finalists, voters)
