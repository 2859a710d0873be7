"""Single-peaked votes on axes and trees: checkers, enumeration, sampling.

:func:`is_single_peaked_on_tree` works straight from the definition (every
leaf-to-leaf path). The prefix-connectivity test is faster and is what the
enumerator and sampler build on; the test suite checks the two agree on
every ranking of every tree with up to seven nodes.
"""

from __future__ import annotations

import random
from functools import lru_cache
from itertools import combinations
from typing import Iterator, Sequence

from .core import (
    Axis,
    InvalidSubsetError,
    Profile,
    Ranking,
    Tree,
    UnsupportedSizeError,
    as_axis,
    as_ranking,
    restrict,
)
from .tree_analysis import leaves

ENUMERATION_LIMIT = 10


def is_single_peaked_on_axis(r: Ranking | Sequence[int], a: Axis | Sequence[int]) -> bool:
    r, a = as_ranking(r), as_axis(a)
    if set(r.order) != set(a.order) or len(r) != len(a):
        raise InvalidSubsetError("ranking and axis are over different candidates")
    if len(a) <= 2:
        return True
    pos = r.position
    peak = a.order.index(r.top)
    # ranks must strictly worsen walking away from the peak on either side
    for i in range(peak, 0, -1):
        if pos[a[i - 1]] < pos[a[i]]:
            return False
    for i in range(peak, len(a) - 1):
        if pos[a[i + 1]] < pos[a[i]]:
            return False
    return True


def is_single_peaked_on_tree(r: Ranking | Sequence[int], t: Tree) -> bool:
    """Single peaked on the path between every pair of leaves."""
    r = as_ranking(r)
    if set(r.order) != set(range(t.m)) or len(r) != t.m:
        raise InvalidSubsetError("ranking is not over the tree's nodes")
    if t.m <= 2:
        return True
    for u, v in combinations(sorted(leaves(t)), 2):
        path = t.path(u, v)
        if not is_single_peaked_on_axis(restrict(r, path), path):
            return False
    return True


def is_prefix_connected(r: Ranking | Sequence[int], t: Tree) -> bool:
    """Every top-k prefix induces a connected subtree."""
    r = as_ranking(r)
    if len(r) != t.m or set(r.order) != set(range(t.m)):
        raise InvalidSubsetError("ranking is not over the tree's nodes")
    placed = {r.top}
    for c in r.order[1:]:
        if not any(w in placed for w in t.neighbors(c)):
            return False
        placed.add(c)
    return True


def is_profile_single_peaked(p: Profile, t: Tree) -> bool:
    return p.m == t.m and all(is_single_peaked_on_tree(v, t) for v in p.votes)


def iter_sp_votes(t: Tree) -> Iterator[tuple[int, ...]]:
    """Orders whose prefixes stay connected, in lexicographic order."""
    m = t.m
    order: list[int] = []
    placed = [False] * m
    frontier_count = [0] * m  # placed neighbours per node

    def grow():
        if len(order) == m:
            yield tuple(order)
            return
        for c in range(m):
            if not placed[c] and frontier_count[c] > 0:
                placed[c] = True
                order.append(c)
                for w in t.neighbors(c):
                    frontier_count[w] += 1
                yield from grow()
                for w in t.neighbors(c):
                    frontier_count[w] -= 1
                order.pop()
                placed[c] = False

    for top in range(m):
        placed[top] = True
        order.append(top)
        for w in t.neighbors(top):
            frontier_count[w] += 1
        yield from grow()
        for w in t.neighbors(top):
            frontier_count[w] -= 1
        order.pop()
        placed[top] = False


def enumerate_sp_votes(t: Tree, limit: int = ENUMERATION_LIMIT) -> list[Ranking]:
    if t.m > limit:
        raise UnsupportedSizeError(f"enumeration capped at {limit} candidates, got {t.m}")
    return [Ranking(o) for o in iter_sp_votes(t)]


def count_sp_votes(t: Tree) -> int:
    """Number of single-peaked votes on t, by dynamic programming over the
    remove-a-leaf recursion: a vote read bottom-up deletes a leaf of the
    remaining subtree at each step."""
    if t.m > 20:
        raise UnsupportedSizeError(f"counting capped at 20 candidates, got {t.m}")

    @lru_cache(maxsize=None)
    def ways(mask: int) -> int:
        if mask & (mask - 1) == 0:
            return 1
        total = 0
        for u in range(t.m):
            if mask >> u & 1:
                inside = sum(1 for w in t.neighbors(u) if mask >> w & 1)
                if inside == 1:
                    total += ways(mask & ~(1 << u))
        return total

    return ways((1 << t.m) - 1)


def sample_sp_vote(t: Tree, rng: random.Random) -> Ranking:
    """Random peak, then repeatedly a uniform node adjacent to the prefix.

    Not uniform over single-peaked votes.
    """
    top = rng.randrange(t.m)
    order = [top]
    placed = {top}
    frontier = set(t.neighbors(top))
    while frontier:
        c = rng.choice(sorted(frontier))
        frontier.discard(c)
        order.append(c)
        placed.add(c)
        frontier.update(w for w in t.neighbors(c) if w not in placed)
    return Ranking(tuple(order))


def sample_sp_profile(t: Tree, n: int, seed=None) -> Profile:
    if n < 1:
        raise ValueError("n must be >= 1")
    rng = random.Random(seed)
    votes = tuple(sample_sp_vote(t, rng) for _ in range(n))
    for v in votes:
        if not is_single_peaked_on_tree(v, t):
            raise AssertionError(f"sampler produced a non single-peaked vote {v.order}")
    return Profile(t.m, votes)


def consistent_sp_vote(t: Tree, constraints, top: int | None = None) -> Ranking | None:
    """A vote single peaked on t that honours every ``(winner, loser)`` pair.

    Greedy: keep appending the smallest node that touches the prefix and whose
    required predecessors are all placed. Connected prefixes with precedence
    constraints form an antimatroid, so greedy gets stuck only if no
    completion exists. Returns None in that case.
    """
    preds: list[set[int]] = [set() for _ in range(t.m)]
    for w, l in constraints:
        preds[l].add(w)
    tops = range(t.m) if top is None else [top]
    for first in tops:
        if preds[first]:
            continue
        order = [first]
        placed = {first}
        while len(order) < t.m:
            nxt = next(
                (c for c in range(t.m)
                 if c not in placed
                 and preds[c] <= placed
                 and any(w in placed for w in t.neighbors(c))),
                None,
            )
            if nxt is None:
                break
            order.append(nxt)
            placed.add(nxt)
        if len(order) == t.m:
            return Ranking(tuple(order))
    return None


def feasible_tops(t: Tree, constraints) -> list[int]:
    """Candidates that can still head a vote consistent with ``constraints``."""
    constraints = list(constraints)
    return [c for c in range(t.m) if consistent_sp_vote(t, constraints, c) is not None]
