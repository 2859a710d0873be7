"""Adversarial oracles from the lower-bound arguments.

Each adversary follows a fixed answering rule, memoises answers under
transitivity, and can produce a concrete single-peaked profile consistent
with everything it said (:meth:`complete`). An answer the rule would give
but that leaves no single-peaked completion is flipped; the number of such
flips is kept in ``flips``.
"""

from __future__ import annotations

from typing import Optional, Sequence

import numpy as np

from .core import (
    AdversaryBugError,
    Axis,
    InvalidSpecError,
    Profile,
    Ranking,
    Tree,
    as_axis,
)
from .oracle import Oracle
from .spcheck import (
    consistent_sp_vote,
    enumerate_sp_votes,
    feasible_tops,
    is_single_peaked_on_tree,
)

COUNTING_LIMIT = 10


class Closure:
    """Transitive closure of one voter's answers."""

    def __init__(self, m: int):
        self.below = [set() for _ in range(m)]
        self.above = [set() for _ in range(m)]

    def relation(self, x: int, y: int) -> Optional[bool]:
        if y in self.below[x]:
            return True
        if x in self.below[y]:
            return False
        return None

    def add(self, winner: int, loser: int) -> None:
        ups = self.above[winner] | {winner}
        downs = self.below[loser] | {loser}
        if ups & downs:
            raise AdversaryBugError(f"answer {winner} > {loser} closes a cycle")
        for u in ups:
            self.below[u] |= downs
        for d in downs:
            self.above[d] |= ups

    def has_predecessor(self, c: int) -> bool:
        return bool(self.above[c])


class Adversary(Oracle):
    guard = True

    def __init__(self, tree: Tree, n: int):
        super().__init__(n, tree.m)
        self.tree = tree
        self._closures: dict[int, Closure] = {}
        self.flips = 0

    def closure(self, voter: int) -> Closure:
        if voter not in self._closures:
            self._closures[voter] = Closure(self.m)
        return self._closures[voter]

    def _feasible(self, voter: int, winner: int, loser: int) -> bool:
        constraints = self.ledger.answers_for(voter) + [(winner, loser)]
        return consistent_sp_vote(self.tree, constraints) is not None

    def _answer(self, voter, x, y):
        cl = self.closure(voter)
        known = cl.relation(x, y)
        if known is not None:
            return known
        x_wins = self._decide(voter, x, y)
        if self.guard:
            w, l = (x, y) if x_wins else (y, x)
            if not self._feasible(voter, w, l):
                x_wins = not x_wins
                self.flips += 1
                if not self._feasible(voter, l, w):
                    raise AdversaryBugError(f"voter {voter}: neither answer to ({x}, {y}) is feasible")
        cl.add(*((x, y) if x_wins else (y, x)))
        self._commit(voter, x, y, x_wins)
        return x_wins

    def _decide(self, voter: int, x: int, y: int) -> bool:
        raise NotImplementedError

    def _commit(self, voter: int, x: int, y: int, x_wins: bool) -> None:
        pass

    def _vote(self, voter: int, top: Optional[int] = None) -> Ranking:
        r = consistent_sp_vote(self.tree, self.ledger.answers_for(voter), top)
        if r is None:
            raise AdversaryBugError(f"voter {voter} has no consistent completion (top={top})")
        return r

    def _vote_unlike(self, voter: int, claimed: Ranking) -> Ranking:
        # any other consistent vote reverses some adjacent pair of the claim
        answers = self.ledger.answers_for(voter)
        for a, b in zip(claimed.order, claimed.order[1:]):
            r = consistent_sp_vote(self.tree, answers + [(b, a)])
            if r is not None:
                return r
        return self._vote(voter)

    def _refute_profile(self, claimed: Profile) -> Profile:
        return Profile(self.m, tuple(self._vote_unlike(v, claimed.votes[v]) for v in range(self.n)))

    def complete(self, algorithm_output=None) -> Profile:
        """A consistent single-peaked profile chosen against ``algorithm_output``.

        For an elicited profile, each vote differs from the claimed one
        whenever the answers allow it. For a candidate, looks for another
        candidate that can head a strict majority of the votes; that one is
        then the unique Condorcet winner.
        """
        if isinstance(algorithm_output, Profile):
            return self._refute_profile(algorithm_output)
        if algorithm_output is not None:
            tops = [feasible_tops(self.tree, self.ledger.answers_for(v)) for v in range(self.n)]
            need = self.n // 2 + 1
            for z in range(self.m):
                if z == algorithm_output:
                    continue
                backers = [v for v in range(self.n) if z in tops[v]]
                if len(backers) >= need:
                    chosen = set(backers)
                    return Profile(self.m, tuple(
                        self._vote(v, z if v in chosen else None) for v in range(self.n)
                    ))
        return Profile(self.m, tuple(self._vote(v) for v in range(self.n)))


class CountingAdversary(Adversary):
    """Keeps every still-possible vote; answers with the larger half."""

    guard = False

    def __init__(self, tree: Tree, n: int, limit: int = COUNTING_LIMIT):
        if tree.m > limit:
            raise InvalidSpecError(f"counting adversary capped at {limit} candidates, got {tree.m}")
        super().__init__(tree, n)
        votes = enumerate_sp_votes(tree, limit=limit)
        pos = np.empty((len(votes), tree.m), dtype=np.int16)
        for i, r in enumerate(votes):
            pos[i, list(r.order)] = np.arange(tree.m)
        self._initial = pos
        self._alive: dict[int, np.ndarray] = {}

    @property
    def initial_size(self) -> int:
        return len(self._initial)

    def possible(self, voter: int) -> np.ndarray:
        return self._alive.get(voter, self._initial)

    def remaining(self, voter: int) -> int:
        return len(self.possible(voter))

    def _decide(self, voter, x, y):
        pos = self.possible(voter)
        ahead = pos[:, x] < pos[:, y]
        n1 = int(ahead.sum())
        return n1 >= len(pos) - n1

    def _commit(self, voter, x, y, x_wins):
        pos = self.possible(voter)
        keep = (pos[:, x] < pos[:, y]) == x_wins
        self._alive[voter] = pos[keep]
        if not len(self._alive[voter]):
            raise AdversaryBugError(f"voter {voter}: no consistent vote left")

    def _vote_from_positions(self, row) -> Ranking:
        return Ranking(tuple(int(c) for c in np.argsort(row)))

    def complete(self, algorithm_output=None) -> Profile:
        """One surviving vote per voter; differs from ``algorithm_output``
        (a profile) wherever more than one vote survives."""
        votes = []
        for v in range(self.n):
            pos = self.possible(v)
            pick = self._vote_from_positions(pos[0])
            if isinstance(algorithm_output, Profile) and len(pos) > 1:
                claimed = algorithm_output.votes[v]
                for row in pos:
                    cand = self._vote_from_positions(row)
                    if cand != claimed:
                        pick = cand
                        break
            votes.append(pick)
        return Profile(self.m, tuple(votes))


def _star_center(t: Tree) -> int:
    if t.m <= 2:
        return 0
    centers = [u for u in range(t.m) if t.degree(u) == t.m - 1]
    if not centers:
        raise InvalidSpecError("marking adversary needs a star")
    return centers[0]


class MarkingAdversary(Adversary):
    """Marks candidates that can no longer head a vote.

    A fresh pair (x, y): x wins if y is unmarked, else y wins if x is
    unmarked, else the smaller id wins. The loser is marked, so each new
    query marks at most one candidate.
    """

    def __init__(self, star: Tree, n: int):
        self.center = _star_center(star)
        super().__init__(star, n)
        self._marked: dict[int, set[int]] = {}

    def marked(self, voter: int) -> set[int]:
        return self._marked.setdefault(voter, set())

    @property
    def total_marks(self) -> int:
        return sum(len(s) for s in self._marked.values())

    def _decide(self, voter, x, y):
        mk = self.marked(voter)
        if y not in mk:
            return True
        if x not in mk:
            return False
        return x < y

    def _commit(self, voter, x, y, x_wins):
        self.marked(voter).add(y if x_wins else x)


class IntervalAdversary(Adversary):
    """Keeps, per voter, an index window ``[lo, hi]`` of possible peaks.

    For axis positions i < j of a fresh pair: i < lo means c_j wins; j > hi
    means c_i wins; otherwise the answer keeps the wider side, c_i winning
    (hi <- j) when ``j - lo > hi - i`` and c_j winning (lo <- i) otherwise.
    """

    def __init__(self, axis: Axis | Sequence[int], n: int):
        axis = as_axis(axis)
        m = len(axis)
        if sorted(axis.order) != list(range(m)):
            raise InvalidSpecError("axis must be a permutation of 0..m-1")
        self.axis = axis
        self.index = {c: i for i, c in enumerate(axis.order)}
        tree = Tree(m, list(zip(axis.order, axis.order[1:])))
        super().__init__(tree, n)
        self._window: dict[int, list[int]] = {}

    def interval(self, voter: int) -> tuple[int, int]:
        lo, hi = self._window.setdefault(voter, [0, self.m - 1])
        return lo, hi

    def width(self, voter: int) -> int:
        lo, hi = self.interval(voter)
        return hi - lo

    def _decide(self, voter, x, y):
        lo, hi = self.interval(voter)
        i, j = self.index[x], self.index[y]
        left_wins = self._rule(lo, hi, min(i, j), max(i, j))
        return left_wins == (i < j)

    @staticmethod
    def _rule(lo: int, hi: int, i: int, j: int) -> bool:
        """True iff the left candidate c_i wins."""
        if i < lo:
            return False
        if j > hi:
            return True
        return j - lo > hi - i

    def _commit(self, voter, x, y, x_wins):
        win = self._window.setdefault(voter, [0, self.m - 1])
        lo, hi = win
        i, j = sorted((self.index[x], self.index[y]))
        if not (lo <= i and j <= hi):
            return
        left_won = x_wins == (self.index[x] < self.index[y])
        if left_won:
            win[1] = j
        else:
            win[0] = i

    def complete(self, algorithm_output=None) -> Profile:
        """Consistent profile; if possible pushes a strict majority of peaks
        to one side of ``algorithm_output`` so it is not a weak winner.

        On an axis the weak winners are exactly the candidates with at most
        n/2 peaks strictly on either side, and peaks can be chosen
        independently per voter within their feasible sets.
        """
        if isinstance(algorithm_output, Profile):
            return self._refute_profile(algorithm_output)
        if algorithm_output is not None:
            q = self.index[algorithm_output]
            tops = [feasible_tops(self.tree, self.ledger.answers_for(v)) for v in range(self.n)]
            need = self.n // 2 + 1
            for side in (-1, 1):
                choice = {}
                for v in range(self.n):
                    options = [c for c in tops[v] if (self.index[c] - q) * side > 0]
                    if options:
                        # nearest to the output keeps the most room for later voters
                        choice[v] = min(options, key=lambda c: abs(self.index[c] - q))
                if len(choice) >= need:
                    return Profile(self.m, tuple(self._vote(v, choice.get(v)) for v in range(self.n)))
        return Profile(self.m, tuple(self._vote(v) for v in range(self.n)))


def check_completion(adv: Adversary, profile: Profile) -> bool:
    """Single peaked on the adversary's tree and agrees with every recorded answer."""
    if profile.m != adv.m or profile.n != adv.n:
        return False
    if not all(is_single_peaked_on_tree(v, adv.tree) for v in profile.votes):
        return False
    for voter, a, b, lo_wins in adv.ledger.trace:
        if profile.votes[voter].prefers(a, b) != lo_wins:
            return False
    return True


def make_adversary(kind: str, tree: Tree, n: int) -> Adversary:
    if kind == "counting":
        return CountingAdversary(tree, n)
    if kind == "marking":
        return MarkingAdversary(tree, n)
    if kind == "interval":
        return IntervalAdversary(tree.path_axis(), n)
    raise InvalidSpecError(f"unknown adversary kind {kind!r}")
