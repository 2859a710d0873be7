"""Comparison queries and the distinct-tuple cost model.

Every oracle owns a :class:`QueryLedger`. A query is charged once per
``(voter, {x, y})`` tuple no matter how often or in which orientation it is
asked; repeats are answered from the ledger without consulting the oracle.
"""

from __future__ import annotations

import csv
import io
from typing import Optional, TextIO

from .core import InvalidPairError, InvalidVoterError, Profile


class QueryLedger:
    """Distinct ``(voter, lo, hi)`` tuples with their answers, in ask order.

    The stored answer is True iff ``lo`` is preferred to ``hi``.
    """

    def __init__(self):
        self._answers: dict[tuple[int, int, int], bool] = {}
        self.trace: list[tuple[int, int, int, bool]] = []
        self._by_voter: dict[int, list[tuple[int, int]]] = {}

    def __len__(self):
        return len(self.trace)

    @property
    def count(self) -> int:
        return len(self.trace)

    @property
    def entries(self) -> set[tuple[int, int, int]]:
        return set(self._answers)

    def lookup(self, voter: int, x: int, y: int) -> Optional[bool]:
        """Previously recorded answer to "does voter prefer x to y", if any."""
        key = (voter, min(x, y), max(x, y))
        ans = self._answers.get(key)
        if ans is None:
            return None
        return ans if x < y else not ans

    def record(self, voter: int, x: int, y: int, x_wins: bool) -> None:
        key = (voter, min(x, y), max(x, y))
        if key in self._answers:
            return
        lo_wins = x_wins if x < y else not x_wins
        self._answers[key] = lo_wins
        self.trace.append((*key, lo_wins))
        self._by_voter.setdefault(voter, []).append((x, y) if x_wins else (y, x))

    def count_for(self, voter: Optional[int] = None) -> int:
        if voter is None:
            return len(self.trace)
        return len(self._by_voter.get(voter, ()))

    def answers_for(self, voter: int) -> list[tuple[int, int]]:
        """(winner, loser) pairs recorded for one voter, in ask order."""
        return list(self._by_voter.get(voter, ()))

    def voters(self) -> list[int]:
        return sorted(self._by_voter)

    def write_csv(self, fh: TextIO) -> None:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["seq", "voter", "cand_a", "cand_b", "answer"])
        for seq, (v, a, b, lo_wins) in enumerate(self.trace):
            w.writerow([seq, v, a, b, int(lo_wins)])

    def to_csv(self) -> str:
        buf = io.StringIO()
        self.write_csv(buf)
        return buf.getvalue()


def query_count(ledger: QueryLedger, voter: Optional[int] = None) -> int:
    return ledger.count_for(voter)


def interleaving_check(ledger: QueryLedger) -> bool:
    """True iff each voter's queries form one contiguous block of the trace."""
    finished = set()
    current = None
    for v, *_ in ledger.trace:
        if v == current:
            continue
        if v in finished:
            return False
        if current is not None:
            finished.add(current)
        current = v
    return True


class Oracle:
    """Base class for anything that answers ``Query(x >_voter y)``.

    Subclasses implement :meth:`_answer`, which is only called for tuples not
    yet in the ledger.
    """

    def __init__(self, n: int, m: int):
        self.n = n
        self.m = m
        self.ledger = QueryLedger()

    def query(self, voter: int, x: int, y: int) -> bool:
        if not 0 <= voter < self.n:
            raise InvalidVoterError(f"voter {voter} outside 0..{self.n - 1}")
        if x == y:
            raise InvalidPairError(f"cannot compare candidate {x} with itself")
        if not (0 <= x < self.m and 0 <= y < self.m):
            raise InvalidPairError(f"pair ({x}, {y}) outside 0..{self.m - 1}")
        known = self.ledger.lookup(voter, x, y)
        if known is not None:
            return known
        ans = bool(self._answer(voter, x, y))
        self.ledger.record(voter, x, y, ans)
        return ans

    def _answer(self, voter: int, x: int, y: int) -> bool:
        raise NotImplementedError

    def query_count(self, voter: Optional[int] = None) -> int:
        return self.ledger.count_for(voter)


class ProfileOracle(Oracle):
    """Honest oracle answering from a known profile."""

    def __init__(self, truth: Profile):
        super().__init__(truth.n, truth.m)
        self.truth = truth

    def _answer(self, voter, x, y):
        pos = self.truth.votes[voter].position
        return pos[x] < pos[y]


def query(o: Oracle, voter: int, x: int, y: int) -> bool:
    return o.query(voter, x, y)
