"""Candidates, rankings, profiles and trees, plus brute-force ground truth.

Candidates are dense integer ids ``0..m-1``. Everything here is an immutable
value; the functions at the bottom never issue comparison queries and serve
as the reference against which the query-counted algorithms are checked.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from itertools import combinations
from pathlib import Path
from typing import Iterable, Sequence


class SPTreeError(ValueError):
    """Base class for all errors raised by this package."""


class InvalidSubsetError(SPTreeError):
    pass


class InvalidPairError(SPTreeError):
    pass


class InvalidVoterError(SPTreeError):
    pass


class InvalidTreeError(SPTreeError):
    pass


class InvalidProfileError(SPTreeError):
    pass


class InvalidPartitionError(SPTreeError):
    pass


class InvalidDeletionSetError(SPTreeError):
    pass


class InvalidSpecError(SPTreeError):
    pass


class NotSinglePeakedError(SPTreeError):
    """Oracle answers cannot come from a single-peaked vote."""


class UnsupportedSizeError(SPTreeError):
    """Instance exceeds the cap of an exponential-time routine."""


class AdversaryBugError(RuntimeError):
    """An adversary oracle reached an inconsistent state."""


@dataclass(frozen=True)
class Ranking:
    """A strict order over distinct candidate ids, most preferred first."""

    order: tuple[int, ...]
    position: dict[int, int] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        order = tuple(int(c) for c in self.order)
        position = {c: i for i, c in enumerate(order)}
        if len(position) != len(order):
            raise InvalidProfileError(f"ranking has repeated candidates: {order}")
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "position", position)

    def __len__(self):
        return len(self.order)

    def __iter__(self):
        return iter(self.order)

    def __getitem__(self, i):
        return self.order[i]

    @property
    def top(self) -> int:
        return self.order[0]

    @property
    def candidates(self) -> frozenset[int]:
        return frozenset(self.order)

    def prefers(self, x: int, y: int) -> bool:
        return self.position[x] < self.position[y]


@dataclass(frozen=True)
class Axis:
    """A linear arrangement of candidates; for trees, the order along a path."""

    order: tuple[int, ...]

    def __post_init__(self):
        order = tuple(int(c) for c in self.order)
        if len(set(order)) != len(order):
            raise InvalidSubsetError(f"axis has repeated candidates: {order}")
        object.__setattr__(self, "order", order)

    def __len__(self):
        return len(self.order)

    def __iter__(self):
        return iter(self.order)

    def __getitem__(self, i):
        return self.order[i]

    def reversed(self) -> Axis:
        return Axis(self.order[::-1])


def as_axis(a: Axis | Sequence[int]) -> Axis:
    return a if isinstance(a, Axis) else Axis(tuple(a))


def as_ranking(r: Ranking | Sequence[int]) -> Ranking:
    return r if isinstance(r, Ranking) else Ranking(tuple(r))


@dataclass(frozen=True)
class Profile:
    """n complete rankings over the candidates ``0..m-1``."""

    m: int
    votes: tuple[Ranking, ...]

    def __post_init__(self):
        votes = tuple(as_ranking(v) for v in self.votes)
        if not votes:
            raise InvalidProfileError("a profile needs at least one vote")
        full = set(range(self.m))
        for i, v in enumerate(votes):
            if set(v.order) != full or len(v) != self.m:
                raise InvalidProfileError(f"vote {i} is not a permutation of 0..{self.m - 1}")
        object.__setattr__(self, "votes", votes)

    @classmethod
    def from_lists(cls, votes: Sequence[Sequence[int]]) -> Profile:
        return cls(len(votes[0]), tuple(Ranking(tuple(v)) for v in votes))

    @property
    def n(self) -> int:
        return len(self.votes)

    def __len__(self):
        return len(self.votes)

    def __getitem__(self, i):
        return self.votes[i]


class Tree:
    """An undirected tree on nodes ``0..m-1``."""

    __slots__ = ("m", "edges", "adjacency")

    def __init__(self, m: int, edges: Iterable[tuple[int, int]]):
        if m < 1:
            raise InvalidTreeError("a tree needs at least one node")
        norm = set()
        for u, v in edges:
            u, v = int(u), int(v)
            if u == v:
                raise InvalidTreeError(f"self-loop at {u}")
            if not (0 <= u < m and 0 <= v < m):
                raise InvalidTreeError(f"edge ({u}, {v}) outside 0..{m - 1}")
            e = (min(u, v), max(u, v))
            if e in norm:
                raise InvalidTreeError(f"duplicate edge {e}")
            norm.add(e)
        if len(norm) != m - 1:
            raise InvalidTreeError(f"a tree on {m} nodes has {m - 1} edges, got {len(norm)}")
        adj: list[list[int]] = [[] for _ in range(m)]
        for u, v in norm:
            adj[u].append(v)
            adj[v].append(u)
        self.m = m
        self.edges = frozenset(norm)
        self.adjacency = tuple(tuple(sorted(a)) for a in adj)
        if len(self.bfs_order(0)) != m:
            raise InvalidTreeError("graph is not connected")

    def __repr__(self):
        return f"Tree(m={self.m}, edges={sorted(self.edges)})"

    def __eq__(self, other):
        return isinstance(other, Tree) and self.m == other.m and self.edges == other.edges

    def __hash__(self):
        return hash((self.m, self.edges))

    def neighbors(self, u: int) -> tuple[int, ...]:
        return self.adjacency[u]

    def degree(self, u: int) -> int:
        return len(self.adjacency[u])

    def has_edge(self, u: int, v: int) -> bool:
        return (min(u, v), max(u, v)) in self.edges

    def bfs_order(self, root: int) -> list[int]:
        seen = {root}
        order = [root]
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for w in self.adjacency[u]:
                if w not in seen:
                    seen.add(w)
                    order.append(w)
                    queue.append(w)
        return order

    def parents(self, root: int) -> list[int]:
        """Parent of every node when rooted at ``root`` (-1 for the root)."""
        parent = [-1] * self.m
        for u in self.bfs_order(root):
            for w in self.adjacency[u]:
                if w != parent[u]:
                    parent[w] = u
        return parent

    def distances(self, source: int) -> list[int]:
        dist = [-1] * self.m
        dist[source] = 0
        queue = deque([source])
        while queue:
            u = queue.popleft()
            for w in self.adjacency[u]:
                if dist[w] < 0:
                    dist[w] = dist[u] + 1
                    queue.append(w)
        return dist

    def path(self, u: int, v: int) -> list[int]:
        """Node sequence of the unique path from u to v."""
        parent = self.parents(v)
        out = [u]
        while out[-1] != v:
            out.append(parent[out[-1]])
        return out

    def is_path(self) -> bool:
        return all(len(a) <= 2 for a in self.adjacency)

    def path_axis(self) -> Axis:
        """Induced order of a path-shaped tree, starting at its smaller endpoint."""
        if not self.is_path():
            raise InvalidTreeError("tree is not a path")
        if self.m == 1:
            return Axis((0,))
        ends = [u for u in range(self.m) if len(self.adjacency[u]) == 1]
        return Axis(tuple(self.path(min(ends), max(ends))))


def restrict(r: Ranking | Sequence[int], subset: Iterable[int]) -> Ranking:
    """Order ``subset`` the way ``r`` does."""
    r = as_ranking(r)
    subset = set(subset)
    missing = subset - r.candidates
    if missing:
        raise InvalidSubsetError(f"candidates {sorted(missing)} not ranked by {r.order}")
    return Ranking(tuple(c for c in r.order if c in subset))


def pairwise_margin(p: Profile, x: int, y: int) -> int:
    """#voters preferring x to y minus #voters preferring y to x."""
    if x == y:
        raise InvalidPairError(f"cannot compare candidate {x} with itself")
    for c in (x, y):
        if not 0 <= c < p.m:
            raise InvalidPairError(f"candidate {c} outside 0..{p.m - 1}")
    ahead = sum(1 for v in p.votes if v.position[x] < v.position[y])
    return 2 * ahead - p.n


def margin_matrix(p: Profile) -> list[list[int]]:
    mat = [[0] * p.m for _ in range(p.m)]
    for x, y in combinations(range(p.m), 2):
        mg = pairwise_margin(p, x, y)
        mat[x][y], mat[y][x] = mg, -mg
    return mat


def weak_condorcet_set(p: Profile) -> set[int]:
    """All candidates that no other candidate beats by a strict majority."""
    mat = margin_matrix(p)
    return {x for x in range(p.m) if all(mat[y][x] <= 0 for y in range(p.m) if y != x)}


# -- file formats --------------------------------------------------------

def format_profile(p: Profile) -> str:
    lines = [f"{p.m} {p.n}"]
    lines += [" ".join(map(str, v.order)) for v in p.votes]
    return "\n".join(lines) + "\n"


def parse_profile(text: str) -> Profile:
    rows = [ln.split() for ln in text.splitlines() if ln.strip()]
    if not rows or len(rows[0]) != 2:
        raise InvalidProfileError("profile header must be 'm n'")
    m, n = map(int, rows[0])
    if len(rows) - 1 != n:
        raise InvalidProfileError(f"header announces {n} votes, found {len(rows) - 1}")
    return Profile(m, tuple(Ranking(tuple(map(int, r))) for r in rows[1:]))


def format_tree(t: Tree) -> str:
    lines = [str(t.m)] + [f"{u} {v}" for u, v in sorted(t.edges)]
    return "\n".join(lines) + "\n"


def parse_tree(text: str) -> Tree:
    rows = [ln.split() for ln in text.splitlines() if ln.strip()]
    if not rows or len(rows[0]) != 1:
        raise InvalidTreeError("tree header must be 'm'")
    m = int(rows[0][0])
    return Tree(m, [(int(a), int(b)) for a, b in rows[1:]])


def read_profile(path: str | Path) -> Profile:
    return parse_profile(Path(path).read_text())


def write_profile(p: Profile, path: str | Path) -> None:
    Path(path).write_text(format_profile(p))


def read_tree(path: str | Path) -> Tree:
    return parse_tree(Path(path).read_text())


def write_tree(t: Tree, path: str | Path) -> None:
    Path(path).write_text(format_tree(t))
