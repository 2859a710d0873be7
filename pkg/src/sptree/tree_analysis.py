"""Structural parameters of single-peaked trees and builders for tree families."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import combinations
from typing import Optional, Sequence

from .core import (
    Axis,
    InvalidPartitionError,
    InvalidSpecError,
    InvalidTreeError,
    Tree,
    UnsupportedSizeError,
)

BRUTE_FORCE_LIMIT = 20

PathPartition = list[list[int]]


def leaves(t: Tree) -> set[int]:
    """Degree-one nodes. A single-node tree is its own leaf."""
    if t.m == 1:
        return {0}
    return {u for u in range(t.m) if t.degree(u) == 1}


def diameter(t: Tree) -> int:
    return len(longest_path(t)) - 1


def longest_path(t: Tree) -> list[int]:
    """A maximum-length path, found by two breadth-first sweeps.

    Ties between equally far nodes go to the smallest id.
    """
    d0 = t.distances(0)
    a = max(range(t.m), key=lambda u: (d0[u], -u))
    da = t.distances(a)
    b = max(range(t.m), key=lambda u: (da[u], -u))
    return t.path(a, b)


def induced_path(t: Tree, nodes) -> Optional[Axis]:
    """The order along ``nodes`` if they induce a (nonempty) path in ``t``."""
    nodes = set(nodes)
    if not nodes:
        return None
    deg = {u: sum(1 for w in t.neighbors(u) if w in nodes) for u in nodes}
    if any(d > 2 for d in deg.values()):
        return None
    if len(nodes) == 1:
        return Axis(tuple(nodes))
    ends = sorted(u for u, d in deg.items() if d == 1)
    if len(ends) != 2:
        return None
    order = [ends[0]]
    prev = -1
    while True:
        nxt = [w for w in t.neighbors(order[-1]) if w in nodes and w != prev]
        if not nxt:
            break
        prev = order[-1]
        order.append(nxt[0])
    if len(order) != len(nodes):
        return None
    return Axis(tuple(order))


def validate_partition(t: Tree, paths: Sequence[Sequence[int]]) -> None:
    """Raise InvalidPartitionError unless ``paths`` partition t into tree paths."""
    seen: set[int] = set()
    for p in paths:
        if not p:
            raise InvalidPartitionError("empty path in partition")
        for u in p:
            if not 0 <= u < t.m:
                raise InvalidPartitionError(f"node {u} outside the tree")
            if u in seen:
                raise InvalidPartitionError(f"node {u} covered twice")
            seen.add(u)
        for a, b in zip(p, p[1:]):
            if not t.has_edge(a, b):
                raise InvalidPartitionError(f"({a}, {b}) is not a tree edge")
    if len(seen) != t.m:
        missing = sorted(set(range(t.m)) - seen)
        raise InvalidPartitionError(f"nodes {missing} not covered")


def _root_children(t: Tree, root: int):
    parent = t.parents(root)
    children: list[list[int]] = [[] for _ in range(t.m)]
    for u in range(t.m):
        if parent[u] >= 0:
            children[parent[u]].append(u)
    return parent, [sorted(c) for c in children]


def leaf_path_partition(t: Tree) -> PathPartition:
    """Split t into at most one path per leaf.

    Root at the smallest non-leaf; repeatedly take the shallowest unmarked
    node (smallest id on ties) and walk down through smallest-id children to
    a leaf, marking everything on the way.
    """
    if t.m <= 2:
        return [list(range(t.m))]
    lf = leaves(t)
    root = min(u for u in range(t.m) if u not in lf)
    _, children = _root_children(t, root)
    depth = t.distances(root)
    marked = [False] * t.m
    paths = []
    for u in sorted(range(t.m), key=lambda x: (depth[x], x)):
        if marked[u]:
            continue
        p = [u]
        while children[p[-1]]:
            p.append(children[p[-1]][0])
        for w in p:
            marked[w] = True
        paths.append(p)
    return paths


def min_path_cover(t: Tree) -> PathPartition:
    """Minimum vertex-disjoint path cover by a bottom-up greedy merge.

    A node joins the open chains of at most two children; any further open
    child chain is closed off as a finished path.
    """
    _, children = _root_children(t, 0)
    chain: list[Optional[list[int]]] = [None] * t.m
    done: PathPartition = []
    for u in reversed(t.bfs_order(0)):
        open_kids = [c for c in children[u] if chain[c] is not None]
        if not open_kids:
            chain[u] = [u]
        elif len(open_kids) == 1:
            chain[u] = chain[open_kids[0]] + [u]
        else:
            a, b = open_kids[:2]
            done.append(chain[a] + [u] + chain[b][::-1])
            done.extend(chain[c] for c in open_kids[2:])
        for c in open_kids:
            chain[c] = None
    if chain[0] is not None:
        done.append(chain[0])
    return sorted(done, key=min)


def min_path_cover_size_bruteforce(t: Tree) -> int:
    """Path cover number by trying every edge subset with max degree two."""
    if t.m - 1 > 24:
        raise UnsupportedSizeError(f"brute force path cover capped at 25 nodes, got {t.m}")
    edges = sorted(t.edges)
    best = 0
    for mask in range(1 << len(edges)):
        deg = [0] * t.m
        cnt = 0
        ok = True
        for i, (u, v) in enumerate(edges):
            if mask >> i & 1:
                deg[u] += 1
                deg[v] += 1
                cnt += 1
                if deg[u] > 2 or deg[v] > 2:
                    ok = False
                    break
        if ok and cnt > best:
            best = cnt
    # a forest of paths with `best` edges has m - best components
    return t.m - best


def distance_from_path(t: Tree) -> tuple[int, set[int]]:
    """Fewest deletions leaving a path, with a witness deletion set.

    Node sets that induce a path in a tree are exactly the vertex sets of tree
    paths, so keeping a longest path is optimal.
    """
    keep = set(longest_path(t))
    deleted = set(range(t.m)) - keep
    return len(deleted), deleted


def distance_from_path_bruteforce(t: Tree, limit: int = BRUTE_FORCE_LIMIT) -> tuple[int, set[int]]:
    """Exhaustive version of :func:`distance_from_path`; subsets by size."""
    if t.m > limit:
        raise UnsupportedSizeError(f"exhaustive deletion search capped at {limit} nodes, got {t.m}")
    nodes = range(t.m)
    for d in range(t.m):
        for removed in combinations(nodes, d):
            if induced_path(t, set(nodes) - set(removed)) is not None:
                return d, set(removed)
    raise AssertionError("unreachable: a single node is a path")


# -- tree families ---------------------------------------------------------

FAMILIES = ("path", "star", "subdivided_star", "balanced_subdivided_star", "caterpillar", "complete_binary", "random")

_ALIASES = {
    "bstar": "balanced_subdivided_star",
    "sstar": "subdivided_star",
    "binary": "complete_binary",
    "cbt": "complete_binary",
}


@dataclass(frozen=True)
class TreeFamilySpec:
    kind: str
    params: dict = field(default_factory=dict)

    def __str__(self):
        body = ",".join(f"{k}={_fmt(v)}" for k, v in self.params.items())
        return f"{self.kind}:{body}" if body else self.kind


def _fmt(v):
    if isinstance(v, (list, tuple)):
        return "/".join(map(str, v))
    return str(v)


def parse_tree_spec(text: str) -> TreeFamilySpec:
    """Parse ``kind:key=value,...``; list values are slash-separated."""
    kind, _, body = text.partition(":")
    kind = _ALIASES.get(kind.strip(), kind.strip())
    if kind not in FAMILIES:
        raise InvalidSpecError(f"unknown tree family {kind!r}")
    params = {}
    for item in filter(None, (s.strip() for s in body.split(","))):
        key, eq, val = item.partition("=")
        if not eq:
            raise InvalidSpecError(f"expected key=value, got {item!r}")
        try:
            if "/" in val:
                params[key.strip()] = tuple(int(x) for x in val.split("/") if x)
            else:
                params[key.strip()] = int(val)
        except ValueError as exc:
            raise InvalidSpecError(f"bad value in {item!r}") from exc
    return TreeFamilySpec(kind, params)


def _param(spec: TreeFamilySpec, *names, default=None):
    for name in names:
        if name in spec.params:
            return spec.params[name]
    if default is not None:
        return default
    raise InvalidSpecError(f"{spec.kind} needs parameter {names[0]!r}")


def _legs_tree(leg_lengths: Sequence[int]) -> Tree:
    edges = []
    nxt = 1
    for length in leg_lengths:
        if length < 1:
            raise InvalidSpecError("leg lengths must be positive")
        prev = 0
        for _ in range(length):
            edges.append((prev, nxt))
            prev = nxt
            nxt += 1
    return Tree(nxt, edges)


def make_tree(spec: TreeFamilySpec | str) -> Tree:
    """Build a member of a named family; node 0 is the center/root/first path node."""
    if isinstance(spec, str):
        spec = parse_tree_spec(spec)
    kind = spec.kind
    try:
        if kind == "path":
            m = _param(spec, "m")
            if m < 1:
                raise InvalidSpecError("path needs m >= 1")
            return Tree(m, [(i, i + 1) for i in range(m - 1)])
        if kind == "star":
            m = _param(spec, "m")
            if m < 1:
                raise InvalidSpecError("star needs m >= 1")
            return Tree(m, [(0, i) for i in range(1, m)])
        if kind == "subdivided_star":
            legs = _param(spec, "legs")
            legs = (legs,) if isinstance(legs, int) else tuple(legs)
            return _legs_tree(legs)
        if kind == "balanced_subdivided_star":
            ell = _param(spec, "l", "leaves")
            t = _param(spec, "t", "length")
            if ell < 1 or t < 1:
                raise InvalidSpecError("balanced subdivided star needs l >= 1 and t >= 1")
            if "m" in spec.params and spec.params["m"] != t * ell + 1:
                raise InvalidSpecError(f"m must equal t*l + 1 = {t * ell + 1}")
            return _legs_tree([t] * ell)
        if kind == "caterpillar":
            return _caterpillar(spec)
        if kind == "complete_binary":
            h = _param(spec, "h", "height")
            if h < 0:
                raise InvalidSpecError("height must be >= 0")
            m = 2 ** (h + 1) - 1
            return Tree(m, [((i - 1) // 2, i) for i in range(1, m)])
        if kind == "random":
            return random_tree(_param(spec, "m"), spec.params.get("seed", 0))
    except InvalidTreeError as exc:
        raise InvalidSpecError(str(exc)) from exc
    raise InvalidSpecError(f"unknown tree family {kind!r}")


def _caterpillar(spec: TreeFamilySpec) -> Tree:
    """Central path 0..p-1; legs as per-node counts, or a total spread over interior nodes."""
    p = _param(spec, "path", "central")
    if p < 1:
        raise InvalidSpecError("central path needs at least one node")
    legs = spec.params.get("legs", 0)
    if isinstance(legs, int):
        slots = list(range(1, p - 1)) or list(range(p))
        counts = [0] * p
        for i in range(legs):
            counts[slots[i % len(slots)]] += 1
    else:
        if len(legs) > p:
            raise InvalidSpecError("more leg counts than central nodes")
        counts = list(legs) + [0] * (p - len(legs))
    edges = [(i, i + 1) for i in range(p - 1)]
    nxt = p
    for u, c in enumerate(counts):
        if c < 0:
            raise InvalidSpecError("negative leg count")
        for _ in range(c):
            edges.append((u, nxt))
            nxt += 1
    return Tree(nxt, edges)


def random_tree(m: int, seed=None) -> Tree:
    """Uniform labeled tree from a random Pruefer sequence."""
    if m < 1:
        raise InvalidSpecError("random tree needs m >= 1")
    if m <= 2:
        return Tree(m, [(0, 1)] if m == 2 else [])
    rng = random.Random(seed)
    return prufer_decode([rng.randrange(m) for _ in range(m - 2)])


def prufer_decode(seq: Sequence[int]) -> Tree:
    m = len(seq) + 2
    degree = [1] * m
    for x in seq:
        degree[x] += 1
    edges = []
    for x in seq:
        leaf = next(u for u in range(m) if degree[u] == 1)
        edges.append((leaf, x))
        degree[leaf] -= 1
        degree[x] -= 1
    u, v = (w for w in range(m) if degree[w] == 1)
    edges.append((u, v))
    return Tree(m, edges)


def nonisomorphic_trees(m: int) -> list[Tree]:
    """One representative of every unlabeled tree on m nodes."""
    if m == 1:
        return [Tree(1, [])]
    import networkx as nx

    return [Tree(m, g.edges()) for g in nx.nonisomorphic_trees(m)]


def tree_parameters(t: Tree) -> dict:
    d, _ = distance_from_path(t)
    return {
        "m": t.m,
        "l": len(leaves(t)),
        "k": len(min_path_cover(t)),
        "d": d,
        "diameter": diameter(t),
    }


def ceil_log2(x: int) -> int:
    return 0 if x <= 1 else (x - 1).bit_length()
