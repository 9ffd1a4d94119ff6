"""Simple undirected graphs on vertices 0..n-1 and the structural queries
used throughout the package (degeneracy, identification, blocks, ...)."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Iterable


class GraphError(ValueError):
    """Raised for malformed graphs or violated structural preconditions."""


@dataclass(frozen=True)
class Graph:
    """Immutable simple graph stored as per-vertex neighbour sets."""

    n: int
    adj: tuple[frozenset[int], ...]
    _masks: tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        if self.n < 0 or len(self.adj) != self.n:
            raise GraphError("adjacency length must equal n")
        for u, nbrs in enumerate(self.adj):
            if u in nbrs:
                raise GraphError(f"self-loop at {u}")
            for v in nbrs:
                if not 0 <= v < self.n or u not in self.adj[v]:
                    raise GraphError(f"adjacency not symmetric at {u}-{v}")
        object.__setattr__(
            self, "_masks", tuple(sum(1 << v for v in nbrs) for nbrs in self.adj)
        )

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> Graph:
        adj: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if u == v:
                raise GraphError(f"self-loop at {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge {u}-{v} out of range for n={n}")
            if v in adj[u]:
                raise GraphError(f"duplicate edge {u}-{v}")
            adj[u].add(v)
            adj[v].add(u)
        return cls(n, tuple(frozenset(s) for s in adj))

    @classmethod
    def empty(cls, n: int) -> Graph:
        return cls(n, tuple(frozenset() for _ in range(n)))

    def neighbours(self, v: int) -> frozenset[int]:
        return self.adj[v]

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    @property
    def masks(self) -> tuple[int, ...]:
        """Neighbourhoods as integer bitmasks (bit v set iff v is a neighbour)."""
        return self._masks

    @cached_property
    def sorted_adj(self) -> tuple[tuple[int, ...], ...]:
        return tuple(tuple(sorted(nbrs)) for nbrs in self.adj)

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in sorted(self.adj[u]) if u < v]

    @property
    def m(self) -> int:
        return sum(len(a) for a in self.adj) // 2

    def max_degree(self) -> int:
        return max((len(a) for a in self.adj), default=0)

    def min_degree(self) -> int:
        return min((len(a) for a in self.adj), default=0)

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj[u]

    def induced(self, vertices: Iterable[int]) -> tuple[Graph, list[int]]:
        """Induced subgraph, relabelled 0..len-1; also returns new->old ids."""
        keep = sorted(set(vertices))
        index = {v: i for i, v in enumerate(keep)}
        edges = [
            (index[u], index[v])
            for u in keep
            for v in self.adj[u]
            if v in index and u < v
        ]
        return Graph.from_edges(len(keep), edges), keep

    def relabel(self, perm: list[int]) -> Graph:
        """Graph with vertex v renamed perm[v]."""
        return Graph.from_edges(self.n, [(perm[u], perm[v]) for u, v in self.edges()])

    def is_complete(self) -> bool:
        return all(len(a) == self.n - 1 for a in self.adj)


@dataclass(frozen=True)
class EliminationOrdering:
    """An ordering where every vertex has at most ``d`` later neighbours."""

    order: tuple[int, ...]
    d: int

    def is_valid_for(self, G: Graph) -> bool:
        if sorted(self.order) != list(range(G.n)):
            return False
        pos = {v: i for i, v in enumerate(self.order)}
        return all(
            sum(1 for w in G.adj[v] if pos[w] > i) <= self.d
            for i, v in enumerate(self.order)
        )

    def ends_in(self, S: Iterable[int]) -> bool:
        S = set(S)
        return set(self.order[len(self.order) - len(S):]) == S


@dataclass(frozen=True)
class BlockDecomposition:
    blocks: list[frozenset[int]]
    cut_vertices: frozenset[int]
    end_block_flags: list[bool]


def is_k_regular(G: Graph, k: int) -> bool:
    return all(len(a) == k for a in G.adj)


def _component_of(G: Graph, start: int, alive: int) -> int:
    """Bitmask of the component containing ``start`` inside the vertex mask ``alive``."""
    masks = G.masks
    seen = 1 << start
    frontier = seen
    while frontier:
        grow = 0
        while frontier:
            low = frontier & -frontier
            grow |= masks[low.bit_length() - 1]
            frontier ^= low
        frontier = grow & alive & ~seen
        seen |= frontier
    return seen


def is_connected(G: Graph) -> bool:
    if G.n <= 1:
        return True
    full = (1 << G.n) - 1
    return _component_of(G, 0, full) == full


def _connected_without(G: Graph, removed: int) -> bool:
    alive = ((1 << G.n) - 1) & ~removed
    if alive == 0:
        return True
    start = (alive & -alive).bit_length() - 1
    return _component_of(G, start, alive) == alive


def is_three_connected(G: Graph) -> bool:
    """Pair-deletion test; O(n^2) connectivity checks, fine at our sizes."""
    if G.n < 4 or not is_connected(G):
        return False
    for u in range(G.n):
        if not _connected_without(G, 1 << u):
            return False
    for u, v in combinations(range(G.n), 2):
        if not _connected_without(G, (1 << u) | (1 << v)):
            return False
    return True


def _peel(G: Graph, candidates: set[int], alive: set[int], d: int | None) -> list[int] | None:
    """Repeatedly remove the lowest-index min-degree vertex of ``candidates``.

    Degrees are counted inside ``alive``. With ``d`` set, only vertices of
    degree <= d may go and None is returned when peeling gets stuck.
    """
    alive = set(alive)
    deg = {v: len(G.adj[v] & alive) for v in candidates}
    remaining = set(candidates)
    order: list[int] = []
    while remaining:
        v = min(remaining, key=lambda x: (deg[x], x))
        if d is not None and deg[v] > d:
            return None
        order.append(v)
        remaining.discard(v)
        alive.discard(v)
        for w in G.adj[v]:
            if w in remaining:
                deg[w] -= 1
    return order


def degeneracy(G: Graph) -> tuple[int, EliminationOrdering]:
    if G.n == 0:
        raise GraphError("degeneracy of the empty graph is undefined")
    order = _peel(G, set(range(G.n)), set(range(G.n)), None)
    assert order is not None
    pos = {v: i for i, v in enumerate(order)}
    d = max(sum(1 for w in G.adj[v] if pos[w] > pos[v]) for v in order)
    return d, EliminationOrdering(tuple(order), d)


def elimination_ordering_ending_in(
    G: Graph, S: Iterable[int], d: int
) -> EliminationOrdering | None:
    """A d-elimination ordering whose final |S| entries are S, or None."""
    S = set(S)
    if not S <= set(range(G.n)):
        raise GraphError("S must be a subset of V")
    everything = set(range(G.n))
    head = _peel(G, everything - S, everything, d)
    if head is None:
        return None
    tail = _peel(G, S, S, d)
    if tail is None:
        return None
    return EliminationOrdering(tuple(head + tail), d)


def identify(G: Graph, u: int, v: int) -> tuple[Graph, dict[int, int]]:
    """Merge non-adjacent u and v into one vertex adjacent to N(u) | N(v).

    Surviving vertices keep their relative order and are packed into
    0..n-3; the merged vertex is n-2. The returned map sends every old
    vertex (u and v included) to its new index.
    """
    if u == v:
        raise GraphError("cannot identify a vertex with itself")
    if G.has_edge(u, v):
        raise GraphError(f"{u} and {v} are adjacent")
    rest = [w for w in range(G.n) if w not in (u, v)]
    index = {w: i for i, w in enumerate(rest)}
    merged = G.n - 2
    index[u] = index[v] = merged
    edges = {
        (min(index[a], index[b]), max(index[a], index[b]))
        for a, b in G.edges()
    }
    return Graph.from_edges(G.n - 1, sorted(edges)), index


def blocks(G: Graph) -> BlockDecomposition:
    """Maximal 2-connected subgraphs (bridges count as K2 blocks).

    Iterative Hopcroft-Tarjan over an edge stack. An isolated vertex (only
    possible when n == 1) forms a block on its own.
    """
    if not is_connected(G):
        raise GraphError("blocks() requires a connected graph")
    if G.n == 0:
        return BlockDecomposition([], frozenset(), [])
    if G.n == 1:
        return BlockDecomposition([frozenset({0})], frozenset(), [True])

    disc = [-1] * G.n
    low = [0] * G.n
    found: list[frozenset[int]] = []
    cuts: set[int] = set()
    edge_stack: list[tuple[int, int]] = []
    nbrs = G.sorted_adj
    timer = 0

    root = 0
    disc[root] = low[root] = timer
    timer += 1
    root_children = 0
    stack = [(root, -1, iter(nbrs[root]))]
    while stack:
        v, parent, it = stack[-1]
        advanced = False
        for w in it:
            if disc[w] == -1:
                edge_stack.append((v, w))
                disc[w] = low[w] = timer
                timer += 1
                stack.append((w, v, iter(nbrs[w])))
                if v == root:
                    root_children += 1
                advanced = True
                break
            if w != parent and disc[w] < disc[v]:
                edge_stack.append((v, w))
                low[v] = min(low[v], disc[w])
        if advanced:
            continue
        stack.pop()
        if parent == -1:
            continue
        low[parent] = min(low[parent], low[v])
        if low[v] >= disc[parent]:
            if parent != root:
                cuts.add(parent)
            comp: set[int] = set()
            while True:
                a, b = edge_stack.pop()
                comp.update((a, b))
                if (a, b) == (parent, v):
                    break
            found.append(frozenset(comp))
    if root_children > 1:
        cuts.add(root)
    flags = [len(b & cuts) <= 1 for b in found]
    return BlockDecomposition(found, frozenset(cuts), flags)


def bfs_distances(G: Graph, source: int) -> list[int]:
    """Hop distances from ``source``; -1 marks unreachable vertices."""
    dist = [-1] * G.n
    dist[source] = 0
    queue = deque([source])
    while queue:
        v = queue.popleft()
        for w in G.sorted_adj[v]:
            if dist[w] < 0:
                dist[w] = dist[v] + 1
                queue.append(w)
    return dist


def second_neighbourhood(G: Graph, v: int) -> frozenset[int]:
    return frozenset(w for w, d in enumerate(bfs_distances(G, v)) if d == 2)


def eligible_pairs(G: Graph, u: int) -> set[frozenset[int]]:
    """Unordered pairs of non-adjacent neighbours of ``u``."""
    return {
        frozenset((a, b))
        for a, b in combinations(G.sorted_adj[u], 2)
        if not G.has_edge(a, b)
    }


def dominates(G: Graph, S1: Iterable[int], S2: Iterable[int]) -> bool:
    S1 = set(S1)
    return all(G.adj[v] & S1 for v in S2)


def weakly_dominates(G: Graph, S1: Iterable[int], S2: Iterable[int]) -> bool:
    S1 = set(S1)
    return all(len(G.adj[v] & S1) == 1 for v in S2)


def diameter(G: Graph) -> int:
    if G.n == 0:
        raise GraphError("diameter of the empty graph is undefined")
    best = 0
    for v in range(G.n):
        dist = bfs_distances(G, v)
        if min(dist) < 0:
            raise GraphError("diameter requires a connected graph")
        best = max(best, max(dist))
    return best
