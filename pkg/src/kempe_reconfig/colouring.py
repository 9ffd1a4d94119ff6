"""Proper k-colourings: checks, enumeration, greedy extension and list colouring.

Colours are 1-based, so a k-colouring takes values in {1, ..., k}.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, Sequence

from .graph import EliminationOrdering, Graph, GraphError, blocks, is_connected


class ColouringError(ValueError):
    """A colouring is malformed or a precondition on it fails."""


@dataclass(frozen=True)
class Colouring:
    colours: tuple[int, ...]
    k: int

    def __post_init__(self) -> None:
        bad = [c for c in self.colours if not 1 <= c <= self.k]
        if bad:
            raise ColouringError(f"colour {bad[0]} outside 1..{self.k}")

    def __getitem__(self, v: int) -> int:
        return self.colours[v]

    def __len__(self) -> int:
        return len(self.colours)

    def classes(self) -> frozenset[frozenset[int]]:
        """The colour partition, ignoring colour names."""
        groups: dict[int, set[int]] = {}
        for v, c in enumerate(self.colours):
            groups.setdefault(c, set()).add(v)
        return frozenset(frozenset(g) for g in groups.values())

    def permuted(self, perm: Mapping[int, int]) -> Colouring:
        return Colouring(tuple(perm[c] for c in self.colours), self.k)

    def to_json(self) -> dict:
        return {"k": self.k, "colours": list(self.colours)}

    @classmethod
    def from_json(cls, data: Mapping) -> Colouring:
        return cls(tuple(int(c) for c in data["colours"]), int(data["k"]))


@dataclass(frozen=True)
class PartialColouring:
    assigned: Mapping[int, int]
    k: int

    def __post_init__(self) -> None:
        for v, c in self.assigned.items():
            if not 1 <= c <= self.k:
                raise ColouringError(f"colour {c} of vertex {v} outside 1..{self.k}")

    def is_proper_on(self, G: Graph) -> bool:
        return all(
            self.assigned[u] != self.assigned[w]
            for u in self.assigned
            for w in G.adj[u]
            if w in self.assigned
        )

    def to_json(self, n: int) -> dict:
        return {"k": self.k, "colours": [self.assigned.get(v, 0) for v in range(n)]}

    @classmethod
    def from_json(cls, data: Mapping) -> PartialColouring:
        cols = data["colours"]
        return cls({v: int(c) for v, c in enumerate(cols) if c}, int(data["k"]))


ListAssignment = Sequence[Iterable[int]]


def is_proper(G: Graph, c: Colouring) -> bool:
    if len(c.colours) != G.n:
        raise ColouringError(f"colouring covers {len(c.colours)} vertices, graph has {G.n}")
    cols = c.colours
    return all(cols[u] != cols[v] for u, v in G.edges())


def _colour_vectors(G: Graph, k: int, prefix: Sequence[int] = ()) -> Iterator[tuple[int, ...]]:
    """Proper colour vectors in lexicographic order, extending ``prefix``."""
    n = G.n
    if n == 0:
        yield ()
        return
    earlier = [[w for w in G.sorted_adj[v] if w < v] for v in range(n)]
    cols = [0] * n
    for v, c in enumerate(prefix):
        if any(cols[w] == c for w in earlier[v]) or not 1 <= c <= k:
            return
        cols[v] = c
    start = len(prefix)
    if start == n:
        yield tuple(cols)
        return
    # iterative backtracking, cols[v] holds the colour currently tried at v
    v = start
    cols[v] = 0
    while v >= start:
        c = cols[v] + 1
        nb = earlier[v]
        while c <= k and any(cols[w] == c for w in nb):
            c += 1
        if c > k:
            cols[v] = 0
            v -= 1
            continue
        cols[v] = c
        if v == n - 1:
            yield tuple(cols)
        else:
            v += 1
            cols[v] = 0


def enumerate_colourings(G: Graph, k: int, first_colour: int | None = None) -> Iterator[Colouring]:
    """All proper k-colourings, lexicographic in the colour vector.

    ``first_colour`` restricts the stream to colourings with vertex 0 of
    that colour; the k sub-streams partition the full stream.
    """
    if k < 1:
        raise ColouringError("k must be >= 1")
    prefix = () if first_colour is None or G.n == 0 else (first_colour,)
    for vec in _colour_vectors(G, k, prefix):
        yield Colouring(vec, k)


def count_colourings(G: Graph, k: int) -> int:
    return sum(1 for _ in _colour_vectors(G, k))


def find_k_colouring(G: Graph, k: int) -> Colouring | None:
    return next(enumerate_colourings(G, k), None)


def _greedy(G: Graph, order: Sequence[int], cols: dict[int, int], k: int) -> Colouring:
    for v in reversed(order):
        if v in cols:
            continue
        used = {cols[w] for w in G.adj[v] if w in cols}
        c = next((c for c in range(1, k + 1) if c not in used), None)
        if c is None:
            raise ColouringError(f"no colour left for vertex {v}")
        cols[v] = c
    return Colouring(tuple(cols[v] for v in range(G.n)), k)


def extend_colouring(
    G: Graph, partial: PartialColouring, ordering: EliminationOrdering
) -> Colouring:
    """Colour the vertices outside S in reverse elimination order, lowest colour first."""
    S = set(partial.assigned)
    k = partial.k
    if ordering.d + 1 > k:
        raise ColouringError(f"a {ordering.d}-elimination ordering needs k >= {ordering.d + 1}")
    if not ordering.is_valid_for(G):
        raise ColouringError(f"ordering is not a {ordering.d}-elimination ordering of G")
    if not ordering.ends_in(S):
        raise ColouringError("ordering does not end in the precoloured set")
    if not partial.is_proper_on(G):
        raise ColouringError("partial colouring is not proper on G[S]")
    return _greedy(G, ordering.order, dict(partial.assigned), k)


def extend_with_anchor(
    G: Graph, S: Iterable[int], partial: PartialColouring, x: int, k: int
) -> Colouring:
    """Extend a colouring of S using a BFS from the low-degree vertex ``x``.

    Ordering V - S by discovery time from x and appending S gives a
    (k-1)-elimination ordering, so greedy colouring in reverse never runs
    out of colours.
    """
    S = set(S)
    if set(partial.assigned) != S:
        raise ColouringError("partial colouring must be defined exactly on S")
    if len(S) > k:
        raise ColouringError(f"precondition |S| <= k failed (|S|={len(S)}, k={k})")
    if x in S or not 0 <= x < G.n:
        raise ColouringError("precondition x in V - S failed")
    rest = [v for v in range(G.n) if v not in S]
    sub, _ = G.induced(rest)
    if not is_connected(sub):
        raise ColouringError("precondition G[V - S] connected failed")
    high = [v for v in rest if G.degree(v) > k]
    if high:
        raise ColouringError(f"precondition deg <= k on V - S failed at vertex {high[0]}")
    if G.degree(x) > k - 1:
        raise ColouringError(f"precondition deg(x) <= k-1 failed (deg={G.degree(x)})")
    if partial.k > k:
        raise ColouringError("partial colouring uses a larger palette than k")
    if not partial.is_proper_on(G):
        raise ColouringError("precondition: partial colouring proper on G[S] failed")

    order = [x]
    seen = {x}
    queue = deque([x])
    while queue:
        v = queue.popleft()
        for w in G.sorted_adj[v]:
            if w not in seen and w not in S:
                seen.add(w)
                order.append(w)
                queue.append(w)
    order += sorted(S)
    return _greedy(G, order, dict(partial.assigned), k)


def list_colour(G: Graph, L: ListAssignment) -> dict[int, int] | None:
    """Backtracking search for a proper colouring with colour(v) in L[v]."""
    lists = [set(l) for l in L]
    if len(lists) != G.n:
        raise ColouringError("need one list per vertex")
    cols: dict[int, int] = {}

    def rec() -> bool:
        if len(cols) == G.n:
            return True
        # most constrained uncoloured vertex first
        best, options = -1, None
        for v in range(G.n):
            if v in cols:
                continue
            opts = lists[v] - {cols[w] for w in G.adj[v] if w in cols}
            if options is None or len(opts) < len(options):
                best, options = v, opts
                if not opts:
                    return False
        for c in sorted(options):
            cols[best] = c
            if rec():
                return True
            del cols[best]
        return False

    return dict(cols) if rec() else None


def _is_odd_cycle_block(G: Graph, block: frozenset[int]) -> bool:
    if len(block) < 3 or len(block) % 2 == 0:
        return False
    return all(len(G.adj[v] & block) == 2 for v in block)


def _is_complete_block(G: Graph, block: frozenset[int]) -> bool:
    return all(len(G.adj[v] & block) == len(block) - 1 for v in block)


def is_gallai_tree(G: Graph) -> bool:
    """True iff every block is complete or an odd cycle."""
    return all(
        _is_complete_block(G, b) or _is_odd_cycle_block(G, b) for b in blocks(G).blocks
    )


def is_degree_choosable(G: Graph) -> bool:
    if not is_connected(G):
        raise GraphError("degree-choosability is only characterised for connected graphs")
    if G.n == 0:
        return True
    return not is_gallai_tree(G)


def bad_degree_lists(G: Graph) -> list[set[int]]:
    """Degree-sized lists admitting no colouring, for a connected Gallai tree.

    Each block B gets its own palette of |B|-1 colours (2 for an odd
    cycle) and a vertex receives the union over its blocks. Colouring
    fails by induction on end blocks.
    """
    if not is_gallai_tree(G):
        raise GraphError("graph is degree-choosable; no bad assignment exists")
    lists: list[set[int]] = [set() for _ in range(G.n)]
    nxt = 1
    for b in blocks(G).blocks:
        size = 2 if _is_odd_cycle_block(G, b) and len(b) > 3 else len(b) - 1
        palette = set(range(nxt, nxt + size))
        nxt += size
        for v in b:
            lists[v] |= palette
    return lists
