"""Generators for the graph families used in the experiments.

Toroidal families index grid vertex (i, j) of Z_m x Z_n as ``i * n + j``;
``i`` is the row (increasing southwards), ``j`` the column (increasing
eastwards).
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations
from typing import Iterator

from .graph import Graph, GraphError, is_connected, is_k_regular

FAMILIES = ("toroidal_grid", "triangular", "kagome", "prism", "complete", "cycle")


@dataclass(frozen=True)
class LatticeSpec:
    family: str
    m: int | None = None
    n: int | None = None

    def __post_init__(self) -> None:
        if self.family not in FAMILIES:
            raise GraphError(f"unknown family {self.family!r}")
        if self.family in ("toroidal_grid", "triangular", "kagome"):
            if self.m is None or self.n is None or self.m < 3 or self.n < 3:
                raise GraphError("toroidal families need m, n >= 3")

    def build(self) -> Graph:
        if self.family == "toroidal_grid":
            return toroidal_grid(self.m, self.n)
        if self.family == "triangular":
            return triangular_lattice(self.m, self.n)
        if self.family == "kagome":
            return kagome_lattice(self.m, self.n)
        if self.family == "prism":
            return triangular_prism()
        if self.family == "complete":
            return complete_graph(self.n if self.n is not None else self.m)
        return cycle(self.n if self.n is not None else self.m)


def _check_torus(m: int, n: int) -> None:
    if m < 3 or n < 3:
        raise GraphError(f"toroidal lattices need m, n >= 3 (got {m}x{n})")


def _grid_edges(m: int, n: int) -> list[tuple[int, int]]:
    edges = []
    for i in range(m):
        for j in range(n):
            edges.append((i * n + j, i * n + (j + 1) % n))
            edges.append((i * n + j, ((i + 1) % m) * n + j))
    return edges


def toroidal_grid(m: int, n: int) -> Graph:
    """Cartesian product C_m x C_n."""
    _check_torus(m, n)
    return Graph.from_edges(m * n, _grid_edges(m, n))


def triangular_lattice(m: int, n: int) -> Graph:
    """Toroidal grid with the diagonal (i, j)-(i+1, j+1) added in every face."""
    _check_torus(m, n)
    edges = _grid_edges(m, n)
    edges += [
        (i * n + j, ((i + 1) % m) * n + (j + 1) % n) for i in range(m) for j in range(n)
    ]
    G = Graph.from_edges(m * n, edges)
    assert is_k_regular(G, 6), "triangular lattice must be simple and 6-regular"
    return G


def kagome_lattice(m: int, n: int) -> Graph:
    """Subdivided toroidal grid with two chords per face.

    Ids: grid vertices 0..mn-1, then the midpoint of (i,j)-(i,j+1) at
    ``mn + i*n + j``, then the midpoint of (i,j)-(i+1,j) at ``2mn + i*n + j``.
    In the face whose north-west corner is (i, j) the north midpoint is
    joined to the east midpoint and the south midpoint to the west one.
    """
    _check_torus(m, n)
    mn = m * n

    def g(i: int, j: int) -> int:
        return (i % m) * n + j % n

    def horiz(i: int, j: int) -> int:
        return mn + g(i, j)

    def vert(i: int, j: int) -> int:
        return 2 * mn + g(i, j)

    edges = []
    for i in range(m):
        for j in range(n):
            edges += [(g(i, j), horiz(i, j)), (horiz(i, j), g(i, j + 1))]
            edges += [(g(i, j), vert(i, j)), (vert(i, j), g(i + 1, j))]
            edges.append((horiz(i, j), vert(i, j + 1)))
            edges.append((horiz(i + 1, j), vert(i, j)))
    G = Graph.from_edges(3 * mn, edges)
    assert is_k_regular(G, 4), "Kagome lattice must be 4-regular"
    return G


def triangular_prism() -> Graph:
    """Triangles 0-1-2 and 3-4-5 joined by the matching i -- i+3."""
    return Graph.from_edges(
        6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (0, 3), (1, 4), (2, 5)]
    )


def complete_graph(n: int) -> Graph:
    if n < 1:
        raise GraphError("complete graph needs n >= 1")
    return Graph.from_edges(n, combinations(range(n), 2))


def cycle(n: int) -> Graph:
    if n < 3:
        raise GraphError("cycle needs n >= 3")
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def path(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def _check_regular_params(n: int, k: int) -> None:
    if n * k % 2:
        raise GraphError(f"no {k}-regular graph on {n} vertices (n*k odd)")
    if not 0 <= k < n:
        raise GraphError(f"need 0 <= k < n (got k={k}, n={n})")


def enumerate_k_regular(n: int, k: int, first_row: tuple[int, ...] | None = None) -> Iterator[Graph]:
    """Every labelled simple k-regular graph on n vertices, each exactly once.

    Vertices are completed in index order: vertex i picks all of its
    missing neighbours among j > i at once, so a graph corresponds to one
    branch of the search. ``first_row`` pins the neighbourhood of vertex 0,
    which partitions the stream for independent workers.
    """
    _check_regular_params(n, k)
    need = [k] * n
    adj: list[set[int]] = [set() for _ in range(n)]

    def rec(i: int) -> Iterator[Graph]:
        while i < n and need[i] == 0:
            i += 1
        if i == n:
            yield Graph(n, tuple(frozenset(a) for a in adj))
            return
        later = [j for j in range(i + 1, n) if need[j] > 0]
        if len(later) < need[i]:
            return
        choices = combinations(later, need[i])
        if i == 0 and first_row is not None:
            choices = [tuple(first_row)] if len(first_row) == k else []
        for chosen in choices:
            want = need[i]
            need[i] = 0
            for j in chosen:
                need[j] -= 1
                adj[i].add(j)
                adj[j].add(i)
            # remaining demand must be satisfiable by vertices after i
            if _feasible(need, i + 1, n):
                yield from rec(i + 1)
            for j in chosen:
                need[j] += 1
                adj[i].discard(j)
                adj[j].discard(i)
            need[i] = want

    yield from rec(0)


def _feasible(need: list[int], start: int, n: int) -> bool:
    rest = need[start:]
    total = sum(rest)
    if total % 2:
        return False
    active = sum(1 for x in rest if x > 0)
    return all(x <= active - 1 for x in rest if x)


def enumerate_k_regular_connected(n: int, k: int, first_row: tuple[int, ...] | None = None) -> Iterator[Graph]:
    for G in enumerate_k_regular(n, k, first_row):
        if is_connected(G):
            yield G


def random_k_regular_connected(n: int, k: int, seed: int, max_attempts: int = 100_000) -> Graph:
    """Configuration-model sample, rejecting loops, multi-edges and disconnection."""
    _check_regular_params(n, k)
    rng = random.Random(seed)
    stubs = [v for v in range(n) for _ in range(k)]
    for _ in range(max_attempts):
        rng.shuffle(stubs)
        edges = set()
        ok = True
        for a, b in zip(stubs[::2], stubs[1::2]):
            e = (min(a, b), max(a, b))
            if a == b or e in edges:
                ok = False
                break
            edges.add(e)
        if not ok:
            continue
        G = Graph.from_edges(n, sorted(edges))
        if is_connected(G):
            return G
    raise GraphError(f"no connected simple sample after {max_attempts} attempts")


def random_graph(n: int, p: float, rng: random.Random) -> Graph:
    return Graph.from_edges(n, [e for e in combinations(range(n), 2) if rng.random() < p])


def random_connected_graph(n: int, p: float, rng: random.Random, max_attempts: int = 10_000) -> Graph:
    for _ in range(max_attempts):
        G = random_graph(n, p, rng)
        if is_connected(G):
            return G
    raise GraphError("could not sample a connected graph")
