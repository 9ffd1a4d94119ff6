"""Verification campaigns over families of small graphs.

Labelled enumerations contain many isomorphic copies. Kempe-class counts
are isomorphism invariants, so results are memoised per isomorphism class
(cheap invariant bucket, then VF2) unless ``iso_cache=False``.
"""

from __future__ import annotations

import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from itertools import combinations
from typing import Callable, Iterable, Iterator

import networkx as nx

from .colouring import find_k_colouring
from .graph import Graph, is_connected
from .kempe import BudgetExceeded, ClassSummary, default_budget, kempe_classes
from .lattices import enumerate_k_regular_connected, triangular_prism


def to_nx(G: Graph) -> nx.Graph:
    H = nx.Graph()
    H.add_nodes_from(range(G.n))
    H.add_edges_from(G.edges())
    return H


def from_nx(H: nx.Graph) -> Graph:
    nodes = sorted(H.nodes())
    index = {v: i for i, v in enumerate(nodes)}
    return Graph.from_edges(len(nodes), [(index[u], index[v]) for u, v in H.edges()])


def _invariant(G: Graph) -> tuple:
    per_vertex = []
    for v in range(G.n):
        nb = G.adj[v]
        tri = sum(1 for a, b in combinations(sorted(nb), 2) if G.has_edge(a, b))
        per_vertex.append((len(nb), tri, tuple(sorted(G.degree(w) for w in nb))))
    return (G.n, G.m, tuple(sorted(per_vertex)))


class IsoCache:
    """Map graphs to a value computed once per isomorphism class."""

    def __init__(self) -> None:
        self._buckets: dict[tuple, list[tuple[nx.Graph, object]]] = {}
        self.hits = 0
        self.misses = 0
        self._reps: list[Graph] = []

    def get_or_compute(self, G: Graph, compute: Callable[[Graph], object]) -> object:
        key = _invariant(G)
        H = to_nx(G)
        bucket = self._buckets.setdefault(key, [])
        for rep, value in bucket:
            if nx.is_isomorphic(rep, H):
                self.hits += 1
                return value
        self.misses += 1
        value = compute(G)
        bucket.append((H, value))
        self._reps.append(G)
        return value

    @property
    def classes(self) -> int:
        return sum(len(b) for b in self._buckets.values())

    @property
    def representatives(self) -> list[Graph]:
        """First graph seen from each isomorphism class, in order of discovery."""
        return list(self._reps)


_PRISM = to_nx(triangular_prism())


def is_prism(G: Graph) -> bool:
    return G.n == 6 and G.m == 9 and nx.is_isomorphic(to_nx(G), _PRISM)


def connected_graphs_upto(n_max: int, n_min: int = 1) -> Iterator[Graph]:
    """One graph per isomorphism class of connected graphs on n_min..n_max (<= 7) vertices."""
    if n_max > 7:
        raise ValueError("the graph atlas stops at 7 vertices")
    for H in nx.graph_atlas_g():
        if n_min <= H.number_of_nodes() <= n_max and H.number_of_nodes() > 0:
            if nx.is_connected(H):
                yield from_nx(H)


@dataclass
class Instance:
    index: int
    n: int
    edges: list[tuple[int, int]]
    status: str  # ok | failure | exception | skipped
    classes: int | None = None
    sizes: list[int] = field(default_factory=list)
    note: str = ""

    def to_json(self) -> dict:
        d = asdict(self)
        d["edges"] = [list(e) for e in self.edges]
        d["type"] = "instance"
        return d


@dataclass
class VerificationReport:
    scope: dict
    checked: int = 0
    failures: list[Instance] = field(default_factory=list)
    exceptions: list[Instance] = field(default_factory=list)
    skipped: list[Instance] = field(default_factory=list)
    instances: list[Instance] = field(default_factory=list)
    iso_classes: int | None = None
    wall_time: float = 0.0
    representatives: list[Graph] = field(default_factory=list, repr=False)

    @property
    def exit_code(self) -> int:
        if self.failures:
            return 1
        if self.skipped:
            return 2
        return 0

    def summary(self) -> dict:
        return {
            "type": "summary",
            "scope": self.scope,
            "checked": self.checked,
            "failures": len(self.failures),
            "exceptions": len(self.exceptions),
            "skipped": len(self.skipped),
            "iso_classes": self.iso_classes,
            "exit_code": self.exit_code,
        }

    def json_lines(self, all_instances: bool = True) -> list[dict]:
        rows = self.instances if all_instances else sorted(
            self.failures + self.exceptions + self.skipped, key=lambda i: i.index
        )
        return [i.to_json() for i in rows] + [self.summary()]

    def add(self, inst: Instance) -> None:
        self.checked += 1
        self.instances.append(inst)
        {"failure": self.failures, "exception": self.exceptions, "skipped": self.skipped}.get(
            inst.status, []
        ).append(inst)


def _classify(
    graphs: Iterable[tuple[int, Graph]],
    k: int,
    budget: int,
    iso_cache: bool,
    is_exception: Callable[[Graph], bool],
) -> tuple[list[Instance], list[Graph] | None]:
    cache = IsoCache() if iso_cache else None

    def compute(G: Graph) -> ClassSummary | str:
        try:
            return kempe_classes(G, k, budget)
        except BudgetExceeded as exc:
            return str(exc)

    out = []
    for idx, G in graphs:
        res = cache.get_or_compute(G, compute) if cache else compute(G)
        if isinstance(res, str):
            out.append(Instance(idx, G.n, G.edges(), "skipped", note=res))
            continue
        if res.count <= 1:
            status = "ok"
        elif is_exception(G):
            status = "exception"
        else:
            status = "failure"
        out.append(Instance(idx, G.n, G.edges(), status, res.count, res.sizes))
    return out, (cache.representatives if cache else None)


def _regular_part(args: tuple) -> tuple[list[Instance], list[Graph] | None]:
    n, k, first_row, budget, iso_cache = args
    graphs = (
        (i, G)
        for i, G in enumerate(enumerate_k_regular_connected(n, k, first_row))
        if not G.is_complete()
    )
    return _classify(graphs, k, budget, iso_cache, is_prism if k == 3 else _never)


def _never(G: Graph) -> bool:
    return False


def verify_regular(
    k: int,
    n_max: int,
    jobs: int = 1,
    budget: int | None = None,
    iso_cache: bool = True,
    n_min: int | None = None,
) -> VerificationReport:
    """Check that every connected non-complete k-regular graph with n <= n_max
    vertices has a single Kempe class of k-colourings.

    For k = 3 the triangular prism is the known exception and is reported
    under ``exceptions`` rather than ``failures``. With ``jobs > 1`` the
    labelled stream is split by the neighbourhood of vertex 0; instance
    indices always follow the serial enumeration order.
    """
    if k < 3:
        raise ValueError("k must be >= 3")
    budget = default_budget() if budget is None else budget
    n_min = n_min or k + 1
    t0 = time.perf_counter()
    report = VerificationReport(
        {"k": k, "n_min": n_min, "n_max": n_max, "family": "connected k-regular", "iso_cache": iso_cache}
    )
    reps = IsoCache()
    index = 0
    for n in range(n_min, n_max + 1):
        if n * k % 2 or n <= k:
            continue
        if jobs > 1:
            tasks = [(n, k, row, budget, iso_cache) for row in combinations(range(1, n), k)]
            with ProcessPoolExecutor(jobs) as pool:
                parts = list(pool.map(_regular_part, tasks))
        else:
            parts = [_regular_part((n, k, None, budget, iso_cache))]
        for insts, part_reps in parts:
            for inst in insts:
                inst.index = index
                index += 1
                report.add(inst)
            # workers keep separate caches; merge their representatives
            for G in part_reps or []:
                reps.get_or_compute(G, _never)
    if iso_cache:
        report.iso_classes = reps.classes
        report.representatives = reps.representatives
    report.wall_time = time.perf_counter() - t0
    return report


def _max_degree_graphs(k: int, n_max: int, samples: int, seed: int) -> Iterator[Graph]:
    """Connected graphs of maximum degree exactly k: all of them up to 7
    vertices, then ``samples`` random ones per larger n."""
    for G in connected_graphs_upto(min(n_max, 7)):
        if G.max_degree() == k:
            yield G
    rng = random.Random(seed)
    for n in range(8, n_max + 1):
        got = 0
        tries = 0
        while got < samples and tries < 10_000 * samples:
            tries += 1
            G = random_max_degree_graph(n, k, rng)
            if G is not None:
                got += 1
                yield G


def random_max_degree_graph(n: int, k: int, rng: random.Random) -> Graph | None:
    """One greedy draw of a graph with maximum degree exactly k; None if the
    draw is disconnected or never reaches degree k."""
    pairs = list(combinations(range(n), 2))
    rng.shuffle(pairs)
    deg = [0] * n
    edges = []
    for u, v in pairs:
        if deg[u] < k and deg[v] < k and rng.random() < 0.7:
            edges.append((u, v))
            deg[u] += 1
            deg[v] += 1
    G = Graph.from_edges(n, edges)
    if is_connected(G) and G.max_degree() == k:
        return G
    return None


def verify_max_degree(
    d: int,
    k: int,
    n_max: int,
    samples: int = 20,
    seed: int = 0,
    budget: int | None = None,
) -> VerificationReport:
    """Connected k-colourable graphs of maximum degree k have one Kempe class
    of d-colourings for d >= k >= 3, the (3, 3) prism excepted."""
    if not d >= k >= 3:
        raise ValueError("need d >= k >= 3")
    budget = default_budget() if budget is None else budget
    t0 = time.perf_counter()
    report = VerificationReport({"d": d, "k": k, "n_max": n_max, "samples": samples, "seed": seed})
    exc = is_prism if d == k == 3 else _never
    graphs = (
        (i, G)
        for i, G in enumerate(g for g in _max_degree_graphs(k, n_max, samples, seed) if find_k_colouring(g, k))
    )
    insts, _ = _classify(graphs, d, budget, False, exc)
    for inst in insts:
        report.add(inst)
    report.wall_time = time.perf_counter() - t0
    return report
