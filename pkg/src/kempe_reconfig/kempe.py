"""Kempe chains, Kempe changes and the reconfiguration graph K_k(G).

Internally a colouring is handled as a tuple of k colour-class bitmasks
(entry c-1 has bit v set iff v has colour c). A Kempe change on a chain X
with colours a, b is then two mask updates, which keeps exhaustive
state-space searches cheap.
"""

from __future__ import annotations

import os
from collections import deque
from dataclasses import dataclass, field
from typing import Iterator, Sequence

from .colouring import Colouring, ColouringError, _colour_vectors, is_proper
from .graph import Graph, GraphError

DEFAULT_BUDGET = 2_000_000
BUDGET_ENV = "KEMPE_BUDGET_STATES"

State = tuple[int, ...]


class BudgetExceeded(RuntimeError):
    """A state-space search would exceed its configured size limit."""


def default_budget() -> int:
    return int(os.environ.get(BUDGET_ENV, DEFAULT_BUDGET))


@dataclass(frozen=True)
class KempeChain:
    colour_a: int
    colour_b: int
    vertices: frozenset[int]

    def __post_init__(self) -> None:
        if self.colour_a == self.colour_b:
            raise ColouringError("a Kempe chain needs two distinct colours")
        if not self.vertices:
            raise ColouringError("a Kempe chain is nonempty")

    def to_json(self) -> dict:
        return {"pair": [self.colour_a, self.colour_b], "vertices": sorted(self.vertices)}

    @classmethod
    def from_json(cls, data: dict) -> KempeChain:
        a, b = data["pair"]
        return cls(int(a), int(b), frozenset(int(v) for v in data["vertices"]))


@dataclass
class ReconfigGraph:
    """K_k(G): proper k-colourings joined by single Kempe changes."""

    graph: Graph
    k: int
    states: list[Colouring]
    edges: list[list[int]]
    class_id: list[int]

    @property
    def num_classes(self) -> int:
        return max(self.class_id, default=-1) + 1

    def class_sizes(self) -> list[int]:
        sizes = [0] * self.num_classes
        for c in self.class_id:
            sizes[c] += 1
        return sizes

    def index(self) -> dict[tuple[int, ...], int]:
        return {s.colours: i for i, s in enumerate(self.states)}


@dataclass(frozen=True)
class ClassSummary:
    count: int
    sizes: list[int] = field(default_factory=list)
    states: int = 0

    def to_json(self) -> dict:
        return {"classes": self.count, "sizes": self.sizes, "states": self.states}


WitnessPath = list[tuple[KempeChain, Colouring]]


# ---------------------------------------------------------------------------
# mask-level primitives
# ---------------------------------------------------------------------------

def _to_state(cols: Sequence[int], k: int) -> State:
    masks = [0] * k
    for v, c in enumerate(cols):
        masks[c - 1] |= 1 << v
    return tuple(masks)


def _to_colours(state: State, n: int) -> tuple[int, ...]:
    cols = [0] * n
    for c, mask in enumerate(state, start=1):
        while mask:
            low = mask & -mask
            cols[low.bit_length() - 1] = c
            mask ^= low
    return tuple(cols)


def _bits(mask: int) -> frozenset[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return frozenset(out)


def _component(adjm: Sequence[int], start_bit: int, within: int) -> int:
    comp = frontier = start_bit
    while frontier:
        grow = 0
        while frontier:
            low = frontier & -frontier
            grow |= adjm[low.bit_length() - 1]
            frontier ^= low
        frontier = grow & within & ~comp
        comp |= frontier
    return comp


def _components(adjm: Sequence[int], within: int) -> Iterator[int]:
    """Connected components of the subgraph induced by ``within``, by lowest vertex."""
    while within:
        comp = _component(adjm, within & -within, within)
        yield comp
        within &= ~comp


def _moves(adjm: Sequence[int], state: State) -> Iterator[tuple[int, int, int, State]]:
    """All Kempe changes from ``state`` as (a, b, chain mask, new state), a < b 0-based."""
    k = len(state)
    for a in range(k):
        ma = state[a]
        for b in range(a + 1, k):
            mb = state[b]
            within = ma | mb
            while within:
                comp = _component(adjm, within & -within, within)
                within &= ~comp
                new = list(state)
                new[a] = (ma & ~comp) | (mb & comp)
                new[b] = (mb & ~comp) | (ma & comp)
                yield a, b, comp, tuple(new)


def _neighbour_states(adjm: Sequence[int], state: State) -> Iterator[State]:
    k = len(state)
    for a in range(k):
        ma = state[a]
        for b in range(a + 1, k):
            mb = state[b]
            within = ma | mb
            while within:
                # inlined _component for speed
                comp = frontier = within & -within
                while frontier:
                    grow = 0
                    while frontier:
                        low = frontier & -frontier
                        grow |= adjm[low.bit_length() - 1]
                        frontier ^= low
                    frontier = grow & within & ~comp
                    comp |= frontier
                within &= ~comp
                new = list(state)
                new[a] = (ma & ~comp) | (mb & comp)
                new[b] = (mb & ~comp) | (ma & comp)
                yield tuple(new)


def _check_proper(G: Graph, c: Colouring) -> None:
    if not is_proper(G, c):
        raise ColouringError("colouring is not proper")


def _check_pair(c: Colouring, a: int, b: int) -> None:
    if a == b:
        raise ColouringError("colours a and b must differ")
    if not (1 <= a <= c.k and 1 <= b <= c.k):
        raise ColouringError(f"colours must lie in 1..{c.k}")


# ---------------------------------------------------------------------------
# public operations
# ---------------------------------------------------------------------------

def two_colour_subgraph(G: Graph, c: Colouring, a: int, b: int) -> tuple[Graph, list[int]]:
    """G_c(a, b) relabelled to 0..m-1, with the new -> old vertex map."""
    _check_pair(c, a, b)
    return G.induced(v for v in range(G.n) if c[v] in (a, b))


def kempe_chains(G: Graph, c: Colouring, a: int, b: int) -> list[KempeChain]:
    _check_pair(c, a, b)
    within = sum(1 << v for v in range(G.n) if c[v] in (a, b))
    return [KempeChain(a, b, _bits(comp)) for comp in _components(G.masks, within)]


def chain_containing(G: Graph, c: Colouring, v: int, b: int) -> KempeChain:
    """The (c[v], b)-chain through ``v``."""
    a = c[v]
    _check_pair(c, a, b)
    within = sum(1 << w for w in range(G.n) if c[w] in (a, b))
    return KempeChain(a, b, _bits(_component(G.masks, 1 << v, within)))


def apply_kempe_change(G: Graph, c: Colouring, chain: KempeChain) -> Colouring:
    a, b = chain.colour_a, chain.colour_b
    _check_pair(c, a, b)
    if any(c[v] not in (a, b) for v in chain.vertices):
        raise ColouringError("chain contains a vertex not coloured a or b")
    within = sum(1 << v for v in range(G.n) if c[v] in (a, b))
    start = min(chain.vertices)
    if _bits(_component(G.masks, 1 << start, within)) != chain.vertices:
        raise ColouringError("vertex set is not a maximal (a,b)-component")
    cols = list(c.colours)
    for v in chain.vertices:
        cols[v] = b if cols[v] == a else a
    return Colouring(tuple(cols), c.k)


def kempe_neighbours(G: Graph, c: Colouring) -> set[Colouring]:
    _check_proper(G, c)
    state = _to_state(c.colours, c.k)
    return {
        Colouring(_to_colours(s, G.n), c.k)
        for s in set(_neighbour_states(G.masks, state))
    }


def _enumerate_states(G: Graph, k: int, budget: int) -> list[State]:
    states = []
    for vec in _colour_vectors(G, k):
        states.append(_to_state(vec, k))
        if len(states) > budget:
            raise BudgetExceeded(f"more than {budget} proper {k}-colourings")
    return states


def _label_classes(adjm: Sequence[int], states: list[State], index: dict[State, int]) -> list[int]:
    class_id = [-1] * len(states)
    label = 0
    for root in range(len(states)):
        if class_id[root] >= 0:
            continue
        class_id[root] = label
        queue = deque([states[root]])
        while queue:
            s = queue.popleft()
            for t in _neighbour_states(adjm, s):
                j = index[t]
                if class_id[j] < 0:
                    class_id[j] = label
                    queue.append(t)
        label += 1
    return class_id


def build_reconfig_graph(G: Graph, k: int, budget: int | None = None) -> ReconfigGraph:
    budget = default_budget() if budget is None else budget
    states = _enumerate_states(G, k, budget)
    index = {s: i for i, s in enumerate(states)}
    adjm = G.masks
    edges = [sorted({index[t] for t in _neighbour_states(adjm, s)}) for s in states]
    class_id = [-1] * len(states)
    label = 0
    for root in range(len(states)):
        if class_id[root] >= 0:
            continue
        class_id[root] = label
        queue = deque([root])
        while queue:
            i = queue.popleft()
            for j in edges[i]:
                if class_id[j] < 0:
                    class_id[j] = label
                    queue.append(j)
        label += 1
    return ReconfigGraph(
        G, k, [Colouring(_to_colours(s, G.n), k) for s in states], edges, class_id
    )


def kempe_classes(G: Graph, k: int, budget: int | None = None) -> ClassSummary:
    """Number and sizes of the Kempe classes; classes numbered by first state."""
    budget = default_budget() if budget is None else budget
    states = _enumerate_states(G, k, budget)
    index = {s: i for i, s in enumerate(states)}
    class_id = _label_classes(G.masks, states, index)
    sizes = [0] * (max(class_id, default=-1) + 1)
    for c in class_id:
        sizes[c] += 1
    return ClassSummary(len(sizes), sizes, len(states))


def is_single_kempe_class(G: Graph, k: int, budget: int | None = None) -> bool:
    """True iff all proper k-colourings are Kempe equivalent (vacuously for none)."""
    budget = default_budget() if budget is None else budget
    first = next(_colour_vectors(G, k), None)
    if first is None:
        return True
    total = 0
    for _ in _colour_vectors(G, k):
        total += 1
        if total > budget:
            raise BudgetExceeded(f"more than {budget} proper {k}-colourings")
    return len(_closure(G, _to_state(first, k), budget)) == total


def _closure(G: Graph, start: State, budget: int) -> set[State]:
    adjm = G.masks
    seen = {start}
    queue = deque([start])
    while queue:
        s = queue.popleft()
        for t in _neighbour_states(adjm, s):
            if t not in seen:
                seen.add(t)
                if len(seen) > budget:
                    raise BudgetExceeded(f"Kempe class exceeds {budget} states")
                queue.append(t)
    return seen


def kempe_class_of(G: Graph, c: Colouring, budget: int | None = None) -> set[Colouring]:
    _check_proper(G, c)
    budget = default_budget() if budget is None else budget
    return {
        Colouring(_to_colours(s, G.n), c.k)
        for s in _closure(G, _to_state(c.colours, c.k), budget)
    }


def are_kempe_equivalent(
    G: Graph, k: int, alpha: Colouring, beta: Colouring, budget: int | None = None
) -> tuple[bool, WitnessPath | None]:
    """BFS from ``alpha``; on success also returns a shortest witness path."""
    for c in (alpha, beta):
        if c.k != k:
            raise ColouringError(f"colouring palette {c.k} differs from k={k}")
        _check_proper(G, c)
    budget = default_budget() if budget is None else budget
    src = _to_state(alpha.colours, k)
    dst = _to_state(beta.colours, k)
    if src == dst:
        return True, []
    parent: dict[State, tuple[State, int, int, int] | None] = {src: None}
    queue = deque([src])
    adjm = G.masks
    while queue:
        s = queue.popleft()
        for a, b, comp, t in _moves(adjm, s):
            if t in parent:
                continue
            parent[t] = (s, a, b, comp)
            if t == dst:
                return True, _unwind(parent, t, G.n, k)
            if len(parent) > budget:
                raise BudgetExceeded(f"equivalence search exceeds {budget} states")
            queue.append(t)
    return False, None


def _unwind(parent: dict, end: State, n: int, k: int) -> WitnessPath:
    steps: WitnessPath = []
    s = end
    while parent[s] is not None:
        prev, a, b, comp = parent[s]
        steps.append((KempeChain(a + 1, b + 1, _bits(comp)), Colouring(_to_colours(s, n), k)))
        s = prev
    steps.reverse()
    return steps


def replay_witness(G: Graph, alpha: Colouring, path: WitnessPath) -> Colouring:
    """Re-apply every step, checking each recorded colouring; returns the last one."""
    cur = alpha
    for chain, expected in path:
        cur = apply_kempe_change(G, cur, chain)
        if cur != expected:
            raise ColouringError("witness step does not reproduce the recorded colouring")
    return cur


def restricted_class(G: Graph, k: int, u: int, v: int) -> list[Colouring]:
    """Proper k-colourings giving u and v the same colour, in enumeration order."""
    if u == v or G.has_edge(u, v):
        raise GraphError("u and v must be distinct and non-adjacent")
    return [Colouring(vec, k) for vec in _colour_vectors(G, k) if vec[u] == vec[v]]


def is_locked(G: Graph, c: Colouring, x: int) -> bool:
    """Every colour other than c[x] appears on a neighbour of x."""
    seen = {c[w] for w in G.adj[x]}
    return all(col in seen for col in range(1, c.k + 1) if col != c[x])


def is_partition_frozen(G: Graph, c: Colouring) -> bool:
    _check_proper(G, c)
    state = _to_state(c.colours, c.k)
    base = frozenset(m for m in state if m)
    return all(frozenset(m for m in t if m) == base for t in _neighbour_states(G.masks, state))


def canonical_colours(cols: Sequence[int]) -> tuple[int, ...]:
    """Relabel colours by order of first appearance (one representative per colour-permutation orbit)."""
    relabel: dict[int, int] = {}
    return tuple(relabel.setdefault(c, len(relabel) + 1) for c in cols)


def classes_up_to_permutation(R: ReconfigGraph) -> int:
    """Number of Kempe classes once colour names are forgotten."""
    forms: dict[int, set[tuple[int, ...]]] = {}
    for s, cid in zip(R.states, R.class_id):
        forms.setdefault(cid, set()).add(canonical_colours(s.colours))
    return len({frozenset(f) for f in forms.values()})


def reconfig_diameter(R: ReconfigGraph, budget: int | None = None) -> list[int]:
    """Exact diameter of every Kempe class, in class order.

    Colour permutations are automorphisms of K_k(G), so eccentricity is
    constant on their orbits and BFS runs only from orbit representatives
    (colour vectors in first-appearance form). ``budget`` caps the number
    of BFS sources times states.
    """
    import numpy as np
    from scipy.sparse import csr_matrix
    from scipy.sparse.csgraph import shortest_path

    budget = default_budget() if budget is None else budget
    N = len(R.states)
    if N == 0:
        return []
    canon = [canonical_colours(s.colours) for s in R.states]
    reps = sorted({i for i, s in enumerate(R.states) if canon[i] == s.colours})
    if len(reps) * N > 50 * budget:
        raise BudgetExceeded(f"diameter needs {len(reps)} BFS runs over {N} states")

    indptr = np.zeros(N + 1, dtype=np.int64)
    indptr[1:] = np.cumsum([len(e) for e in R.edges])
    indices = np.fromiter((j for e in R.edges for j in e), dtype=np.int32, count=int(indptr[-1]))
    adj = csr_matrix((np.ones(len(indices), dtype=np.int8), indices, indptr), shape=(N, N))

    ecc_by_form: dict[tuple[int, ...], int] = {}
    for start in range(0, len(reps), 64):
        batch = reps[start:start + 64]
        dist = shortest_path(adj, method="D", unweighted=True, indices=batch)
        for i, row in zip(batch, dist):
            reach = row[np.isfinite(row)]
            ecc_by_form[canon[i]] = int(reach.max())
    diam = [0] * R.num_classes
    for i, cid in enumerate(R.class_id):
        diam[cid] = max(diam[cid], ecc_by_form[canon[i]])
    return diam
