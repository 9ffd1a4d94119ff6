"""Zero-temperature antiferromagnetic Potts dynamics with Kempe-chain moves.

One move draws a vertex v and a colour b != s(v) uniformly, then swaps the
(s(v), b)-chain through v. Every Kempe change has positive probability,
so the chain is irreducible exactly on a single Kempe class.

Randomness comes from numpy's PCG64 consumed one raw 64-bit word per step:
the high half picks the vertex and the low half the colour offset. A run
is fully reproducible from its seed.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field

import numpy as np

from .colouring import Colouring, ColouringError, is_proper
from .graph import Graph
from .kempe import BudgetExceeded, build_reconfig_graph

_BLOCK = 4096
_LOW = 0xFFFFFFFF


class WordStream:
    """Buffered raw 64-bit output of PCG64."""

    def __init__(self, seed: int) -> None:
        self.seed = seed
        self._bitgen = np.random.PCG64(seed)
        self._buf: list[int] = []
        self._pos = 0

    def next(self) -> int:
        if self._pos == len(self._buf):
            self._buf = self._bitgen.random_raw(_BLOCK).tolist()
            self._pos = 0
        x = self._buf[self._pos]
        self._pos += 1
        return x


@dataclass(frozen=True)
class WskConfig:
    q: int
    steps: int
    seed: int = 0
    record_every: int = 1
    track_vertex: int | None = None
    visited_cap: int = 100_000
    check_proper: bool = False

    def __post_init__(self) -> None:
        if self.q < 2:
            raise ValueError("q must be >= 2")
        if self.steps < 0:
            raise ValueError("steps must be >= 0")
        if self.record_every < 1:
            raise ValueError("record_every must be >= 1")


@dataclass
class ChainState:
    colours: list[int]
    q: int
    rng: WordStream
    step: int = 0

    @classmethod
    def start(cls, G: Graph, init: Colouring, seed: int) -> ChainState:
        if not is_proper(G, init):
            raise ColouringError("initial colouring is not proper")
        return cls(list(init.colours), init.k, WordStream(seed))

    def colouring(self) -> Colouring:
        return Colouring(tuple(self.colours), self.q)


def _flip(adj: tuple[tuple[int, ...], ...], cols: list[int], v: int, b: int) -> int:
    """Swap the (cols[v], b)-chain through v in place; returns its size."""
    a = cols[v]
    cols[v] = b
    stack = [v]
    size = 1
    while stack:
        x = stack.pop()
        # x has just changed colour; neighbours still holding its new colour
        # belong to the chain and must flip the other way
        want = cols[x]
        other = a if want == b else b
        for y in adj[x]:
            if cols[y] == want:
                cols[y] = other
                stack.append(y)
                size += 1
    return size


def wsk_step(G: Graph, s: ChainState) -> ChainState:
    """Advance ``s`` by one move in place and return it."""
    x = s.rng.next()
    v = ((x >> 32) * G.n) >> 32
    b = (((x & _LOW) * (s.q - 1)) >> 32) + 1
    if b >= s.colours[v]:
        b += 1
    _flip(G.sorted_adj, s.colours, v, b)
    s.step += 1
    return s


@dataclass
class RunReport:
    final: Colouring
    steps: int
    seed: int
    histograms: list[list[int]]
    samples: int
    distinct_states: int
    visited_capped: bool
    track_vertex: int | None = None
    track_series: bytes = field(default=b"", repr=False)
    proper_throughout: bool | None = None

    def occupancy(self) -> list[tuple[float, float]]:
        """Per-colour (frequency, batch-means standard error) at the tracked vertex."""
        return occupancy_with_stderr(self.track_series, self.final.k)

    def to_json(self) -> dict:
        out = {
            "steps": self.steps,
            "seed": self.seed,
            "final": self.final.to_json(),
            "samples": self.samples,
            "distinct_states": self.distinct_states,
            "visited_capped": self.visited_capped,
            "histograms": self.histograms,
            "proper_throughout": self.proper_throughout,
        }
        if self.track_vertex is not None and self.track_series:
            out["track_vertex"] = self.track_vertex
            out["occupancy"] = [
                {"colour": c, "frequency": f, "stderr": se}
                for c, (f, se) in enumerate(self.occupancy(), start=1)
            ]
        return out


def run_chain(G: Graph, init: Colouring, cfg: WskConfig) -> RunReport:
    if init.k != cfg.q:
        raise ColouringError(f"initial colouring has palette {init.k}, config says q={cfg.q}")
    s = ChainState.start(G, init, cfg.seed)
    q, n = cfg.q, G.n
    adj = G.sorted_adj
    edges = G.edges()
    cols = s.colours
    hist = [[0] * q for _ in range(n)]
    samples = 0
    visited = {tuple(cols)}
    capped = False
    series = bytearray()
    track = cfg.track_vertex
    proper = True if cfg.check_proper else None

    def record() -> None:
        nonlocal samples
        for v in range(n):
            hist[v][cols[v] - 1] += 1
        samples += 1

    record()
    for t in range(1, cfg.steps + 1):
        x = s.rng.next()
        v = ((x >> 32) * n) >> 32
        b = (((x & _LOW) * (q - 1)) >> 32) + 1
        if b >= cols[v]:
            b += 1
        _flip(adj, cols, v, b)
        if track is not None:
            series.append(cols[track])
        if not capped:
            visited.add(tuple(cols))
            if len(visited) >= cfg.visited_cap:
                capped = True
        if proper and any(cols[a] == cols[c] for a, c in edges):
            proper = False
        if t % cfg.record_every == 0:
            record()
    s.step = cfg.steps
    return RunReport(
        final=s.colouring(),
        steps=cfg.steps,
        seed=cfg.seed,
        histograms=hist,
        samples=samples,
        distinct_states=len(visited),
        visited_capped=capped,
        track_vertex=track,
        track_series=bytes(series),
        proper_throughout=proper,
    )


def occupancy_with_stderr(series: bytes, q: int, batches: int = 100) -> list[tuple[float, float]]:
    """Frequency of each colour in ``series`` with a batch-means standard error."""
    arr = np.frombuffer(series, dtype=np.uint8)
    if arr.size < batches:
        raise ValueError("series too short for batch means")
    usable = arr[: arr.size - arr.size % batches].reshape(batches, -1)
    out = []
    for c in range(1, q + 1):
        per_batch = (usable == c).mean(axis=1)
        freq = float((arr == c).mean())
        se = float(per_batch.std(ddof=1) / math.sqrt(batches))
        out.append((freq, se))
    return out


def random_proper_colouring(G: Graph, q: int, seed: int) -> Colouring:
    """Randomised backtracking: random vertex order, shuffled colour tries."""
    rng = random.Random(seed)
    order = list(range(G.n))
    rng.shuffle(order)
    cols = [0] * G.n
    tries: list[list[int]] = [[] for _ in range(G.n)]
    i = 0
    while 0 <= i < G.n:
        v = order[i]
        if cols[v] == 0:
            tries[v] = rng.sample(range(1, q + 1), q)
        else:
            cols[v] = 0
        while tries[v]:
            c = tries[v].pop()
            if all(cols[w] != c for w in G.adj[v]):
                cols[v] = c
                break
        if cols[v]:
            i += 1
        else:
            i -= 1
    if i < 0:
        raise ColouringError(f"graph has no proper {q}-colouring")
    return Colouring(tuple(cols), q)


@dataclass
class ProbeResult:
    verdict: str  # "consistent" or "refuted"
    exact: bool
    classes: int | None = None
    witness: tuple[Colouring, Colouring] | None = None
    note: str = ""
    statistics: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        out = {"verdict": self.verdict, "exact": self.exact, "classes": self.classes, "note": self.note}
        if self.witness:
            out["witness"] = [c.to_json() for c in self.witness]
        if self.statistics:
            out["statistics"] = self.statistics
        return out


def ergodicity_probe(
    G: Graph,
    q: int,
    budget: int = 200_000,
    starts: int = 8,
    steps: int = 20_000,
    seed: int = 0,
) -> ProbeResult:
    """Exact verdict when K_q(G) fits in ``budget`` states, sampling otherwise.

    Sampling can never establish ergodicity, nor refute it, so the sampled
    verdict is always ``consistent`` with ``exact=False``.
    """
    try:
        R = build_reconfig_graph(G, q, budget)
    except BudgetExceeded:
        R = None
    if R is not None:
        if R.num_classes <= 1:
            return ProbeResult("consistent", True, R.num_classes, note="single Kempe class")
        first = R.class_id.index(1)
        return ProbeResult(
            "refuted", True, R.num_classes, (R.states[0], R.states[first]),
            note="colourings in different Kempe classes",
        )

    track = 0
    freqs = []
    for i in range(starts):
        init = random_proper_colouring(G, q, seed + i)
        rep = run_chain(G, init, WskConfig(q, steps, seed + i, record_every=steps, track_vertex=track))
        freqs.append([f for f, _ in rep.occupancy()])
    mean = np.mean(freqs, axis=0)
    return ProbeResult(
        "consistent",
        False,
        note="state space exceeds budget; sampled evidence only, inconclusive",
        statistics={
            "track_vertex": track,
            "starts": starts,
            "steps_per_start": steps,
            "mean_occupancy": [float(x) for x in mean],
        },
    )

