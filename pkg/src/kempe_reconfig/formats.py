"""Text formats: edge lists, DOT, and the JSON shapes used by the CLI."""

from __future__ import annotations

import json
from pathlib import Path

from .colouring import Colouring
from .graph import Graph, GraphError
from .kempe import KempeChain, ReconfigGraph, WitnessPath, replay_witness


def parse_edge_list(text: str) -> Graph:
    """First line ``n m``, then m lines ``u v``. Loops and repeated edges are rejected."""
    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines:
        raise GraphError("empty edge list")
    try:
        n, m = (int(x) for x in lines[0].split())
        pairs = [tuple(int(x) for x in ln.split()) for ln in lines[1:]]
    except ValueError as exc:
        raise GraphError(f"malformed edge list: {exc}") from None
    if len(pairs) != m:
        raise GraphError(f"header announces {m} edges, found {len(pairs)}")
    if any(len(p) != 2 for p in pairs):
        raise GraphError("each edge line needs exactly two vertices")
    return Graph.from_edges(n, pairs)


def read_edge_list(path: str | Path) -> Graph:
    return parse_edge_list(Path(path).read_text())


def format_edge_list(G: Graph) -> str:
    edges = G.edges()
    return "\n".join([f"{G.n} {len(edges)}"] + [f"{u} {v}" for u, v in edges]) + "\n"


def to_dot(G: Graph, colouring: Colouring | None = None, name: str = "G") -> str:
    out = [f"graph {name} {{"]
    for v in range(G.n):
        label = f' [label="{v}:{colouring[v]}"]' if colouring is not None else ""
        out.append(f"  {v}{label};")
    out += [f"  {u} -- {v};" for u, v in G.edges()]
    out.append("}")
    return "\n".join(out) + "\n"


def reconfig_to_dot(R: ReconfigGraph, max_states: int = 5000) -> str:
    if len(R.states) > max_states:
        raise ValueError(f"{len(R.states)} states; raise max_states to export")
    out = ["graph K {"]
    for i, s in enumerate(R.states):
        label = "".join(map(str, s.colours))
        out.append(f'  s{i} [label="{label}", class={R.class_id[i]}];')
    out += [f"  s{i} -- s{j};" for i, nb in enumerate(R.edges) for j in nb if i < j]
    out.append("}")
    return "\n".join(out) + "\n"


def read_colouring(path: str | Path) -> Colouring:
    return Colouring.from_json(json.loads(Path(path).read_text()))


def witness_to_json(start: Colouring, path: WitnessPath) -> dict:
    return {
        "start": start.to_json(),
        "steps": [chain.to_json() for chain, _ in path],
    }


def witness_from_json(G: Graph, data: dict) -> tuple[Colouring, WitnessPath]:
    """Rebuild a witness path, replaying (and so validating) every step."""
    from .kempe import apply_kempe_change

    start = Colouring.from_json(data["start"])
    cur = start
    path: WitnessPath = []
    for step in data["steps"]:
        chain = KempeChain.from_json(step)
        cur = apply_kempe_change(G, cur, chain)
        path.append((chain, cur))
    replay_witness(G, start, path)
    return start, path
