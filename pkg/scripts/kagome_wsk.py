"""Long WSK runs: Kagome at q=4 and the open triangular q=5 case.

Prints per-colour occupancy at a fixed vertex with batch-means errors.
Sampling cannot decide ergodicity, so every verdict here is flagged as
inconclusive evidence.
"""

import argparse

from kempe_reconfig.lattices import kagome_lattice, triangular_lattice
from kempe_reconfig.wsk import WskConfig, ergodicity_probe, random_proper_colouring, run_chain


def occupancy_table(G, q, steps, seed):
    init = random_proper_colouring(G, q, seed)
    rep = run_chain(G, init, WskConfig(q, steps, seed=seed, record_every=steps, track_vertex=0))
    for c, (f, se) in enumerate(rep.occupancy(), start=1):
        z = (f - 1 / q) / se if se else float("nan")
        print(f"  colour {c}: {f:.4f} +- {se:.4f}  (z = {z:+.2f})")
    print(f"  distinct states seen: {rep.distinct_states}{'+' if rep.visited_capped else ''}")


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--steps", type=int, default=2_000_000)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--size", type=int, default=3)
    args = ap.parse_args()

    G = kagome_lattice(args.size, args.size)
    print(f"Kagome({args.size},{args.size}), q=4, {args.steps} steps")
    occupancy_table(G, 4, args.steps, args.seed)

    T = triangular_lattice(args.size, args.size)
    print(f"triangular({args.size},{args.size}), q=5, {args.steps} steps")
    occupancy_table(T, 5, args.steps, args.seed)
    res = ergodicity_probe(T, 5, budget=100_000, seed=args.seed)
    print("  probe:", res.to_json())


if __name__ == "__main__":
    main()
