"""Diameters of Kempe classes against n^2 for small instances."""

import argparse

from kempe_reconfig.harness import verify_regular
from kempe_reconfig.kempe import build_reconfig_graph, reconfig_diameter
from kempe_reconfig.lattices import complete_graph, cycle, toroidal_grid, triangular_lattice, triangular_prism


def row(name, G, k):
    R = build_reconfig_graph(G, k)
    diam = reconfig_diameter(R)
    ratio = max(diam, default=0) / (G.n * G.n)
    print(f"{name:26s} n={G.n:2d} k={k} states={len(R.states):7d} classes={R.num_classes} "
          f"diam={diam} diam/n^2={ratio:.3f}")


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--n-max", type=int, default=8, help="regular graphs up to this order")
    args = ap.parse_args()
    row("K4", complete_graph(4), 4)
    row("C5", cycle(5), 3)
    for n in (6, 7, 8, 9):
        row(f"C{n}", cycle(n), 3)
    row("prism", triangular_prism(), 3)
    row("prism", triangular_prism(), 4)
    row("grid(3,3)", toroidal_grid(3, 3), 4)
    row("triangular(3,3)", triangular_lattice(3, 3), 6)
    for k in (3, 4):
        rep = verify_regular(k, args.n_max)
        for i, G in enumerate(rep.representatives):
            row(f"{k}-regular #{i}", G, k)


if __name__ == "__main__":
    main()
