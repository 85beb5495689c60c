#!/usr/bin/env python3
"""Scan strongly connected voxel complexes for the half-boundary identity.

For solid voxel complexes the angle characteristic chi_alpha provably equals
half the boundary Euler characteristic; whether that survives for every
strongly connected embedded complex is open, so this scans random
facet-connected complexes plus the named fixtures and reports any violation.
"""

import argparse
from fractions import Fraction

import numpy as np

import anglesum.complexes as cx


def grow_connected(rng, footprint, size):
    """Random facet-connected complex: attach any facet-neighbour, so holes
    and handles can form as growth wraps around."""
    side = max(c[0] for c in footprint) + 1
    start = tuple(int(rng.integers(0, side)) for _ in range(3))
    cells = {start}
    while len(cells) < size:
        frontier = sorted(
            n
            for c in cells
            for a in range(3)
            for s in (-1, 1)
            if (n := tuple(x + s if i == a else x for i, x in enumerate(c)))
            not in cells and n in footprint
        )
        if not frontier:
            break
        cells.add(frontier[rng.integers(0, len(frontier))])
    return cx.VoxelComplex(3, frozenset(cells))


def scan_one(v):
    ca = cx.chi_alpha(v)
    cb = cx.chi_boundary(v)
    return ca, cb, ca == Fraction(cb, 2)


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--complexes", type=int, default=300)
    ap.add_argument("--seed", type=int, default=0xC0FFEE)
    ap.add_argument("--side", type=int, default=5,
                    help="footprint is a side^3 cube of cells")
    ap.add_argument("--max-cells", type=int, default=40)
    args = ap.parse_args()

    fixtures = [
        ("block(2,3,4)", cx.block(2, 3, 4)),
        ("torus", cx.torus_voxel()),
        ("gamma", cx.gamma_voxel()),
        ("furch", cx.furch()),
        ("furch-filled", cx.furch_filled()),
    ] + [(f"handlebody:{g}", cx.handlebody(g)) for g in range(4)]

    print(f"{'complex':16s} {'cells':>5s} {'chi_alpha':>9s} {'chi_bdry':>8s} "
          f"{'half?':>5s}")
    bad = []
    for name, v in fixtures:
        ca, cb, ok = scan_one(v)
        print(f"{name:16s} {len(v.cells):5d} {str(ca):>9s} {cb:8d} "
              f"{'yes' if ok else 'NO':>5s}")
        if not ok:
            bad.append((name, v))

    rng = np.random.default_rng(args.seed)
    footprint = {(x, y, z) for x in range(args.side)
                 for y in range(args.side) for z in range(args.side)}
    held = 0
    for t in range(args.complexes):
        v = grow_connected(rng, footprint, int(rng.integers(2, args.max_cells)))
        assert cx.facet_connected(v)
        ca, cb, ok = scan_one(v)
        if ok:
            held += 1
        else:
            bad.append((f"random#{t}", v))
            print(f"random#{t:<9d} {len(v.cells):5d} {str(ca):>9s} {cb:8d} "
                  f"{'NO':>5s}")

    print(f"\nrandom scan: identity held on {held}/{args.complexes}")
    if bad:
        print(f"{len(bad)} violations; first offender's cells:")
        print(sorted(bad[0][1].cells))
    else:
        print("no violations found")


if __name__ == "__main__":
    main()
