#!/usr/bin/env python3
"""Audit the gluing laws on random voxel-ball pairs.

Grows pairs of touching voxel balls inside a small footprint, glues them,
and tallies how the interface classifications distribute and whether the
predicted angle/boundary characteristics match the computed ones.
"""

import argparse
from collections import Counter

import numpy as np

import anglesum.complexes as cx


def grow_ball(rng, start, footprint, size, avoid=frozenset()):
    """Attach axis-neighbours one at a time, only along disk contacts, so the
    result stays a ball."""
    cells = {start}
    for _ in range(200):
        if len(cells) >= size:
            break
        frontier = []
        for c in cells:
            for a in range(3):
                for s in (-1, 1):
                    n = tuple(x + s if i == a else x for i, x in enumerate(c))
                    if n in cells or n in avoid or n not in footprint:
                        continue
                    frontier.append(n)
        if not frontier:
            break
        n = frontier[rng.integers(0, len(frontier))]
        shared = set(cx.cell_faces(n)) & set(cx.face_incidence(
            cx.VoxelComplex(3, frozenset(cells))))
        try:
            iface = cx._classify_interface(3, shared)
        except cx.GluingError:
            continue
        if iface.kind == "balls" and iface.components == 1:
            cells.add(n)
    return cells


def random_pair(rng, footprint, max_cells):
    side = max(c[0] for c in footprint) + 1
    start = tuple(int(rng.integers(0, side)) for _ in range(3))
    a_cells = grow_ball(rng, start, footprint, int(rng.integers(2, max_cells)))
    candidates = sorted(
        n
        for c in a_cells
        for ax in range(3)
        for s in (-1, 1)
        if (n := tuple(x + s if i == ax else x for i, x in enumerate(c)))
        not in a_cells and n in footprint
    )
    if not candidates:
        return None
    bstart = candidates[rng.integers(0, len(candidates))]
    b_cells = grow_ball(rng, bstart, footprint, int(rng.integers(2, max_cells)),
                        avoid=frozenset(a_cells))
    return (cx.VoxelComplex(3, frozenset(a_cells)),
            cx.VoxelComplex(3, frozenset(b_cells)))


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--gluings", type=int, default=200)
    ap.add_argument("--seed", type=int, default=0xC0FFEE)
    ap.add_argument("--side", type=int, default=4,
                    help="footprint is a side^3 cube of cells")
    ap.add_argument("--max-cells", type=int, default=9)
    args = ap.parse_args()

    rng = np.random.default_rng(args.seed)
    footprint = {(x, y, z) for x in range(args.side)
                 for y in range(args.side) for z in range(args.side)}
    kinds: Counter = Counter()
    agree = half_checked = half_ok = rejected = 0
    done = attempts = 0
    while done < args.gluings and attempts < 50 * args.gluings:
        attempts += 1
        pair = random_pair(rng, footprint, args.max_cells)
        if pair is None:
            continue
        try:
            rep = cx.glue(*pair)
        except cx.GluingError:
            rejected += 1
            continue
        done += 1
        kinds[rep.interface.describe()] += 1
        agree += rep.predictions_ok and rep.valuation_ok
        if rep.interface.kind != "lower-dim":
            half_checked += 1
            half_ok += bool(rep.half_ratio_ok)

    print(f"glued {done} pairs ({rejected} rejected) in {attempts} attempts")
    print("\ninterface kinds:")
    for name, n in kinds.most_common():
        print(f"  {name:24s} {n}")
    print(f"\npredicted characteristics matched: {agree}/{done}")
    print(f"half-ratio held on {half_ok}/{half_checked} even-boundary gluings")
    if agree != done or half_ok != half_checked:
        raise SystemExit(1)


if __name__ == "__main__":
    main()
