#!/usr/bin/env python3
"""Generate a Lloyd-relaxed Voronoi mesh of (-1, 1)^2 reflected across both axes.

A centroidal Voronoi tessellation of the unit square (0, 1)^2 is built with
mirrored seeds, then reflected to the other three quadrants so that the axes,
and in particular the interface y = 0, are unions of mesh edges.

    python3 tools/make_voronoi_mesh.py 64 data/meshes/voronoi_64.mesh --seed 64
"""

import argparse

import numpy as np
from scipy.spatial import Voronoi


def bounded_cells(seeds):
    mirrored = [seeds]
    for axis in (0, 1):
        for wall in (0.0, 1.0):
            m = seeds.copy()
            m[:, axis] = 2 * wall - m[:, axis]
            mirrored.append(m)
    vor = Voronoi(np.vstack(mirrored))
    cells = []
    for i in range(len(seeds)):
        region = vor.regions[vor.point_region[i]]
        poly = np.clip(vor.vertices[region], 0.0, 1.0)
        c = poly.mean(axis=0)
        order = np.argsort(np.arctan2(poly[:, 1] - c[1], poly[:, 0] - c[0]))
        cells.append(poly[order])
    return cells


def centroid(poly):
    x, y = poly[:, 0], poly[:, 1]
    xs, ys = np.roll(x, -1), np.roll(y, -1)
    w = x * ys - xs * y
    a = w.sum() / 2
    return np.array([((x + xs) * w).sum(), ((y + ys) * w).sum()]) / (6 * a)


def lloyd(n, iterations, rng):
    seeds = rng.random((n, 2))
    for _ in range(iterations):
        seeds = np.array([centroid(c) for c in bounded_cells(seeds)])
    return bounded_cells(seeds)


def reflect(cells):
    out = []
    for sx, sy in ((1, 1), (-1, 1), (-1, -1), (1, -1)):
        for c in cells:
            p = c * np.array([sx, sy])
            if sx * sy < 0:
                p = p[::-1]
            out.append(p)
    return out


def write_mesh(cells, path, tol=1e-9):
    keys, vertices, loops = {}, [], []
    for c in cells:
        loop = []
        for x, y in c:
            x, y = (0.0 if abs(x) < tol else x), (0.0 if abs(y) < tol else y)
            key = (round(x / tol), round(y / tol))
            if key not in keys:
                keys[key] = len(vertices)
                vertices.append((x, y))
            v = keys[key]
            if not loop or loop[-1] != v:
                loop.append(v)
        if loop[0] == loop[-1]:
            loop.pop()
        loops.append(loop)
    with open(path, "w") as f:
        f.write("ncvem-mesh 1\n")
        f.write(f"vertices {len(vertices)}\n")
        for x, y in vertices:
            f.write(f"{x:.17g} {y:.17g}\n")
        f.write(f"elements {len(loops)}\n")
        for loop in loops:
            f.write(" ".join(str(v) for v in [len(loop)] + loop) + "\n")


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("elements", type=int, help="total element count, a multiple of 4")
    ap.add_argument("output")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--iterations", type=int, default=200)
    args = ap.parse_args()
    if args.elements % 4:
        ap.error("element count must be a multiple of 4")
    rng = np.random.default_rng(args.seed)
    write_mesh(reflect(lloyd(args.elements // 4, args.iterations, rng)), args.output)


if __name__ == "__main__":
    main()
