#!/usr/bin/env python3
"""Writes the bundled Lorenz-type datasets.

lorenz.complex.json / lorenz.mvf.json
    A branched surface made of two zigzag strips, one around each eye, that
    share the triangle tau = [p, q, r]. The strip of the left eye ends in
    sigma1 = [p, q, s1], the one of the right eye in sigma2 = [p, q, s2]; both
    are glued to tau along rho = [p, q]. Every triangle is paired with the edge
    it is entered through, so the triangles circulate around both eyes. The
    inner boundaries of the eyes are periodic orbits, the outer boundaries
    drain into them, and the bottom edge [r, w1] is critical.

lorenz3d.complex.json
    Cubical cells of a 5 x 1 x 3 block of unit cubes with the cubes (1,0,1)
    and (3,0,1) removed: a middle column with one handle on each side.
"""
import argparse
import json
import os


def name(simplex):
    return "-".join(str(v) for v in sorted(simplex))


def lorenz2d():
    p, q, r = 0, 1, 2
    x = [p, 3, 4, 5]           # inner ring of the left eye, x[3] = s1
    z = [r, 6, 7, q]           # outer ring of the left eye
    y = [q, 8, 9, 10]          # inner ring of the right eye, y[3] = s2
    w = [r, 11, 12, p]         # outer ring of the right eye

    def strip(inner, outer):
        """Triangles in flow order, each with the edge it is entered through."""
        n = len(inner)
        out = []
        for i in range(n):
            a, a1 = inner[i], inner[(i + 1) % n]
            b, b1 = outer[i], outer[(i + 1) % n]
            out.append(([a, b, a1], [a, b]))
            out.append(([a1, b, b1], [a1, b]))
        # The last triangle is tau = [inner0, outer_last, outer0], entered through rho.
        return out

    left = strip(x, z)
    right = strip(y, w)
    triangles, pairs = {}, {}
    for tri, entry in left + right:
        triangles[name(tri)] = tri
        pairs[name(tri)] = name(entry)

    mvs = [[pairs[t], t] for t in sorted(triangles)]
    # Inner rings: each vertex with the edge to its successor.
    for ring in (x, y):
        for i, v in enumerate(ring):
            mvs.append([name([v]), name([v, ring[(i + 1) % len(ring)]])])
    # Outer rings drain towards their last vertex, which lies on the other eye's inner ring.
    for ring in (z, w):
        for i in range(1, len(ring) - 1):
            mvs.append([name([ring[i]]), name([ring[i], ring[i + 1]])])
    mvs.append([name([r]), name([r, z[1]])])
    mvs.append([name([r, w[1]])])

    complex_json = {"kind": "simplicial", "vertices": 13, "cells": [triangles[t] for t in sorted(triangles)]}
    return complex_json, {"multivectors": mvs}


def lorenz3d():
    cubes = {(i, 0, k) for i in range(5) for k in range(3)} - {(1, 0, 1), (3, 0, 1)}
    axes = "xyz"
    cells = {}

    def cid(base, dirs):
        return (dirs or "p") + "_".join(str(c) for c in base)

    def add(base, dirs):
        key = cid(base, dirs)
        if key in cells:
            return key
        facets = []
        for m, d in enumerate(dirs):
            rest = dirs[:m] + dirs[m + 1:]
            axis = axes.index(d)
            upper = list(base)
            upper[axis] += 1
            sign = -1 if m % 2 else 1
            facets.append({"id": add(tuple(upper), rest), "sign": sign})
            facets.append({"id": add(base, rest), "sign": -sign})
        cells[key] = {"id": key, "dim": len(dirs), "facets": facets}
        return key

    for c in sorted(cubes):
        add(c, "xyz")
    order = sorted(cells.values(), key=lambda c: (c["dim"], c["id"]))
    return {"kind": "cw", "cells": order}


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("-d", "--dir", default="data")
    args = ap.parse_args()
    cx, mvf = lorenz2d()
    outputs = {"lorenz.complex.json": cx, "lorenz.mvf.json": mvf, "lorenz3d.complex.json": lorenz3d()}
    for fname, obj in outputs.items():
        with open(os.path.join(args.dir, fname), "w") as fh:
            json.dump(obj, fh, indent=1 if fname.startswith("lorenz.") else None, separators=(",", ": "))
            fh.write("\n")
    print(f"{len(cx['cells'])} triangles, {len(mvf['multivectors'])} multivectors, "
          f"{len(outputs['lorenz3d.complex.json']['cells'])} cubical cells")


if __name__ == "__main__":
    main()
