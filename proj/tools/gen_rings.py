#!/usr/bin/env python3
"""Concentric-ring triangulations for planar flows that rotate about a point.

Rings are listed from the inside out as (radius, vertex count). The first ring
must have 3 vertices and forms the central triangle. Between consecutive rings
the vertex count either stays the same (the outer ring is rotated by half a
step, giving a zigzag band) or doubles (every inner vertex faces an outer
vertex, plus one in between).

Each ring may be deformed by an optional radius function r(theta) so that the
same generator serves non-circular cycles.
"""
import argparse
import json
import math


def ring_points(radius, count, offset, shape=None):
    pts = []
    for i in range(count):
        t = offset + 2.0 * math.pi * i / count
        r = radius * (shape(t) if shape else 1.0)
        pts.append([r * math.cos(t), r * math.sin(t)])
    return pts


def build(rings, offset0=0.0, shape=None, center=(0.0, 0.0)):
    vertices, triangles = [], []
    starts, offsets = [], []
    offset = offset0
    prev = None
    for radius, count in rings:
        if prev is not None:
            pr, pc = prev
            if count == pc:
                offset += math.pi / count
            elif count != 2 * pc:
                raise ValueError("ring counts must stay equal or double")
        starts.append(len(vertices))
        offsets.append(offset)
        vertices.extend(ring_points(radius, count, offset, shape))
        prev = (radius, count)
    vertices = [[x + center[0], y + center[1]] for x, y in vertices]

    m0 = rings[0][1]
    if m0 != 3:
        raise ValueError("the innermost ring must have 3 vertices")
    triangles.append([starts[0], starts[0] + 1, starts[0] + 2])
    for k in range(1, len(rings)):
        pin, pout = starts[k - 1], starts[k]
        mi, mo = rings[k - 1][1], rings[k][1]
        p = lambda i: pin + i % mi
        q = lambda i: pout + i % mo
        if mo == mi:
            # Outer vertex i sits half a step after inner vertex i.
            for i in range(mi):
                triangles.append([p(i), p(i + 1), q(i)])
                triangles.append([q(i), q(i + 1), p(i + 1)])
        else:
            for i in range(mi):
                triangles.append([p(i), q(2 * i), q(2 * i + 1)])
                triangles.append([p(i), p(i + 1), q(2 * i + 1)])
                triangles.append([q(2 * i + 1), q(2 * i + 2), p(i + 1)])
    return {"vertices": vertices, "triangles": triangles}


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("rings", help='JSON list of [radius, count] pairs, e.g. "[[0.2,3],[0.35,6]]"')
    ap.add_argument("--offset", type=float, default=0.1, help="angle of the first vertex, radians")
    ap.add_argument("-o", "--out", required=True)
    args = ap.parse_args()
    mesh = build(json.loads(args.rings), args.offset)
    with open(args.out, "w") as f:
        json.dump(mesh, f, separators=(",", ":"))
        f.write("\n")
    print(f"{len(mesh['vertices'])} vertices, {len(mesh['triangles'])} triangles")


if __name__ == "__main__":
    main()
