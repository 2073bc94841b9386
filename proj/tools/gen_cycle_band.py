#!/usr/bin/env python3
"""Transverse annulus around an attracting limit cycle of a planar field.

The cycle is computed numerically and sampled in arc length weighted by
curvature. Each boundary curve is placed on the normal lines of the cycle: the
next offset is where the trajectory through the previous boundary point lands
on the next normal line, pushed away from the cycle by slope times the step.
Iterating around the cycle converges to a closed curve that the flow crosses
towards the cycle. Chords that still fail a sampled flux check get their
intervals halved. The band between the curves is a single zigzag layer.
Only the van der Pol field is wired in.
"""
import argparse
import json
import math

import numpy as np
from scipy.integrate import solve_ivp


def vdp(mu):
    f = lambda t, p: [p[1], mu * p[1] * (1.0 - p[0] ** 2) - p[0]]
    div = lambda p: mu * (1.0 - p[0] ** 2)
    return f, div


def limit_cycle(f, start, settle=60.0):
    sol = solve_ivp(f, (0, settle), start, rtol=1e-11, atol=1e-12)
    p0 = sol.y[:, -1]
    # One period: from a downward crossing of y = 0 on the right to the next.
    ev = lambda t, p: p[1]
    ev.direction = -1
    sol = solve_ivp(f, (0, 40.0), p0, events=ev, rtol=1e-11, atol=1e-12)
    start = sol.y_events[0][0]
    sol = solve_ivp(f, (0, 40.0), start, events=ev, rtol=1e-11, atol=1e-12, dense_output=True)
    times = sol.t_events[0]
    period = times[1] if times[0] < 1e-9 else times[0]
    return sol.sol, period


def build(mu, count, slope, curvature_weight, passes=6, margin=0.02, refine_rounds=16):
    f, div = vdp(mu)
    path, period = limit_cycle(f, [2.0, 0.0])
    fine = 20000
    ts = np.linspace(0.0, period, fine + 1)
    pts = path(ts)
    divs = np.array([div(pts[:, i]) for i in range(fine + 1)])
    mean = np.trapezoid(divs, ts) / period

    # Sample in arc length warped by curvature, so that sharp turns get more
    # vertices.
    vel = np.array([f(0, pts[:, i]) for i in range(fine + 1)]).T
    speed = np.linalg.norm(vel, axis=0)
    heading = np.unwrap(np.arctan2(vel[1], vel[0]))
    seg = np.linalg.norm(np.diff(pts, axis=1), axis=0)
    kappa = np.abs(np.diff(heading)) / np.maximum(seg, 1e-15)
    arc = np.concatenate([[0.0], np.cumsum(seg * (1.0 + curvature_weight * kappa))])
    total = arc[-1]

    def frame(frac):
        s = float(np.interp((frac % 1.0) * total, arc, ts))
        p = path(s)
        v = np.array(f(0, p))
        tangent = v / np.linalg.norm(v)
        # The cycle runs clockwise, so the left-hand normal points outward.
        return p, tangent, np.array([-tangent[1], tangent[0]])

    def transit(point, target):
        """Offset at which the trajectory through point meets the normal line at target."""
        g, tangent, normal = target
        ev = lambda t, q: float((np.asarray(q) - g) @ tangent)
        ev.terminal = True
        ev.direction = 1
        sol = solve_ivp(f, (0, period), point, events=ev, rtol=1e-10, atol=1e-12)
        hit = sol.y_events[0][0]
        return float((hit - g) @ normal)

    def curve(fracs, side):
        n = len(fracs)
        frames = [frame(fr) for fr in fracs]
        offsets = [side * 0.05] * n
        for _ in range(passes):
            for k in range(n):
                g, _, normal = frames[k]
                nxt = frames[(k + 1) % n]
                landed = transit(g + offsets[k] * normal, nxt)
                step = np.linalg.norm(nxt[0] - g)
                # The boundary leans away from the cycle by the given slope, so the flow crosses it inward.
                offsets[(k + 1) % n] = landed + side * slope * step
        return [frames[k][0] + offsets[k] * frames[k][2] for k in range(n)], offsets

    def bad_chords(points, side):
        """Indices k whose chord from point k to k+1 is not crossed towards the cycle with margin."""
        n, bad = len(points), []
        for k in range(n):
            a, b = points[k], points[(k + 1) % n]
            d = b - a
            for t in np.linspace(0.0, 1.0, 65):
                v = np.array(f(0, a + t * d))
                cross = d[0] * v[1] - d[1] * v[0]
                if side * cross / (np.linalg.norm(d) * np.linalg.norm(v)) > -margin:
                    bad.append(k)
                    break
        return bad

    # Inner vertices sit at fractions fr[k], outer vertices halfway between
    # fr[k] and fr[k+1]. Intervals next to a failing chord are halved.
    fr = [k / count for k in range(count)]
    for _ in range(refine_rounds + 1):
        mid = [(fr[k] + (fr[k + 1] if k + 1 < len(fr) else 1.0)) / 2 for k in range(len(fr))]
        inner, din = curve(fr, -1.0)
        outer, dout = curve(mid, +1.0)
        split = set()
        for k in bad_chords(inner, -1.0):
            split.update({(k - 1) % len(fr), k})
        for k in bad_chords(outer, +1.0):
            split.update({k, (k + 1) % len(fr)})
        if not split or _ == refine_rounds:
            if split:
                print(f"warning: {len(split)} intervals still fail the chord check")
            break
        nfr = []
        for k in range(len(fr)):
            nfr.append(fr[k])
            if k in split:
                nfr.append((fr[k] + (fr[k + 1] if k + 1 < len(fr) else 1.0)) / 2)
        fr = nfr
    count = len(fr)
    vertices = [list(map(float, p)) for p in inner + outer]
    triangles = []
    for k in range(count):
        a, b = k, (k + 1) % count
        qa, qb = count + k, count + (k + 1) % count
        triangles.append([a, b, qa])
        triangles.append([qa, qb, b])
    info = f"inner offset {min(din):.3f}..{max(din):.3f}, outer offset {min(dout):.3f}..{max(dout):.3f}, {count} per curve"
    return {"vertices": vertices, "triangles": triangles}, period, mean, info


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--mu", type=float, default=1.0)
    ap.add_argument("--count", type=int, default=200, help="vertices per boundary curve")
    ap.add_argument("--slope", type=float, default=0.07, help="outward lean of the boundary against the flow")
    ap.add_argument("--curvature-weight", type=float, default=3.0, help="extra sampling density per unit curvature")
    ap.add_argument("-o", "--out", required=True)
    args = ap.parse_args()
    mesh, period, mean, info = build(args.mu, args.count, args.slope, args.curvature_weight)
    with open(args.out, "w") as fh:
        json.dump(mesh, fh, separators=(",", ":"))
        fh.write("\n")
    print(f"period {period:.6f}, mean divergence {mean:.6f}, {info}, {len(mesh['triangles'])} triangles")


if __name__ == "__main__":
    main()
