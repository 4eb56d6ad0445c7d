"""Plain SVG pictures of rank-2 real toric arrangements.

The picture is the fundamental parallelogram origin + L[0,1]^2. Chamber
pieces are clipped to it exactly (in lattice coordinates) and carry the
index of their toric chamber; hyperplane segments carry the index of the
1-dimensional layer they trace on the torus.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence

from .torus import ToricArrangement

PALETTE = ["#8dd3c7", "#ffffb3", "#bebada", "#fb8072", "#80b1d3", "#fdb462", "#b3de69", "#fccde5",
           "#d9d9d9", "#bc80bd", "#ccebc5", "#ffed6f"]
SIZE = 480
PAD = 20


def _clip(poly: list, k: int, side: int) -> list:
    # keep u_k >= 0 (side 0) or u_k <= 1 (side 1)
    def inside(p):
        return p[k] >= 0 if side == 0 else p[k] <= 1

    def cut(p, q):
        bound = Fraction(side)
        t = (bound - p[k]) / (q[k] - p[k])
        return tuple(a + t * (b - a) for a, b in zip(p, q))

    out = []
    for i, p in enumerate(poly):
        q = poly[(i + 1) % len(poly)]
        if inside(p):
            out.append(p)
            if not inside(q):
                out.append(cut(p, q))
        elif inside(q):
            out.append(cut(p, q))
    return out


def _area2(poly: list) -> Fraction:
    return sum((p[0] * q[1] - q[0] * p[1] for p, q in zip(poly, poly[1:] + poly[:1])), Fraction(0))


def _convex_order(points: list) -> list:
    cx = sum(p[0] for p in points) / len(points)
    cy = sum(p[1] for p in points) / len(points)
    return sorted(points, key=lambda p: math.atan2(float(p[1] - cy), float(p[0] - cx)))


def _segment_in_square(a: Sequence, c) -> list:
    """Points of {u in [0,1]^2 : a.u = c} on the square boundary."""
    pts = set()
    for k in (0, 1):
        o = 1 - k
        if a[o] == 0:
            continue
        for v in (0, 1):
            w = (c - a[k] * v) / a[o]
            if 0 <= w <= 1:
                p = [Fraction(0), Fraction(0)]
                p[k], p[o] = Fraction(v), w
                pts.add(tuple(p))
    return sorted(pts)


def render_svg(arr: ToricArrangement, embedding: Sequence[Sequence[float]] | None = None,
               labels: bool = False) -> str:
    """SVG text; ``embedding`` maps ambient coordinates to the plane (default: identity)."""
    if arr.dim != 2:
        raise ValueError(f"render needs ambient rank 2, got {arr.dim}")
    E = embedding or ((1.0, 0.0), (0.0, 1.0))
    L = arr.lattice

    def plane(u):
        x = [float(arr.origin[i] + sum(L.matrix[i][j] * u[j] for j in range(2))) for i in range(2)]
        return E[0][0] * x[0] + E[0][1] * x[1], E[1][0] * x[0] + E[1][1] * x[1]

    corners = [plane(u) for u in ((0, 0), (1, 0), (1, 1), (0, 1))]
    xs, ys = [p[0] for p in corners], [p[1] for p in corners]
    scale = (SIZE - 2 * PAD) / max(max(xs) - min(xs), max(ys) - min(ys))

    def screen(u):
        x, y = plane(u)
        return f"{PAD + (x - min(xs)) * scale:.4f},{PAD + (max(ys) - y) * scale:.4f}"

    width = round(2 * PAD + (max(xs) - min(xs)) * scale)
    height = round(2 * PAD + (max(ys) - min(ys)) * scale)
    out = ['<?xml version="1.0" encoding="UTF-8"?>',
           f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width}" height="{height}" '
           f'viewBox="0 0 {width} {height}">']

    chamber_index = {tf.key: tf.index for tf in arr.chambers()}
    out.append('<g id="chambers" stroke="none">')
    P = arr.poset
    for C in P.chambers():
        if not arr.is_true(C):
            continue
        poly = _convex_order([arr.lattice_coords(v.witness) for v in P.vertices(C)])
        for k in (0, 1):
            for side in (0, 1):
                if poly:
                    poly = _clip(poly, k, side)
        if len(poly) < 3 or _area2(poly) == 0:
            continue
        idx = chamber_index[arr.key(C)]
        pts = " ".join(screen(u) for u in poly)
        out.append(f'<polygon data-orbit="{idx}" fill="{PALETTE[idx % len(PALETTE)]}" points="{pts}"/>')
    out.append("</g>")

    out.append('<g id="hyperplanes" stroke="#222" stroke-width="2" fill="none">')
    seen = set()
    for h in P.hyperplanes:
        a = tuple(sum(h.normal[i] * L.matrix[i][j] for i in range(2)) for j in range(2))
        c = h.level - sum(h.normal[i] * arr.origin[i] for i in range(2))
        ends = _segment_in_square(a, c)
        if len(ends) != 2 or tuple(ends) in seen:
            continue
        seen.add(tuple(ends))
        layer = arr.layer_of_hyperplane(h)
        out.append(f'<line data-layer="{layer.index}" x1="{screen(ends[0]).split(",")[0]}" '
                   f'y1="{screen(ends[0]).split(",")[1]}" x2="{screen(ends[1]).split(",")[0]}" '
                   f'y2="{screen(ends[1]).split(",")[1]}"/>')
    out.append("</g>")

    out.append('<g id="vertices" fill="#000">')
    for tf in arr.facets:
        if tf.dim == 0:
            u = arr.lattice_coords(tf.rep.witness)
            x, y = screen(u).split(",")
            out.append(f'<circle data-facet="{tf.index}" cx="{x}" cy="{y}" r="3"/>')
    out.append("</g>")

    corner_pts = " ".join(screen(u) for u in ((0, 0), (1, 0), (1, 1), (0, 1)))
    out.append(f'<polygon id="domain" fill="none" stroke="#555" stroke-dasharray="6,4" points="{corner_pts}"/>')
    if labels:
        out.append('<g id="labels" font-family="monospace" font-size="12" text-anchor="middle">')
        for tf in arr.facets:
            if tf.dim == 2:
                x, y = screen(arr.lattice_coords(arr.barycenter(tf.rep))).split(",")
                out.append(f'<text x="{x}" y="{y}">C{tf.index}</text>')
        out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"


def weyl_embedding(kind: str, rank: int) -> tuple:
    """Euclidean images of the simple coroots, as a 2x2 matrix (columns)."""
    from .coxeter import root_datum
    d = root_datum(kind, rank)
    cols = []
    for a in d.euclidean_simple_roots:
        nn = sum(x * x for x in a)
        cols.append([float(2 * x / nn) for x in a])
    if len(cols[0]) != 2:
        # project type A roots from the sum-zero plane of R^3 to an orthonormal plane basis
        u = (1 / math.sqrt(2), -1 / math.sqrt(2), 0.0)
        v = (1 / math.sqrt(6), 1 / math.sqrt(6), -2 / math.sqrt(6))
        cols = [[sum(a * b for a, b in zip(c, u)), sum(a * b for a, b in zip(c, v))] for c in cols]
    return ((cols[0][0], cols[1][0]), (cols[0][1], cols[1][1]))
