"""Planar nets of translation surfaces drawn with matplotlib.

Polygons keep their stored relative positions when they touch their
predecessor (so a square with its flaps stays a cross); otherwise groups are
packed left to right in rows, in polygon order.
"""

from __future__ import annotations

import io
import math

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
from matplotlib.patches import Polygon as MplPolygon  # noqa: E402

from .geom import Vec  # noqa: E402
from .surface import TranslationSurface  # noqa: E402

_GAP = 0.4


def _bbox(polys):
    xs = [v.x for p in polys for v in p.vertices]
    ys = [v.y for p in polys for v in p.vertices]
    return min(xs), min(ys), max(xs), max(ys)


def _touch(a, b, eps=1e-6):
    return not (a[2] < b[0] - eps or b[2] < a[0] - eps or a[3] < b[1] - eps or b[3] < a[1] - eps)


def _clusters(s: TranslationSurface) -> list:
    groups = []
    for i, p in enumerate(s.polygons):
        if groups and _touch(_bbox([s.polygons[j] for j in groups[-1]]), _bbox([p])):
            # overlapping interiors would make the drawing unreadable; start a new group then
            if not any(_overlap(p, s.polygons[j]) for j in groups[-1]):
                groups[-1].append(i)
                continue
        groups.append([i])
    return groups


def _overlap(p, q) -> bool:
    c = Vec(sum(v.x for v in p.vertices) / len(p), sum(v.y for v in p.vertices) / len(p))
    return _inside(c, q)


def _inside(c, q) -> bool:
    vs = q.vertices
    return all((vs[(i + 1) % len(vs)] - vs[i]).cross(c - vs[i]) > 1e-9 for i in range(len(vs)))


def layout(s: TranslationSurface) -> dict:
    """Offset per polygon index so that groups do not overlap."""
    groups = _clusters(s)
    boxes = [_bbox([s.polygons[j] for j in g]) for g in groups]
    total = sum((b[2] - b[0] + _GAP) * (b[3] - b[1] + _GAP) for b in boxes)
    width = max(max(b[2] - b[0] for b in boxes), math.sqrt(total) * 1.6)
    off = {}
    x = y = row_h = 0.0
    for g, b in zip(groups, boxes):
        w, h = b[2] - b[0], b[3] - b[1]
        if x > 0 and x + w > width:
            x, y = 0.0, y - row_h - _GAP
            row_h = 0.0
        d = Vec(x - b[0], y - b[3])
        for j in g:
            off[j] = d
        x += w + _GAP
        row_h = max(row_h, h)
    return off


def _segments_of(s, conn):
    """Pieces of a connection in polygon frames: ``[(polygon, A, B), ...]``."""
    tri = s.triangulation
    t0, c0, X = conn.seed
    o = tri.pts[t0][c0]
    T = Vec(-o.x, -o.y)
    out = []
    for t, e in conn.path:
        if e is not None:
            T = T - tri.delta[t][e]
        # clip segment 0..X (developed coords) to triangle t shifted by T
        lo, hi = 0.0, 1.0
        P = tri.pts[t]
        for k in range(3):
            A, B = P[k] + T, P[(k + 1) % 3] + T
            E = B - A
            f0 = E.cross(Vec(0.0, 0.0) - A)
            f1 = E.cross(X - A)
            if f0 < -1e-12 and f1 < -1e-12:
                lo, hi = 1.0, 0.0
                break
            if f0 < 0 <= f1 or f1 < 0 <= f0:
                u = f0 / (f0 - f1)
                if f0 < 0:
                    lo = max(lo, u)
                else:
                    hi = min(hi, u)
        if hi - lo > 1e-9:
            out.append((tri.poly[t], X * lo - T, X * hi - T))
    return out


def draw_net(s: TranslationSurface, connections=(), title: str = None):
    off = layout(s)
    fig, ax = plt.subplots(figsize=(8, 8))
    cmap = plt.get_cmap("tab20")
    for p, poly in enumerate(s.polygons):
        pts = [tuple(v + off[p]) for v in poly.vertices]
        ax.add_patch(MplPolygon(pts, closed=True, facecolor="#f4f1ea", edgecolor="none", zorder=0))
        c = Vec(sum(x for x, _ in pts) / len(pts), sum(y for _, y in pts) / len(pts))
        ax.text(c.x, c.y, str(p), ha="center", va="center", fontsize=7, color="#999999")
    for k, (a, b) in enumerate(s.pairs()):
        col = cmap(k % 20)
        for ref in (a, b):
            poly = s.polygons[ref.polygon]
            A = poly.vertices[ref.side] + off[ref.polygon]
            B = poly.vertices[(ref.side + 1) % len(poly)] + off[ref.polygon]
            ax.plot([A.x, B.x], [A.y, B.y], color=col, lw=2.2, solid_capstyle="butt", zorder=2)
            d = B - A
            nrm = Vec(-d.y, d.x) * (0.08 / max(d.norm(), 1e-12))
            m = (A + B) * 0.5 + nrm
            ax.text(m.x, m.y, str(k), color=col, fontsize=7, ha="center", va="center", zorder=4)
            ax.annotate("", xy=tuple((A + B) * 0.5 + d * 0.08), xytext=tuple((A + B) * 0.5 - d * 0.08),
                        arrowprops=dict(arrowstyle="->", color=col, lw=1.0), zorder=3)
    sing = {cp.id for cp in s.cone_points if cp.is_singular}
    for cp in s.cone_points:
        for p, v in sorted(cp.corners):
            P = s.polygons[p].vertices[v] + off[p]
            big = cp.id in sing
            ax.plot([P.x], [P.y], "o", ms=6 if big else 3.5, color="black" if big else "white",
                    markeredgecolor="black", zorder=5)
    for conn in connections:
        for p, A, B in _segments_of(s, conn):
            A, B = A + off[p], B + off[p]
            ax.plot([A.x, B.x], [A.y, B.y], color="#c0392b", lw=1.0, ls="--", zorder=6)
    ax.set_aspect("equal")
    ax.autoscale_view()
    ax.axis("off")
    if title:
        ax.set_title(title, fontsize=9)
    fig.tight_layout()
    return fig


def svg_bytes(s: TranslationSurface, connections=(), title: str = None) -> bytes:
    with matplotlib.rc_context({"svg.hashsalt": "tsurf", "svg.fonttype": "none"}):
        fig = draw_net(s, connections, title)
        buf = io.BytesIO()
        fig.savefig(buf, format="svg", metadata={"Date": None})
        plt.close(fig)
    return buf.getvalue()


def write_svg(s: TranslationSurface, path, connections=(), title: str = None) -> None:
    with open(path, "wb") as fh:
        fh.write(svg_bytes(s, connections, title))
