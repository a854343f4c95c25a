"""Ear-clipping triangulation of a translation surface, with gluing data.

Triangle ``t`` has corners 0, 1, 2 (CCW) and edge ``e`` running from corner
``e`` to corner ``e+1``. ``delta[t][e]`` is the translation that carries the
neighbour across edge ``e`` from its own polygon frame into the frame of ``t``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import TriangulationFailure
from .geom import Vec, ccw_angle
from .surface import SideRef, TranslationSurface


@dataclass(frozen=True)
class Triangulation:
    surface: TranslationSurface
    poly: tuple  # triangle -> polygon index
    vids: tuple  # triangle -> polygon vertex indices (3)
    pts: tuple  # triangle -> three Vec in the polygon's frame
    nbr: tuple  # triangle -> ((t', e'), ...) per edge
    delta: tuple  # triangle -> Vec per edge
    side: tuple  # triangle -> SideRef or None per edge (None for diagonals)
    cone: tuple  # triangle -> cone id per corner
    theta: tuple  # triangle -> angular position of the corner's first edge within its cone

    @property
    def triangles(self) -> tuple:
        return tuple(zip(self.poly, self.vids))

    def __len__(self):
        return len(self.poly)

    def corner_angle(self, t: int, c: int) -> float:
        p = self.pts[t]
        return ccw_angle(p[(c + 1) % 3] - p[c], p[(c + 2) % 3] - p[c])

    def corner_dir(self, t: int, c: int) -> Vec:
        p = self.pts[t]
        return p[(c + 1) % 3] - p[c]

    def next_corner(self, t: int, c: int) -> tuple:
        """Corner counterclockwise after ``(t, c)`` around the same vertex."""
        return self.nbr[t][(c + 2) % 3]

    def direction_angle(self, t: int, c: int, d: Vec) -> float:
        """Position of direction ``d`` (leaving corner ``(t, c)``) in the cone's link."""
        return self.theta[t][c] + ccw_angle(self.corner_dir(t, c), d)


def _ear_clip(poly, eps: float) -> list:
    vs = poly.vertices
    idx = list(range(len(vs)))
    tris = []
    guard = 0
    while len(idx) > 3:
        guard += 1
        if guard > 10 * len(vs) ** 2:
            raise TriangulationFailure("ear clipping made no progress")
        m = len(idx)
        for k in range(m):
            a, b, c = idx[k - 1], idx[k], idx[(k + 1) % m]
            A, B, C = vs[a], vs[b], vs[c]
            if (B - A).cross(C - B) <= eps:
                continue  # reflex or straight
            blocked = False
            for j in idx:
                if j in (a, b, c):
                    continue
                P = vs[j]
                if (B - A).cross(P - A) >= -eps and (C - B).cross(P - B) >= -eps and (A - C).cross(P - C) >= -eps:
                    blocked = True
                    break
            if blocked:
                continue
            tris.append((a, b, c))
            del idx[k]
            break
        else:
            raise TriangulationFailure("no ear found; polygon is degenerate")
    A, B, C = (vs[i] for i in idx)
    if (B - A).cross(C - A) <= eps:
        raise TriangulationFailure("degenerate final triangle")
    tris.append(tuple(idx))
    return tris


def triangulate(s: TranslationSurface) -> Triangulation:
    s.check()
    cone_of = s.corner_class
    poly_of, vids, pts = [], [], []
    for p, poly in enumerate(s.polygons):
        scale = max(v.norm() for v in poly.vertices) + 1.0
        for tri in _ear_clip(poly, 1e-12 * scale * scale):
            # rotate so corner 0 is the smallest vertex index; keeps output stable
            r = tri.index(min(tri))
            tri = tri[r:] + tri[:r]
            poly_of.append(p)
            vids.append(tri)
            pts.append(tuple(poly.vertices[i] for i in tri))
    n = len(poly_of)

    # match diagonals within a polygon, and sides across the pairing
    by_vpair = {}
    side_edge = {}
    for t in range(n):
        p, k = poly_of[t], len(s.polygons[poly_of[t]])
        for e in range(3):
            a, b = vids[t][e], vids[t][(e + 1) % 3]
            if b == (a + 1) % k:
                side_edge[SideRef(p, a)] = (t, e)
            else:
                by_vpair[(p, a, b)] = (t, e)

    nbr = [[None] * 3 for _ in range(n)]
    delta = [[None] * 3 for _ in range(n)]
    side = [[None] * 3 for _ in range(n)]
    zero = Vec(0.0, 0.0)
    for (p, a, b), (t, e) in by_vpair.items():
        other = by_vpair.get((p, b, a))
        if other is None:
            raise TriangulationFailure(f"unmatched diagonal {a}-{b} in polygon {p}")
        nbr[t][e] = other
        delta[t][e] = zero
    for ref, (t, e) in side_edge.items():
        mate = s.pairing[ref]
        t2, e2 = side_edge[mate]
        nbr[t][e] = (t2, e2)
        side[t][e] = ref
        # start of this side sits on the end of its mate
        P = s.polygons[ref.polygon]
        Q = s.polygons[mate.polygon]
        delta[t][e] = P.vertices[ref.side] - Q.vertices[(mate.side + 1) % len(Q)]

    cone = [tuple(cone_of[(poly_of[t], vids[t][c])] for c in range(3)) for t in range(n)]

    tri = Triangulation(
        s, tuple(poly_of), tuple(vids), tuple(pts),
        tuple(tuple(x) for x in nbr), tuple(tuple(x) for x in delta), tuple(tuple(x) for x in side),
        tuple(cone), (),
    )
    theta = [[None] * 3 for _ in range(n)]
    for t in range(n):
        for c in range(3):
            if theta[t][c] is not None:
                continue
            acc = 0.0
            cur = (t, c)
            while theta[cur[0]][cur[1]] is None:
                theta[cur[0]][cur[1]] = acc
                acc += tri.corner_angle(*cur)
                cur = tri.next_corner(*cur)
    object.__setattr__(tri, "theta", tuple(tuple(x) for x in theta))
    return tri


def cone_total(tri: Triangulation, cone_id: int) -> float:
    return tri.surface.cone_points[cone_id].total_angle

