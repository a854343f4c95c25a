"""Cutting a surface along saddle connections, and the embedding report.

The cut is purely combinatorial: each connection is traced through a refined
copy of the triangulation (a half-edge structure), its edges are marked, and
the pieces left over are counted by Euler characteristic and boundary.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Optional

from .errors import RefinementFailure
from .geom import Vec, ccw_angle
from .graph import Multigraph, isomorphic
from .saddle import SaddleConnection, SystolicGraph, systolic_graph
from .surface import TranslationSurface

_ANG = 1e-9


@dataclass(frozen=True)
class RegionSummary:
    euler_characteristic: int
    boundary_circles: int
    faces: int = field(default=0, compare=False)

    @property
    def is_disk(self) -> bool:
        return self.euler_characteristic == 1 and self.boundary_circles == 1

    def to_dict(self) -> dict:
        return {
            "euler_characteristic": self.euler_characteristic,
            "boundary_circles": self.boundary_circles,
            "is_disk": self.is_disk,
        }


class CutComplex:
    """Half-edge refinement of a triangulation with cut marks.

    Each half-edge stores the position of its origin in its face's frame;
    faces inherit the polygon frame of the triangle they were carved from.
    """

    def __init__(self, s: TranslationSurface):
        tri = s.triangulation
        self.s = s
        self.tri = tri
        n = len(tri)
        self.twin, self.nxt, self.face, self.pos, self.cone, self.cut = [], [], [], [], [], []
        for t in range(n):
            for c in range(3):
                self.nxt.append(3 * t + (c + 1) % 3)
                self.face.append(t)
                self.pos.append(tri.pts[t][c])
                self.cone.append(tri.cone[t][c])
                self.cut.append(False)
        for t in range(n):
            for e in range(3):
                t2, e2 = tri.nbr[t][e]
                self.twin.append(3 * t2 + e2)
        self.n_faces = n
        self.eligible = frozenset(s.eligible)

    # -- navigation --------------------------------------------------------

    def dest_pos(self, h: int) -> Vec:
        """Position of the far end of ``h`` in the frame of ``h``'s face."""
        return self.pos[self.nxt[h]]

    def vec(self, h: int) -> Vec:
        return self.pos[self.nxt[h]] - self.pos[h]

    def prev(self, h: int) -> int:
        g = h
        while self.nxt[g] != h:
            g = self.nxt[g]
        return g

    def rot(self, h: int) -> int:
        """Next half-edge counterclockwise leaving the same vertex."""
        return self.twin[self.prev(h)]

    def cycle(self, h: int) -> list:
        out = [h]
        g = self.nxt[h]
        while g != h:
            out.append(g)
            g = self.nxt[g]
        return out

    # -- surgery -----------------------------------------------------------

    def _new_half(self, nxt, face, pos, cone, cut):
        self.twin.append(-1)
        self.nxt.append(nxt)
        self.face.append(face)
        self.pos.append(pos)
        self.cone.append(cone)
        self.cut.append(cut)
        return len(self.nxt) - 1

    def split_edge(self, h: int, u: float) -> int:
        """Insert a regular vertex at fraction ``u`` along ``h``; returns the half-edge leaving it in ``h``'s face."""
        t = self.twin[h]
        p_h = self.pos[h] + self.vec(h) * u
        p_t = self.pos[t] + self.vec(t) * (1 - u)
        h2 = self._new_half(self.nxt[h], self.face[h], p_h, -1, self.cut[h])
        t2 = self._new_half(self.nxt[t], self.face[t], p_t, -1, self.cut[t])
        self.nxt[h] = h2
        self.nxt[t] = t2
        self.twin[h], self.twin[t2] = t2, h
        self.twin[h2], self.twin[t] = t, h2
        return h2

    def split_face(self, a: int, b: int) -> int:
        """Join the origins of ``a`` and ``b`` (same face) by a cut diagonal; returns the half-edge a->b."""
        if self.face[a] != self.face[b] or a == b:
            raise RefinementFailure("diagonal endpoints are not on one face")
        pa, pb = self.prev(a), self.prev(b)
        f = self.face[a]
        d = self._new_half(b, f, self.pos[a], self.cone[a], True)
        d2 = self._new_half(a, f, self.pos[b], self.cone[b], True)
        self.twin[d], self.twin[d2] = d2, d
        self.nxt[pa] = d
        self.nxt[pb] = d2
        nf = self.n_faces
        self.n_faces += 1
        for g in self.cycle(d2):
            self.face[g] = nf
        return d

    def mark(self, h: int):
        self.cut[h] = self.cut[self.twin[h]] = True

    # -- tracing -----------------------------------------------------------

    def _locate(self, h: int, D: Vec) -> tuple:
        """Rotate around the origin of ``h`` to the corner holding direction ``D``.

        Returns ``("edge", g)`` when ``D`` runs along half-edge ``g`` or
        ``("face", g)`` when it enters the face of ``g`` strictly inside the corner at ``g``.
        """
        for _ in range(10_000):
            out = self.vec(h)
            a = ccw_angle(out, D)
            if a < _ANG or a > 2 * math.pi - _ANG:
                return "edge", h
            span = ccw_angle(out, -self.vec(self.prev(h)))
            if a < span - _ANG:
                return "face", h
            h = self.rot(h)
        raise RefinementFailure("could not locate direction at vertex")

    def _exit(self, h: int, D: Vec) -> tuple:
        """Ray from origin of ``h`` into its face along ``D``: exit half-edge and fraction."""
        P = self.pos[h]
        best = None
        for g in self.cycle(h)[1:-1]:
            A, B = self.pos[g], self.dest_pos(g)
            E = B - A
            den = D.cross(E)
            if abs(den) < 1e-15:
                continue
            w = A - P
            t = w.cross(E) / den
            u = w.cross(D) / den
            if t > 1e-12 and -1e-9 <= u <= 1 + 1e-9 and (best is None or t < best[2]):
                best = (g, u, t)
        if best is None:
            raise RefinementFailure("ray leaves face through no edge")
        return best

    def insert(self, conn: SaddleConnection):
        t0, c0, X = conn.seed
        total = X.norm()
        D = X * (1.0 / total)
        h = 3 * t0 + c0
        # the seed half-edge may have been split; its origin is unchanged
        done = 0.0
        for _ in range(100_000):
            kind, g = self._locate(h, D)
            if kind == "edge":
                self.mark(g)
                done += self.vec(g).norm()
                h = self.twin[g]
            else:
                e, u, t = self._exit(g, D)
                ln = self.vec(e).norm()
                snap = 1e-9 / max(ln, 1e-300) * max(1.0, total)
                if u <= snap:
                    target = e
                elif u >= 1 - snap:
                    target = self.nxt[e]
                else:
                    target = self.split_edge(e, u)
                d = self.split_face(g, target)
                done += self.vec(d).norm()
                h = self.twin[d]
            if abs(done - total) <= 1e-7 * max(1.0, total):
                if self.cone[h] not in self.eligible:
                    raise RefinementFailure("connection ended away from an endpoint cone point")
                return
            if done > total:
                raise RefinementFailure("traced past the end of the connection")
        raise RefinementFailure("tracing did not terminate")

    # -- counting ----------------------------------------------------------

    def regions(self) -> list:
        H = len(self.nxt)
        fpar = list(range(self.n_faces))

        def ff(x):
            while fpar[x] != x:
                fpar[x] = fpar[fpar[x]]
                x = fpar[x]
            return x

        for h in range(H):
            if not self.cut[h]:
                a, b = ff(self.face[h]), ff(self.face[self.twin[h]])
                if a != b:
                    fpar[a] = b

        # vertex copies: corners joined across uncut edges
        cpar = list(range(H))

        def cf(x):
            while cpar[x] != x:
                cpar[x] = cpar[cpar[x]]
                x = cpar[x]
            return x

        def cu(a, b):
            a, b = cf(a), cf(b)
            if a != b:
                cpar[a] = b

        for h in range(H):
            p = self.prev(h)
            if not self.cut[p]:
                cu(h, self.twin[p])

        # boundary circles: a cut half-edge links the copies at both its ends
        bpar = {}

        def bf(x):
            while bpar[x] != x:
                bpar[x] = bpar[bpar[x]]
                x = bpar[x]
            return x

        for h in range(H):
            if self.cut[h]:
                for x in (cf(h), cf(self.nxt[h])):
                    bpar.setdefault(x, x)
                a, b = bf(cf(h)), bf(cf(self.nxt[h]))
                if a != b:
                    bpar[a] = b

        stats = {}
        for f in range(self.n_faces):
            stats.setdefault(ff(f), {"F": 0, "E2": 0, "Ec": 0, "V": set(), "B": set()})["F"] += 1
        for h in range(H):
            st = stats[ff(self.face[h])]
            if self.cut[h]:
                st["Ec"] += 1
                st["B"].add(bf(cf(h)))
            else:
                st["E2"] += 1
            st["V"].add(cf(h))
        out = []
        for key in sorted(stats):
            st = stats[key]
            chi = len(st["V"]) - (st["E2"] // 2 + st["Ec"]) + st["F"]
            out.append(RegionSummary(chi, len(st["B"]), st["F"]))
        return out

    def euler_characteristic(self) -> int:
        H = len(self.nxt)
        seen, V = set(), 0
        for h in range(H):
            if h in seen:
                continue
            V += 1
            g = h
            while g not in seen:
                seen.add(g)
                g = self.rot(g)
        return V - H // 2 + self.n_faces

    def cut_graph_euler(self) -> int:
        E = sum(1 for h in range(len(self.nxt)) if self.cut[h]) // 2
        verts, seen = set(), set()
        for h in range(len(self.nxt)):
            if h in seen:
                continue
            orbit, g = [], h
            while g not in seen:
                seen.add(g)
                orbit.append(g)
                g = self.rot(g)
            if any(self.cut[x] for x in orbit):
                verts.add(h)
        return len(verts) - E


def cut_along(s: TranslationSurface, conns, check: bool = True) -> list:
    cx = CutComplex(s)
    chi_s = cx.euler_characteristic()
    for c in sorted(conns, key=SaddleConnection.sort_key):
        cx.insert(c)
    regions = cx.regions()
    if check:
        if cx.euler_characteristic() != chi_s:
            raise RefinementFailure("refinement changed the Euler characteristic")
        lhs = sum(r.euler_characteristic for r in regions)
        if lhs != chi_s - cx.cut_graph_euler():
            raise RefinementFailure(f"region Euler characteristics sum to {lhs}, expected {chi_s - cx.cut_graph_euler()}")
    return regions


def verdict(regions) -> str:
    disks = [r.is_disk for r in regions]
    if all(disks):
        return "cellular"
    if not any(disks):
        return "essential"
    return "mixed"


# -- bounds ------------------------------------------------------------------


def count_bound(genus: int, r: int) -> int:
    return 3 * (2 * genus - 2 + r)


def length_bound(genus: int, r: int) -> float:
    """Upper bound on the systole of a unit-area surface."""
    return (math.sqrt(3) / 2 * (2 * genus - 2 + r)) ** -0.5


def gmin_upper_bound(g) -> int:
    """Genus of the K_n-based surface that carries ``g`` (6 below five vertices)."""
    n = g.n_vertices if isinstance(g, Multigraph) else int(g)
    if n < 5:
        return 6
    if n % 2:
        return 1 - n * (1 - (n - 1) // 2)
    return 1 - (n + 1) * (1 - n // 2)


# -- report ------------------------------------------------------------------


@dataclass
class EmbeddingReport:
    genus: int
    area: float
    cone_spectrum: dict
    systole: float
    systolic_count: int
    target: Optional[Multigraph]
    iso: Optional[dict]
    iso_ignoring_isolated: Optional[bool]
    regions: list
    verdict: str
    bounds: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "genus": self.genus,
            "area": self.area,
            "cone_spectrum": {str(k): v for k, v in sorted(self.cone_spectrum.items())},
            "systole": self.systole,
            "systolic_count": self.systolic_count,
            "iso": None if self.iso is None else {str(k): v for k, v in sorted(self.iso.items())},
            "iso_ignoring_isolated": self.iso_ignoring_isolated,
            "verdict": self.verdict,
            "regions": [r.to_dict() for r in self.regions],
            "bounds": self.bounds,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"


def check_count_bound(s: TranslationSurface, report: EmbeddingReport) -> bool:
    r = len(s.eligible)
    bound = count_bound(report.genus, r)
    ok = report.systolic_count <= bound
    report.bounds["count"] = {"value": report.systolic_count, "bound": bound, "r": r, "ok": ok}
    return ok


def check_length_bound(s: TranslationSurface, report: EmbeddingReport) -> bool:
    r = len(s.eligible)
    normalised = report.systole / math.sqrt(report.area)
    bound = length_bound(report.genus, r)
    ok = normalised <= bound * (1 + 1e-9)
    report.bounds["length"] = {"value": normalised, "bound": bound, "r": r, "ok": ok}
    return ok


def classify(
    s: TranslationSurface, sg: Optional[SystolicGraph] = None, target: Optional[Multigraph] = None
) -> EmbeddingReport:
    sg = systolic_graph(s) if sg is None else sg
    regions = cut_along(s, sg.realization)
    iso = iso_loose = None
    if target is not None:
        iso = isomorphic(sg.graph, target)
        iso_loose = isomorphic(sg.graph.without_isolated(), target.without_isolated()) is not None
    rep = EmbeddingReport(
        genus=s.genus(),
        area=s.area(),
        cone_spectrum=s.cone_spectrum(),
        systole=sg.systole,
        systolic_count=len(sg.realization),
        target=target,
        iso=iso,
        iso_ignoring_isolated=iso_loose,
        regions=regions,
        verdict=verdict(regions),
    )
    check_count_bound(s, rep)
    return rep


__all__ = [
    "CutComplex", "EmbeddingReport", "RegionSummary", "check_count_bound", "check_length_bound", "classify",
    "count_bound", "cut_along", "gmin_upper_bound", "length_bound", "verdict",
]

