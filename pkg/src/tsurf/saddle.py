"""Saddle connections by wedge development over the triangulation.

From every triangle corner at an endpoint cone point we unfold triangles into
the plane (translations only) and track the angular wedge of straight rays
that can still reach them. The first endpoint vertex met along a ray closes a
connection; transparent (marked) vertices split the wedge but let rays pass.
"""

from __future__ import annotations

import builtins
import math
import os
from dataclasses import dataclass, field
from typing import Optional

from .errors import BudgetExceeded, InvalidParameter, NoConePoints
from .geom import Vec
from .graph import Multigraph
from .surface import TranslationSurface

DEFAULT_BUDGET = 10_000
_ANGLE_Q = 1e-7


def default_budget() -> int:
    raw = os.environ.get("TSF_BUDGET")
    if raw:
        try:
            b = int(raw)
        except ValueError:
            raise InvalidParameter(f"TSF_BUDGET must be an integer, got {raw!r}") from None
        if b < 1:
            raise InvalidParameter("TSF_BUDGET must be positive")
        return b
    return DEFAULT_BUDGET


@dataclass(frozen=True)
class SaddleConnection:
    start: int
    end: int
    holonomy: Vec
    length: float
    path: tuple = field(default=(), compare=False, repr=False)
    # (triangle, corner, developed holonomy) of the development that found it
    seed: tuple = field(default=(), compare=False, repr=False)

    def reversed(self) -> "SaddleConnection":
        return self  # stored in canonical unoriented form already

    def sort_key(self):
        return (self.length, self.holonomy.x, self.holonomy.y, self.start, self.end)


@dataclass(frozen=True)
class SystolicGraph:
    graph: Multigraph
    realization: tuple  # edge index -> SaddleConnection
    systole: float
    vertex_of_cone: dict  # cone id -> graph vertex


def _lex_ge(v: Vec, tol: float) -> bool:
    """``v >= -v`` lexicographically, with a small dead zone on x."""
    if v.x > tol:
        return True
    if v.x < -tol:
        return False
    return v.y >= 0


class _AngleKeys:
    """Set of (cone, angle) keys compared up to a small angular tolerance."""

    def __init__(self, totals):
        self.totals = totals
        self.cells = {}

    def _cell(self, cone, theta):
        tot = self.totals[cone]
        theta %= tot
        return cone, theta, int(theta / _ANGLE_Q)

    def find(self, cone, theta):
        cone, theta, c = self._cell(cone, theta)
        ncell = int(self.totals[cone] / _ANGLE_Q) + 1
        for cc in (c - 1, c, c + 1, (c - 1) % ncell, (c + 1) % ncell, 0, ncell - 1):
            for key, th in self.cells.get((cone, cc), ()):
                d = abs(th - theta)
                d = min(d, self.totals[cone] - d)
                if d <= _ANGLE_Q:
                    return key
        return None

    def add(self, cone, theta, key):
        cone, theta, c = self._cell(cone, theta)
        self.cells.setdefault((cone, c), []).append((key, theta))


def _in_wedge(P: Vec, r: Vec, rin: bool, l: Vec, lin: bool) -> int:
    """-1 right of the wedge, +1 left of it, 0 inside."""
    pn = P.norm()
    cr = r.cross(P) / (r.norm() * pn)
    if cr < -1e-12 or (not rin and cr <= 1e-12):
        return -1
    cl = P.cross(l) / (l.norm() * pn)
    if cl < -1e-12 or (not lin and cl <= 1e-12):
        return 1
    if P.dot(r) <= 0 and P.dot(l) <= 0:
        return -1
    return 0


def _clipped_distance(A: Vec, B: Vec, r: Vec, l: Vec) -> float:
    """Distance from the origin to the part of segment ``A``(right)..``B``(left) inside wedge ``r``..``l``."""
    d = B - A
    lo, hi = 0.0, 1.0
    den = r.cross(d)
    if abs(den) > 1e-15:
        lo = max(lo, min(1.0, -r.cross(A) / den))
    den = l.cross(d)
    if abs(den) > 1e-15:
        hi = min(hi, max(0.0, -l.cross(A) / den))
    if hi < lo:
        lo = hi = 0.5 * (lo + hi)
    P, Q = A + d * lo, A + d * hi
    seg = Q - P
    sl = seg.dot(seg)
    if sl == 0:
        return P.norm()
    u = max(0.0, min(1.0, -P.dot(seg) / sl))
    return (P + seg * u).norm()


def _degenerate(r: Vec, l: Vec) -> bool:
    # zero-width wedge; only meaningful when both bounds are inclusive
    return abs(r.cross(l)) <= 1e-12 * r.norm() * l.norm() and r.dot(l) > 0


class _Node:
    __slots__ = ("t", "e", "parent")

    def __init__(self, t, e, parent):
        self.t, self.e, self.parent = t, e, parent

    def chain(self):
        out = []
        n = self
        while n is not None:
            out.append((n.t, n.e))
            n = n.parent
        return tuple(reversed(out))


def _develop_seed(tri, t0, c0, L, eligible, budget, emit):
    pts = tri.pts
    origin = pts[t0][c0]
    T = Vec(-origin.x, -origin.y)
    a = (c0 + 1) % 3
    b = (c0 + 2) % 3
    A = pts[t0][a] + T
    B = pts[t0][b] + T
    root = _Node(t0, None, None)
    r, rin = A, True
    l, lin = B, False
    if tri.cone[t0][a] in eligible:
        if A.norm() <= L:
            emit(t0, c0, A, t0, a, root)
        rin = False
    stack = [(t0, a, T, A, B, r, rin, l, lin, root)]
    count = 1
    while stack:
        t, e, T, Rt, Lt, r, rin, l, lin, node = stack.pop()
        # exit across edge e of t (from corner e to e+1); Rt/Lt are its ends seen from origin
        if _clipped_distance(Rt, Lt, r, l) > L:
            continue
        t2, e2 = tri.nbr[t][e]
        T2 = T + tri.delta[t][e]
        count += 1
        if count > budget:
            raise BudgetExceeded(f"development from corner ({t0},{c0}) exceeded {budget} triangles")
        child = _Node(t2, e2, node)
        x = (e2 + 2) % 3
        X = pts[t2][x] + T2
        # in t2: corner e2 is the left end, e2+1 the right end
        side = _in_wedge(X, r, rin, l, lin)
        right_edge = (e2 + 1) % 3  # Rt -> X
        left_edge = x  # X -> Lt
        if side < 0:
            stack.append((t2, left_edge, T2, X, Lt, r, rin, l, lin, child))
        elif side > 0:
            stack.append((t2, right_edge, T2, Rt, X, r, rin, l, lin, child))
        else:
            elig = tri.cone[t2][x] in eligible
            if elig and X.norm() <= L:
                emit(t0, c0, X, t2, x, child)
            if not (elig and _degenerate(X, l)):
                stack.append((t2, left_edge, T2, X, Lt, X, not elig, l, lin, child))
            if not (elig and _degenerate(r, X)):
                stack.append((t2, right_edge, T2, Rt, X, r, rin, X, not elig, child))
    return count


def enumerate_connections(
    s: TranslationSurface, L: float, budget: Optional[int] = None
) -> list:
    """All unoriented saddle connections of length at most ``L``.

    Sorted by length then holonomy. Raises :class:`BudgetExceeded` (with the
    connections found so far in ``.partial``) if any single development
    unfolds more than ``budget`` triangles.
    """
    if not (isinstance(L, (int, float)) and math.isfinite(L) and L > 0):
        raise InvalidParameter(f"length bound must be positive and finite, got {L!r}")
    budget = default_budget() if budget is None else budget
    tri = s.triangulation
    eligible = frozenset(s.eligible)
    if not eligible:
        raise NoConePoints("surface has no cone points")
    tol = s.tol
    Lc = L * (1 + tol.eps_rel) + tol.eps_abs
    totals = [cp.total_angle for cp in s.cone_points]
    keys = _AngleKeys(totals)
    found = {}

    def emit(t0, c0, X, t2, x, node):
        th_s = tri.direction_angle(t0, c0, X)
        th_e = tri.direction_angle(t2, x, -X)
        cs, ce = tri.cone[t0][c0], tri.cone[t2][x]
        k = keys.find(cs, th_s)
        if k is None:
            k = keys.find(ce, th_e)
        conn = _make(cs, ce, X, node.chain(), (t0, c0, X), tol)
        if k is None:
            k = len(found)
            keys.add(cs, th_s, k)
            keys.add(ce, th_e, k)
            found[k] = conn
        elif _seed_order(conn) < _seed_order(found[k]):
            found[k] = conn

    partial = False
    for t0 in range(len(tri)):
        for c0 in range(3):
            if tri.cone[t0][c0] not in eligible:
                continue
            try:
                _develop_seed(tri, t0, c0, Lc, eligible, budget, emit)
            except BudgetExceeded as exc:
                partial = exc
                break
        if partial:
            break
    out = sorted(found.values(), key=SaddleConnection.sort_key)
    if partial:
        raise BudgetExceeded(str(partial), out)
    return out


def _seed_order(c: SaddleConnection):
    t0, c0, X = c.seed
    return (t0, c0, X.x, X.y)


def _make(cs, ce, X, path, seed, tol) -> SaddleConnection:
    if _lex_ge(X, tol.eps_abs):
        return SaddleConnection(cs, ce, X, X.norm(), path, seed)
    return SaddleConnection(ce, cs, -X, X.norm(), path, seed)


# public short name; the module itself uses builtins.enumerate
def enumerate(s: TranslationSurface, L: float, budget: Optional[int] = None) -> list:  # noqa: A001
    return enumerate_connections(s, L, budget)


def _initial_cutoff(s: TranslationSurface) -> float:
    elig = set(s.eligible)
    cls = s.corner_class
    best = math.inf
    shortest = math.inf
    for p, poly in builtins.enumerate(s.polygons):
        k = len(poly)
        for i in range(k):
            ln = poly.side_vector(i).norm()
            shortest = min(shortest, ln)
            if cls[(p, i)] in elig and cls[(p, (i + 1) % k)] in elig:
                best = min(best, ln)
    return best if math.isfinite(best) else shortest


def systole(s: TranslationSurface, budget: Optional[int] = None) -> tuple:
    """``(length, connections)`` for the shortest saddle connections."""
    if not s.eligible:
        raise NoConePoints("surface has no cone points")
    L = _initial_cutoff(s)
    for _ in range(64):
        conns = enumerate_connections(s, L, budget)
        if conns:
            m = conns[0].length
            band = s.tol.eps_abs + s.tol.eps_rel * m
            return m, [c for c in conns if c.length <= m + band]
        L *= 2
    raise NoConePoints("no saddle connection found")  # pragma: no cover


def systolic_graph(s: TranslationSurface, budget: Optional[int] = None) -> SystolicGraph:
    m, conns = systole(s, budget)
    vmap = {c: i for i, c in builtins.enumerate(s.eligible)}
    edges = [(vmap[c.start], vmap[c.end]) for c in conns]
    return SystolicGraph(Multigraph(len(vmap), edges), tuple(conns), m, vmap)


def interior_clear(s: TranslationSurface, conn: SaddleConnection) -> bool:
    """True when no endpoint cone point lies strictly inside the developed segment."""
    tri = s.triangulation
    elig = set(s.eligible)
    t0, c0, X = conn.seed
    o = tri.pts[t0][c0]
    T = Vec(-o.x, -o.y)
    n2 = X.dot(X)
    prev = None
    for t, e in conn.path:
        if e is not None:
            T = T - tri.delta[t][e]
        for c in range(3):
            if tri.cone[t][c] not in elig:
                continue
            P = tri.pts[t][c] + T
            u = P.dot(X) / n2
            if 1e-9 < u < 1 - 1e-9 and abs(X.cross(P)) <= 1e-9 * n2:
                return False
        prev = t
    return prev is not None
