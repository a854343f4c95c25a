"""Planar Euclidean primitives shared by every other module.

Lengths and directions are compared through :class:`Tolerance` only; raw
float equality is never used on derived quantities.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import InvalidParameter


@dataclass(frozen=True)
class Tolerance:
    eps_abs: float = 1e-9
    eps_rel: float = 1e-12

    def __post_init__(self):
        if self.eps_abs < 0 or self.eps_rel < 0:
            raise InvalidParameter("tolerances must be non-negative")
        if self.eps_abs == 0 and self.eps_rel == 0:
            raise InvalidParameter("at least one of eps_abs, eps_rel must be positive")

    def band(self, a: float, b: float = 0.0) -> float:
        return self.eps_abs + self.eps_rel * max(abs(a), abs(b))


DEFAULT_TOL = Tolerance()


def approx_eq(a: float, b: float, tol: Tolerance = DEFAULT_TOL) -> bool:
    return abs(a - b) <= tol.eps_abs + tol.eps_rel * max(abs(a), abs(b))


@dataclass(frozen=True)
class Vec:
    """A planar vector (also used for points)."""

    x: float
    y: float

    def __post_init__(self):
        object.__setattr__(self, "x", float(self.x))
        object.__setattr__(self, "y", float(self.y))
        if not (math.isfinite(self.x) and math.isfinite(self.y)):
            raise InvalidParameter(f"non-finite coordinate ({self.x}, {self.y})")

    def __add__(self, other: "Vec") -> "Vec":
        return Vec(self.x + other.x, self.y + other.y)

    def __sub__(self, other: "Vec") -> "Vec":
        return Vec(self.x - other.x, self.y - other.y)

    def __neg__(self) -> "Vec":
        return Vec(-self.x, -self.y)

    def __mul__(self, k: float) -> "Vec":
        return Vec(self.x * k, self.y * k)

    __rmul__ = __mul__

    def __iter__(self):
        yield self.x
        yield self.y

    def dot(self, other: "Vec") -> float:
        return self.x * other.x + self.y * other.y

    def cross(self, other: "Vec") -> float:
        return self.x * other.y - self.y * other.x

    def norm(self) -> float:
        return math.hypot(self.x, self.y)

    def angle(self) -> float:
        return math.atan2(self.y, self.x)

    def rotated(self, theta: float) -> "Vec":
        c, s = math.cos(theta), math.sin(theta)
        return Vec(c * self.x - s * self.y, s * self.x + c * self.y)

    def approx(self, other: "Vec", tol: Tolerance = DEFAULT_TOL) -> bool:
        return approx_eq(self.x, other.x, tol) and approx_eq(self.y, other.y, tol)


# alias
PlanarVector = Vec


def unit(theta: float) -> Vec:
    return Vec(math.cos(theta), math.sin(theta))


def ccw_angle(u: Vec, v: Vec) -> float:
    """Angle in [0, 2pi) swept counterclockwise from ``u`` to ``v``."""
    a = math.atan2(u.cross(v), u.dot(v))
    return a + 2 * math.pi if a < 0 else a


def _segments_cross(p1: Vec, p2: Vec, q1: Vec, q2: Vec, eps: float) -> bool:
    d1 = (p2 - p1).cross(q1 - p1)
    d2 = (p2 - p1).cross(q2 - p1)
    d3 = (q2 - q1).cross(p1 - q1)
    d4 = (q2 - q1).cross(p2 - q1)
    if ((d1 > eps and d2 < -eps) or (d1 < -eps and d2 > eps)) and (
        (d3 > eps and d4 < -eps) or (d3 < -eps and d4 > eps)
    ):
        return True

    def on_seg(a: Vec, b: Vec, c: Vec, d: float) -> bool:
        return abs(d) <= eps and min(a.x, b.x) - eps <= c.x <= max(a.x, b.x) + eps and (
            min(a.y, b.y) - eps <= c.y <= max(a.y, b.y) + eps
        )

    return (
        on_seg(p1, p2, q1, d1)
        or on_seg(p1, p2, q2, d2)
        or on_seg(q1, q2, p1, d3)
        or on_seg(q1, q2, p2, d4)
    )


@dataclass(frozen=True)
class Polygon:
    vertices: tuple

    def __init__(self, vertices: Iterable):
        vs = tuple(v if isinstance(v, Vec) else Vec(*v) for v in vertices)
        if len(vs) < 3:
            raise InvalidParameter("a polygon needs at least 3 vertices")
        object.__setattr__(self, "vertices", vs)

    def __len__(self) -> int:
        return len(self.vertices)

    @property
    def n_sides(self) -> int:
        return len(self.vertices)

    def side_vector(self, i: int) -> Vec:
        k = len(self.vertices)
        if not 0 <= i < k:
            raise IndexError(f"side index {i} out of range for {k}-gon")
        return self.vertices[(i + 1) % k] - self.vertices[i]

    def side_vectors(self) -> list:
        return [self.side_vector(i) for i in range(len(self.vertices))]

    def signed_area(self) -> float:
        vs = self.vertices
        return 0.5 * sum(vs[i].cross(vs[(i + 1) % len(vs)]) for i in range(len(vs)))

    def area(self) -> float:
        return abs(self.signed_area())

    def corner_angle(self, i: int) -> float:
        """Interior angle at vertex ``i`` (CCW polygon assumed)."""
        k = len(self.vertices)
        out = self.side_vector(i)
        back = -self.side_vector((i - 1) % k)
        return ccw_angle(out, back)

    def translated(self, d: Vec) -> "Polygon":
        return Polygon(v + d for v in self.vertices)

    def scaled(self, lam: float) -> "Polygon":
        return Polygon(v * lam for v in self.vertices)

    def rotated_indices(self, shift: int) -> "Polygon":
        k = len(self.vertices)
        return Polygon(self.vertices[(i + shift) % k] for i in range(k))

    def is_simple(self, tol: Tolerance = DEFAULT_TOL) -> bool:
        vs = self.vertices
        k = len(vs)
        scale = max(v.norm() for v in vs) + 1.0
        eps = tol.band(scale) * scale
        for i in range(k):
            for j in range(i + 1, k):
                if j == i + 1 or (i == 0 and j == k - 1):
                    continue
                if _segments_cross(vs[i], vs[(i + 1) % k], vs[j], vs[(j + 1) % k], eps):
                    return False
        return True

    def problems(self, tol: Tolerance = DEFAULT_TOL) -> list:
        """Geometric defects as human-readable strings (empty when sound)."""
        issues = []
        for i, d in enumerate(self.side_vectors()):
            if d.norm() <= tol.band(d.norm()):
                issues.append(f"side {i} has zero length")
        if issues:
            return issues
        if self.signed_area() <= tol.eps_abs:
            issues.append("vertices are not counterclockwise (signed area <= 0)")
        k = len(self.vertices)
        for i in range(k):
            a = self.side_vector((i - 1) % k)
            b = self.side_vector(i)
            if abs(a.cross(b)) <= tol.band(a.norm() * b.norm()) * a.norm() * b.norm() and a.dot(b) < 0:
                issues.append(f"vertex {i} is a zero-angle spike")
        if not issues and not self.is_simple(tol):
            issues.append("polygon is not simple")
        return issues


def regular_polygon(k: int, side: float = 1.0) -> Polygon:
    """CCW regular ``k``-gon; first side runs from the origin along +x."""
    if int(k) != k or k < 3:
        raise InvalidParameter(f"regular polygon needs k >= 3, got {k}")
    if not side > 0:
        raise InvalidParameter(f"side length must be positive, got {side}")
    return polygon_from_turns([360.0 * i / k for i in range(k)], side)


def polygon_from_turns(
    headings_deg: Sequence[float], lengths: "float | Sequence[float]" = 1.0, start: Vec = Vec(0.0, 0.0)
) -> Polygon:
    """Polygon traced by walking the given headings (degrees) from ``start``.

    Headings that are multiples of 30 degrees are evaluated from exact sine and
    cosine values so lattice-like figures close without drift.
    """
    if isinstance(lengths, (int, float)):
        lengths = [float(lengths)] * len(headings_deg)
    pts = [start]
    for h, ln in zip(headings_deg[:-1], lengths[:-1]):
        pts.append(pts[-1] + heading(h) * ln)
    return Polygon(pts)


_EXACT = {
    0: (1.0, 0.0), 30: (math.sqrt(3) / 2, 0.5), 45: (math.sqrt(0.5), math.sqrt(0.5)),
    60: (0.5, math.sqrt(3) / 2), 90: (0.0, 1.0),
}


def heading(deg: float) -> Vec:
    """Unit vector at ``deg`` degrees, exact on the 15-degree grid where possible."""
    d = deg % 360.0
    q, r = divmod(d, 90.0)
    for base, (c, s) in _EXACT.items():
        if abs(r - base) < 1e-12:
            v = Vec(c, s)
            for _ in range(int(q)):
                v = Vec(-v.y, v.x)
            return v
    return unit(math.radians(d))
