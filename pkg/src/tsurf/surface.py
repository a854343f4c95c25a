"""Translation surfaces: polygons glued along sides by translations.

A surface is a list of CCW polygons plus an involution on their sides.
Everything topological (cone points, Euler characteristic, genus) is derived
on demand from that data.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, NamedTuple, Optional, Sequence

from .errors import InconsistentSurface, InvalidParameter, ValidationFailed
from .geom import DEFAULT_TOL, Polygon, Tolerance, Vec

TWO_PI = 2.0 * math.pi


class SideRef(NamedTuple):
    polygon: int
    side: int

    def __str__(self):
        return f"{self.polygon}:{self.side}"


@dataclass(frozen=True)
class Violation:
    kind: str
    detail: str

    def __str__(self):
        return f"{self.kind}: {self.detail}"


@dataclass(frozen=True)
class ValidationOutcome:
    violations: tuple = ()

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self):
        return self.ok


@dataclass(frozen=True)
class ConePoint:
    id: int
    corners: frozenset
    total_angle: float
    multiple: int  # total_angle = 2*pi*multiple

    @property
    def kind(self) -> str:
        return "singular" if self.multiple >= 2 else "marked"

    @property
    def is_singular(self) -> bool:
        return self.multiple >= 2


class TranslationSurface:
    """Polygons with a translation side pairing.

    ``pairing`` maps every :class:`SideRef` to its partner. Instances are
    treated as immutable; derived data is cached.
    """

    def __init__(self, polygons: Sequence[Polygon], pairing: dict, tol: Tolerance = DEFAULT_TOL):
        self.polygons = tuple(p if isinstance(p, Polygon) else Polygon(p) for p in polygons)
        self.pairing = {SideRef(*a): SideRef(*b) for a, b in pairing.items()}
        self.tol = tol

    @classmethod
    def from_pairs(cls, polygons, pairs: Iterable, tol: Tolerance = DEFAULT_TOL) -> "TranslationSurface":
        pairing = {}
        for a, b in pairs:
            a, b = SideRef(*a), SideRef(*b)
            pairing[a] = b
            pairing[b] = a
        return cls(polygons, pairing, tol)

    def __repr__(self):
        return f"TranslationSurface({len(self.polygons)} polygons, {len(self.pairing) // 2} side pairs)"

    # -- basic data -------------------------------------------------------

    def sides(self):
        for p, poly in enumerate(self.polygons):
            for i in range(len(poly)):
                yield SideRef(p, i)

    def side_vector(self, s: SideRef) -> Vec:
        return self.polygons[s.polygon].side_vector(s.side)

    def pairs(self) -> list:
        """Each glued pair once, as ``(a, b)`` with ``a < b``."""
        return sorted((a, b) for a, b in self.pairing.items() if a < b)

    def corner_angle(self, p: int, v: int) -> float:
        return self.polygons[p].corner_angle(v)

    # -- validation -------------------------------------------------------

    def validate(self) -> ValidationOutcome:
        return validate(self)

    def check(self) -> "TranslationSurface":
        out = validate(self)
        if not out.ok:
            raise ValidationFailed(out.violations)
        return self

    # -- topology ---------------------------------------------------------

    @cached_property
    def cone_points(self) -> tuple:
        return tuple(_vertex_classes(self))

    @cached_property
    def corner_class(self) -> dict:
        return {c: cp.id for cp in self.cone_points for c in cp.corners}

    @cached_property
    def eligible(self) -> tuple:
        """Cone point ids that may terminate saddle connections.

        Singular points when any exist, otherwise the marked points.
        """
        sing = [cp.id for cp in self.cone_points if cp.is_singular]
        return tuple(sing) if sing else tuple(cp.id for cp in self.cone_points)

    def euler_characteristic(self) -> int:
        return euler_characteristic(self)

    def genus(self) -> int:
        return genus(self)

    def area(self) -> float:
        return area(self)

    def cone_spectrum(self) -> dict:
        """``{multiple k: count}`` of cone points with angle ``2*pi*k``."""
        out = {}
        for cp in self.cone_points:
            out[cp.multiple] = out.get(cp.multiple, 0) + 1
        return dict(sorted(out.items()))

    @cached_property
    def triangulation(self):
        from .triangulation import triangulate

        return triangulate(self)

    # -- transforms (used by property tests and scaling checks) -----------

    def scaled(self, lam: float) -> "TranslationSurface":
        if not lam > 0:
            raise InvalidParameter("scale factor must be positive")
        return TranslationSurface([p.scaled(lam) for p in self.polygons], self.pairing, self.tol)

    def reindexed(self, perm: Sequence[int]) -> "TranslationSurface":
        """Polygon ``perm[i]`` of the result is polygon ``i`` of ``self``."""
        n = len(self.polygons)
        if sorted(perm) != list(range(n)):
            raise InvalidParameter("perm must be a permutation of polygon indices")
        polys = [None] * n
        for i, p in enumerate(self.polygons):
            polys[perm[i]] = p
        pairing = {
            SideRef(perm[a.polygon], a.side): SideRef(perm[b.polygon], b.side) for a, b in self.pairing.items()
        }
        return TranslationSurface(polys, pairing, self.tol)

    def rotated_vertices(self, shifts: Sequence[int]) -> "TranslationSurface":
        """Cyclically relabel each polygon's vertices; vertex ``i`` becomes ``i - shift``."""
        polys = [p.rotated_indices(s) for p, s in zip(self.polygons, shifts)]

        def move(r: SideRef) -> SideRef:
            k = len(self.polygons[r.polygon])
            return SideRef(r.polygon, (r.side - shifts[r.polygon]) % k)

        pairing = {move(a): move(b) for a, b in self.pairing.items()}
        return TranslationSurface(polys, pairing, self.tol)


def validate(s: TranslationSurface) -> ValidationOutcome:
    tol = s.tol
    out = []
    for p, poly in enumerate(s.polygons):
        for msg in poly.problems(tol):
            kind = "non-ccw" if "counterclockwise" in msg else "bad-polygon"
            out.append(Violation(kind, f"polygon {p}: {msg}"))
    all_sides = set(s.sides())
    for a, b in s.pairing.items():
        if a not in all_sides:
            out.append(Violation("bad-reference", f"side {a} does not exist"))
            continue
        if b not in all_sides:
            out.append(Violation("bad-reference", f"side {a} paired with nonexistent side {b}"))
            continue
        if a == b:
            out.append(Violation("self-paired", f"side {a} is paired with itself"))
            continue
        back = s.pairing.get(b)
        if back != a:
            out.append(Violation("non-involution", f"{a} -> {b} but {b} -> {back}"))
            continue
        if a < b:
            va, vb = s.side_vector(a), s.side_vector(b)
            la, lb = va.norm(), vb.norm()
            if abs(la - lb) > tol.band(la, lb):
                out.append(Violation("length-mismatch", f"{a} has length {la:.12g}, {b} has {lb:.12g}"))
            elif not va.approx(-vb, tol):
                out.append(Violation("not-antiparallel", f"{a} = {tuple(va)} is not the negation of {b} = {tuple(vb)}"))
    for side in sorted(all_sides - set(s.pairing)):
        out.append(Violation("unmatched", f"side {side} is not paired"))
    if s.polygons and not _connected(s):
        out.append(Violation("disconnected", "polygons do not form a connected surface"))
    if not s.polygons:
        out.append(Violation("empty", "surface has no polygons"))
    return ValidationOutcome(tuple(out))


def _connected(s: TranslationSurface) -> bool:
    n = len(s.polygons)
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for a, b in s.pairing.items():
        if 0 <= a.polygon < n and 0 <= b.polygon < n:
            parent[find(a.polygon)] = find(b.polygon)
    return len({find(i) for i in range(n)}) == 1


def _require_valid(s: TranslationSurface):
    out = validate(s)
    if not out.ok:
        raise ValidationFailed(out.violations)


def corner_successor(s: TranslationSurface, p: int, v: int) -> tuple:
    """Next corner counterclockwise around the vertex at corner ``(p, v)``.

    Crosses the side arriving at ``v`` (side ``v-1``) into its partner, whose
    start vertex is the same surface point.
    """
    k = len(s.polygons[p])
    q, w = s.pairing[SideRef(p, (v - 1) % k)]
    return (q, w)


def _vertex_classes(s: TranslationSurface) -> list:
    _require_valid(s)
    seen = set()
    classes = []
    for p, poly in enumerate(s.polygons):
        for v in range(len(poly)):
            if (p, v) in seen:
                continue
            orbit = []
            c = (p, v)
            while c not in seen:
                seen.add(c)
                orbit.append(c)
                c = corner_successor(s, *c)
            total = sum(s.corner_angle(*c) for c in orbit)
            k = round(total / TWO_PI)
            if k < 1 or abs(total - TWO_PI * k) > 1e-7 * max(1, k):
                raise InconsistentSurface(f"corner class {orbit} has angle {total}, not a multiple of 2pi")
            classes.append(ConePoint(len(classes), frozenset(orbit), total, k))
    return classes


def vertex_classes(s: TranslationSurface) -> list:
    return list(s.cone_points)


def euler_characteristic(s: TranslationSurface) -> int:
    _require_valid(s)
    return len(s.cone_points) - len(s.pairing) // 2 + len(s.polygons)


def genus(s: TranslationSurface) -> int:
    chi = euler_characteristic(s)
    if chi % 2:
        raise InconsistentSurface(f"odd Euler characteristic {chi}")
    g = (2 - chi) // 2
    if g < 0:
        raise InconsistentSurface(f"negative genus from chi={chi}")
    return g


def area(s: TranslationSurface) -> float:
    return sum(p.area() for p in s.polygons)


def gauss_bonnet_defect(s: TranslationSurface) -> float:
    """``sum(angle - 2pi) - 2pi(2g - 2)``; zero up to rounding on a valid surface."""
    excess = sum(cp.total_angle - TWO_PI for cp in s.cone_points)
    return excess - TWO_PI * (2 * genus(s) - 2)
