"""Surfaces whose systolic graph is a wedge of n circles (one vertex, n loops)."""

from __future__ import annotations

import math

from ..errors import InvalidGenus, InvalidParameter
from ..geom import Polygon, Vec, heading, regular_polygon
from ..graph import wedge
from ..surface import SideRef, TranslationSurface
from .expectation import Expectation
from .tables import load_table


def _expect(n: int, g: int, systole: float = 1.0) -> Expectation:
    return Expectation(
        genus=g,
        cone_spectrum={2 * g - 1: 1},
        systole=systole,
        systolic_count=n,
        target=wedge(n),
        kind="cellular",
    )


def min_genus(n: int) -> int:
    return max(1, math.ceil((n + 3) / 6))


def _check_n(n):
    if int(n) != n or n < 2:
        raise InvalidParameter(f"need n >= 2, got {n}")


def _opposite_glued(k: int) -> tuple:
    """Regular 2k-gon with side j glued to side j+k."""
    P = regular_polygon(2 * k)
    return [P], [(SideRef(0, j), SideRef(0, j + k)) for j in range(k)]


def _doubled(k: int, offset: int = 0) -> tuple:
    """Regular k-gon and its mirror image across side 0, side i glued to mirror side i-1."""
    P = regular_polygon(k)
    Q = Polygon(Vec(v.x, -v.y) for v in (P.vertices[-i % k] for i in range(k)))
    return [P, Q], [(SideRef(offset, i), SideRef(offset + 1, (i - 1) % k)) for i in range(k)]


def build_wedge_max(n: int) -> tuple:
    _check_n(n)
    polys, pairs = _opposite_glued(n) if n % 2 == 0 else _doubled(n)
    return TranslationSurface.from_pairs(polys, pairs), _expect(n, n // 2)


# -- strips of equilateral triangles ------------------------------------------


def _triangle_on(seg_from: Vec, seg_to: Vec, heads: tuple, k: int) -> Polygon:
    """Triangle with the given side headings whose side ``k`` runs ``seg_to -> seg_from``.

    That side is glued (antiparallel) to the segment ``seg_from -> seg_to``.
    """
    v = [None] * 3
    v[k] = seg_to
    v[(k + 1) % 3] = seg_from
    v[(k + 2) % 3] = seg_from + heading(heads[(k + 1) % 3])
    return Polygon(v)


def _strip(port_from: Vec, port_to: Vec, m: int, first: int):
    """``m`` unit triangles hanging off the port segment ``port_from -> port_to``.

    Returns polygons, internal glue pairs (local indices), and the free sides
    keyed by label: ``b{k}`` bases, ``a{k}`` tops, ``c`` and ``d`` at the ends.
    """
    u = port_to - port_from
    phi = math.degrees(math.atan2(-u.y, -u.x))
    up = (phi, phi + 120, phi + 240)
    down = (phi + 60, phi + 180, phi + 300)
    polys = [_triangle_on(port_from, port_to, up, 0)]
    internal, free = [], {"c": (first, 2)}
    for j in range(1, m):
        prev = polys[-1]
        if j % 2:  # down triangle, its side 2 meets the previous up triangle's side 1
            A, B = prev.vertices[1], prev.vertices[2]
            polys.append(_triangle_on(A, B, down, 2))
            internal.append(((first + j - 1, 1), (first + j, 2)))
            free[f"a{j}"] = (first + j, 1)
        else:  # up triangle, its side 2 meets the previous down triangle's side 0
            A, B = prev.vertices[0], prev.vertices[1]
            polys.append(_triangle_on(A, B, up, 2))
            internal.append(((first + j - 1, 0), (first + j, 2)))
            free[f"b{j}"] = (first + j, 0)
    last = m - 1
    free["d"] = (first + last, 1 if last % 2 == 0 else 0)
    return polys, internal, free


def attach_strips(polys: list, pairs: list, port_a: SideRef, port_b: SideRef, m: int) -> tuple:
    """Open the glued pair ``port_a``/``port_b`` and hang ``m`` triangles off each side.

    The two strips are point reflections of each other, so their free sides
    pair up label by label.
    """
    if m < 1:
        return polys, pairs
    pairs = [p for p in pairs if set(p) != {port_a, port_b}]
    polys = list(polys)
    frees = []
    for port in (port_a, port_b):
        P = polys[port.polygon]
        k = len(P)
        a, b = P.vertices[port.side], P.vertices[(port.side + 1) % k]
        first = len(polys)
        tri, internal, free = _strip(a, b, m, first)
        polys += tri
        pairs.append((port, SideRef(first, 0)))
        pairs += [(SideRef(*x), SideRef(*y)) for x, y in internal]
        frees.append(free)
    fa, fb = frees
    for lab in sorted(fa):
        pairs.append((SideRef(*fa[lab]), SideRef(*fb[lab])))
    return polys, pairs


def build_wedge_min(n: int) -> tuple:
    _check_n(n)
    g = min_genus(n)
    if n <= 3:
        polys, pairs = load_table(f"sigma{n}").build()
        return TranslationSurface.from_pairs(polys, pairs), _expect(n, 1)
    k0 = n - 6 * (g - 2)
    table = load_table(f"sigma{k0}")
    polys, pairs = table.build()
    if g > 2:
        a, b = table.sides_by_label()[table.port]
        polys, pairs = attach_strips(polys, pairs, a, b, 2 * (g - 2))
    return TranslationSurface.from_pairs(polys, pairs), _expect(n, g)


def build_wedge_intermediate(n: int, g: int) -> tuple:
    _check_n(n)
    lo, hi = min_genus(n), n // 2
    if not lo <= g <= hi:
        raise InvalidGenus(f"genus {g} outside {lo} <= g <= {hi} for n={n}")
    faces = n - 2 * g + 1
    k, odd = divmod(faces, 2)
    if odd:
        if k == 0:
            return build_wedge_max(n)
        polys, pairs = _opposite_glued(n - 3 * k)
        m = k
    else:
        if k == 1:
            return build_wedge_max(n)
        # two regular polygons with n - 3k + 3 sides each: 2(n-3k+3) + 6(k-1) = 2n sides in total
        polys, pairs = _doubled(n - 3 * k + 3)
        m = k - 1
    port_a, port_b = pairs[1] if len(pairs) > 1 else pairs[0]
    polys, pairs = attach_strips(polys, pairs, port_a, port_b, m)
    return TranslationSurface.from_pairs(polys, pairs), _expect(n, g)
