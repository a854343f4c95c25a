"""Cycles of regular 4m-gons realising the multigraph families P and Q."""

from __future__ import annotations

from ..errors import InvalidParameter
from ..geom import Vec, regular_polygon
from ..graph import family_p_graph, family_q_graph
from ..surface import SideRef, TranslationSurface
from .expectation import Expectation


def _polys(n, m):
    P = regular_polygon(4 * m)
    w = max(v.x for v in P.vertices) - min(v.x for v in P.vertices) + 0.5
    return [P.translated(Vec(i * w, 0.0)) for i in range(n)]


def _check(n, m):
    if int(n) != n or int(m) != m or n < 2 or m < 1:
        raise InvalidParameter(f"need n >= 2 and m >= 1, got n={n}, m={m}")


def _E(i, k):
    return SideRef(i, k - 1)


def _Ebar(i, k, m):
    return SideRef(i, 2 * m + k - 1)


def _expect(n, m, target):
    return Expectation(
        genus=n * (m - 1) + 1,
        cone_spectrum={2 * m - 1: n},
        systole=1.0,
        systolic_count=2 * m * n,
        target=target,
        kind="cellular",
    )


def build_family_p(n: int, m: int) -> tuple:
    _check(n, m)
    pairs = [(_E(i, k), _Ebar((i + 1) % n, k, m)) for i in range(n) for k in range(1, 2 * m + 1)]
    return TranslationSurface.from_pairs(_polys(n, m), pairs), _expect(n, m, family_p_graph(n, m))


def build_family_q(n: int, m: int) -> tuple:
    _check(n, m)
    pairs = []
    for i in range(n):
        for k in range(1, 2 * m + 1):
            j = i if k <= m else (i + 1) % n
            pairs.append((_E(i, k), _Ebar(j, k, m)))
    return TranslationSurface.from_pairs(_polys(n, m), pairs), _expect(n, m, family_q_graph(n, m))
