"""Surfaces whose systolic graph is K_n or a subgraph of it (n odd)."""

from __future__ import annotations

from ..errors import InvalidParameter
from ..geom import Polygon, Vec, regular_polygon
from ..graph import Multigraph, complete, delete_edges, walecki
from ..surface import SideRef, TranslationSurface
from .expectation import Expectation


def _check(n, s, h):
    if int(n) != n or n < 5 or n % 2 == 0:
        raise InvalidParameter(f"n must be odd and >= 5, got {n}")
    if not s > 0:
        raise InvalidParameter(f"side length s must be positive, got {s}")
    if not 0 < h < s / 2:
        raise InvalidParameter(f"need 0 < h < s/2 so the seam 2h is shorter than a side; got h={h}, s={s}")


def kn_genus(n: int) -> int:
    return 1 - n * (1 - (n - 1) // 2)


def _flap(R: Polygon, j: int, height: float) -> Polygon:
    k = len(R)
    A, B = R.vertices[j], R.vertices[(j + 1) % k]
    d = B - A
    out = Vec(d.y, -d.x) * (height / d.norm())
    # sides: 0 glued to R, 1 and 3 glued to each other, 2 is the outer side
    return Polygon([B, A, A + out, B + out])


def _seam_owner(n, deleted):
    """For each deleted edge, the (vertex, flap index) of the E-side flap realising it."""
    perms = walecki(n).permutations
    half = (n - 1) // 2
    owners = set()
    for u, v in deleted:
        if u == v or not (0 <= u < n and 0 <= v < n):
            raise InvalidParameter(f"({u}, {v}) is not an edge of K_{n}")
        for r in range(half):
            if perms[r][u] == v:
                owners.add((u, r))
                break
            if perms[r][v] == u:
                owners.add((v, r))
                break
    return owners


def _assemble(n, s, h, raised, h_plus):
    half = (n - 1) // 2
    perms = walecki(n).permutations
    R = regular_polygon(n - 1, s)
    span = 2 * s + 2 * max(h, h_plus or 0) + R.vertices[half].norm()
    polys = []
    for i in range(n):
        shift = Vec(i * span, 0.0)
        polys.append(R.translated(shift))
        for j in range(n - 1):
            ht = h_plus if (j < half and (i, j) in raised) else h
            polys.append(_flap(R, j, ht).translated(shift))
    base = lambda i: i * n  # noqa: E731
    pairs = []
    for i in range(n):
        for j in range(n - 1):
            f = base(i) + 1 + j
            pairs.append((SideRef(base(i), j), SideRef(f, 0)))
            pairs.append((SideRef(f, 1), SideRef(f, 3)))
    for r in range(half):
        for i in range(n):
            e_side = SideRef(base(i) + 1 + r, 2)
            ebar = SideRef(base(perms[r][i]) + 1 + r + half, 2)
            pairs.append((e_side, ebar))
    return TranslationSurface.from_pairs(polys, pairs)


def build_kn(n: int, s: float = 1.0, h: float = None) -> tuple:
    h = s / 4 if h is None else h
    _check(n, s, h)
    surf = _assemble(n, s, h, set(), None)
    return surf, _expect(n, h, complete(n), 0)


def build_kn_minus(n: int, deleted=(), s: float = 1.0, h: float = None, h_plus: float = None) -> tuple:
    h = s / 4 if h is None else h
    h_plus = 3 * s / 8 if h_plus is None else h_plus
    _check(n, s, h)
    if not (2 * h < h + h_plus < s):
        raise InvalidParameter(f"need 2h < h + h_plus < s; got h={h}, h_plus={h_plus}, s={s}")
    deleted = [tuple(sorted(e)) for e in deleted]
    target = delete_edges(complete(n), deleted)
    owners = _seam_owner(n, deleted)
    surf = _assemble(n, s, h, owners, h_plus)
    return surf, _expect(n, h, target, len(deleted))


def _expect(n, h, target, n_deleted):
    return Expectation(
        genus=kn_genus(n),
        cone_spectrum={n - 2: n, 1: n * (n - 1) // 2},
        systole=2 * h,
        # one seam per glued flap pair, i.e. one connection per edge of K_n
        systolic_count=n * (n - 1) // 2 - n_deleted,
        target=target,
        kind="essential",
    )


def lift_order(k: int) -> int:
    """Smallest odd n >= 5 with n >= k."""
    n = max(k, 5)
    return n if n % 2 else n + 1


def build_subgraph(n: int, g: Multigraph, s: float = 1.0, h: float = None, h_plus: float = None) -> tuple:
    """Surface whose systolic graph is ``g`` plus isolated padding vertices."""
    if g.n_vertices > n:
        raise InvalidParameter(f"graph has {g.n_vertices} vertices, more than n={n}")
    for u, v in g.edges:
        if u == v:
            raise InvalidParameter("loops cannot be realised inside K_n")
    if any(k > 1 for k in (g.multiplicity(u, v) for u, v in g.edges)):
        raise InvalidParameter("parallel edges cannot be realised inside K_n")
    if not g.edges:
        raise InvalidParameter("graph has no edges; there would be no systole to realise")
    N = lift_order(n)
    padded = Multigraph(N, g.edges)
    deleted = [e for e in complete(N).edges if padded.multiplicity(*e) == 0]
    return build_kn_minus(N, deleted, s, h, h_plus)
