"""Small multigraphs (loops and parallel edges allowed) and the named families."""

from __future__ import annotations

import os
import re
import sys
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Optional

from .errors import InvalidParameter, ParseError


class Multigraph:
    """Undirected multigraph on vertices ``0..n-1``.

    Edges are kept as a sorted tuple of ``(u, v)`` with ``u <= v`` so equality
    is multiset equality. A loop adds 2 to its vertex's degree.
    """

    __slots__ = ("n_vertices", "edges", "_mult")

    def __init__(self, n_vertices: int, edges: Iterable = ()):
        if int(n_vertices) != n_vertices or n_vertices < 1:
            raise InvalidParameter(f"a graph needs at least one vertex, got {n_vertices}")
        es = []
        for u, v in edges:
            if not (0 <= u < n_vertices and 0 <= v < n_vertices):
                raise InvalidParameter(f"edge ({u}, {v}) out of range for {n_vertices} vertices")
            es.append((u, v) if u <= v else (v, u))
        self.n_vertices = int(n_vertices)
        self.edges = tuple(sorted(es))
        self._mult = Counter(self.edges)

    def __eq__(self, other):
        return isinstance(other, Multigraph) and (self.n_vertices, self.edges) == (other.n_vertices, other.edges)

    def __hash__(self):
        return hash((self.n_vertices, self.edges))

    def __repr__(self):
        return f"Multigraph({self.n_vertices}, {list(self.edges)})"

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    def multiplicity(self, u: int, v: int) -> int:
        return self._mult.get((u, v) if u <= v else (v, u), 0)

    def loops(self, v: int) -> int:
        return self._mult.get((v, v), 0)

    def degree(self, v: int) -> int:
        return sum((2 if a == b else 1) for a, b in self.edges if v in (a, b))

    def degrees(self) -> list:
        d = [0] * self.n_vertices
        for a, b in self.edges:
            d[a] += 1
            d[b] += 1
        return d

    def matrix(self) -> list:
        m = [[0] * self.n_vertices for _ in range(self.n_vertices)]
        for (a, b), k in self._mult.items():
            m[a][b] = m[b][a] = k
        return m

    def relabeled(self, perm) -> "Multigraph":
        """Vertex ``v`` becomes ``perm[v]``."""
        return Multigraph(self.n_vertices, ((perm[a], perm[b]) for a, b in self.edges))

    def isolated(self) -> list:
        d = self.degrees()
        return [v for v in range(self.n_vertices) if d[v] == 0]

    def without_isolated(self) -> "Multigraph":
        iso = set(self.isolated())
        keep = [v for v in range(self.n_vertices) if v not in iso]
        if not keep:
            return Multigraph(1)
        idx = {v: i for i, v in enumerate(keep)}
        return Multigraph(len(keep), ((idx[a], idx[b]) for a, b in self.edges))


# -- families ---------------------------------------------------------------


def complete(n: int) -> Multigraph:
    if n < 1:
        raise InvalidParameter("complete graph needs n >= 1")
    return Multigraph(n, ((i, j) for i in range(n) for j in range(i + 1, n)))


def wedge(n: int) -> Multigraph:
    """One vertex with ``n`` loops."""
    if n < 1:
        raise InvalidParameter("wedge needs n >= 1")
    return Multigraph(1, [(0, 0)] * n)


def _check_nm(n, m):
    if n < 2 or m < 1:
        raise InvalidParameter(f"need n >= 2 and m >= 1, got n={n}, m={m}")


def family_p_graph(n: int, m: int) -> Multigraph:
    """Cycle of length ``n`` with every edge of multiplicity ``2m``."""
    _check_nm(n, m)
    return Multigraph(n, [(i, (i + 1) % n) for i in range(n) for _ in range(2 * m)])


def family_q_graph(n: int, m: int) -> Multigraph:
    """``m`` loops at each vertex plus a cycle with edges of multiplicity ``m``."""
    _check_nm(n, m)
    edges = [(i, i) for i in range(n) for _ in range(m)]
    edges += [(i, (i + 1) % n) for i in range(n) for _ in range(m)]
    return Multigraph(n, edges)


def delete_edges(g: Multigraph, edges: Iterable) -> Multigraph:
    left = Counter(g.edges)
    for u, v in edges:
        key = (u, v) if u <= v else (v, u)
        if left[key] == 0:
            raise InvalidParameter(f"edge {key} not present")
        left[key] -= 1
    return Multigraph(g.n_vertices, left.elements())


# -- isomorphism -------------------------------------------------------------


def isomorphic(a: Multigraph, b: Multigraph) -> Optional[dict]:
    """A vertex map ``a -> b`` preserving all multiplicities, or ``None``."""
    if a.n_vertices != b.n_vertices or a.n_edges != b.n_edges:
        return None
    if sorted(a.degrees()) != sorted(b.degrees()):
        return None
    # refine both graphs with a shared colour vocabulary
    ca, cb = _joint_colours(a, b)
    if Counter(ca) != Counter(cb):
        return None
    ma, mb = a.matrix(), b.matrix()
    n = a.n_vertices
    cls_b = {}
    for v in range(n):
        cls_b.setdefault(cb[v], []).append(v)
    # most constrained first, then follow adjacency to prune early
    order = sorted(range(n), key=lambda v: (len(cls_b[ca[v]]), -a.degrees()[v], v))
    order = _bfs_order(ma, order)
    fwd, used = {}, set()

    def ok(v, w):
        if ma[v][v] != mb[w][w]:
            return False
        for u, x in fwd.items():
            if ma[v][u] != mb[w][x]:
                return False
        return True

    def search(i):
        if i == n:
            return True
        v = order[i]
        for w in cls_b[ca[v]]:
            if w in used or not ok(v, w):
                continue
            fwd[v] = w
            used.add(w)
            if search(i + 1):
                return True
            del fwd[v]
            used.discard(w)
        return False

    old = sys.getrecursionlimit()
    sys.setrecursionlimit(max(old, 4 * n + 100))
    try:
        found = search(0)
    finally:
        sys.setrecursionlimit(old)
    return dict(fwd) if found else None


def _joint_colours(a: Multigraph, b: Multigraph):
    n = a.n_vertices
    mats = (a.matrix(), b.matrix())
    cols = [[(g.degrees()[v], m[v][v]) for v in range(n)] for g, m in zip((a, b), mats)]
    while True:
        sigs = [
            [(c[v], tuple(sorted((c[u], m[v][u]) for u in range(n) if u != v and m[v][u]))) for v in range(n)]
            for c, m in zip(cols, mats)
        ]
        names = {s: i for i, s in enumerate(sorted(set(sigs[0]) | set(sigs[1])))}
        new = [[names[s] for s in sg] for sg in sigs]
        if len(names) == len(set(cols[0]) | set(cols[1])):
            return new
        cols = new


def _bfs_order(m, order):
    n = len(order)
    seen, out = set(), []
    for start in order:
        if start in seen:
            continue
        queue = [start]
        seen.add(start)
        while queue:
            v = queue.pop(0)
            out.append(v)
            nb = [u for u in order if u not in seen and m[v][u]]
            for u in nb:
                seen.add(u)
                queue.append(u)
    assert len(out) == n
    return out


# -- Walecki decomposition ---------------------------------------------------


@dataclass(frozen=True)
class WaleckiDecomposition:
    cycles: tuple  # each a vertex sequence of length n
    permutations: tuple  # each a tuple p with p[i] = image of i

    def cycle_edges(self, l: int) -> list:
        c = self.cycles[l]
        return [tuple(sorted((c[k], c[(k + 1) % len(c)]))) for k in range(len(c))]


def walecki(n: int) -> WaleckiDecomposition:
    if int(n) != n or n < 5 or n % 2 == 0:
        raise InvalidParameter(f"Walecki decomposition needs odd n >= 5, got {n}")
    half = (n - 1) // 2

    def rep(x):
        return (x - 1) % (n - 1) + 1

    cycles, perms = [], []
    for l in range(1, half + 1):
        seq = [0, rep(l)]
        for t in range(1, half + 1):
            seq.append(rep(l + t))
            if len(seq) < n:
                seq.append(rep(l - t))
        seq = seq[:n]
        cycles.append(tuple(seq))
        p = [0] * n
        for k in range(n):
            p[seq[k]] = seq[(k + 1) % n]
        perms.append(tuple(p))
    return WaleckiDecomposition(tuple(cycles), tuple(perms))


def cycle_notation(p) -> str:
    """Cycle string such as ``(0 1 2 4 3)``, starting each cycle at its least element."""
    seen, parts = set(), []
    for s in range(len(p)):
        if s in seen:
            continue
        cyc = [s]
        seen.add(s)
        x = p[s]
        while x != s:
            cyc.append(x)
            seen.add(x)
            x = p[x]
        if len(cyc) > 1:
            parts.append("(" + " ".join(map(str, cyc)) + ")")
    return "".join(parts) or "()"


# -- literals and edge-list files ------------------------------------------

_LIT = re.compile(r"^(kn|wedge|p|q):(\d+)(?:,(\d+))?((?:/-\d+-\d+)*)$")


def parse_graph(text: str) -> Multigraph:
    """``kn:5``, ``wedge:4``, ``p:4,1``, ``q:4,2``, ``kn:5/-0-1``."""
    m = _LIT.match(text.strip())
    if not m:
        raise ParseError(f"cannot parse graph literal {text!r}")
    kind, a, b, dels = m.group(1), int(m.group(2)), m.group(3), m.group(4)
    if kind in ("p", "q") and b is None:
        raise ParseError(f"{kind}: needs two parameters, e.g. {kind}:4,1")
    if kind in ("kn", "wedge") and b is not None:
        raise ParseError(f"{kind}: takes one parameter")
    if kind == "kn":
        g = complete(a)
    elif kind == "wedge":
        g = wedge(a)
    elif kind == "p":
        g = family_p_graph(a, int(b))
    else:
        g = family_q_graph(a, int(b))
    if dels:
        pairs = [tuple(map(int, d.split("-")[1:])) for d in dels.split("/")[1:]]
        g = delete_edges(g, pairs)
    return g


def read_edge_list(text: str) -> Multigraph:
    n, edges = None, []
    for ln, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        try:
            if parts[0] == "g" and len(parts) == 2 and n is None:
                n = int(parts[1])
            elif parts[0] == "e" and len(parts) == 3:
                edges.append((int(parts[1]), int(parts[2])))
            else:
                raise ValueError
        except ValueError:
            raise ParseError(f"line {ln}: unexpected {line!r}") from None
    if n is None:
        raise ParseError("missing 'g <n>' header")
    return Multigraph(n, edges)


def write_edge_list(g: Multigraph) -> str:
    return "".join([f"g {g.n_vertices}\n"] + [f"e {u} {v}\n" for u, v in g.edges])


def load_graph(arg: str) -> Multigraph:
    """Graph literal, or path to an edge-list file."""
    try:
        return parse_graph(arg)
    except ParseError:
        if os.path.exists(arg):
            with open(arg) as fh:
                return read_edge_list(fh.read())
        raise
