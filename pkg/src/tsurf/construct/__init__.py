"""Generators for the catalogued surfaces, each paired with an :class:`Expectation`."""

from __future__ import annotations

import re

from ..errors import ParseError
from ..graph import parse_graph
from ..graph import wedge as wedge_graph
from .expectation import Expectation
from .families import build_family_p, build_family_q
from .kn import build_kn, build_kn_minus, build_subgraph, kn_genus, lift_order
from .tables import GluingTable, available, load_table, parse_table
from .wedge import attach_strips, build_wedge_intermediate, build_wedge_max, build_wedge_min, min_genus

__all__ = [
    "Expectation", "GluingTable", "attach_strips", "available", "build", "build_family_p", "build_family_q",
    "build_kn", "build_kn_minus", "build_subgraph", "build_wedge_intermediate", "build_wedge_max",
    "build_wedge_min", "kn_genus", "lift_order", "load_table", "min_genus", "parse_table",
]

_FORMS = [
    (re.compile(r"^kn:(\d+)$"), lambda m, kw: build_kn(int(m[1]), **_kn(kw))),
    (re.compile(r"^wedge-max:(\d+)$"), lambda m, kw: build_wedge_max(int(m[1]))),
    (re.compile(r"^wedge-min:(\d+)$"), lambda m, kw: build_wedge_min(int(m[1]))),
    (re.compile(r"^wedge:(\d+)@g=(\d+)$"), lambda m, kw: build_wedge_intermediate(int(m[1]), int(m[2]))),
    (re.compile(r"^p:(\d+),(\d+)$"), lambda m, kw: build_family_p(int(m[1]), int(m[2]))),
    (re.compile(r"^q:(\d+),(\d+)$"), lambda m, kw: build_family_q(int(m[1]), int(m[2]))),
]


def _kn(kw):
    return {k: v for k, v in kw.items() if k in ("s", "h") and v is not None}


def build(literal: str, s=None, h=None, h_plus=None) -> tuple:
    """Construct from a literal such as ``kn:5``, ``kn:5/-0-1``, ``wedge:9@g=3``.

    ``table:<name>`` loads a gluing table directly; its expectation is only
    available when the table declares a wedge target.
    """
    lit = literal.strip()
    kw = {"s": s, "h": h, "h_plus": h_plus}
    if lit.startswith("kn:") and "/" in lit:
        g = parse_graph(lit)
        return build_subgraph(g.n_vertices, g, **{k: v for k, v in kw.items() if v is not None})
    if lit.startswith("table:"):
        t = load_table(lit[6:])
        surf = t.surface()
        exp = None
        if t.target and t.target.startswith("wedge:"):
            n = int(t.target[6:])
            exp = Expectation(t.genus, {2 * t.genus - 1: 1}, 1.0, n, wedge_graph(n), t.kind or "cellular")
        return surf, exp
    for rx, fn in _FORMS:
        m = rx.match(lit)
        if m:
            return fn(m, kw)
    raise ParseError(
        f"cannot parse construction {literal!r}; try kn:5, kn:5/-0-1, wedge-max:7, wedge-min:10, "
        "wedge:9@g=3, p:4,1, q:4,2 or table:<name>"
    )
