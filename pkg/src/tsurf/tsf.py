"""Reading and writing the ``.tsf`` surface text format.

::

    tsf 1
    polygon 0
    v 0 0
    v 1 0
    ...
    pair 0:0 0:2
"""

from __future__ import annotations

from .errors import ParseError
from .geom import Polygon, Vec
from .surface import SideRef, TranslationSurface

HEADER = "tsf 1"


def dumps(s: TranslationSurface, comment: str = "") -> str:
    lines = [HEADER]
    for c in comment.splitlines():
        lines.append(f"# {c}")
    for p, poly in enumerate(s.polygons):
        lines.append(f"polygon {p}")
        lines += [f"v {v.x:.17g} {v.y:.17g}" for v in poly.vertices]
    lines += [f"pair {a} {b}" for a, b in s.pairs()]
    return "\n".join(lines) + "\n"


def _ref(tok: str, ln: int) -> SideRef:
    try:
        p, i = tok.split(":")
        return SideRef(int(p), int(i))
    except ValueError:
        raise ParseError(f"line {ln}: bad side reference {tok!r}") from None


def loads(text: str) -> TranslationSurface:
    """Parse ``.tsf`` text. The result is not validated; call ``validate``."""
    polys = {}
    order = []
    pairing = {}
    current = None
    seen_header = False
    for ln, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if not seen_header:
            if parts != ["tsf", "1"]:
                raise ParseError(f"line {ln}: expected header {HEADER!r}, got {line!r}")
            seen_header = True
            continue
        tag = parts[0]
        if tag == "polygon" and len(parts) == 2:
            try:
                pid = int(parts[1])
            except ValueError:
                raise ParseError(f"line {ln}: bad polygon id {parts[1]!r}") from None
            if pid in polys:
                raise ParseError(f"line {ln}: duplicate polygon {pid}")
            polys[pid] = []
            order.append(pid)
            current = pid
        elif tag == "v" and len(parts) == 3:
            if current is None:
                raise ParseError(f"line {ln}: vertex before any polygon")
            try:
                polys[current].append(Vec(float(parts[1]), float(parts[2])))
            except ValueError as exc:
                raise ParseError(f"line {ln}: {exc}") from None
        elif tag == "pair" and len(parts) == 3:
            a, b = _ref(parts[1], ln), _ref(parts[2], ln)
            for x, y in ((a, b), (b, a)):
                if x in pairing and pairing[x] != y:
                    raise ParseError(f"line {ln}: side {x} paired twice")
                pairing[x] = y
        else:
            raise ParseError(f"line {ln}: unexpected {line!r}")
    if not seen_header:
        raise ParseError("empty file")
    if sorted(order) != list(range(len(order))):
        raise ParseError("polygon ids must be 0..n-1")
    try:
        polygons = [Polygon(polys[i]) for i in range(len(order))]
    except ValueError as exc:
        raise ParseError(str(exc)) from None
    return TranslationSurface(polygons, pairing)


def read(path) -> TranslationSurface:
    with open(path) as fh:
        return loads(fh.read())


def write(s: TranslationSurface, path, comment: str = "") -> None:
    with open(path, "w") as fh:
        fh.write(dumps(s, comment))
