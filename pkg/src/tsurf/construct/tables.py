"""Hand-transcribed gluing tables (``data/*.gt``).

Each polygon line lists headings in degrees with a side label; a label used
twice glues those two sides. Sides are unit length unless written
``deg/label*len``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from importlib import resources

from ..errors import ParseError
from ..geom import Vec, polygon_from_turns
from ..surface import SideRef, TranslationSurface


@dataclass(frozen=True)
class PolygonSpec:
    name: str
    start: tuple
    headings: tuple
    labels: tuple
    lengths: tuple


@dataclass(frozen=True)
class GluingTable:
    name: str
    figure: str
    polygons: tuple
    genus: int = None
    target: str = None
    kind: str = None
    port: str = None
    meta: dict = field(default_factory=dict, compare=False)

    def sides_by_label(self) -> dict:
        out = {}
        for p, spec in enumerate(self.polygons):
            for i, lab in enumerate(spec.labels):
                out.setdefault(lab, []).append(SideRef(p, i))
        return out

    def build(self, unglue=()) -> tuple:
        """``(polygons, pairs)``; labels in ``unglue`` are left open."""
        polys = [
            polygon_from_turns(spec.headings, spec.lengths, Vec(*spec.start)) for spec in self.polygons
        ]
        pairs = []
        for lab, refs in sorted(self.sides_by_label().items()):
            if lab in unglue:
                continue
            if len(refs) != 2:
                raise ParseError(f"table {self.name}: label {lab!r} used {len(refs)} times")
            pairs.append(tuple(refs))
        return polys, pairs

    def surface(self) -> TranslationSurface:
        polys, pairs = self.build()
        return TranslationSurface.from_pairs(polys, pairs)


def parse_table(text: str) -> GluingTable:
    meta = {}
    polys = []
    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines or lines[0] != "gluing-table 1":
        raise ParseError("missing 'gluing-table 1' header")
    for line in lines[1:]:
        key, _, rest = line.partition(" ")
        if key == "polygon":
            head, sep, body = rest.partition(":")
            hp = head.split()
            if not sep or len(hp) != 3:
                raise ParseError(f"bad polygon line {line!r}")
            hs, labs, lens = [], [], []
            for tok in body.split():
                deg, slash, lab = tok.partition("/")
                if not slash:
                    raise ParseError(f"bad side token {tok!r}")
                lab, star, ln = lab.partition("*")
                hs.append(float(deg))
                labs.append(lab)
                lens.append(float(ln) if star else 1.0)
            polys.append(PolygonSpec(hp[0], (float(hp[1]), float(hp[2])), tuple(hs), tuple(labs), tuple(lens)))
        else:
            meta[key] = rest.strip()
    if "name" not in meta:
        raise ParseError("table has no name")
    return GluingTable(
        name=meta["name"],
        figure=meta.get("figure", ""),
        polygons=tuple(polys),
        genus=int(meta["genus"]) if "genus" in meta else None,
        target=meta.get("target"),
        kind=meta.get("kind"),
        port=meta.get("port"),
        meta=meta,
    )


def available() -> list:
    root = resources.files(__package__) / "data"
    return sorted(p.name[:-3] for p in root.iterdir() if p.name.endswith(".gt"))


def load_table(name: str) -> GluingTable:
    ref = resources.files(__package__) / "data" / f"{name}.gt"
    if not ref.is_file():
        raise ParseError(f"no gluing table named {name!r}; have {', '.join(available())}")
    return parse_table(ref.read_text())
