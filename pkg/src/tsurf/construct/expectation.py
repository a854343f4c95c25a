from __future__ import annotations

import json
from dataclasses import dataclass, field

from ..errors import InvalidParameter
from ..graph import Multigraph, read_edge_list, write_edge_list


@dataclass(frozen=True)
class Expectation:
    """What a construction promises; checked against the surface by ``verify``."""

    genus: int
    cone_spectrum: dict  # angle multiple k -> number of points with angle 2*pi*k
    systole: float
    systolic_count: int
    target: Multigraph
    kind: str  # "cellular" or "essential"
    notes: tuple = field(default=(), compare=False)

    def __post_init__(self):
        if self.kind not in ("cellular", "essential"):
            raise InvalidParameter(f"kind must be cellular or essential, got {self.kind!r}")
        object.__setattr__(self, "cone_spectrum", {int(k): int(v) for k, v in sorted(self.cone_spectrum.items())})
        excess = sum(c * (k - 1) for k, c in self.cone_spectrum.items())
        if excess != 2 * self.genus - 2:
            raise InvalidParameter(
                f"cone spectrum {self.cone_spectrum} gives angle excess {excess}, genus {self.genus} needs {2 * self.genus - 2}"
            )

    def to_dict(self) -> dict:
        return {
            "genus": self.genus,
            "cone_spectrum": {str(k): v for k, v in self.cone_spectrum.items()},
            "systole": self.systole,
            "systolic_count": self.systolic_count,
            "target": write_edge_list(self.target),
            "kind": self.kind,
            "notes": list(self.notes),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "Expectation":
        return cls(
            genus=int(d["genus"]),
            cone_spectrum={int(k): int(v) for k, v in d["cone_spectrum"].items()},
            systole=float(d["systole"]),
            systolic_count=int(d["systolic_count"]),
            target=read_edge_list(d["target"]),
            kind=d["kind"],
            notes=tuple(d.get("notes", ())),
        )

    def dumps(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"

    @classmethod
    def loads(cls, text: str) -> "Expectation":
        return cls.from_dict(json.loads(text))
