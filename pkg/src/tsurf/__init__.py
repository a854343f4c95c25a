"""Translation surfaces, saddle connections and systolic graphs."""

from .errors import (
    BudgetExceeded, InconsistentSurface, InvalidGenus, InvalidParameter, NoConePoints, ParseError,
    RefinementFailure, TriangulationFailure, TsurfError, ValidationFailed,
)
from .geom import DEFAULT_TOL, Polygon, Tolerance, Vec, regular_polygon
from .graph import Multigraph, complete, family_p_graph, family_q_graph, isomorphic, walecki, wedge
from .surface import ConePoint, SideRef, TranslationSurface, validate

__version__ = "0.1.0"
