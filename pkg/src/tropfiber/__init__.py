"""Computational tropical geometry over generalized power series fields k((t^Q)).

Exact series arithmetic, initial forms and tropical membership, Newton
polygons, Newton-style root lifting with prescribed valuation and residue,
hypersurface fiber sampling, and (exploded) tropicalization of points.
"""

from .errors import (
    DegenerateSpecialization,
    InvalidResidue,
    InvariantViolation,
    ParseError,
    PrecisionError,
    ResidueNotInField,
    TropFiberError,
    UnsupportedError,
    ZeroPolyError,
    ZeroSeriesError,
)
from .fields import QQ, FiniteField, RationalField, make_field
from .laurent import LaurentPoly
from .lifting import (
    FiberPoint,
    LiftBudget,
    LiftedRoot,
    LiftStatus,
    enumerate_roots,
    hasse_delta,
    lift_hypersurface_point,
    lift_root,
    newton_step,
    sample_fiber,
    translation_periods,
)
from .maps import (
    MonomialMap,
    TorusPoint,
    apply_map,
    check_exploded_functoriality,
    check_functoriality,
    exploded_point,
    trop_point,
)
from .parsing import parse_poly, parse_series
from .series import EXACT, Series
from .tropical import (
    InitialForm,
    NewtonSegment,
    TropCurve,
    init_form,
    newton_polygon,
    reduction_form,
    trop_curve,
    trop_member,
    weight,
)

__version__ = "0.1.0"
