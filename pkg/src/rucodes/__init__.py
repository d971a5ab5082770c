"""Constacyclic codes of length p^s over GF(p^m) + u GF(p^m).

Construction of every ideal of R[x]/(x^{p^s} - alpha), closed-form minimum
distances, and brute-force verification of both.
"""

__version__ = "0.1.0"

from .codes import (
    Code,
    CodeSpec,
    code_enumerate,
    code_span,
    dual_bruteforce,
    min_distance_oracle,
    spec_generators,
    spec_validate,
    weight_distribution,
)
from .distance import (
    DistanceCase,
    distance_via_torsion,
    spec_distance_formula,
    torsion_distance_formula,
    torsion_index,
    verify_sweep,
)
from .errors import InternalError, NotInvertibleError, ParameterError, ResourceError, ValidationError
from .field import FieldElement, FieldParams, field_arith, field_inv, field_make, field_pow
from .isometry import IsometryContext, apply_isometry, compute_alpha0, isometry_check, map_code
from .quotient import (
    AdicCoords,
    QuotientParams,
    QuotientPoly,
    adic_collapse,
    adic_expand,
    qp_arith,
    qp_is_unit,
    qp_shift,
    qp_weight,
)
from .ring import RuElement, ru_arith, ru_inv, ru_is_unit
