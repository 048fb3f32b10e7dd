"""Analysis of p-divisible (multi)sets in the affine space F_p^3."""

__version__ = "0.1.0"

from .decompose import (
    FpCombination, NotInSpan, SpanFamily, cylinder_type_to_diffs, decompose_p_divisible,
    solve_in_span, span_dimension, span_family,
)
from .geometry import (
    Direction, Line, Plane, Point, are_parallel, canonical_direction, enumerate_directions,
    enumerate_lines, enumerate_planes, line_through, lines_with_direction,
)
from .lift import (
    PointDiffGadget, ZCertificate, lift_multiset, lift_set, p_zero_sum_certificate,
    point_difference_certificate, verify_certificate,
)
from .poly import (
    PlaneCombination, ReducedPoly, in_S1, in_S1_perp, in_S2, monomial_via_planes,
    poly_from_weight, total_degree, weight_from_poly,
)
from .weights import (
    CylinderSpec, DivisibilityReport, WeightFp, WeightZ, bilinear, indicator, is_p_divisible,
    plane_sum,
)

__all__ = [
    "CylinderSpec", "Direction", "DivisibilityReport", "FpCombination", "Line", "NotInSpan",
    "Plane", "PlaneCombination", "Point", "PointDiffGadget", "ReducedPoly", "SpanFamily",
    "WeightFp", "WeightZ", "ZCertificate", "are_parallel", "bilinear", "canonical_direction",
    "cylinder_type_to_diffs", "decompose_p_divisible", "enumerate_directions",
    "enumerate_lines", "enumerate_planes", "in_S1", "in_S1_perp", "in_S2", "indicator",
    "is_p_divisible", "lift_multiset", "lift_set", "line_through", "lines_with_direction",
    "monomial_via_planes", "p_zero_sum_certificate", "plane_sum",
    "point_difference_certificate", "poly_from_weight", "solve_in_span", "span_dimension",
    "span_family", "total_degree", "verify_certificate", "weight_from_poly",
]
