"""Evidence-dependent sensitivity bounds for screening Bayesian network parameters."""
from .bounds import (DerivBounds, TBounds, Thresholds, ThroughPoint, bound_surface_grid,
                     bounding_curves, deriv_bounds, general_sv_bound, in_subspace,
                     intersection_lines, r_range, simple_sign_rules, surface_r, t_range,
                     thresholds)
from .inference import (LinCoeffs, SensConstants, ZeroEvidenceError, joint_prob, linear_coeffs,
                        marginal_prob, posterior, s_for_all_parameters, sensitivity_constants)
from .model import (NetworkDef, NetworkError, ParameterRef, Query, Variable, covary,
                    enumerate_parameters, load_network, make_query, parse_parameter)
from .screen import ScreenOptions, ScreenRow, emit, emit_verify, filter_rank, screen, verify
from .sensfun import (Constant, HyperbolaForm, Hyperbolic, Linear, Quadrant, classify,
                      derivative, evaluate, sensitivity_value, vertex)
from .vertexloc import (VertexWindow, t_intervals_for_vertex, vertex_possible, vertex_regions,
                        vertex_t_set)

__version__ = "0.1.0"

__all__ = [
    "bound_surface_grid",
    "bounding_curves",
    "classify",
    "Constant",
    "covary",
    "deriv_bounds",
    "derivative",
    "DerivBounds",
    "emit",
    "emit_verify",
    "enumerate_parameters",
    "evaluate",
    "filter_rank",
    "general_sv_bound",
    "HyperbolaForm",
    "Hyperbolic",
    "in_subspace",
    "intersection_lines",
    "joint_prob",
    "LinCoeffs",
    "Linear",
    "linear_coeffs",
    "load_network",
    "make_query",
    "marginal_prob",
    "NetworkDef",
    "NetworkError",
    "ParameterRef",
    "parse_parameter",
    "posterior",
    "Quadrant",
    "Query",
    "r_range",
    "s_for_all_parameters",
    "screen",
    "ScreenOptions",
    "ScreenRow",
    "SensConstants",
    "sensitivity_constants",
    "sensitivity_value",
    "simple_sign_rules",
    "surface_r",
    "t_intervals_for_vertex",
    "t_range",
    "TBounds",
    "Thresholds",
    "thresholds",
    "ThroughPoint",
    "Variable",
    "verify",
    "vertex",
    "vertex_possible",
    "vertex_regions",
    "vertex_t_set",
    "VertexWindow",
    "ZeroEvidenceError",
]
