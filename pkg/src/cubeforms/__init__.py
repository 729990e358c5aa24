"""Exterior-calculus verification engine.

Differential forms with smooth coefficient fields, true pullbacks along
smooth cube maps, Gauss-Legendre box integration, integer cube chains, and
residual checks for the Stokes-type identities tying them together.
"""

from .dual import Dual, Scalar, cos, exp, log, sin, sqrt
from .fields import (ScalarField, SmoothMap, compose, eval_field, fd_jacobian,
                     gradient, identity_map, jacobian)
from .exprlang import ParseError, format_expr, parse, parse_ast
from .quadrature import (BoxDomain, CostCapError, QuadRule, face_integral,
                         gl_rule, insert_coord, integrate_box, unit_box)
from .coordform import (CoordNForm, add_forms, bdry_integral,
                        box_stokes_residual, box_stokes_sides,
                        ext_deriv_coord, leibniz_residual, neg_form,
                        precompose, scale_form, signed_coeff, zero_form)
from .alternating import (AltForm, AltFormField, bridge_residual, comp_linear,
                          dd_residual, evaluate_alt, ext_deriv_apply,
                          ext_deriv_field, from_coord_form, increasing_sets,
                          to_coord_form)
from .singular import (SingularCube, face_inclusion, face_matching_residual,
                       integrate_form, pullback_field, pullback_form,
                       pullback_naturality_residual, singular_face,
                       singular_stokes_residual, singular_stokes_sides)
from .indexing import (face_of_face_box, parity_distinct, pred_above,
                       sign_cancel, succ_above)
from .chains import (BoxChain, CubeRegistry, CubeTerm, SingularChain,
                     boundary, boundary_boundary_is_zero, boxes_adjacent,
                     chain_of, double_boundary_integral_zero, face_term,
                     integrate_chain, merge_boxes, shared_face_residual,
                     stokes_chain_residual, term_to_map)
from .classical import (adaptive_simpson, divergence_check, ftc_check,
                        ftc_paths_agree, green_check, ibp_check)

__version__ = "0.1.0"
