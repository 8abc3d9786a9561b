"""Symplectic graphs Sp(2nu, q) over small finite fields.

Construction, strong-regularity and spectrum certificates, spread colourings,
and the automorphism group Aut(Sp(2nu, q)) = PSp . E with an independent
individualization-refinement search as a cross-check.
"""
from .gf import FieldCtx, TowerCtx, field_build, get_field, tower_build, rel_trace, field_aut_group
from .symplectic import FormCtx, form, perp, gsp_class, complete_hyperbolic, is_totally_isotropic
from .graph import SympGraph, build_graph, symplectic_graph, certify_srg, enumerate_vertices, export
from .spread import build_spread, coloring_from_spread, cross_class_degree, chromatic_certificate
from .aut import (AutElement, EElement, PiFamily, sigma_from_matrix, kernel_check,
                  transitivity_witness, edge_transitivity_witness, e_element_apply,
                  e_group_mul, decompose, recompose, pi_family_check, q2_matrix_recover,
                  aut_search, aut_order_formula)
from .kernels import BACKEND

__version__ = "0.1.0"
