"""Exact computer algebra for bicrossproduct, braided and finite Hopf algebras."""

from .scalars import IMAG, ONE, ZERO, ParamSet, Scalar, limit_at, substitute
from .freealg import Element, Presentation, commutator, normal_form, overlap_confluence
from .hopf import HopfSpec, hopf_axioms
from .finhopf import FinHopf, dual_findim, find_isomorphism
from .groups import FinGroup, bicrossproduct, find_factorisations, fourier, matched_pair
from .braided import RMatrix, braided_matrices, braiding_from_rmatrix, frt_bialgebra, ybe_check
from .models import bicso3_model, heisenberg_flow, lookup, model_registry, planck_model, qplane_model
from .dsl import parse, parse_element, print_model
from .suite import run_suite

__version__ = "0.1.0"

__all__ = [
    "IMAG",
    "ONE",
    "ZERO",
    "ParamSet",
    "Scalar",
    "limit_at",
    "substitute",
    "Element",
    "Presentation",
    "commutator",
    "normal_form",
    "overlap_confluence",
    "HopfSpec",
    "hopf_axioms",
    "FinHopf",
    "dual_findim",
    "find_isomorphism",
    "FinGroup",
    "bicrossproduct",
    "find_factorisations",
    "fourier",
    "matched_pair",
    "RMatrix",
    "braided_matrices",
    "braiding_from_rmatrix",
    "frt_bialgebra",
    "ybe_check",
    "bicso3_model",
    "heisenberg_flow",
    "lookup",
    "model_registry",
    "planck_model",
    "qplane_model",
    "parse",
    "parse_element",
    "print_model",
    "run_suite",
]
