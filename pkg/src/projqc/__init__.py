"""Exact classical and quantum cohomology of projective bundles over P^n."""

from .bundle import BundleSpec, CohClass, cup, integrate, normal_form_classical
from .errors import HypothesisError, InvariantViolation, SpecMismatch
from .exactpoly import IntPoly, TruncSeries
from .fano import CurveClass, classify_hypotheses
from .gwinv import GwQuery, gw_W, lookup
from .quantum import (QClass, QuantumRelations, q_normal_form, q_product, relations_split,
                      relations_tangent, relations_template_general)

__all__ = [
    "BundleSpec", "CohClass", "CurveClass", "GwQuery", "HypothesisError", "IntPoly",
    "InvariantViolation", "QClass", "QuantumRelations", "SpecMismatch", "TruncSeries",
    "classify_hypotheses", "cup", "gw_W", "integrate", "lookup", "normal_form_classical",
    "q_normal_form", "q_product", "relations_split", "relations_tangent",
    "relations_template_general",
]
