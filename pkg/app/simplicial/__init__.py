"""Simplicial categories with weak equivalences and their universal determinant functor."""

from app.simplicial.builder import (
    build_presentation,
    inclusion_by_keys,
    morphism_by_cells,
    ob_key,
    simplex_key,
    stabilization_map,
    we_key,
)
from app.simplicial.det import (
    DetFunctorData,
    det_morphism,
    factor_det_functor,
    universal_det_data,
    verify_det_functor,
    zero_det_data,
)
from app.simplicial.interface import (
    Equivalence2,
    PresentationMode,
    RelationPolicy,
    SimpCatData,
    check_simplicial_identities,
)

__all__ = [
    "build_presentation",
    "inclusion_by_keys",
    "morphism_by_cells",
    "ob_key",
    "simplex_key",
    "stabilization_map",
    "we_key",
    "DetFunctorData",
    "det_morphism",
    "factor_det_functor",
    "universal_det_data",
    "verify_det_functor",
    "zero_det_data",
    "Equivalence2",
    "PresentationMode",
    "RelationPolicy",
    "SimpCatData",
    "check_simplicial_identities",
]
