"""Finitely presented stable quadratic modules."""

from app.sqm.cofiber import Cofiber, SixTerm, cofiber, factor_through_cofiber, six_term
from app.sqm.free import Deg1Expr, F1Element, deg1_normalize, free_boundary, free_bracket, tensor
from app.sqm.generators import GeneratorTable, GenId
from app.sqm.homotopy import SqmHomotopy, extend_homotopy, verify_homotopy, word_letters
from app.sqm.morphism import (
    SqMorphism,
    check_morphism,
    identity_morphism,
    multiplication_morphism,
    random_free_morphism,
    zero_morphism,
)
from app.sqm.picard import PicardArrow, StrictPicardGroupoid, round_trip_check, strict_picard_from_sqm
from app.sqm.presentation import (
    C1Structure,
    SqmPresentation,
    class_in_pi1,
    free_presentation,
    k_invariant,
    pi0,
    pi1,
)

__all__ = [
    "Cofiber",
    "SixTerm",
    "cofiber",
    "factor_through_cofiber",
    "six_term",
    "Deg1Expr",
    "F1Element",
    "deg1_normalize",
    "free_boundary",
    "free_bracket",
    "tensor",
    "GeneratorTable",
    "GenId",
    "SqmHomotopy",
    "extend_homotopy",
    "verify_homotopy",
    "word_letters",
    "SqMorphism",
    "check_morphism",
    "identity_morphism",
    "multiplication_morphism",
    "random_free_morphism",
    "zero_morphism",
    "PicardArrow",
    "StrictPicardGroupoid",
    "round_trip_check",
    "strict_picard_from_sqm",
    "C1Structure",
    "SqmPresentation",
    "class_in_pi1",
    "free_presentation",
    "k_invariant",
    "pi0",
    "pi1",
]
