"""Coefficient rings and exact matrix algebra."""

from app.rings.fields import (
    BINARY_MODULI,
    BinaryField,
    DualNumbers,
    F2RationalFunctions,
    Integers,
    PrimeField,
    Ring,
    field_of_order,
    ring_from_descriptor,
)
from app.rings.linalg import (
    det,
    field_linalg,
    general_linear,
    gl_generators,
    image,
    inverse,
    is_square,
    kernel,
    left_inverse,
    local_normal_form,
    rank,
    right_inverse,
    rref,
    solve,
    split_injections,
    square_class,
)
from app.rings.matrix import Mat, block_sum

__all__ = [
    "BINARY_MODULI",
    "BinaryField",
    "DualNumbers",
    "F2RationalFunctions",
    "Integers",
    "PrimeField",
    "Ring",
    "field_of_order",
    "ring_from_descriptor",
    "det",
    "field_linalg",
    "general_linear",
    "gl_generators",
    "image",
    "inverse",
    "is_square",
    "kernel",
    "left_inverse",
    "local_normal_form",
    "rank",
    "right_inverse",
    "rref",
    "solve",
    "split_injections",
    "square_class",
    "Mat",
    "block_sum",
]
