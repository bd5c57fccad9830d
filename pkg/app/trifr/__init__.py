"""Triangles of free k[eps]-modules: determinants, octahedra and the contraction of the distinguished model."""

from app.trifr.complexes import (
    Periodic3Complex,
    VirtualSplit,
    det3,
    generator_triangle,
    is_acyclic,
    is_distinguished,
    is_virtual,
    p_class,
    require_acyclic,
    rho,
    split_virtual,
    standard_triangle,
    triangle,
)
from app.trifr.octahedra import (
    Octahedron,
    SuspensionWitness,
    cone,
    degeneracy,
    gamma,
    octahedral_completion,
    octahedron_det_holds,
    suspension_witness,
    translation,
)

__all__ = [
    "Periodic3Complex",
    "VirtualSplit",
    "det3",
    "generator_triangle",
    "is_acyclic",
    "is_distinguished",
    "is_virtual",
    "p_class",
    "require_acyclic",
    "rho",
    "split_virtual",
    "standard_triangle",
    "triangle",
    "Octahedron",
    "SuspensionWitness",
    "cone",
    "degeneracy",
    "gamma",
    "octahedral_completion",
    "octahedron_det_holds",
    "suspension_witness",
    "translation",
]
