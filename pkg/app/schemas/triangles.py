"""Schemas for 3-periodic complexes and their determinants."""

from typing import List, Optional

from pydantic import BaseModel, Field


class ComplexData(BaseModel):
    """X -f-> Y -i-> Z -q-> X with entries as ring-element strings."""
    ranks: List[int] = Field(min_length=3, max_length=3)
    f: List[List[str]]
    i: List[List[str]]
    q: List[List[str]]


class Det3Request(BaseModel):
    """Request body for det3 of a complex."""
    ring: str = "dual:F2(t)"
    complex: ComplexData


class Det3Report(BaseModel):
    """det3 of an acyclic complex, its square class and the virtual split."""
    ring: str
    ranks: List[int]
    acyclic: bool
    det: Optional[str] = None
    mod_squares: Optional[str] = None
    distinguished: Optional[bool] = None
    split_verified: Optional[bool] = None
    defect_spot: Optional[int] = None
