"""Schemas for model selection, homotopy-group reports and realization results."""

from typing import Any, Dict, List, Literal, Optional

from pydantic import BaseModel, Field, model_validator

from app.algebra.abelian import AbGroup

ModelName = Literal["vect", "dualnum", "ftr", "field"]
ModeName = Literal["full", "reduced", "plus"]
RelationsName = Literal["generators", "exhaustive"]


class ModelSpec(BaseModel):
    """Which simplicial category to present, and at which truncation level."""
    model: ModelName = "vect"
    q: Optional[int] = Field(default=None, description="field order for vect")
    base: str = Field(default="F2", description="base field descriptor for dualnum, ftr and field")
    maxdim: int = Field(default=1, ge=0, le=6)
    flavor: Literal["d", "v"] = "d"

    @model_validator(mode="after")
    def _needs_order(self) -> "ModelSpec":
        if self.model == "vect" and self.q is None:
            raise ValueError("the vect model needs a field order q")
        return self

    @property
    def leveled(self) -> bool:
        return self.model != "field"


class AbGroupSchema(BaseModel):
    """A finitely generated abelian group by invariant factors, 0 standing for Z."""
    invariant_factors: List[int]
    text: str
    order: Optional[int] = None

    @classmethod
    def from_group(cls, group: AbGroup) -> "AbGroupSchema":
        return cls(invariant_factors=list(group.invariant_factors), text=str(group), order=group.order())


class AbelianRequest(BaseModel):
    """Generators and relator rows of an abelian group."""
    ngens: int = Field(ge=0)
    relators: List[List[int]] = Field(default_factory=list)

    @model_validator(mode="after")
    def _row_lengths(self) -> "AbelianRequest":
        for row in self.relators:
            if len(row) != self.ngens:
                raise ValueError(f"relator {row} has {len(row)} entries, expected {self.ngens}")
        return self


class KGroupsRequest(ModelSpec):
    """Request body for a homotopy-group computation."""
    mode: ModeName = "full"
    relations: RelationsName = "generators"
    stable: bool = False


class KGroupsReport(BaseModel):
    """pi0, pi1 and the k-invariant of a presented model."""
    model: str
    mode: str
    pi0: List[int]
    pi1: List[int]
    pi0_text: str
    pi1_text: str
    eta: List[List[int]]
    generator_counts: Dict[str, Any]
    relator_counts: Dict[str, int] = Field(default_factory=dict)
    truncated: bool
    stable: Optional[bool] = None


class RealizeReport(BaseModel):
    """pi1 elements with the pair of weak triangles found for each."""
    model: str
    pi1: List[int]
    found: Dict[str, str]
    missing: List[List[int]] = Field(default_factory=list)
    searched: int
    complete: bool


class SixTermReport(BaseModel):
    """Groups and exactness of the six-term sequence of a morphism."""
    morphism: str
    groups: Dict[str, List[int]]
    exactness: Dict[str, bool]
    exact: bool
