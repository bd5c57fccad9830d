"""Validated configuration of one CLI run."""

from typing import List, Literal, Optional

from pydantic import BaseModel, Field, model_validator

from app.schemas.kgroups import ModeName, ModelSpec, RelationsName

Command = Literal["kgroups", "present", "verify", "det3", "realize", "cofiber"]
Family = Literal[
    "3x3", "weak3x3", "perm", "sum", "pairs", "susp",
    "det", "det3", "octahedra", "contraction", "sixterm", "modes",
]
MorphismKind = Literal["toy", "scalar", "stabilization", "random"]

# families that need the plus presentation
PLUS_FAMILIES = ("perm", "sum", "pairs")


class RunConfig(BaseModel):
    """One subcommand with its model, mode, seed and output settings."""
    command: Command
    spec: ModelSpec = Field(default_factory=lambda: ModelSpec(model="vect", q=2))
    mode: Optional[ModeName] = None
    relations: RelationsName = "generators"
    seed: int
    budget: Optional[int] = Field(default=None, ge=1)
    count: int = Field(default=20, ge=0)
    family: Optional[Family] = None
    target_class: Optional[List[int]] = None
    morphism: MorphismKind = "toy"
    input: Optional[str] = None
    output: Optional[str] = None
    format: Literal["json", "text"] = "json"
    stable: bool = False

    @model_validator(mode="after")
    def _command_arguments(self) -> "RunConfig":
        if self.command == "verify" and self.family is None:
            raise ValueError("verify needs --family")
        if self.command == "det3" and self.input is None:
            raise ValueError("det3 needs a complex file")
        if self.command == "realize" and not self.spec.leveled:
            raise ValueError(f"{self.command} needs a simplicial model, not the field model")
        return self

    @property
    def effective_mode(self) -> str:
        """The requested mode, or plus for the families that need it and full otherwise."""
        if self.mode is not None:
            return self.mode
        return "plus" if self.family in PLUS_FAMILIES else "full"
