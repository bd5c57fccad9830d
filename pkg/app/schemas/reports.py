"""Schemas for verification reports."""

from typing import Any, Dict, List, Optional

from pydantic import BaseModel, Field


class CheckFailure(BaseModel):
    """One failed check with the witness that broke it."""
    check: str
    detail: str
    witness: Optional[Any] = None


class CheckReport(BaseModel):
    """Outcome of a batch of equation checks."""
    name: str
    checked: int = 0
    failures: List[CheckFailure] = Field(default_factory=list)
    notes: Dict[str, Any] = Field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return not self.failures

    def record(self, ok: bool, check: str, detail: str = "", witness: Any = None) -> bool:
        self.checked += 1
        if not ok:
            self.failures.append(CheckFailure(check=check, detail=detail or check, witness=_jsonable(witness)))
        return ok

    def merge(self, other: "CheckReport") -> "CheckReport":
        self.checked += other.checked
        self.failures.extend(other.failures)
        return self

    def summary(self) -> Dict[str, Any]:
        return {
            "name": self.name,
            "passed": self.passed,
            "checked": self.checked,
            "failures": [f.model_dump() for f in self.failures],
            **({"notes": self.notes} if self.notes else {}),
        }


def _jsonable(x: Any) -> Any:
    if x is None or isinstance(x, (bool, int, float, str)):
        return x
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple, set, frozenset)):
        return [_jsonable(v) for v in x]
    return repr(x)
