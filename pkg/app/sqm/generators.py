"""Interned generator symbols of a presentation."""

from dataclasses import dataclass
from typing import Dict, Hashable, List, Optional

from app.exceptions import UnknownCell

OBJECT = "object"
WEAK_EQUIVALENCE = "weak-equivalence"
TWO_SIMPLEX = "two-simplex"
NAMED = "named"


@dataclass(frozen=True)
class GenId:
    """A generator: its index within its grade, the grade and a provenance tag."""

    index: int
    grade: int
    tag: str = NAMED
    label: str = ""


class GeneratorTable:
    """Interning table: equal keys give the same GenId; indices count per grade."""

    def __init__(self):
        self._by_key: Dict[Hashable, GenId] = {}
        self._lists: Dict[int, List[GenId]] = {0: [], 1: []}
        self._keys: Dict[int, List[Hashable]] = {0: [], 1: []}

    def intern(self, key: Hashable, grade: int, tag: str = NAMED, label: Optional[str] = None) -> GenId:
        found = self._by_key.get(key)
        if found is not None:
            if found.grade != grade:
                raise ValueError(f"{key!r} already interned in grade {found.grade}")
            return found
        gid = GenId(len(self._lists[grade]), grade, tag, label if label is not None else str(key))
        self._by_key[key] = gid
        self._lists[grade].append(gid)
        self._keys[grade].append(key)
        return gid

    def lookup(self, key: Hashable) -> GenId:
        found = self._by_key.get(key)
        if found is None:
            raise UnknownCell(f"{key!r} is not a generator", witness=key)
        return found

    def get(self, key: Hashable) -> Optional[GenId]:
        return self._by_key.get(key)

    def __contains__(self, key: Hashable) -> bool:
        return key in self._by_key

    def generators(self, grade: int) -> List[GenId]:
        return list(self._lists[grade])

    def keys(self, grade: int) -> List[Hashable]:
        return list(self._keys[grade])

    def count(self, grade: int) -> int:
        return len(self._lists[grade])

    def labels(self, grade: int) -> List[str]:
        return [g.label for g in self._lists[grade]]
