"""Service for determinants of 3-periodic complexes over dual numbers."""

import logging
from typing import List, Optional, Tuple

from app.exceptions import SqmkError, UnsupportedField
from app.rings.fields import DualNumbers, Ring, ring_from_descriptor
from app.rings.matrix import Mat
from app.schemas.reports import CheckReport
from app.schemas.triangles import Det3Report, Det3Request
from app.trifr.checks import jordan_split
from app.trifr.complexes import (
    Periodic3Complex,
    acyclicity_defect,
    det3,
    is_distinguished,
    p_class,
    split_virtual,
)

logger = logging.getLogger(__name__)


def _dual_numbers(descriptor: str) -> DualNumbers:
    R = ring_from_descriptor(descriptor)
    if not isinstance(R, DualNumbers):
        raise UnsupportedField(f"{descriptor} is not a ring of dual numbers; use dual:<field>")
    return R


class TriangulatedService:
    """Service class for triangle determinant operations."""

    def parse_complex(self, request: Det3Request) -> Tuple[Optional[Periodic3Complex], Optional[str]]:
        """Read the complex of a request over its ring."""
        try:
            R = _dual_numbers(request.ring)
            return Periodic3Complex.from_json(R, request.complex.model_dump()), None
        except (SqmkError, ValueError, KeyError, IndexError) as exc:
            return None, f"bad complex: {exc}"

    def det3(self, request: Det3Request) -> Tuple[Optional[Det3Report], Optional[str]]:
        """det3 and its class mod squares, or the first spot where the complex is not exact."""
        T, error = self.parse_complex(request)
        if error:
            return None, error

        report = Det3Report(ring=request.ring, ranks=list(T.ranks), acyclic=False)
        spot = acyclicity_defect(T)
        if spot is not None:
            logger.info(f"complex over {request.ring} is not exact at X_{spot}")
            report.defect_spot = spot
            return report, None

        k: Ring = T.ring.base
        try:
            report.det = k.format(det3(T))
            report.mod_squares = k.format(p_class(T))
            report.distinguished = is_distinguished(T)
            report.split_verified = split_virtual(T).verify()
        except SqmkError as exc:
            return None, str(exc)
        report.acyclic = True
        return report, None

    def jordan(self, ring: str, rows: List[List[str]]) -> Tuple[Optional[CheckReport], Optional[str]]:
        """Peel an upper-triangular invertible matrix into rank-1 standard triangles."""
        try:
            R = _dual_numbers(ring)
            A = Mat.from_json(R, rows)
            return jordan_split(A).report(), None
        except (SqmkError, ValueError) as exc:
            return None, str(exc)
