"""HTTP routes for homotopy groups, determinants and verification suites."""

from typing import Any, Dict, Optional

from fastapi import APIRouter, HTTPException
from pydantic import BaseModel, Field

from app.config import settings
from app.schemas import (
    AbelianRequest,
    AbGroupSchema,
    Det3Report,
    Det3Request,
    KGroupsReport,
    KGroupsRequest,
    ModelSpec,
)
from app.schemas.run import PLUS_FAMILIES, Family, ModeName
from app.services import KGroupService, TriangulatedService, VerificationService

router = APIRouter()


class VerifyRequest(BaseModel):
    """Request body for a verification suite."""
    family: Family
    spec: ModelSpec
    mode: Optional[ModeName] = None
    count: int = Field(default=20, ge=0, le=500)
    seed: Optional[int] = None


# ============== Health Check ==============

@router.get("/health")
async def health_check():
    """Health check endpoint."""
    return {"status": "healthy", "service": settings.app_name}


# ============== Homotopy Groups ==============

@router.post("/kgroups", response_model=KGroupsReport)
def kgroups(request: KGroupsRequest):
    """pi0, pi1 and the k-invariant of a model presentation."""
    report, error = KGroupService().kgroups(request)
    if error:
        raise HTTPException(status_code=400, detail=error)
    return report


@router.post("/abelian", response_model=AbGroupSchema)
def abelian(request: AbelianRequest):
    """Invariant factors of a finitely presented abelian group."""
    group, error = KGroupService().abelian(request)
    if error:
        raise HTTPException(status_code=400, detail=error)
    return group


# ============== Triangles ==============

@router.post("/det3", response_model=Det3Report)
def det3(request: Det3Request):
    """det3 of a 3-periodic complex and its class mod squares."""
    report, error = TriangulatedService().det3(request)
    if error:
        raise HTTPException(status_code=422, detail=error)
    return report


# ============== Verification ==============

@router.post("/verify")
def verify(request: VerifyRequest) -> Dict[str, Any]:
    """Run one relation or identity suite; failures are itemized in the response."""
    mode = request.mode or ("plus" if request.family in PLUS_FAMILIES else "full")
    report, error = VerificationService().run(request.family, request.spec, mode, request.count, request.seed)
    if error:
        raise HTTPException(status_code=400, detail=error)
    return report.summary()
