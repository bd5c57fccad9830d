"""Pydantic schemas for reports, API request/response validation and CLI output."""

from app.schemas.kgroups import (
    AbelianRequest,
    AbGroupSchema,
    KGroupsReport,
    KGroupsRequest,
    ModelSpec,
    RealizeReport,
    SixTermReport,
)
from app.schemas.reports import CheckFailure, CheckReport
from app.schemas.run import RunConfig
from app.schemas.triangles import ComplexData, Det3Report, Det3Request

__all__ = [
    "AbelianRequest",
    "AbGroupSchema",
    "KGroupsReport",
    "KGroupsRequest",
    "ModelSpec",
    "RealizeReport",
    "SixTermReport",
    "CheckFailure",
    "CheckReport",
    "RunConfig",
    "ComplexData",
    "Det3Report",
    "Det3Request",
]
