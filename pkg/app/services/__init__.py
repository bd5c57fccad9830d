"""Orchestration services shared by the CLI and the HTTP API."""

from app.services.kgroup_service import KGroupService
from app.services.triangulated_service import TriangulatedService
from app.services.verification_service import VerificationService

__all__ = [
    "KGroupService",
    "TriangulatedService",
    "VerificationService",
]
