"""
sqmk - stable quadratic modules and low-dimensional K-theory

Main FastAPI application entry point.
"""

import logging
from contextlib import asynccontextmanager

from fastapi import FastAPI
from fastapi.middleware.cors import CORSMiddleware

from app import __version__
from app.api import api_router
from app.config import settings

# Configure logging
logging.basicConfig(
    level=logging.DEBUG if settings.debug else settings.log_level.upper(),
    format="%(asctime)s - %(name)s - %(levelname)s - %(message)s"
)
logger = logging.getLogger(__name__)


@asynccontextmanager
async def lifespan(app: FastAPI):
    """Application lifespan manager."""
    logger.info(f"Starting {settings.app_name}...")
    logger.info(
        f"seed={settings.seed} threads={settings.threads} max_cells={settings.max_cells} "
        f"search_budget={settings.search_budget}"
    )

    yield

    logger.info("Shutting down...")


# Create FastAPI application
app = FastAPI(
    title=settings.app_name,
    description="""
    Exact computations with presented stable quadratic modules.

    ## Features
    - pi0, pi1 and the k-invariant of D*(C) for finite exact and triangulated models
    - Determinants of 3-periodic complexes over dual numbers
    - Relation suites for pairs of weak triangles
    """,
    version=__version__,
    lifespan=lifespan
)

# CORS middleware
app.add_middleware(
    CORSMiddleware,
    allow_origins=["*"],
    allow_credentials=True,
    allow_methods=["*"],
    allow_headers=["*"],
)

# Include routers
app.include_router(api_router, prefix="/api", tags=["API"])


@app.get("/")
async def root():
    """Root endpoint with service information."""
    return {
        "service": settings.app_name,
        "version": __version__,
        "status": "operational",
        "endpoints": {
            "health": "/api/health",
            "docs": "/docs",
            "kgroups": "/api/kgroups",
            "det3": "/api/det3",
            "abelian": "/api/abelian",
            "verify": "/api/verify",
        }
    }


if __name__ == "__main__":
    import uvicorn
    uvicorn.run(
        "app.main:app",
        host=settings.host,
        port=settings.port,
        reload=settings.debug
    )
