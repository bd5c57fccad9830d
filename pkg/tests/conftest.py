"""Pytest fixtures for testing."""

import pytest
from fastapi.testclient import TestClient

from app.main import app
from app.models import ftr_model, vect_model
from app.simplicial.builder import build_presentation


@pytest.fixture(scope="function")
def client():
    """Create a test client for the API."""
    with TestClient(app) as test_client:
        yield test_client


@pytest.fixture(scope="session")
def vect_f2_1():
    """Vect(F2) up to dimension 1."""
    return vect_model(2, 1)


@pytest.fixture(scope="session")
def vect_f3_1():
    """Vect(F3) up to dimension 1."""
    return vect_model(3, 1)


@pytest.fixture(scope="session")
def vect_f3_plus(vect_f3_1):
    """Plus presentation of Vect(F3, 1)."""
    return build_presentation(vect_f3_1, "plus")


@pytest.fixture(scope="session")
def ftr_f2_1():
    """Distinguished triangles over F2[eps] of rank at most 1."""
    return ftr_model("F2", 1, "d")


@pytest.fixture
def det3_payload():
    """R -eps-> R -eps-> R -t eps-> R over F2(t)[eps]."""
    return {
        "ring": "dual:F2(t)",
        "complex": {
            "ranks": [1, 1, 1],
            "f": [["eps"]],
            "i": [["eps"]],
            "q": [["(t)eps"]],
        },
    }
