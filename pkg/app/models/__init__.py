"""Concrete simplicial categories with weak equivalences and the field model."""

from app.models.free_modules import (
    FreeModuleModel,
    S3Cell,
    SesCell,
    dualnum_model,
    extension_of_scalars,
    vect_model,
)
from app.models.triangulated import TriangulatedModel, ftr_model
from app.models.units import (
    FieldUnitsOracle,
    deligne_det_data,
    determinant_data,
    field_model_sqm,
    units_model_sqm,
)

__all__ = [
    "FreeModuleModel",
    "S3Cell",
    "SesCell",
    "dualnum_model",
    "extension_of_scalars",
    "vect_model",
    "TriangulatedModel",
    "ftr_model",
    "FieldUnitsOracle",
    "deligne_det_data",
    "determinant_data",
    "field_model_sqm",
    "units_model_sqm",
]
