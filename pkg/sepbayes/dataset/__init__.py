"""Dataset module.

This module provides:
- Dataset: design matrix, binary response, column metadata
- StandardizationRecord / ColumnTransform: how columns were standardized
- load_csv / write_csv: CSV ingestion and export
- add_intercept: prepend the column of ones
- standardize / apply_standardization: the centring and scaling protocol
"""

from sepbayes.dataset.frame import (
    INTERCEPT_NAME,
    ColumnTransform,
    Dataset,
    StandardizationRecord,
    add_intercept,
)
from sepbayes.dataset.csv_io import load_csv, write_csv
from sepbayes.dataset.standardize import (
    apply_standardization,
    is_binary,
    standardize,
)

__all__ = [
    "INTERCEPT_NAME",
    "ColumnTransform",
    "Dataset",
    "StandardizationRecord",
    "add_intercept",
    "load_csv",
    "write_csv",
    "apply_standardization",
    "is_binary",
    "standardize",
]
