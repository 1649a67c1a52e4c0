"""Predictor standardization: binary inputs centred, others to mean 0 and sd 0.5."""

import logging
from collections.abc import Iterable

import numpy as np

from sepbayes.errors import DatasetError
from .frame import ColumnTransform, Dataset, StandardizationRecord

logger = logging.getLogger(__name__)

TARGET_SD = 0.5
_CENTRED_TOL = 1e-12


def is_binary(values: np.ndarray) -> bool:
    """True when the distinct raw values are exactly {0, 1}."""
    levels = np.unique(values)
    return levels.size == 2 and levels[0] == 0.0 and levels[1] == 1.0


def is_centred_binary(values: np.ndarray) -> bool:
    """True for a two-level column with unit gap and zero mean (a centred 0/1 column)."""
    levels = np.unique(values)
    if levels.size != 2:
        return False
    return abs(levels[1] - levels[0] - 1.0) <= _CENTRED_TOL and abs(values.mean()) <= _CENTRED_TOL


def _plan_column(name: str, values: np.ndarray) -> ColumnTransform:
    if is_binary(values) or is_centred_binary(values):
        return ColumnTransform(name=name, action="center", shift=float(values.mean()))

    sd = float(np.std(values, ddof=1)) if values.size > 1 else 0.0
    if not sd > 0.0:
        raise DatasetError(f"Column '{name}' has zero variance and cannot be scaled")
    return ColumnTransform(
        name=name,
        action="center-and-scale",
        shift=float(values.mean()),
        scale=sd / TARGET_SD,
    )


def standardize(d: Dataset, keep: Iterable[str] = ()) -> tuple[Dataset, StandardizationRecord]:
    """Standardize every non-intercept column.

    Binary 0/1 columns are centred only; other columns are centred and scaled
    to sample standard deviation 0.5 (n - 1 denominator). Columns named in
    `keep` (interaction predictors, for example) are left untouched.

    Returns:
        The standardized Dataset (with the record attached) and the record

    Raises:
        DatasetError: Constant non-intercept column, or unknown name in `keep`
    """
    keep = set(keep)
    unknown = keep.difference(d.names)
    if unknown:
        raise DatasetError(f"Unknown columns in keep list: {', '.join(sorted(unknown))}")

    transforms = []
    for j, name in enumerate(d.names):
        if j == d.intercept_index or name in keep:
            transforms.append(ColumnTransform(name=name))
        else:
            transforms.append(_plan_column(name, d.X[:, j]))

    record = StandardizationRecord(columns=tuple(transforms))
    X = record.apply(d.X)
    if d.intercept_index is not None:
        X[:, d.intercept_index] = 1.0

    actions = {}
    for t in transforms:
        actions[t.action] = actions.get(t.action, 0) + 1
    logger.info(f"Standardized {d.p} columns: {actions}")

    return d.replace(X=X, standardization=record), record


def apply_standardization(d: Dataset, record: StandardizationRecord) -> Dataset:
    """Replay a training record on new (raw) data with the same columns.

    Raises:
        DatasetError: If the column names differ from the record
    """
    if d.names != record.names:
        raise DatasetError(
            f"Standardization record columns {list(record.names)} do not match data columns "
            f"{list(d.names)}"
        )
    X = record.apply(d.X)
    if d.intercept_index is not None:
        X[:, d.intercept_index] = 1.0
    return d.replace(X=X, standardization=record)
