"""Binary-response design matrices and their standardization records."""

import logging
from dataclasses import dataclass, field
from typing import Any, Literal

import numpy as np

from sepbayes.errors import DatasetError

logger = logging.getLogger(__name__)

INTERCEPT_NAME = "(Intercept)"

Action = Literal["none", "center", "center-and-scale"]


@dataclass(frozen=True)
class ColumnTransform:
    """How one column was moved to the standardized scale: (x - shift) / scale."""

    name: str
    action: Action = "none"
    shift: float = 0.0
    scale: float = 1.0

    def __post_init__(self):
        if self.action not in ("none", "center", "center-and-scale"):
            raise DatasetError(f"Unknown standardization action '{self.action}' for {self.name}")
        if self.action == "center-and-scale" and not self.scale > 0:
            raise DatasetError(f"Scale divisor must be positive for column {self.name}")

    def apply(self, values: np.ndarray) -> np.ndarray:
        """Transform a raw column."""
        if self.action == "none":
            return np.array(values, dtype=float)
        if self.action == "center":
            return values - self.shift
        return (values - self.shift) / self.scale

    def to_dict(self) -> dict:
        return {"name": self.name, "action": self.action, "shift": self.shift, "scale": self.scale}

    @classmethod
    def from_dict(cls, data: dict) -> "ColumnTransform":
        return cls(
            name=data["name"],
            action=data["action"],
            shift=float(data.get("shift", 0.0)),
            scale=float(data.get("scale", 1.0)),
        )


@dataclass(frozen=True)
class StandardizationRecord:
    """Per-column transforms applied to a training design, in column order."""

    columns: tuple[ColumnTransform, ...]

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(c.name for c in self.columns)

    def apply(self, X: np.ndarray) -> np.ndarray:
        """Apply the record to a raw matrix whose columns follow `names`."""
        X = np.asarray(X, dtype=float)
        if X.ndim != 2 or X.shape[1] != len(self.columns):
            raise DatasetError(
                f"Record covers {len(self.columns)} columns but the matrix has shape {X.shape}"
            )
        out = np.empty_like(X)
        for j, transform in enumerate(self.columns):
            out[:, j] = transform.apply(X[:, j])
        return out

    def to_dict(self) -> dict:
        return {"columns": [c.to_dict() for c in self.columns]}

    @classmethod
    def from_dict(cls, data: dict) -> "StandardizationRecord":
        return cls(columns=tuple(ColumnTransform.from_dict(c) for c in data["columns"]))


@dataclass(frozen=True, eq=False)
class Dataset:
    """A binary-response regression dataset.

    Row i of X is the covariate vector x_i; y holds the 0/1 responses. When
    `intercept_index` is set, that column of X is identically one.
    """

    X: np.ndarray
    y: np.ndarray
    names: tuple[str, ...]
    intercept_index: int | None = None
    standardization: StandardizationRecord | None = field(default=None, repr=False)

    def __post_init__(self):
        X = np.array(self.X, dtype=float)
        y = np.asarray(self.y)
        if X.ndim != 2:
            raise DatasetError(f"X must be a 2-D matrix, got shape {X.shape}")
        if y.ndim != 1 or y.shape[0] != X.shape[0]:
            raise DatasetError(f"y has shape {y.shape} but X has {X.shape[0]} rows")
        if X.shape[0] < 1:
            raise DatasetError("Dataset needs at least one observation")
        if X.shape[1] < 1:
            raise DatasetError("Dataset needs at least one column")
        if not np.all(np.isfinite(X)):
            bad_row, bad_col = np.argwhere(~np.isfinite(X))[0]
            raise DatasetError(f"Non-finite value in row {bad_row}, column {bad_col}")
        if not np.all((y == 0) | (y == 1)):
            bad = int(np.flatnonzero((y != 0) & (y != 1))[0])
            raise DatasetError(f"Response value {y[bad]!r} in row {bad} is not 0 or 1")
        names = tuple(str(n) for n in self.names)
        if len(names) != X.shape[1]:
            raise DatasetError(f"{len(names)} column names for {X.shape[1]} columns")
        if len(set(names)) != len(names):
            raise DatasetError(f"Duplicate column names: {names}")
        if self.intercept_index is not None:
            if not 0 <= self.intercept_index < X.shape[1]:
                raise DatasetError(f"Intercept index {self.intercept_index} out of range")
            if not np.all(X[:, self.intercept_index] == 1.0):
                raise DatasetError(f"Intercept column '{names[self.intercept_index]}' is not all ones")

        X.setflags(write=False)
        y = y.astype(np.int8)
        y.setflags(write=False)
        object.__setattr__(self, "X", X)
        object.__setattr__(self, "y", y)
        object.__setattr__(self, "names", names)

    @property
    def n(self) -> int:
        return self.X.shape[0]

    @property
    def p(self) -> int:
        return self.X.shape[1]

    @property
    def successes(self) -> np.ndarray:
        """Row indices with y = 1."""
        return np.flatnonzero(self.y == 1)

    @property
    def failures(self) -> np.ndarray:
        """Row indices with y = 0."""
        return np.flatnonzero(self.y == 0)

    def column(self, name: str) -> np.ndarray:
        """Get a column by name."""
        try:
            return self.X[:, self.names.index(name)]
        except ValueError:
            raise DatasetError(f"No column named '{name}'") from None

    def replace(self, **changes: Any) -> "Dataset":
        """Return a copy with some fields replaced."""
        fields = {
            "X": self.X,
            "y": self.y,
            "names": self.names,
            "intercept_index": self.intercept_index,
            "standardization": self.standardization,
        }
        fields.update(changes)
        return Dataset(**fields)

    def summary(self) -> dict:
        """Counts suitable for logs and reports."""
        return {
            "n": self.n,
            "p": self.p,
            "successes": int(self.successes.size),
            "failures": int(self.failures.size),
            "intercept": self.names[self.intercept_index] if self.intercept_index is not None else None,
            "standardized": self.standardization is not None,
        }


def add_intercept(d: Dataset, name: str = INTERCEPT_NAME) -> Dataset:
    """Prepend a column of ones and mark it as the intercept.

    Raises:
        DatasetError: If an intercept column is already present
    """
    if d.intercept_index is not None:
        raise DatasetError(f"Dataset already has an intercept column '{d.names[d.intercept_index]}'")
    if name in d.names:
        raise DatasetError(f"Column name '{name}' is already taken")

    X = np.column_stack([np.ones(d.n), d.X])
    record = None
    if d.standardization is not None:
        record = StandardizationRecord(
            columns=(ColumnTransform(name=name),) + d.standardization.columns
        )
    return Dataset(X=X, y=d.y, names=(name,) + d.names, intercept_index=0, standardization=record)
