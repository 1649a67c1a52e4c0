"""CSV ingestion and export for binary-response datasets."""

import logging
from pathlib import Path

import numpy as np
import pandas as pd

from sepbayes.errors import DatasetError
from .frame import Dataset

logger = logging.getLogger(__name__)


def _column_names(frame: pd.DataFrame, header: bool) -> list[str]:
    if header:
        return [str(c).strip() for c in frame.columns]
    return [f"V{j + 1}" for j in range(frame.shape[1])]


def _resolve_response(names: list[str], response: str) -> int:
    """Find the response column by name, or by 0-based index for header-less files."""
    if response in names:
        return names.index(response)
    if response.isdigit() and int(response) < len(names):
        return int(response)
    raise DatasetError(f"Response column '{response}' not found (columns: {', '.join(names)})")


def load_csv(path: str | Path, response: str = "y", header: bool = True) -> Dataset:
    """Load a comma-separated file into a Dataset.

    Columns keep file order with the response removed. No intercept is added.

    Args:
        path: CSV file (UTF-8, `,` delimiter, `.` decimal point)
        response: Name of the response column. Header-less files name their
            columns V1, V2, ...; a bare 0-based index is also accepted.
        header: Whether the first row holds column names

    Returns:
        Dataset with n rows and one column per non-response field

    Raises:
        DatasetError: Missing or empty file, non-numeric cell, response outside {0, 1}
    """
    path = Path(path)
    if not path.exists():
        raise DatasetError(f"File not found: {path}")

    try:
        frame = pd.read_csv(
            path,
            header=0 if header else None,
            dtype=str,
            keep_default_na=False,
            skipinitialspace=True,
            encoding="utf-8",
        )
    except pd.errors.EmptyDataError:
        raise DatasetError(f"{path}: file is empty") from None
    except (pd.errors.ParserError, UnicodeDecodeError) as e:
        raise DatasetError(f"{path}: could not parse CSV: {e}") from None

    if frame.shape[0] == 0:
        raise DatasetError(f"{path}: file has no data rows")

    names = _column_names(frame, header)
    frame.columns = names
    first_line = 2 if header else 1

    values = np.empty(frame.shape, dtype=float)
    for j, name in enumerate(names):
        raw = frame[name].str.strip()
        numeric = pd.to_numeric(raw, errors="coerce")
        bad = numeric.isna().to_numpy()
        if bad.any():
            row = int(np.flatnonzero(bad)[0])
            raise DatasetError(
                f"{path}: non-numeric value {raw.iloc[row]!r} at line {row + first_line}, "
                f"column '{name}'"
            )
        values[:, j] = numeric.to_numpy(dtype=float)

    r = _resolve_response(names, response)
    y = values[:, r]
    outside = np.flatnonzero((y != 0.0) & (y != 1.0))
    if outside.size:
        row = int(outside[0])
        raise DatasetError(
            f"{path}: response value {frame.iloc[row, r]!r} at line {row + first_line} is not 0 or 1"
        )

    keep = [j for j in range(len(names)) if j != r]
    if not keep:
        raise DatasetError(f"{path}: no covariate columns besides the response")

    dataset = Dataset(
        X=values[:, keep],
        y=y.astype(np.int8),
        names=tuple(names[j] for j in keep),
    )
    logger.info(f"Loaded {path}: n={dataset.n}, p={dataset.p}, response='{names[r]}'")
    return dataset


def write_csv(d: Dataset, path: str | Path | None = None, response: str = "y") -> str:
    """Write a Dataset as CSV (response first, intercept column omitted).

    Returns:
        The CSV text; also written to `path` when given.
    """
    keep = [j for j in range(d.p) if j != d.intercept_index]
    frame = pd.DataFrame({response: d.y.astype(int)})
    for j in keep:
        frame[d.names[j]] = d.X[:, j]
    text = frame.to_csv(index=False, lineterminator="\n")
    if path is not None:
        Path(path).write_text(text, encoding="utf-8")
        logger.info(f"Wrote {d.n} rows to {path}")
    return text
