"""Separation detection on the signed design.

Writing z_i = (2 y_i - 1) x_i, a direction alpha separates the data when
Z @ alpha >= 0 with at least one strict inequality. All rows strict is
complete separation; otherwise the separation is quasicomplete.
"""

import logging
from dataclasses import dataclass
from enum import Enum

import numpy as np

from sepbayes.config import get_separation_settings
from sepbayes.dataset import Dataset
from sepbayes.errors import LpError, SeparationError
from .simplex import LpProblem, solve_lp

logger = logging.getLogger(__name__)


class SeparationKind(str, Enum):
    NONE = "none"
    QUASICOMPLETE = "quasicomplete"
    COMPLETE = "complete"


@dataclass(frozen=True, eq=False)
class SignedDesign:
    """Rows of X with the sign of 2y - 1 applied."""

    Z: np.ndarray
    names: tuple[str, ...]

    @property
    def n(self) -> int:
        return self.Z.shape[0]

    @property
    def p(self) -> int:
        return self.Z.shape[1]


@dataclass(frozen=True, eq=False)
class SeparationCertificate:
    """A separating direction and the kind of separation it witnesses."""

    alpha: np.ndarray
    kind: SeparationKind

    def holds(self, Z: np.ndarray, tol: float) -> bool:
        """Check the certificate against a signed design."""
        margins = Z @ self.alpha
        if self.kind is SeparationKind.COMPLETE:
            return bool(np.all(margins > tol))
        nonnull = bool(np.any(self.alpha != 0.0))
        return nonnull and bool(np.all(margins >= -tol)) and bool(np.any(np.abs(margins) <= tol))

    def to_dict(self) -> dict:
        return {"kind": self.kind.value, "alpha": [float(a) for a in self.alpha]}


@dataclass(frozen=True)
class SolitaryVerdict:
    """Whether one column alone separates the classes."""

    solitary: bool = False
    direction: str | None = None  # "+" or "-"
    strictness: str | None = None  # "complete" or "quasicomplete"

    def to_dict(self) -> dict:
        if not self.solitary:
            return {"solitary": False}
        return {"solitary": True, "direction": self.direction, "strictness": self.strictness}

    def __str__(self) -> str:
        if not self.solitary:
            return "not solitary"
        return f"solitary ({self.direction}, {self.strictness})"


def signed_design(d: Dataset) -> SignedDesign:
    """Build Z with rows z_i = x_i for y_i = 1 and -x_i for y_i = 0."""
    sign = 2.0 * d.y.astype(float) - 1.0
    return SignedDesign(Z=d.X * sign[:, None], names=d.names)


def detect_separation(
    d: Dataset,
    tol: float | None = None,
) -> tuple[SeparationKind, SeparationCertificate | None]:
    """Classify the dataset as overlapping, quasicompletely or completely separated.

    The completeness LP asks for alpha with Z @ alpha >= 1 inside the box
    |alpha| <= B. When that fails, the separation LP maximizes 1' Z alpha over
    Z @ alpha >= 0, |alpha| <= 1; a positive optimum means some direction
    separates.

    Args:
        d: Dataset (raw or standardized)
        tol: Detection tolerance (default from settings, 1e-9)

    Returns:
        (kind, certificate); the certificate is None when kind is NONE

    Raises:
        SeparationError: An LP failed numerically; `stage` names which one
    """
    settings = get_separation_settings()
    tol = settings.detection_tolerance if tol is None else tol
    sd = signed_design(d)
    Z, n, p = sd.Z, sd.n, sd.p
    bound = settings.box_bound

    try:
        completeness = solve_lp(
            LpProblem(
                c=np.zeros(p),
                A=-Z,
                b=-np.ones(n),
                lower=np.full(p, -bound),
                upper=np.full(p, bound),
            ),
            tol=settings.lp_tolerance,
        )
    except LpError as e:
        raise SeparationError(str(e), stage="completeness LP") from e

    if completeness.optimal:
        cert = SeparationCertificate(alpha=completeness.x, kind=SeparationKind.COMPLETE)
        logger.info(f"Complete separation detected (n={n}, p={p})")
        return SeparationKind.COMPLETE, cert

    try:
        separation = solve_lp(
            LpProblem(
                c=Z.sum(axis=0),
                A=-Z,
                b=np.zeros(n),
                lower=-np.ones(p),
                upper=np.ones(p),
            ),
            tol=settings.lp_tolerance,
        )
    except LpError as e:
        raise SeparationError(str(e), stage="separation LP") from e

    if not separation.optimal:
        # alpha = 0 is always feasible here
        raise SeparationError(f"unexpected status {separation.status.value}", stage="separation LP")

    if separation.value <= n * tol:
        logger.info(f"No separation (n={n}, p={p})")
        return SeparationKind.NONE, None

    alpha = separation.x
    margins = Z @ alpha
    if np.all(margins > tol):
        # Separating for every row, but beyond the completeness box
        logger.info(f"Complete separation detected at small margin {margins.min():.3g}")
        return SeparationKind.COMPLETE, SeparationCertificate(alpha, SeparationKind.COMPLETE)

    logger.info(f"Quasicomplete separation detected (n={n}, p={p})")
    return SeparationKind.QUASICOMPLETE, SeparationCertificate(alpha, SeparationKind.QUASICOMPLETE)


def _scan_column(values: np.ndarray, y: np.ndarray) -> SolitaryVerdict:
    ones, zeros = values[y == 1], values[y == 0]
    if np.all(ones >= 0.0) and np.all(zeros <= 0.0):
        strict = bool(np.all(ones > 0.0) and np.all(zeros < 0.0))
        return SolitaryVerdict(True, "+", "complete" if strict else "quasicomplete")
    if np.all(ones <= 0.0) and np.all(zeros >= 0.0):
        strict = bool(np.all(ones < 0.0) and np.all(zeros > 0.0))
        return SolitaryVerdict(True, "-", "complete" if strict else "quasicomplete")
    return SolitaryVerdict()


def find_solitary_separators(d: Dataset) -> tuple[SolitaryVerdict, ...]:
    """Exact sign scan of every column for the solitary-separator pattern.

    Column j is solitary (+) when x_ij >= 0 on every success and x_ij <= 0 on
    every failure, and solitary (-) with the signs flipped. Values are
    compared with zero exactly.
    """
    verdicts = []
    for j, name in enumerate(d.names):
        values = d.X[:, j]
        if np.all(values == 0.0):
            logger.warning(f"Column '{name}' is identically zero; flagged as a solitary separator")
        verdicts.append(_scan_column(values, d.y))
    flagged = [name for name, v in zip(d.names, verdicts) if v.solitary]
    if flagged:
        logger.info(f"Solitary separators: {', '.join(flagged)}")
    return tuple(verdicts)
