"""Separation module.

This module provides:
- solve_lp: dense two-phase simplex used by the detectors
- signed_design / detect_separation: overlap, quasicomplete or complete separation
- find_solitary_separators: exact per-column sign scans
- existence_report: per-coefficient posterior-mean existence verdicts
"""

from sepbayes.separation.simplex import LpProblem, LpSolution, LpStatus, solve_lp
from sepbayes.separation.detect import (
    SeparationCertificate,
    SeparationKind,
    SignedDesign,
    SolitaryVerdict,
    detect_separation,
    find_solitary_separators,
    signed_design,
)
from sepbayes.separation.existence import (
    ExistenceVerdict,
    SeparationReport,
    Verdict,
    existence_report,
)

__all__ = [
    "LpProblem",
    "LpSolution",
    "LpStatus",
    "solve_lp",
    "SeparationCertificate",
    "SeparationKind",
    "SignedDesign",
    "SolitaryVerdict",
    "detect_separation",
    "find_solitary_separators",
    "signed_design",
    "ExistenceVerdict",
    "SeparationReport",
    "Verdict",
    "existence_report",
]
