"""Per-coefficient verdicts on whether posterior means exist.

Rules, by prior family:

- independent Cauchy, logit or probit: the mean of beta_j is infinite
  exactly when column j is a solitary separator, whatever the locations;
- independent t with df > 1, or normal: every mean exists, since the
  likelihood is bounded by one and the prior has a finite mean;
- multivariate Cauchy, logit or probit: all means exist without
  separation and none exist under complete separation; quasicomplete
  separation is unresolved;
- multivariate t with df > 1: every mean exists.

For other links a solitary separator still rules the mean out, but the
matching sufficient condition is not evaluated, so the verdict is Unknown
unless the data do not separate at all.
"""

import logging
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from sepbayes.dataset import Dataset
from sepbayes.errors import ConfigError
from sepbayes.samplers import IndependentNormal, IndependentT, Link, MultivariateT, PriorSpec, parse_link
from .detect import (
    SeparationCertificate,
    SeparationKind,
    SolitaryVerdict,
    detect_separation,
    find_solitary_separators,
)

logger = logging.getLogger(__name__)


class Verdict(str, Enum):
    EXISTS = "exists"
    NOT_EXISTS = "not-exists"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class ExistenceVerdict:
    coefficient: str
    verdict: Verdict
    basis: str

    def to_dict(self) -> dict:
        return {"coef": self.coefficient, "verdict": self.verdict.value, "basis": self.basis}

    @classmethod
    def from_dict(cls, data: dict) -> "ExistenceVerdict":
        return cls(coefficient=data["coef"], verdict=Verdict(data["verdict"]), basis=data["basis"])


# Exit codes of `check`, in priority order
EXIT_NO_SEPARATION = 0
EXIT_SEPARATION_MEANS_EXIST = 2
EXIT_MEAN_NOT_EXISTS = 3
EXIT_UNKNOWN = 4


@dataclass(frozen=True, eq=False)
class SeparationReport:
    """Separation kind, certificate, solitary scan and existence verdicts for one dataset."""

    names: tuple[str, ...]
    kind: SeparationKind
    certificate: SeparationCertificate | None
    solitary: tuple[SolitaryVerdict, ...]
    existence: tuple[ExistenceVerdict, ...] = field(default=())
    prior: dict = field(default_factory=dict)
    link: str = "logit"

    @property
    def solitary_columns(self) -> list[str]:
        return [name for name, v in zip(self.names, self.solitary) if v.solitary]

    @property
    def not_exists_columns(self) -> list[str]:
        return [v.coefficient for v in self.existence if v.verdict is Verdict.NOT_EXISTS]

    @property
    def has_not_exists(self) -> bool:
        return bool(self.not_exists_columns)

    @property
    def has_unknown(self) -> bool:
        return any(v.verdict is Verdict.UNKNOWN for v in self.existence)

    def verdict_for(self, name: str) -> Verdict:
        for v in self.existence:
            if v.coefficient == name:
                return v.verdict
        raise KeyError(name)

    def exit_code(self) -> int:
        """0 no separation, 2 separation with all means existing, 3 a mean does not exist, 4 unknown."""
        if self.has_not_exists:
            return EXIT_MEAN_NOT_EXISTS
        if self.has_unknown:
            return EXIT_UNKNOWN
        if self.kind is SeparationKind.NONE:
            return EXIT_NO_SEPARATION
        return EXIT_SEPARATION_MEANS_EXIST

    def to_dict(self) -> dict:
        return {
            "kind": self.kind.value,
            "alpha": [] if self.certificate is None else self.certificate.to_dict()["alpha"],
            "solitary": [{"coef": name, **v.to_dict()} for name, v in zip(self.names, self.solitary)],
            "existence": [v.to_dict() for v in self.existence],
            "prior": self.prior,
            "link": self.link,
        }


def _verdicts(
    names: tuple[str, ...],
    kind: SeparationKind,
    solitary: tuple[SolitaryVerdict, ...],
    prior: PriorSpec,
    link: Link,
) -> list[ExistenceVerdict]:
    standard_link = link in (Link.LOGIT, Link.PROBIT)

    def each(verdict: Verdict, basis: str) -> list[ExistenceVerdict]:
        return [ExistenceVerdict(name, verdict, basis) for name in names]

    if kind is SeparationKind.NONE:
        return each(Verdict.EXISTS, "no separation: likelihood decays in every direction")

    if isinstance(prior, IndependentNormal):
        return each(Verdict.EXISTS, "normal prior: likelihood bounded by one, prior mean finite")

    if isinstance(prior, IndependentT):
        if prior.df > 1.0:
            return each(Verdict.EXISTS, f"t prior with df {prior.df:g}: likelihood bounded by one")
        out = []
        for name, s in zip(names, solitary):
            if s.solitary:
                verdict, basis = Verdict.NOT_EXISTS, "independent Cauchy: solitary separator"
            elif standard_link:
                verdict, basis = Verdict.EXISTS, "independent Cauchy: not a solitary separator"
            else:
                verdict, basis = Verdict.UNKNOWN, f"{link.value} link: sufficient condition not evaluated"
            out.append(ExistenceVerdict(name, verdict, basis))
        return out

    if isinstance(prior, MultivariateT):
        if prior.df > 1.0:
            return each(Verdict.EXISTS, f"multivariate t with df {prior.df:g}: finite prior mean")
        if not standard_link:
            return each(Verdict.UNKNOWN, f"multivariate Cauchy with {link.value} link: not established")
        if kind is SeparationKind.COMPLETE:
            return each(Verdict.NOT_EXISTS, "multivariate Cauchy: complete separation")
        return each(Verdict.UNKNOWN, "multivariate Cauchy: quasicomplete separation is unresolved")

    raise ConfigError(f"Unsupported prior {type(prior).__name__}")


def existence_report(
    d: Dataset,
    prior: PriorSpec,
    link: "str | Link" = Link.LOGIT,
    tol: float | None = None,
) -> SeparationReport:
    """Detect separation, scan for solitary separators, and decide each posterior mean.

    An identically zero column is solitary by definition; if the LPs saw no
    separation in that case (the direction e_j leaves every margin at zero)
    the report is raised to quasicomplete with certificate e_j.

    Raises:
        ConfigError: Prior dimension does not match the data, or unknown link
        SeparationError: An LP failed
    """
    link = parse_link(link)
    if prior.p != d.p:
        raise ConfigError(f"Prior covers {prior.p} coefficients but the data have {d.p}")

    kind, certificate = detect_separation(d, tol)
    solitary = find_solitary_separators(d)

    if kind is SeparationKind.NONE and any(s.solitary for s in solitary):
        j = next(j for j, s in enumerate(solitary) if s.solitary)
        alpha = np.zeros(d.p)
        alpha[j] = 1.0 if solitary[j].direction == "+" else -1.0
        kind = SeparationKind.QUASICOMPLETE
        certificate = SeparationCertificate(alpha=alpha, kind=kind)
        logger.warning(f"Column '{d.names[j]}' separates only through zero margins; reporting quasicomplete")

    existence = _verdicts(d.names, kind, solitary, prior, link)
    report = SeparationReport(
        names=d.names,
        kind=kind,
        certificate=certificate,
        solitary=solitary,
        existence=tuple(existence),
        prior=prior.to_dict(),
        link=link.value,
    )
    if report.has_not_exists:
        logger.warning(f"Posterior means do not exist for: {', '.join(report.not_exists_columns)}")
    return report
