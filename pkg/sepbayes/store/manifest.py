"""Run manifest: what a command read, how it was configured, and what it wrote."""

import platform
import uuid
from dataclasses import asdict, dataclass, field
from datetime import datetime, timezone

import numpy as np
import scipy


def _now() -> str:
    return datetime.now(timezone.utc).isoformat()


def package_versions() -> dict[str, str]:
    from sepbayes import __version__

    return {
        "sepbayes": __version__,
        "numpy": np.__version__,
        "scipy": scipy.__version__,
        "python": platform.python_version(),
    }


@dataclass
class RunManifest:
    """Metadata for one CLI run."""

    run_id: str
    command: str
    inputs: dict[str, str] = field(default_factory=dict)
    config: dict = field(default_factory=dict)
    seed: int | None = None
    versions: dict[str, str] = field(default_factory=package_versions)
    created_at: str = field(default_factory=_now)  # ISO format
    finished_at: str | None = None  # ISO format
    outputs: list[str] = field(default_factory=list)

    @classmethod
    def start(cls, command: str, **fields) -> "RunManifest":
        return cls(run_id=f"{command}-{uuid.uuid4().hex[:12]}", command=command, **fields)

    def finish(self) -> None:
        self.finished_at = _now()

    def to_dict(self) -> dict:
        """Convert to dictionary."""
        return asdict(self)

    @classmethod
    def from_dict(cls, data: dict) -> "RunManifest":
        """Create from dictionary."""
        return cls(**data)
