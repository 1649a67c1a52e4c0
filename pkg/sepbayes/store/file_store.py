"""File-based run store.

Layout of an output directory:

    <base_dir>/
    ├── runs.jsonl                  # Index of recorded runs, one manifest per line
    ├── <run_id>.manifest.json      # Full manifest of one run
    ├── draws.csv                   # Coefficient draws + chain column
    ├── draws.json                  # Sidecar: config, prior, link, acceptance, verdicts
    └── ...                         # Reports, summaries, series tables
"""

import json
import logging
from pathlib import Path
from typing import Any

import numpy as np
import pandas as pd

from sepbayes.config import get_app_settings
from sepbayes.dataset import StandardizationRecord
from sepbayes.errors import DiagnosticsError, SepbayesError
from sepbayes.samplers import Draws
from sepbayes.samplers.chains import CHAIN_COLUMN
from .manifest import RunManifest

logger = logging.getLogger(__name__)

FLOAT_FORMAT = "%.17g"


def dumps(payload: Any) -> str:
    """Stable JSON text: sorted keys, UTF-8, trailing newline."""
    return json.dumps(payload, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


class RunStore:
    """Reads and writes run artifacts under one directory."""

    def __init__(self, base_dir: str | Path | None = None):
        """Initialize the store.

        Args:
            base_dir: Output directory (default: AppSettings.output_dir)
        """
        self.base_dir = Path(base_dir if base_dir is not None else get_app_settings().output_dir)
        self.base_dir = self.base_dir.expanduser()
        self.index_file = self.base_dir / "runs.jsonl"
        self.base_dir.mkdir(parents=True, exist_ok=True)

    def path(self, name: str) -> Path:
        return self.base_dir / name

    def write_text(self, name: str, text: str) -> Path:
        path = self.path(name)
        path.write_text(text, encoding="utf-8")
        logger.info(f"Wrote {path}")
        return path

    def write_json(self, name: str, payload: Any) -> Path:
        return self.write_text(name, dumps(payload))

    @staticmethod
    def read_json(path: str | Path) -> Any:
        """Load a JSON artifact such as a draws sidecar or a report.

        Raises:
            DiagnosticsError: Missing or malformed file
        """
        path = Path(path)
        if not path.exists():
            raise DiagnosticsError(f"JSON file not found: {path}")
        try:
            with open(path, encoding="utf-8") as f:
                return json.load(f)
        except (json.JSONDecodeError, UnicodeDecodeError) as e:
            raise DiagnosticsError(f"{path}: could not parse JSON: {e}") from None

    def write_frame(self, name: str, frame: pd.DataFrame) -> Path:
        text = frame.to_csv(index=False, float_format=FLOAT_FORMAT, lineterminator="\n")
        return self.write_text(name, text)

    def write_draws(self, draws: Draws, stem: str = "draws") -> tuple[Path, Path]:
        """Write the draws CSV and its JSON sidecar.

        The CSV holds only the samples (full precision, no timestamps), so
        identical runs produce identical bytes.
        """
        csv_path = self.write_frame(f"{stem}.csv", draws.to_frame())
        sidecar = self.write_json(f"{stem}.json", draws.metadata())
        return csv_path, sidecar

    @staticmethod
    def read_draws(path: str | Path) -> Draws:
        """Load draws from CSV, picking up the `<stem>.json` sidecar when present.

        Raises:
            DiagnosticsError: Missing or malformed draws file
        """
        path = Path(path)
        if not path.exists():
            raise DiagnosticsError(f"Draws file not found: {path}")
        try:
            frame = pd.read_csv(path)
        except (pd.errors.ParserError, pd.errors.EmptyDataError, UnicodeDecodeError) as e:
            raise DiagnosticsError(f"{path}: could not parse draws: {e}") from None

        if CHAIN_COLUMN not in frame.columns:
            raise DiagnosticsError(f"{path}: missing '{CHAIN_COLUMN}' column")
        names = [c for c in frame.columns if c != CHAIN_COLUMN]
        if not names or frame.shape[0] == 0:
            raise DiagnosticsError(f"{path}: no draws")
        try:
            samples = frame[names].to_numpy(dtype=float)
            chain_ids = frame[CHAIN_COLUMN].to_numpy(dtype=int)
        except ValueError as e:
            raise DiagnosticsError(f"{path}: non-numeric draws: {e}") from None
        if not np.all(np.isfinite(samples)):
            raise DiagnosticsError(f"{path}: draws contain missing or non-finite values")

        sidecar = path.with_suffix(".json")
        meta: dict = RunStore.read_json(sidecar) if sidecar.exists() else {}
        record = meta.get("standardization")
        try:
            return Draws(
                samples=samples,
                chain_ids=chain_ids,
                names=tuple(names),
                config=meta.get("config", {}),
                wall_time=float(meta.get("wall_time", 0.0)),
                sampler=meta.get("sampler", ""),
                link=meta.get("link", "logit"),
                prior=meta.get("prior", {}),
                acceptance={int(k): v for k, v in meta.get("acceptance", {}).items()},
                standardization=StandardizationRecord.from_dict(record) if record else None,
                existence=meta.get("existence", []),
            )
        except SepbayesError as e:
            raise DiagnosticsError(f"{path}: {e}") from None

    def record_run(self, manifest: RunManifest) -> Path:
        """Write `<run_id>.manifest.json` and append the manifest to the index.

        Raises:
            SepbayesError: A listed output does not exist
        """
        missing = [o for o in manifest.outputs if not Path(o).exists()]
        if missing:
            raise SepbayesError(f"Run {manifest.run_id} lists missing outputs: {', '.join(missing)}")
        if manifest.finished_at is None:
            manifest.finish()
        path = self.path(f"{manifest.run_id}.manifest.json")
        path.write_text(dumps(manifest.to_dict()), encoding="utf-8")
        with open(self.index_file, "a", encoding="utf-8") as f:
            f.write(json.dumps(manifest.to_dict(), sort_keys=True) + "\n")
        logger.info(f"Recorded run {manifest.run_id}")
        return path

    def list_runs(self, limit: int = 10) -> list[RunManifest]:
        """Recorded runs, most recent first."""
        if not self.index_file.exists():
            return []
        entries = []
        with open(self.index_file, encoding="utf-8") as f:
            for line in f:
                line = line.strip()
                if not line:
                    continue
                try:
                    entries.append(json.loads(line))
                except json.JSONDecodeError:
                    continue
        entries.sort(key=lambda e: e.get("created_at", ""), reverse=True)
        return [RunManifest.from_dict(e) for e in entries[:limit]]
