"""Run storage: draws files, JSON reports, manifests and the runs index."""

from sepbayes.store.manifest import RunManifest, package_versions
from sepbayes.store.file_store import RunStore, dumps

__all__ = ["RunManifest", "RunStore", "dumps", "package_versions"]
