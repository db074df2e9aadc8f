"""Run manifests: what a command read, what it wrote, and the digests of both."""

from __future__ import annotations

import hashlib
import json
from pathlib import Path
from typing import Iterable, Mapping


def file_digest(path: str | Path) -> str:
    sha = hashlib.sha256()
    with open(path, "rb") as handle:
        for block in iter(lambda: handle.read(1 << 20), b""):
            sha.update(block)
    return "sha256:" + sha.hexdigest()


def _entries(paths: Iterable[str | Path]) -> list[dict[str, str]]:
    return [{"path": str(p), "digest": file_digest(p)} for p in paths]


def write_manifest(manifest_path: str | Path, command: str, config: Mapping,
                   inputs: Iterable[str | Path], outputs: Iterable[str | Path],
                   wall_time: float) -> None:
    """Write the run manifest JSON next to the command's primary output."""
    manifest = {
        "command": command,
        "config": dict(config),
        "inputs": _entries(inputs),
        "outputs": _entries(outputs),
        "wall_time": wall_time,
    }
    with open(manifest_path, "w", encoding="utf-8") as out:
        json.dump(manifest, out, indent=2, sort_keys=True)
        out.write("\n")
