"""RunManifest：配置哈希、版本、输出文件 SHA-256 与耗时。"""

from __future__ import annotations

import hashlib
import json
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

from .. import __version__


def sha256_file(path: Path) -> str:
    digest = hashlib.sha256()
    with path.open("rb") as fh:
        for chunk in iter(lambda: fh.read(1 << 16), b""):
            digest.update(chunk)
    return digest.hexdigest()


def config_hash(payload: Any) -> str:
    """规范化 JSON（键排序）后的 SHA-256。"""
    text = json.dumps(payload, sort_keys=True, ensure_ascii=False, default=str, separators=(",", ":"))
    return hashlib.sha256(text.encode("utf-8")).hexdigest()


@dataclass
class RunManifest:
    command: str
    config_hash: str
    version: str = __version__
    files: dict[str, str] = field(default_factory=dict)
    duration_seconds: float = 0.0
    exit_code: int | None = None
    started_at: float = field(default_factory=time.perf_counter, repr=False)

    def add_file(self, path: Path, root: Path | None = None) -> None:
        name = path.name if root is None else path.resolve().relative_to(root.resolve()).as_posix()
        self.files[name] = sha256_file(path)

    def finish(self, exit_code: int) -> None:
        self.exit_code = int(exit_code)
        self.duration_seconds = round(time.perf_counter() - self.started_at, 6)

    def to_dict(self) -> dict[str, Any]:
        return {
            "command": self.command,
            "version": self.version,
            "config_hash": self.config_hash,
            "exit_code": self.exit_code,
            "duration_seconds": self.duration_seconds,
            "files": dict(sorted(self.files.items())),
        }

    def write(self, path: Path) -> Path:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(json.dumps(self.to_dict(), indent=2, ensure_ascii=False), encoding="utf-8")
        return path


def load_manifest(path: Path) -> dict[str, Any]:
    return json.loads(path.read_text(encoding="utf-8"))


__all__ = ["sha256_file", "config_hash", "RunManifest", "load_manifest"]
