"""实验编排：子命令流程、RunManifest 与声称 scorecard。"""

from .manifest import RunManifest, config_hash, sha256_file
from .runner import (
    ExitCode,
    RunOutcome,
    run_converge,
    run_figure,
    run_flow,
    run_invariant,
    run_map,
)

__all__ = [
    "ExitCode",
    "RunManifest",
    "RunOutcome",
    "config_hash",
    "run_converge",
    "run_figure",
    "run_flow",
    "run_invariant",
    "run_map",
    "sha256_file",
]
