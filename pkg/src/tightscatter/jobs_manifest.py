"""Jobs manifest loader: batch computations from YAML.

Each job names a subcommand, its parameters and where the result goes.
Follows the ${var} path resolution used for outputs and input files.

Jobs manifest schema:
  paths:
    out: "results"
  defaults:                      # merged under every job's params
    order: 12
  jobs:
    - id: d22
      command: scatter
      params: {l1: 2, l2: 2}
      format: json
      output: "${out}/d22.json"
    - id: d22-fan
      command: render
      target: fan
      params: {diagram: "${out}/d22.json"}
      output: "${out}/d22.png"
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

import yaml

from .common import resolve_path_vars

COMMAND_FORMATS = {
    "wallfn": {"json", "text"},
    "scatter": {"json", "text"},
    "gw": {"json", "csv"},
    "greedy": {"json", "text"},
    "theta": {"json", "text"},
    "clustervar": {"json", "text"},
    "check": {"json"},
    "render": {"svg", "png"},
}
VALID_COMMANDS = set(COMMAND_FORMATS)
VALID_FORMATS = set().union(*COMMAND_FORMATS.values())
VALID_RENDER_TARGETS = {"tiling", "fan"}

# Params holding file paths; ${var} is resolved in these.
PATH_PARAMS = {"diagram"}


@dataclass
class JobSpec:
    id: str
    command: str
    params: dict = field(default_factory=dict)
    format: str | None = None
    output: str | None = None
    target: str | None = None

    def to_argv(self) -> list[str]:
        """Argument list for the subcommand's main().

        True booleans become bare flags, False ones are dropped and lists
        expand to repeated values (e.g. m0: [-2, -1] -> --m0 -2 -1).
        """
        argv = [self.target] if self.target else []
        for key, value in self.params.items():
            flag = "--" + key.replace("_", "-")
            if isinstance(value, bool):
                if value:
                    argv.append(flag)
            elif isinstance(value, (list, tuple)):
                argv.append(flag)
                argv.extend(str(v) for v in value)
            elif value is not None:
                argv.extend([flag, str(value)])
        if self.format is not None:
            argv.extend(["--format", self.format])
        if self.output is not None:
            argv.extend(["--output", self.output])
        return argv


def load_jobs_manifest(manifest_path: str | Path) -> list[JobSpec]:
    """Load, validate and normalize a jobs manifest.

    Raises:
        ValueError: Missing/invalid fields, unknown commands or formats,
            duplicate ids.
    """
    with open(manifest_path) as f:
        raw = yaml.safe_load(f)

    if not isinstance(raw, dict):
        raise ValueError("Jobs manifest: expected a mapping at top level")
    if "jobs" not in raw:
        raise ValueError("Jobs manifest: missing required 'jobs' field")
    if not isinstance(raw["jobs"], list) or not raw["jobs"]:
        raise ValueError("Jobs manifest: 'jobs' must be a non-empty list")

    paths = {k: str(v) for k, v in (raw.get("paths") or {}).items()}
    defaults = raw.get("defaults") or {}
    if not isinstance(defaults, dict):
        raise ValueError("Jobs manifest: 'defaults' must be a mapping")

    jobs = []
    seen_ids = set()
    for i, entry in enumerate(raw["jobs"]):
        if not isinstance(entry, dict):
            raise ValueError(f"Job {i}: expected a mapping")
        for key in ("id", "command"):
            if key not in entry:
                raise ValueError(f"Job {i}: missing required field '{key}'")

        jid = str(entry["id"])
        command = str(entry["command"])
        if command not in VALID_COMMANDS:
            raise ValueError(
                f"Job {i} ({jid}): unknown command '{command}'. Valid: {sorted(VALID_COMMANDS)}"
            )

        fmt = entry.get("format")
        if fmt is not None and fmt not in COMMAND_FORMATS[command]:
            raise ValueError(
                f"Job {i} ({jid}): format '{fmt}' not valid for {command}. "
                f"Valid: {sorted(COMMAND_FORMATS[command])}"
            )

        target = entry.get("target")
        if command == "render":
            if target not in VALID_RENDER_TARGETS:
                raise ValueError(
                    f"Job {i} ({jid}): render needs 'target'. Valid: {sorted(VALID_RENDER_TARGETS)}"
                )
            if entry.get("output") is None:
                raise ValueError(f"Job {i} ({jid}): render needs 'output'")
        elif target is not None:
            raise ValueError(f"Job {i} ({jid}): 'target' only applies to render")

        params = entry.get("params") or {}
        if not isinstance(params, dict):
            raise ValueError(f"Job {i} ({jid}): 'params' must be a mapping")
        merged = {**defaults, **params}
        if command == "render" and target == "tiling":
            merged.pop("order", None)
        for key in PATH_PARAMS & set(merged):
            merged[key] = resolve_path_vars(str(merged[key]), paths)

        output = entry.get("output")
        if output is not None:
            output = resolve_path_vars(str(output), paths)

        if jid in seen_ids:
            raise ValueError(f"Duplicate job id: '{jid}'")
        seen_ids.add(jid)

        jobs.append(JobSpec(jid, command, merged, fmt, output, target))

    return jobs


def validate_job_inputs(jobs: list[JobSpec]) -> None:
    """Check that every input file exists or is produced by an earlier job.

    Raises:
        FileNotFoundError: Lists every missing input.
    """
    produced: set[Path] = set()
    missing = []
    for job in jobs:
        for key in PATH_PARAMS & set(job.params):
            p = Path(job.params[key])
            if p not in produced and not p.exists():
                missing.append(f"{job.id}: {key} {p}")
        if job.output is not None:
            produced.add(Path(job.output))
    if missing:
        raise FileNotFoundError("Missing job inputs:\n  " + "\n  ".join(missing))
