"""CLI for running a batch of jobs from a YAML manifest.

Usage:
    tightscatter run --manifest jobs.yaml
    tightscatter run --manifest jobs.yaml --only d22 d22-fan
    tightscatter run --manifest jobs.yaml --validate
"""

import argparse
import sys
import time

from .common import progress
from .jobs_manifest import load_jobs_manifest, validate_job_inputs


def main(args=None):
    from .main import command_main

    parser = argparse.ArgumentParser(
        prog="tightscatter run",
        description="Run the jobs of a YAML manifest in order.",
    )
    parser.add_argument("--manifest", required=True, help="Path to jobs YAML manifest")
    parser.add_argument("--only", nargs="+", default=None, help="Run only these job ids")
    parser.add_argument("--validate", action="store_true",
                        help="Check the manifest and inputs, run nothing")
    parser.add_argument("--keep-going", action="store_true",
                        help="Continue after a failed job")
    parser.add_argument("--quiet", action="store_true", help="Suppress progress on stderr")
    parsed = parser.parse_args(args)

    try:
        jobs = load_jobs_manifest(parsed.manifest)
    except ValueError as exc:
        parser.error(str(exc))

    if parsed.only is not None:
        known = {j.id for j in jobs}
        unknown = sorted(set(parsed.only) - known)
        if unknown:
            parser.error(f"Unknown job ids: {unknown}. Valid: {sorted(known)}")
        jobs = [j for j in jobs if j.id in parsed.only]

    try:
        validate_job_inputs(jobs)
    except FileNotFoundError as exc:
        parser.error(str(exc))
    if parsed.validate:
        progress(f"Done: {len(jobs)} jobs valid", parsed.quiet)
        return

    t0 = time.monotonic()
    failed = []
    for job in jobs:
        progress(f"  [{job.id}] {job.command}", parsed.quiet)
        argv = job.to_argv() + (["--quiet"] if parsed.quiet else [])
        try:
            command_main(job.command)(argv)
        except SystemExit as exc:
            if exc.code not in (None, 0):
                failed.append(job.id)
                progress(f"  [{job.id}] failed with exit code {exc.code}", parsed.quiet)
                if not parsed.keep_going:
                    break
        except Exception as exc:
            if not parsed.keep_going:
                raise
            failed.append(job.id)
            progress(f"  [{job.id}] failed: {type(exc).__name__}: {exc}", parsed.quiet)
    elapsed = time.monotonic() - t0

    if failed:
        progress(f"Failed jobs: {', '.join(failed)}", parsed.quiet)
        sys.exit(1)
    progress(f"Done: {len(jobs)} jobs ({elapsed:.1f}s)", parsed.quiet)


if __name__ == "__main__":
    main()
