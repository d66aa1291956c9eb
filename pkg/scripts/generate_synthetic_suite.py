#!/usr/bin/env python3
"""Synthetic suite export.

Writes the ``synthetic:`` trajectories referenced by a task suite as CSV
files, together with a copy of the suite that points at those files. Useful
for inspecting the inputs or replacing them one by one with recordings.
"""

import json
import os
import sys
from pathlib import Path

import click

# Add the project root to Python path
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from fingerreq.services import synthetic  # noqa: E402
from fingerreq.services.pipeline import slugify  # noqa: E402
from fingerreq.services.wrench_io import (  # noqa: E402
    DEFAULT_TASK_SUITE,
    save_trajectory,
)
from fingerreq.utils import canonical_json  # noqa: E402
from fingerreq.utils.service_helpers import atomic_write  # noqa: E402


@click.command()
@click.option(
    "--suite",
    type=click.Path(exists=True, dir_okay=False),
    default=str(DEFAULT_TASK_SUITE),
    show_default=True,
)
@click.option("--output-dir", required=True, type=click.Path(file_okay=False))
def export(suite, output_dir):
    """Export synthetic trajectories of SUITE as CSV files."""
    document = json.loads(Path(suite).read_text(encoding="utf-8"))
    target = Path(output_dir)
    exported = 0

    for index, task in enumerate(document.get("tasks", [])):
        reference = task["trajectory"]
        if not synthetic.is_synthetic(reference):
            continue
        spec = synthetic.parse_reference(reference)
        name = f"{index:02d}-{slugify(task['name'])}.csv"
        path = target / "trajectories" / name
        save_trajectory(synthetic.generate(spec), path, spec.seed)
        task["trajectory"] = f"trajectories/{name}"
        exported += 1

    atomic_write(target / Path(suite).name, canonical_json(document))
    click.echo(f"✓ Exported {exported} trajectories to {target / 'trajectories'}")


if __name__ == "__main__":
    export()
