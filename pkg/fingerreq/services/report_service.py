"""Report Service.

Aggregates per-task results into suite requirements and compares achieved
design values against a requirements profile.

Features:
- Per-task summaries (peak torque and required bandwidth per joint type)
- Suite maxima and handle-size / palm groups
- Pass/fail comparison against a profile at central values
- Report, suite and group CSV writers plus a plain-text table
- Desired values derived from suite maxima

Usage:
    from fingerreq.services.report_service import compare, summarize_tasks

    summary = summarize_tasks(results)
    report = compare(profile, measurements)
"""

import csv
import io
import math
from pathlib import Path
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from fingerreq.models.finger import JOINT_NAMES
from fingerreq.models.grasp import HANDLE_RADII
from fingerreq.models.report import (
    DesignReport,
    GroupSummary,
    Measurement,
    MetricResult,
    RequirementsProfile,
    SuiteSummary,
    TaskSummary,
)
from fingerreq.models.torque import BandwidthResult, TorqueRequirements
from fingerreq.models.wrench import TaskConfig
from fingerreq.utils.error_handlers import ParseError, ReportError
from fingerreq.utils.logging_config import get_logger
from fingerreq.utils.service_helpers import atomic_write

logger = get_logger(__name__)

PathLike = Union[str, Path]

REPORT_COLUMNS = ("metric", "desired", "achieved", "unit", "direction", "pass")
SUITE_COLUMNS = (
    "task",
    "joint",
    "peak_torque_Nm",
    "bandwidth_Hz",
    "handle_size",
    "palm",
    "infeasible_steps",
)
GROUP_COLUMNS = (
    "handle_size",
    "palm",
    "joint",
    "max_peak_torque_Nm",
    "max_bandwidth_Hz",
    "tasks",
)

# profile metrics that can be derived from suite maxima
DERIVED_METRICS = {
    "pip_torque": ("peak_torque", "PIP"),
    "pip_bandwidth": ("bandwidth", "PIP"),
    "mcp_x_torque": ("peak_torque", "MCP-X"),
    "mcp_x_bandwidth": ("bandwidth", "MCP-X"),
}

TaskResult = Tuple[
    TaskConfig, TorqueRequirements, Mapping[str, Sequence[BandwidthResult]]
]


def _size_order(label: str) -> Tuple[int, str]:
    sizes = list(HANDLE_RADII)
    return (sizes.index(label), label) if label in sizes else (len(sizes), label)


def task_summary(
    task: TaskConfig,
    requirements: TorqueRequirements,
    bandwidths: Mapping[str, Sequence[BandwidthResult]],
) -> TaskSummary:
    """Collapse one task's results to per-joint values.

    The bandwidth of a joint type is the largest over the three fingers; it
    is None when any finger's trajectory found no passing grid point.
    """
    required: Dict[str, Optional[float]] = {}
    for joint in JOINT_NAMES:
        results = list(bandwidths.get(joint, ()))
        if not results or any(not r.passed for r in results):
            required[joint] = None
        else:
            required[joint] = max(float(r.bandwidth) for r in results)
    return TaskSummary(
        name=task.name,
        handle_size=task.size_label,
        palm=task.palm,
        peak_torque=dict(requirements.peaks),
        bandwidth=required,
        infeasible_steps=requirements.infeasible_steps,
    )


def _max(values: Iterable[Optional[float]]) -> float:
    present = [v for v in values if v is not None and not math.isnan(v)]
    return max(present) if present else math.nan


def summarize_tasks(results: Sequence[Union[TaskSummary, TaskResult]]) -> SuiteSummary:
    """Suite-wide maxima per joint type plus handle-size / palm groups.

    Args:
        results: TaskSummary objects or (task, requirements, bandwidths) tuples

    Returns:
        SuiteSummary; independent of the order of ``results``

    Raises:
        ReportError: If ``results`` is empty
    """
    if not results:
        raise ReportError("Cannot summarize an empty task suite")
    tasks = sorted(
        (r if isinstance(r, TaskSummary) else task_summary(*r) for r in results),
        key=lambda t: t.name,
    )

    buckets: Dict[Tuple[str, bool], List[TaskSummary]] = {}
    for task in tasks:
        buckets.setdefault((task.handle_size, task.palm), []).append(task)

    groups = tuple(
        GroupSummary(
            handle_size=size,
            palm=palm,
            peak_torque={
                j: _max(t.peak_torque[j] for t in members) for j in JOINT_NAMES
            },
            bandwidth={
                j: _max(t.bandwidth.get(j) for t in members) for j in JOINT_NAMES
            },
            tasks=tuple(t.name for t in members),
        )
        for (size, palm), members in sorted(
            buckets.items(), key=lambda item: (_size_order(item[0][0]), item[0][1])
        )
    )
    unresolved = sum(
        1 for t in tasks for j in JOINT_NAMES if t.bandwidth.get(j) is None
    )
    if unresolved:
        logger.warning(
            f"{unresolved} task/joint bandwidths did not pass anywhere on the grid"
        )

    return SuiteSummary(
        peak_torque={j: _max(t.peak_torque[j] for t in tasks) for j in JOINT_NAMES},
        bandwidth={j: _max(t.bandwidth.get(j) for t in tasks) for j in JOINT_NAMES},
        groups=groups,
        tasks=tuple(tasks),
    )


def compare(
    profile: RequirementsProfile,
    achieved: Mapping[str, Union[Measurement, float]],
    tasks: Sequence[TaskSummary] = (),
) -> DesignReport:
    """Check achieved values against a profile.

    Comparison uses central values; uncertainties are carried for display.

    Raises:
        ReportError: Naming the first profile metric without an achieved value
    """
    rows = []
    for metric in profile.metrics:
        if metric.name not in achieved:
            raise ReportError(
                f"No achieved value for metric '{metric.name}'", metric=metric.name
            )
        measurement = achieved[metric.name]
        if not isinstance(measurement, Measurement):
            measurement = Measurement(float(measurement))
        rows.append(MetricResult(metric, measurement, metric.passes(measurement.value)))

    extra = sorted(set(achieved) - {m.name for m in profile.metrics})
    if extra:
        logger.debug(
            f"Ignoring measurements not in profile '{profile.name}': "
            f"{', '.join(extra)}"
        )

    report = DesignReport(profile.name, tuple(rows), tuple(tasks))
    logger.info(
        f"Profile '{profile.name}': {report.n_passed} passed, {report.n_failed} failed",
        extra={"context": {"failures": report.failures()}},
    )
    return report


def derive_desired(
    profile: RequirementsProfile, summary: SuiteSummary
) -> RequirementsProfile:
    """Replace derivable desired values (torques, bandwidths) with suite maxima."""
    overrides = {}
    for name, (kind, joint) in DERIVED_METRICS.items():
        values = summary.peak_torque if kind == "peak_torque" else summary.bandwidth
        value = values.get(joint, math.nan)
        if any(m.name == name for m in profile.metrics) and not math.isnan(value):
            overrides[name] = value
    return profile.with_desired(overrides)


def _number(value: Optional[float]) -> str:
    if value is None or (isinstance(value, float) and math.isnan(value)):
        return ""
    return repr(float(value))


def _csv_text(
    header: Sequence[str], rows: Iterable[Sequence], seed: Optional[int]
) -> str:
    buffer = io.StringIO()
    if seed is not None:
        buffer.write(f"# seed={seed}\n")
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buffer.getvalue()


def report_to_csv(report: DesignReport, seed: Optional[int] = None) -> str:
    rows = [
        (
            row.metric.name,
            _number(row.metric.desired),
            _number(row.achieved.value),
            row.metric.unit,
            row.metric.direction,
            "true" if row.passed else "false",
        )
        for row in report.rows
    ]
    return _csv_text(REPORT_COLUMNS, rows, seed)


def suite_to_csv(summary: SuiteSummary, seed: Optional[int] = None) -> str:
    rows = [
        (
            task.name,
            joint,
            _number(task.peak_torque[joint]),
            _number(task.bandwidth.get(joint)),
            task.handle_size,
            "true" if task.palm else "false",
            task.infeasible_steps,
        )
        for task in summary.tasks
        for joint in JOINT_NAMES
    ]
    return _csv_text(SUITE_COLUMNS, rows, seed)


def groups_to_csv(summary: SuiteSummary, seed: Optional[int] = None) -> str:
    rows = [
        (
            group.handle_size,
            "true" if group.palm else "false",
            joint,
            _number(group.peak_torque[joint]),
            _number(group.bandwidth[joint]),
            ";".join(group.tasks),
        )
        for group in summary.groups
        for joint in JOINT_NAMES
    ]
    return _csv_text(GROUP_COLUMNS, rows, seed)


def write_report_csv(
    report: DesignReport, path: PathLike, seed: Optional[int] = None
) -> Path:
    return atomic_write(path, report_to_csv(report, seed))


def write_suite_csv(
    summary: SuiteSummary, path: PathLike, seed: Optional[int] = None
) -> Path:
    return atomic_write(path, suite_to_csv(summary, seed))


def write_groups_csv(
    summary: SuiteSummary, path: PathLike, seed: Optional[int] = None
) -> Path:
    return atomic_write(path, groups_to_csv(summary, seed))


def load_suite_csv(path: PathLike) -> List[TaskSummary]:
    """Read task summaries back from a suite CSV.

    Raises:
        ParseError: Missing file, missing columns or malformed numbers
    """
    file_path = Path(path)
    try:
        lines = file_path.read_text(encoding="utf-8").splitlines()
    except FileNotFoundError as e:
        raise ParseError(
            f"Suite results not found: {file_path}", path=str(file_path)
        ) from e

    reader = csv.DictReader(
        line for line in lines if line.strip() and not line.startswith("#")
    )
    missing = [c for c in SUITE_COLUMNS if c not in (reader.fieldnames or [])]
    if missing:
        raise ParseError(
            f"{file_path}: missing column '{missing[0]}'",
            column=missing[0],
            path=str(file_path),
        )

    tasks: Dict[str, dict] = {}
    for index, record in enumerate(reader, start=2):
        try:
            entry = tasks.setdefault(
                record["task"],
                {
                    "handle_size": record["handle_size"],
                    "palm": record["palm"].strip().lower() == "true",
                    "peak_torque": {},
                    "bandwidth": {},
                    "infeasible_steps": int(record["infeasible_steps"]),
                },
            )
            joint = record["joint"]
            entry["peak_torque"][joint] = float(record["peak_torque_Nm"])
            bandwidth = record["bandwidth_Hz"].strip()
            entry["bandwidth"][joint] = float(bandwidth) if bandwidth else None
        except (TypeError, ValueError) as e:
            raise ParseError(
                f"{file_path}: malformed row {index}: {e}",
                row=index,
                path=str(file_path),
            ) from e

    return [
        TaskSummary(
            name=name,
            handle_size=data["handle_size"],
            palm=data["palm"],
            peak_torque=data["peak_torque"],
            bandwidth=data["bandwidth"],
            infeasible_steps=data["infeasible_steps"],
        )
        for name, data in tasks.items()
    ]


def render_table(report: DesignReport) -> str:
    """Plain-text table: metric, desired (with direction), achieved, pass."""
    header = ("Metric", "Desired", "Achieved", "Unit", "Pass")
    rows = [
        (
            row.metric.name,
            f"{row.metric.direction} {row.metric.desired:g}",
            row.achieved.display(),
            row.metric.unit,
            "PASS" if row.passed else "FAIL",
        )
        for row in report.rows
    ]
    widths = [max(len(str(cell)) for cell in column) for column in zip(header, *rows)]
    lines = [
        "  ".join(cell.ljust(width) for cell, width in zip(line, widths)).rstrip()
        for line in (header, *rows)
    ]
    lines.insert(1, "  ".join("-" * width for width in widths))
    lines.append(f"{report.n_passed} passed, {report.n_failed} failed")
    return "\n".join(lines) + "\n"
