"""Schemas for run manifests and their solver / sweep option blocks.

Relative paths inside a manifest are resolved against the manifest's own
directory by ``load_manifest``.
"""

from pathlib import Path
from typing import Any, Mapping, Optional, Union

from marshmallow import fields, post_load, validate

from fingerreq.models.options import RunManifest, SolverOptions, SweepOptions
from fingerreq.schemas.base import BaseSchema, load_json_document
from fingerreq.schemas.common_fields import CommonFields


class SolverOptionsSchema(BaseSchema):
    restarts = fields.Int(validate=validate.Range(min=1))
    max_iter = fields.Int(validate=validate.Range(min=1))
    ftol = CommonFields.positive_float()
    seed = fields.Int()
    equilibrium_tol = CommonFields.positive_float()
    cone_tol = CommonFields.positive_float()
    pressure_tol = CommonFields.positive_float()
    cone_margin = fields.Float(
        validate=validate.Range(min=0.0, max=0.1, max_inclusive=False)
    )
    freeze_positions = fields.Bool()
    warm_start = fields.Bool()
    infeasible_threshold = CommonFields.fraction()


class SweepOptionsSchema(BaseSchema):
    start_hz = CommonFields.positive_float()
    stop_hz = CommonFields.positive_float()
    step_hz = CommonFields.positive_float()
    pass_fraction = fields.Float(
        validate=validate.Range(min=0.0, max=1.0, min_inclusive=False)
    )
    band_fraction = fields.Float(validate=validate.Range(min=0.0))


class RunManifestSchema(BaseSchema):
    name = fields.Str(load_default="run")
    suite = fields.Str(required=True)
    grasp_library = fields.Str(required=True)
    output_dir = fields.Str(load_default=None, allow_none=True)
    profile = fields.Str(load_default=None, allow_none=True)
    seed = fields.Int(load_default=None, allow_none=True)
    jobs = fields.Int(load_default=None, allow_none=True)
    solver = fields.Nested(SolverOptionsSchema, load_default=dict)
    sweep = fields.Nested(SweepOptionsSchema, load_default=dict)

    @post_load
    def keep_raw(self, data, **kwargs):
        return data


def _resolve(base: Path, value: Optional[str]) -> Optional[str]:
    if value is None:
        return None
    path = Path(value)
    return str(path if path.is_absolute() else base / path)


def load_manifest(
    path: Union[str, Path], config: Optional[Mapping[str, Any]] = None
) -> RunManifest:
    """Load a manifest, filling unset values from the configuration.

    Args:
        path: Manifest file
        config: Configuration dictionary (see ConfigManager)

    Returns:
        RunManifest
    """
    config = config or {}
    data = load_json_document(path, RunManifestSchema())
    base = Path(path).resolve().parent

    seed = data["seed"] if data["seed"] is not None else int(config.get("SEED", 0))
    solver_overrides = {"seed": seed, **data["solver"]}
    solver = SolverOptions.from_config(config, **solver_overrides)
    sweep = SweepOptions.from_config(config, **data["sweep"])
    output_dir = data["output_dir"] or config.get("OUTPUT_DIR", "results")

    return RunManifest(
        suite_path=_resolve(base, data["suite"]),
        grasp_library_path=_resolve(base, data["grasp_library"]),
        output_dir=_resolve(base, output_dir) if data["output_dir"] else output_dir,
        seed=seed,
        solver=solver,
        sweep=sweep,
        profile_path=_resolve(base, data["profile"]),
        jobs=data["jobs"] if data["jobs"] is not None else int(config.get("JOBS", 1)),
        name=data["name"],
    )
