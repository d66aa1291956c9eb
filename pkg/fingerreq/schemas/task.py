"""Schemas for task suites and the grasp library."""

from marshmallow import ValidationError, fields, post_load, validate, validates_schema

from fingerreq.models.finger import FingerGeometry, JointAngles
from fingerreq.models.grasp import (
    FINGER_PRESSURE_RADIUS,
    HANDLE_RADII,
    PALM_PRESSURE_RADIUS,
    ContactPoint,
    GraspLibrary,
    GraspTemplate,
)
from fingerreq.models.wrench import GRASP_NAMES, TaskConfig
from fingerreq.schemas.base import BaseSchema
from fingerreq.schemas.common_fields import CommonFields


class HandleSizeField(fields.Field):
    """Either small / medium / large or an explicit radius in meters."""

    def _deserialize(self, value, attr, data, **kwargs):
        if isinstance(value, str):
            label = value.strip().lower()
            if label not in HANDLE_RADII:
                raise ValidationError(
                    f"Must be one of {', '.join(HANDLE_RADII)} or a radius in meters."
                )
            return label
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise ValidationError("Must be a size label or a number.")
        if not value > 0:
            raise ValidationError("Radius must be positive.")
        return float(value)

    def _serialize(self, value, attr, obj, **kwargs):
        return value


class TaskSchema(BaseSchema):
    """One task record."""

    name = CommonFields.name(required=True)
    handle_size = HandleSizeField(required=True)
    grasp = fields.Str(required=True, validate=validate.OneOf(GRASP_NAMES))
    palm = fields.Bool(required=True)
    mu = CommonFields.friction(load_default=0.6)
    trajectory = fields.Str(required=True)
    posture = CommonFields.vector3(load_default=None, allow_none=True)
    notes = fields.Str(load_default="")

    @post_load
    def make_task(self, data, **kwargs) -> TaskConfig:
        posture = tuple(data["posture"]) if data.get("posture") else None
        return TaskConfig(
            name=data["name"],
            handle_size=data["handle_size"],
            grasp_name=data["grasp"],
            palm=data["palm"],
            trajectory_path=data["trajectory"],
            friction_mu=data["mu"],
            posture=posture,
            extra={"notes": data["notes"]} if data["notes"] else {},
        )


class TaskSuiteSchema(BaseSchema):
    """A named list of tasks with unique names."""

    name = fields.Str(load_default="suite")
    description = fields.Str(load_default="")
    tasks = fields.List(fields.Nested(TaskSchema), load_default=list)

    @validates_schema
    def validate_unique_names(self, data, **kwargs):
        names = [task.name for task in data.get("tasks", [])]
        duplicates = sorted({n for n in names if names.count(n) > 1})
        if duplicates:
            raise ValidationError(
                f"Duplicate task names: {', '.join(duplicates)}", "tasks"
            )


class ContactSchema(BaseSchema):
    z = CommonFields.coordinate(required=True)
    theta = CommonFields.coordinate(required=True)
    pressure_radius = CommonFields.positive_length(load_default=None, allow_none=True)
    is_palm = fields.Bool(load_default=False)

    @post_load
    def make_contact(self, data, **kwargs) -> ContactPoint:
        radius = data["pressure_radius"]
        if radius is None:
            radius = PALM_PRESSURE_RADIUS if data["is_palm"] else FINGER_PRESSURE_RADIUS
        return ContactPoint(data["z"], data["theta"], radius, data["is_palm"])


class FingerGeometrySchema(BaseSchema):
    mcp_separation = CommonFields.positive_length(load_default=0.022)
    proximal_len = CommonFields.positive_length(load_default=0.045)
    distal_len = CommonFields.positive_length(load_default=0.0335)
    fingertip_radius = CommonFields.positive_length(load_default=0.008)

    @post_load
    def make_geometry(self, data, **kwargs) -> FingerGeometry:
        return FingerGeometry(**data)


class GraspEntrySchema(BaseSchema):
    description = fields.Str(load_default="")
    posture = CommonFields.vector3(load_default=None, allow_none=True)
    contacts = fields.List(
        fields.Nested(ContactSchema),
        required=True,
        validate=validate.Length(min=3, max=4),
    )

    @validates_schema
    def validate_contacts(self, data, **kwargs):
        contacts = data.get("contacts", [])
        fingers = [c for c in contacts if not c.is_palm]
        if len(fingers) != 3:
            raise ValidationError("Exactly 3 finger contacts are required", "contacts")
        if len(contacts) - len(fingers) > 1:
            raise ValidationError("At most one palm contact is allowed", "contacts")


class GraspLibrarySchema(BaseSchema):
    """Grasp library file: finger geometry, default posture and grasps."""

    description = fields.Str(load_default="")
    finger = fields.Nested(FingerGeometrySchema, load_default=None, allow_none=True)
    posture = CommonFields.vector3(load_default=None, allow_none=True)
    grasps = fields.Dict(
        keys=fields.Str(validate=validate.OneOf(GRASP_NAMES)),
        values=fields.Nested(GraspEntrySchema),
        required=True,
    )

    @post_load
    def make_library(self, data, **kwargs) -> GraspLibrary:
        templates = []
        for name in sorted(data["grasps"]):
            entry = data["grasps"][name]
            # palm contact last
            contacts = sorted(entry["contacts"], key=lambda c: c.is_palm)
            posture = None
            if entry["posture"]:
                posture = JointAngles.from_array(entry["posture"])
            templates.append(
                GraspTemplate(name, tuple(contacts), posture, entry["description"])
            )
        kwargs_lib = {}
        if data["finger"] is not None:
            kwargs_lib["finger"] = data["finger"]
        if data["posture"] is not None:
            kwargs_lib["posture"] = JointAngles.from_array(data["posture"])
        return GraspLibrary(tuple(templates), **kwargs_lib)
