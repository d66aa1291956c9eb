"""Schemas for requirement profiles and achieved measurements."""

from marshmallow import ValidationError, fields, post_load, validate

from fingerreq.models.report import DIRECTIONS, Measurement, Metric, RequirementsProfile
from fingerreq.schemas.base import BaseSchema
from fingerreq.schemas.common_fields import CommonFields


class MetricSchema(BaseSchema):
    name = CommonFields.name(required=True)
    desired = fields.Float(required=True)
    unit = fields.Str(required=True)
    direction = fields.Str(required=True, validate=validate.OneOf(DIRECTIONS))
    note = fields.Str(load_default="")

    @post_load
    def make_metric(self, data, **kwargs) -> Metric:
        return Metric(**data)


class ProfileSchema(BaseSchema):
    name = CommonFields.name(required=True)
    description = fields.Str(load_default="")
    metrics = fields.List(fields.Nested(MetricSchema), required=True)

    @post_load
    def make_profile(self, data, **kwargs) -> RequirementsProfile:
        names = [m.name for m in data["metrics"]]
        duplicates = sorted({n for n in names if names.count(n) > 1})
        if duplicates:
            raise ValidationError(
                f"Duplicate metrics: {', '.join(duplicates)}", "metrics"
            )
        return RequirementsProfile(data["name"], tuple(data["metrics"]))


class MeasurementField(fields.Field):
    """A bare number or ``{"value": x, "uncertainty": dx}``."""

    def _deserialize(self, value, attr, data, **kwargs):
        if isinstance(value, bool):
            raise ValidationError("Must be a number or an object with a value.")
        if isinstance(value, (int, float)):
            return Measurement(float(value))
        if isinstance(value, dict) and "value" in value:
            extra = set(value) - {"value", "uncertainty"}
            if extra:
                raise ValidationError(f"Unknown keys: {', '.join(sorted(extra))}")
            try:
                uncertainty = value.get("uncertainty")
                return Measurement(
                    float(value["value"]),
                    None if uncertainty is None else float(uncertainty),
                )
            except (TypeError, ValueError) as e:
                raise ValidationError("Value and uncertainty must be numbers.") from e
        raise ValidationError("Must be a number or an object with a value.")


class MeasurementsSchema(BaseSchema):
    """Achieved values keyed by metric name."""

    design = fields.Str(load_default="")
    measurements = fields.Dict(
        keys=fields.Str(), values=MeasurementField(), required=True
    )

    @post_load
    def make_measurements(self, data, **kwargs):
        return data["measurements"]
