"""Schemas for motor, gear and series-elastic element spec files.

Motor files may give the shear stress in Pa (``shear_stress``) or in bar
(``shear_stress_bar``). Catalog data that the sizing formulas do not use
(mass, voltage, Kv, ...) is accepted under ``catalog`` and ignored.
"""

from marshmallow import ValidationError, fields, post_load, validate, validates_schema

from fingerreq.models.actuator import GearSpec, MotorSpec, SeaSpec
from fingerreq.schemas.base import BaseSchema
from fingerreq.schemas.common_fields import CommonFields


class MotorSchema(BaseSchema):
    name = fields.Str(load_default="")
    diameter = CommonFields.positive_length(required=True)
    length = CommonFields.positive_length(required=True)
    shear_stress = CommonFields.positive_float(load_default=None, allow_none=True)
    shear_stress_bar = CommonFields.positive_float(load_default=None, allow_none=True)
    gear_ratio = CommonFields.positive_float(load_default=1.0)
    rotor_inertia = CommonFields.positive_float(load_default=1e-6)
    max_speed = CommonFields.positive_float(load_default=100.0)
    catalog = fields.Dict(keys=fields.Str(), values=fields.Raw(), load_default=dict)

    @validates_schema
    def validate_shear_stress(self, data, **kwargs):
        keys = ("shear_stress", "shear_stress_bar")
        given = [k for k in keys if data.get(k) is not None]
        if len(given) != 1:
            raise ValidationError(
                "Exactly one of shear_stress (Pa) or shear_stress_bar is required",
                "shear_stress",
            )

    @post_load
    def make_motor(self, data, **kwargs) -> MotorSpec:
        common = {
            "diameter": data["diameter"],
            "length": data["length"],
            "gear_ratio": data["gear_ratio"],
            "rotor_inertia": data["rotor_inertia"],
            "max_speed": data["max_speed"],
            "name": data["name"],
        }
        if data["shear_stress_bar"] is not None:
            return MotorSpec.from_bar(data["shear_stress_bar"], **common)
        return MotorSpec(shear_stress=data["shear_stress"], **common)


class GearSchema(BaseSchema):
    name = fields.Str(load_default="")
    pitch_diameter = CommonFields.positive_length(required=True)
    module = CommonFields.positive_length(required=True)
    width = CommonFields.positive_length(required=True)
    lewis_factor = CommonFields.positive_float(required=True)
    yield_strength = CommonFields.positive_float(required=True)
    safety_factor = fields.Float(load_default=2.0, validate=validate.Range(min=1.0))
    ratio_to_output = CommonFields.positive_float(load_default=1.0)

    @post_load
    def make_gear(self, data, **kwargs) -> GearSpec:
        return GearSpec(**data)


class SeaSchema(BaseSchema):
    """SEA file; the bandwidth target is given in Hz."""

    name = fields.Str(load_default="")
    stiffness = CommonFields.positive_float(required=True)
    strength = CommonFields.positive_float(required=True)
    bandwidth_hz = CommonFields.positive_float(required=True)

    @post_load
    def make_sea(self, data, **kwargs) -> SeaSpec:
        from fingerreq.services.bandwidth import hz_to_rad

        return SeaSpec(
            stiffness=data["stiffness"],
            strength=data["strength"],
            bandwidth_target=hz_to_rad(data["bandwidth_hz"]),
            name=data["name"],
        )
