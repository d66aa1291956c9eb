"""Common field definitions and validators for Marshmallow schemas.

Reusable field factories and validators for physical quantities, to reduce
duplication across schema definitions. Factories return a fresh field on
every call because marshmallow binds field instances to their schema.
"""

import math

from marshmallow import fields, validate


class CommonValidators:
    """Collection of commonly used validators."""

    @staticmethod
    def non_empty_string(value: str) -> str:
        """Validate that string is not empty after stripping."""
        if not value or not value.strip():
            raise validate.ValidationError("Field cannot be empty")
        return value

    @staticmethod
    def positive(value: float) -> float:
        """Validate a finite, strictly positive number."""
        if not (math.isfinite(value) and value > 0):
            raise validate.ValidationError("Value must be positive")
        return value

    @staticmethod
    def finite(value: float) -> float:
        """Validate a finite number."""
        if not math.isfinite(value):
            raise validate.ValidationError("Value must be finite")
        return value

    @staticmethod
    def positive_integer(value: int) -> int:
        """Validate that integer is positive."""
        if value <= 0:
            raise validate.ValidationError("Value must be positive")
        return value


class CommonFields:
    """Factories for commonly used fields."""

    @staticmethod
    def name(**kwargs) -> fields.Str:
        return fields.Str(validate=CommonValidators.non_empty_string, **kwargs)

    @staticmethod
    def positive_float(**kwargs) -> fields.Float:
        return fields.Float(validate=CommonValidators.positive, **kwargs)

    @staticmethod
    def positive_length(**kwargs) -> fields.Float:
        """Length in meters, strictly positive."""
        return fields.Float(validate=CommonValidators.positive, **kwargs)

    @staticmethod
    def coordinate(**kwargs) -> fields.Float:
        """Signed length or angle."""
        return fields.Float(validate=CommonValidators.finite, **kwargs)

    @staticmethod
    def friction(**kwargs) -> fields.Float:
        """Friction coefficient in (0, 2.5]."""
        return fields.Float(
            validate=validate.Range(min=0.0, max=2.5, min_inclusive=False), **kwargs
        )

    @staticmethod
    def fraction(**kwargs) -> fields.Float:
        """Dimensionless value in [0, 1]."""
        return fields.Float(validate=validate.Range(min=0.0, max=1.0), **kwargs)

    @staticmethod
    def vector3(**kwargs) -> fields.List:
        return fields.List(
            fields.Float(validate=CommonValidators.finite),
            validate=validate.Length(equal=3),
            **kwargs,
        )
