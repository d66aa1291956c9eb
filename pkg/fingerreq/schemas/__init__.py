"""Schemas Package.

marshmallow schemas validating every JSON input file: task suites, the
grasp library, actuator specs, requirement profiles, measurements and run
manifests.
"""

from fingerreq.schemas.actuator import GearSchema, MotorSchema, SeaSchema
from fingerreq.schemas.base import BaseSchema, load_json_document, read_json
from fingerreq.schemas.manifest import RunManifestSchema, load_manifest
from fingerreq.schemas.report import MeasurementsSchema, ProfileSchema
from fingerreq.schemas.task import GraspLibrarySchema, TaskSchema, TaskSuiteSchema

__all__ = [
    "BaseSchema",
    "GearSchema",
    "GraspLibrarySchema",
    "MeasurementsSchema",
    "MotorSchema",
    "ProfileSchema",
    "RunManifestSchema",
    "SeaSchema",
    "TaskSchema",
    "TaskSuiteSchema",
    "load_json_document",
    "load_manifest",
    "read_json",
]
