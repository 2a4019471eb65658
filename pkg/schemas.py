"""
Request Schemas
Marshmallow schemas validating the JSON bodies of the API
"""

from fractions import Fraction

from marshmallow import (
    Schema,
    ValidationError,
    fields,
    post_load,
    validate,
    validates_schema,
)

from models import SpacetimeEvent
from services.scenario import BUILTIN_SCENARIOS


class VelocityField(fields.Field):
    """A frame velocity given as a number or as text such as "10/3" or "-0.5"."""

    default_error_messages = {"invalid": "Not a valid velocity."}

    def _deserialize(self, value, attr, data, **kwargs):
        if isinstance(value, bool):
            raise self.make_error("invalid")
        if isinstance(value, (int, float)):
            return float(value)
        if isinstance(value, str):
            try:
                return float(Fraction(value.strip()))
            except (ValueError, ZeroDivisionError):
                raise self.make_error("invalid") from None
        raise self.make_error("invalid")

    def _serialize(self, value, attr, obj, **kwargs):
        return value


class EventSchema(Schema):
    t = fields.Float(required=True, allow_nan=False)
    x = fields.Float(required=True, allow_nan=False)
    id = fields.String(load_default="")

    @post_load
    def make_event(self, data, **kwargs):
        return SpacetimeEvent(t=data["t"], x=data["x"], id=data["id"])


class TransformRequestSchema(Schema):
    v = VelocityField(required=True)
    events = fields.List(fields.Nested(EventSchema), required=True, validate=validate.Length(min=1))


class IntervalRequestSchema(Schema):
    e1 = fields.Nested(EventSchema, required=True)
    e2 = fields.Nested(EventSchema, required=True)
    v = VelocityField(load_default=None)


class OrderingRequestSchema(Schema):
    e1 = fields.Nested(EventSchema, required=True)
    e2 = fields.Nested(EventSchema, required=True)
    v = VelocityField(required=True)


class ScenarioRequestSchema(Schema):
    """Exactly one of a builtin scenario name or a scenario document."""

    builtin = fields.String(validate=validate.OneOf(sorted(BUILTIN_SCENARIOS)), load_default=None)
    document = fields.String(load_default=None)

    @validates_schema
    def validate_source(self, data, **kwargs):
        given = [key for key in ("builtin", "document") if data.get(key) is not None]
        if len(given) != 1:
            raise ValidationError("Give exactly one of 'builtin' or 'document'.", "_schema")


class FrameRequestSchema(ScenarioRequestSchema):
    v = VelocityField(required=True)


class SliceRequestSchema(FrameRequestSchema):
    tau = fields.Float(required=True, allow_nan=False)


class RenderRequestSchema(FrameRequestSchema):
    scale = fields.Float(validate=validate.Range(min=1, max=1000), load_default=None)


class AxesRequestSchema(Schema):
    v = VelocityField(required=True)
    scale = fields.Float(validate=validate.Range(min=1, max=1000), load_default=100.0)


class VelocityRequestSchema(Schema):
    v = VelocityField(required=True)


class MutualExclusionRequestSchema(ScenarioRequestSchema):
    c = fields.String(required=True)
    d = fields.String(required=True)
    require_present = fields.Boolean(load_default=True)
