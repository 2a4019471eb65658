"""
Domain errors raised by the kinematics engine
"""


class KinematicsError(Exception):
    """Base class; `code` is the stable name reported by the API and CLI."""

    code = "kinematics_error"

    def to_dict(self):
        return {"error": self.code, "message": str(self)}


class NearLightSpeed(KinematicsError):
    code = "near_light_speed"


class DegenerateOrder(KinematicsError):
    code = "degenerate_order"


class AtFlipBoundary(KinematicsError):
    code = "at_flip_boundary"


class OutsideWorldline(KinematicsError):
    code = "outside_worldline"


class InvalidScenario(KinematicsError):
    code = "invalid_scenario"


class SelfAbsorption(InvalidScenario):
    code = "self_absorption"


class UnknownActor(KinematicsError):
    code = "unknown_actor"


class NotAFlip(KinematicsError):
    code = "not_a_flip"


class SliceOnEvent(KinematicsError):
    code = "slice_on_event"


class SimultaneousEndpoints(KinematicsError):
    code = "simultaneous_endpoints"


class ParseError(KinematicsError):
    code = "parse_error"

    def __init__(self, message, line, column):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column

    def to_dict(self):
        data = super().to_dict()
        data.update({"line": self.line, "column": self.column})
        return data


class SemanticError(KinematicsError):
    code = "semantic_error"

    def __init__(self, message, line=None):
        super().__init__(f"line {line}: {message}" if line else message)
        self.line = line
