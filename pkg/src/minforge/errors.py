"""Exception types shared across the package."""

from __future__ import annotations


class MinError(Exception):
    """Base class for all minforge errors."""


class ParseError(MinError):
    """Malformed input text (document, path string, fault string)."""


class UnsupportedVersion(MinError):
    """Document declares a format version this reader does not know."""


class InvalidCircuit(MinError):
    """Circuit fails structural validation; carries the violation list."""

    def __init__(self, message: str, violations: tuple = ()):
        super().__init__(message)
        self.violations = tuple(violations)


class SinkError(MinError):
    """Writing to a byte sink failed."""


class UnknownComponent(MinError):
    """Component id out of range for the circuit."""


class UnknownPort(MinError):
    """Port index invalid for a component kind."""


class InvalidSize(MinError):
    """Generator size parameter outside its domain."""


class InvalidPath(MinError):
    """Path references wires that do not exist in the circuit."""


class MismatchedEndpoints(MinError):
    """Paths compared for disjointness do not share source/destination."""


class SameEndpoint(MinError):
    """Path search called with source equal to destination."""


class NoPath(MinError):
    """No path exists between the requested terminals."""


class ValidationFailed(MinError):
    """Simulation refused to start; carries the validation report."""

    def __init__(self, report):
        super().__init__("validation failed")
        self.report = report


class SessionClosed(MinError):
    """Operation on a simulation session that was already closed."""


class PastEnd(MinError):
    """Step would advance a session beyond its configured duration."""
