"""
Exception hierarchy for the Multi-Scale Asset Distribution simulator.

Every error raised by the library derives from ``MsadError`` so that the
command-line front end can report any failure with a single handler.
"""

from typing import Optional


class MsadError(Exception):
    """Base exception for the simulator."""

    def __init__(
        self,
        message: str,
        error_code: Optional[str] = None,
        details: Optional[dict] = None,
    ):
        """
        Initialize exception.

        Args:
            message: Error message
            error_code: Error code for tracking
            details: Additional error details
        """
        self.message = message
        self.error_code = error_code or self.__class__.__name__
        self.details = details or {}

        super().__init__(self.message)

    def to_dict(self) -> dict:
        """Convert exception to dictionary."""
        return {
            "error": self.error_code,
            "message": self.message,
            "details": self.details,
        }


# Configuration Errors
class ConfigurationError(MsadError):
    """Configuration error."""

    pass


class InvalidConfigurationError(ConfigurationError):
    """Invalid experiment configuration field."""

    def __init__(self, message: str, field: Optional[str] = None, details: Optional[dict] = None):
        details = dict(details or {})
        if field is not None:
            details["field"] = field
        super().__init__(message, error_code="INVALID_CONFIGURATION", details=details)
        self.field = field


# Graph Errors
class GraphError(MsadError):
    """Base error for the system graph."""

    pass


class GraphValidationError(GraphError):
    """Graph violates one or more structural invariants."""

    def __init__(self, violations: list):
        summary = "; ".join(str(v) for v in violations)
        super().__init__(
            f"Invalid system graph: {summary}",
            details={"violations": [str(v) for v in violations]},
        )
        self.violations = violations


class CycleError(GraphError):
    """The edge relation contains a cycle."""

    pass


class UnknownNodeError(GraphError):
    """Node id not present in the graph."""

    pass


class UnknownEdgeError(GraphError):
    """Edge not present in the graph."""

    pass


class NodeKindError(GraphError):
    """Operation called on a node of the wrong kind."""

    pass


# Environment Errors
class EnvironmentScheduleError(MsadError):
    """Malformed environment schedule."""

    pass


class RegionIndexError(MsadError):
    """Region index outside 1..M."""

    pass


# Topology Errors
class TopologyError(MsadError):
    """Topology cannot be built for the requested parameters."""

    pass


# Simulation Errors
class SimulationError(MsadError):
    """Invalid run or metric request."""

    pass


class SweepError(SimulationError):
    """A sweep cell failed."""

    def __init__(self, message: str, topology: str, beta: float, cause: Optional[str] = None):
        super().__init__(
            message,
            error_code="SWEEP_CELL_FAILED",
            details={"topology": topology, "beta": beta, "cause": cause},
        )
        self.topology = topology
        self.beta = beta


# Output Errors
class OutputError(MsadError):
    """Result file could not be written or read."""

    def __init__(self, message: str, path: str, details: Optional[dict] = None):
        details = dict(details or {})
        details["path"] = path
        super().__init__(message, error_code="OUTPUT_ERROR", details=details)
        self.path = path
