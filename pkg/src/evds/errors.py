"""Exception hierarchy shared by the solvers and the CLI."""


class EvdsError(Exception):
    """Base class for all package errors."""


class ConstructionError(EvdsError, ValueError):
    """Raised when a point set cannot be turned into a unit disk graph."""


class InfeasibleError(EvdsError):
    """Raised when some target vertex is isolated, so no EVDS exists."""


class OracleRefusalError(EvdsError):
    """Raised when an exhaustive oracle is asked to solve an oversized instance."""


class BoundViolation(EvdsError, RuntimeError):
    """An expansion radius exceeded its theoretical cap. Indicates a defect."""


class EmbeddingError(EvdsError, ValueError):
    """Raised for an invalid orthogonal grid embedding."""

    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("; ".join(self.violations) or "invalid embedding")


class GenerationError(EvdsError):
    """Raised when random instance generation gives up after its retry budget."""
