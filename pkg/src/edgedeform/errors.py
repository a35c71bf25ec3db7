"""Exception hierarchy shared by the whole package.

Two families matter to callers: ``ParseError`` (bad input text, CLI exit 1)
and the remaining ``EdgeDeformError`` subclasses (violated mathematical
preconditions, CLI exit 2).
"""


class EdgeDeformError(Exception):
    """Base class for all domain errors."""


class ParseError(EdgeDeformError):
    """Malformed input text (edge lists, poset files, family specs)."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class EmptyGraphError(EdgeDeformError):
    """No edges were given, so there is no edge ideal to study."""


class UnknownVertexError(EdgeDeformError):
    """A vertex name does not occur in the graph."""


class UnknownEdgeError(EdgeDeformError):
    """An edge does not occur in the graph."""


class SimpleGraphRequiredError(EdgeDeformError):
    """The operation is only defined for graphs without loops."""

    def __init__(self, message, loops=()):
        self.loops = tuple(loops)
        super().__init__(message)


class NameCollisionError(EdgeDeformError):
    """A fresh vertex name generated by a transform already exists."""


class NotASeparationPairError(EdgeDeformError):
    """The supplied (A, B) pair is not a valid separation pair."""


class DegreeCapExceededError(EdgeDeformError):
    """A subset enumeration would exceed the configured degree cap."""

    def __init__(self, message, vertex=None):
        self.vertex = vertex
        super().__init__(message)


class TriangleFoundError(EdgeDeformError):
    """A 3-cycle was found where a triangle-free graph is required."""

    def __init__(self, message, triangle=()):
        self.triangle = tuple(triangle)
        super().__init__(message)


class PreconditionViolatedError(EdgeDeformError):
    """A stated precondition fails; carries the offending witness."""

    def __init__(self, message, witness=None):
        self.witness = witness
        super().__init__(message)


class MaterializationLimitError(EdgeDeformError):
    """A multiplier set would materialize more elements than the cap allows."""


class InvalidChoiceError(EdgeDeformError):
    """A subset argument (L, L_a, L_b) violates its admissibility rules."""
