"""Exception hierarchy for the triad census engine."""


class TriadCensusError(Exception):
    """Base class for all errors raised by this package."""


class VertexRangeError(TriadCensusError, ValueError):
    """An arc endpoint lies outside the vertex range of the graph."""


class ParseError(TriadCensusError, ValueError):
    """A graph file record could not be parsed."""

    def __init__(self, message, lineno=None):
        self.lineno = lineno
        if lineno is not None:
            message = f"line {lineno}: {message}"
        super().__init__(message)


class RecordRangeError(ParseError):
    """A vertex id in a graph file lies outside the declared range."""


class EmptyGraphError(TriadCensusError, ValueError):
    """The vertex count of a document cannot be determined."""


class CensusOverflowError(TriadCensusError, OverflowError):
    """A triad count does not fit in an unsigned 64-bit counter."""


class ConsistencyError(TriadCensusError, RuntimeError):
    """An internal invariant was violated; indicates a bug."""


class ScratchCapacityError(TriadCensusError, ValueError):
    """A scratch buffer is too small to hold a neighbour set."""


class PipelineError(TriadCensusError):
    """A pipeline phase failed; ``phase`` names which one."""

    def __init__(self, phase, cause):
        self.phase = phase
        self.cause = cause
        super().__init__(f"{phase}: {cause}")
