"""Exception hierarchy shared by every module of the package."""


class GraphDesignError(Exception):
    """Base class for all errors raised by graphdesigns."""


class GraphError(GraphDesignError, ValueError):
    """Malformed graph input: bad index, loop, bad file."""


class PreconditionError(GraphDesignError, ValueError):
    """An operation was called outside its documented domain."""


class DisconnectedGraphError(PreconditionError):
    """Spectral design analysis requires a connected graph."""


class SpectralError(GraphDesignError, RuntimeError):
    """The eigensolver failed to converge."""


class CertificationError(GraphDesignError, RuntimeError):
    """A numeric re-check contradicted the conclusion it was meant to certify."""


class CapExceeded(GraphDesignError):
    """An exponential oracle was asked to run above its size cap."""
