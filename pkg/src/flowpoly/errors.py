class FlowpolyError(Exception):
    """Base class for library errors."""


class GraphError(FlowpolyError, ValueError):
    """Malformed graph, or a graph outside an operation's domain."""


class NetflowError(FlowpolyError, ValueError):
    """Net flow vector of the wrong length or not summing to zero."""


class InvariantViolation(FlowpolyError, RuntimeError):
    """A mathematical invariant the code relies on did not hold.

    Raised instead of returning a value that is known to be wrong, e.g. a
    Gamma product that fails to be rational, or a clique whose flow image
    is undefined.
    """
