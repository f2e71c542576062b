"""Exception hierarchy shared by the engine modules."""


class VanKampenError(Exception):
    """Base class for all errors raised by this package."""


class MalformedInputError(VanKampenError, ValueError):
    """A word, presentation or map refers to symbols it may not use."""


class ConfigurationError(VanKampenError, ValueError):
    """Inputs are individually well formed but do not fit together."""


class DisconnectedGraphError(ConfigurationError):
    """A graph that must be connected is not.

    ``vertex`` names the first unreachable vertex in input order.
    """

    def __init__(self, message, vertex=None):
        super().__init__(message)
        self.vertex = vertex


class PreconditionError(VanKampenError, ValueError):
    """An operation was called outside the inputs it is defined for."""
