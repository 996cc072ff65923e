"""Exception hierarchy shared by every module."""


class NFBridgeError(Exception):
    """Base class for all library errors."""


class InputError(NFBridgeError, ValueError):
    """An argument is outside its allowed range or has the wrong shape."""


class PreconditionError(NFBridgeError):
    """A documented precondition (unitarity, ansatz, invariant) does not hold."""


class UnsupportedKindError(NFBridgeError, KeyError):
    """No printed closed form exists for the requested matrix kind."""


class DegenerateInputError(NFBridgeError):
    """The input carries no information, so a derived constant is undefined."""


class ConfigError(NFBridgeError):
    """A scenario file or CLI flag is malformed."""
