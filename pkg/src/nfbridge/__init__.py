"""Dirac bispinors built from electromagnetic fields, and the checks that tie the two pictures together."""

__version__ = "0.1.0"

from .errors import (  # noqa: E402
    ConfigError,
    DegenerateInputError,
    InputError,
    NFBridgeError,
    PreconditionError,
    UnsupportedKindError,
)

__all__ = [
    "__version__",
    "ConfigError",
    "DegenerateInputError",
    "InputError",
    "NFBridgeError",
    "PreconditionError",
    "UnsupportedKindError",
]
