"""Exception types shared across the package."""


class DDRFError(Exception):
    """Base class for all toolkit errors."""


class InvalidInputError(DDRFError, ValueError):
    """A physical parameter or matrix fails its precondition."""


class ConfigError(DDRFError, ValueError):
    """A configuration file cannot be parsed or is inconsistent."""


class UndefinedAxesError(DDRFError, ValueError):
    """A rotation angle is too small for the rotation axes to be defined."""
