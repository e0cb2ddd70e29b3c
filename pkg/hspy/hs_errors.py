"""
Exceptions raised by hspy and the exit codes the command line maps them to.
"""

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_PARSE = 2
EXIT_INFEASIBLE = 3


class HspyError(Exception):
    """Base class of every error raised by hspy."""

    exit_code = EXIT_PARSE


class RationalError(HspyError, ValueError):
    """A rational number could not be parsed."""


class RationalDivisionError(HspyError, ZeroDivisionError):
    """Exact division by zero."""


class DimensionError(HspyError, ValueError):
    """Matrix, vector or mask dimensions do not fit together."""


class MaskParseError(HspyError, ValueError):
    """A mask document is malformed.

    Parameters
    ----------
    message: string
      what is wrong
    location: string
      where it is wrong, e.g. ``coefficients[2][1][0]`` or ``line 3 column 7``
    """

    def __init__(self, message, location=None):
        self.message = message
        self.location = location
        if location is None:
            HspyError.__init__(self, message)
        else:
            HspyError.__init__(self, "%s (at %s)" % (message, location))


class UnknownMaskError(HspyError, KeyError):
    """A catalog name that does not exist."""

    def __str__(self):
        return str(self.args[0])


class NormalizationError(HspyError, ValueError):
    """A polynomial does not have the required degree or leading coefficient."""


class WindowError(HspyError, ValueError):
    """The exactly computable index window is empty."""


class HypothesisError(HspyError):
    """The hypothesis of a checked statement does not hold for the input."""

    exit_code = EXIT_INFEASIBLE


class InfeasibleError(HspyError):
    """A mask with the requested properties does not exist on the given support."""

    exit_code = EXIT_INFEASIBLE
