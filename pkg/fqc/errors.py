"""
Exception hierarchy for the fqc toolkit

Library code raises these; the command layer turns them into result
dicts and exit codes:
- exit 2: InvalidInputError and its subclasses (bad input, guards, caps)
- exit 3 is never raised, it is a verdict carried in results
"""


class FQCError(Exception):
    """Root of every error raised by fqc"""
    exit_code = 2


class InvalidInputError(FQCError):
    """Input violates an operation precondition; optionally carries a suggestion"""

    def __init__(self, message: str, suggestion: str = ""):
        if suggestion:
            message = f"{message} (suggestion: {suggestion})"
        super().__init__(message)
        self.suggestion = suggestion


class DimensionError(InvalidInputError):
    """Operation is defined only for a particular dimension"""


class EmptySetError(InvalidInputError):
    """Operation needs a non-empty point set or measure"""


class CapExceededError(InvalidInputError):
    """An enumeration or grid would exceed its configured cap"""


class AliasingError(InvalidInputError):
    """Frequency grid too coarse for the truncation radius"""


class BudgetError(InvalidInputError):
    """Window budget of the nowhere-dense construction is violated"""


class WindowError(InvalidInputError):
    """Window function cannot serve the requested operation"""


class ConfigError(InvalidInputError):
    """Run configuration is invalid"""
