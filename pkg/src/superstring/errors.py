"""Exception hierarchy shared by every solver.

The CLI maps ``InputError``/``ContractError`` to exit code 2 and
``CapacityError`` to exit code 3.
"""


class SuperstringError(Exception):
    pass


class InputError(SuperstringError, ValueError):
    """Malformed instance or argument."""


class ContractError(SuperstringError, ValueError):
    """A documented precondition or postcondition does not hold."""


class CapacityError(SuperstringError):
    """The instance exceeds a configured size or enumeration budget."""
