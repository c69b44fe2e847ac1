"""Exception types shared across the package.

Each maps to one CLI exit code, see ``ugraph.cli``.
"""


class UGraphError(Exception):
    exit_code = 4


class ResourceLimitError(UGraphError):
    """A configured budget or cap was exceeded. Never a wrong answer."""

    exit_code = 2


class SizeLimitError(ResourceLimitError):
    pass


class ClassViolationError(UGraphError):
    """The guest is outside the class or size budget of the artifact."""

    exit_code = 3


class InvariantError(UGraphError):
    """An internal invariant failed. Indicates a bug."""

    exit_code = 4


class ParseError(UGraphError):
    exit_code = 5
