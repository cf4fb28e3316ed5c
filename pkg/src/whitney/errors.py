"""Exception types shared across the package."""


class InvalidArgument(ValueError):
    """An argument violates an operation's precondition."""


class InvalidParameter(InvalidArgument):
    """A numeric or structural parameter is out of range."""


class CompositionError(InvalidArgument):
    """Two morphisms do not share the required endpoint."""
