"""Exception hierarchy shared by every module of the package."""


class InducibilityError(ValueError):
    """Base class for domain errors (the CLI maps these to exit status 1)."""


class TreeSyntaxError(InducibilityError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at offset {position}")
        self.position = position


class ArityError(InducibilityError):
    """A vertex has one child, or more children than the degree bound allows."""

    def __init__(self, message: str, position: int | None = None):
        if position is not None:
            message = f"{message} (vertex opened at offset {position})"
        super().__init__(message)
        self.position = position


class LeafIndexError(InducibilityError):
    pass


class BudgetExceeded(InducibilityError):
    pass


class PreconditionError(InducibilityError):
    pass
