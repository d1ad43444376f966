"""Shared exception types; the CLI maps these onto exit codes."""


class ContextMismatchError(ValueError):
    """Mixed cyclotomic contexts of different order."""


class InputError(ValueError):
    """Malformed input: parse failure or validation failure (exit code 2)."""


class InfiniteTypeError(RuntimeError):
    """The braiding is not of finite type as far as we can tell (exit code 3)."""


class CapExceededError(RuntimeError):
    """A resource cap was hit; carries the offending location (exit code 4)."""

    def __init__(self, message, multidegree=None):
        super().__init__(message)
        self.multidegree = multidegree


class RecipeMissingError(RuntimeError):
    """No nonzero root-vector candidate was found; the user must supply a recipe."""
