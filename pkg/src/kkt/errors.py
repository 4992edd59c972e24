"""Exception hierarchy shared by the library and the command line."""


class KKTError(Exception):
    """Base class; ``exit_code`` is what the CLI returns for it."""

    exit_code = 1


class ValidationError(KKTError, ValueError):
    exit_code = 1


class NotApplicableError(ValidationError):
    """The splitting formula has nothing to say for these inputs."""


class ResourceLimitError(KKTError):
    exit_code = 2


class ConsistencyError(KKTError):
    """An internal cross-check failed. Always a bug, never user error."""

    exit_code = 3


class UndecidedError(KKTError):
    """Raised when an isomorphism question at p = 2 cannot be settled."""

    exit_code = 3
