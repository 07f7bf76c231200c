"""Exception hierarchy shared by the library and the command line."""


class OrdinalPlaneError(Exception):
    """Base class. ``category`` is the machine-parsable tag printed by the CLI."""

    category = "error"
    exit_code = 1


class InvalidInputError(OrdinalPlaneError, ValueError):
    category = "invalid-input"
    exit_code = 2


class InvalidDistributionError(InvalidInputError):
    category = "invalid-distribution"


class InsufficientDataError(OrdinalPlaneError, ValueError):
    """Raised when a series is too short; ``required`` is the minimum length."""

    category = "insufficient-data"
    exit_code = 3

    def __init__(self, message: str, required: int):
        super().__init__(message)
        self.required = required


class EmbeddingError(OrdinalPlaneError, RuntimeError):
    """Circulant embedding produced a significantly negative eigenvalue."""

    category = "embedding-failure"
    exit_code = 70


class IngestError(OrdinalPlaneError, ValueError):
    category = "format"
    exit_code = 4

    def __init__(self, message: str, line: int | None = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class FormatError(IngestError):
    category = "format"


class OrderingError(IngestError):
    category = "ordering"


class EmptyInputError(IngestError):
    category = "empty-input"


class SchemaError(IngestError):
    """A CSV consumed by the renderer is missing a required column."""

    category = "schema"

    def __init__(self, message: str, column: str):
        super().__init__(message)
        self.column = column
