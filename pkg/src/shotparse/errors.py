"""Exception hierarchy shared across the pipeline."""


class ShotparseError(Exception):
    """Base class for all errors raised by this package."""


class SchemaError(ShotparseError):
    """A file or record does not match its documented schema.

    CLI maps this (and config problems) to exit code 2.
    """


class EngineNotFound(ShotparseError):
    """The configured OCR engine executable could not be resolved."""


class EngineFailure(ShotparseError):
    """The OCR engine exited nonzero; stderr is preserved on the exception."""

    def __init__(self, message: str, stderr: str = ""):
        super().__init__(message)
        self.stderr = stderr


class UnreadableImage(ShotparseError):
    """The input image is missing or not a readable raster file."""


class InvalidEncoding(ShotparseError):
    """A sidecar file is not valid UTF-8 text."""


class EmptyWordlist(SchemaError):
    """The wordlist file contained no usable tokens."""


class MentionOutOfRange(ShotparseError):
    """A mention references a line index outside its document."""


class EmptyBody(ShotparseError):
    """A post unit has no body text left after metadata lines are removed."""


class MalformedUrl(SchemaError):
    """A URL-list line could not be parsed; carries the 1-based line number."""

    def __init__(self, message: str, line_number: int):
        super().__init__(f"line {line_number}: {message}")
        self.line_number = line_number


class MissingAccount(ShotparseError):
    """URL reconstruction needs an account name for this platform."""


class UnsupportedPlatform(ShotparseError):
    """No URL template is known for the requested platform."""


class SchemaViolation(SchemaError):
    """A structured record failed validation; carries line and field context."""

    def __init__(self, message: str, line_number: int | None = None, field: str | None = None):
        where = []
        if line_number is not None:
            where.append(f"line {line_number}")
        if field is not None:
            where.append(f"field {field!r}")
        prefix = " ".join(where)
        super().__init__(f"{prefix}: {message}" if prefix else message)
        self.line_number = line_number
        self.field = field


class IdMismatch(ShotparseError):
    """Parse and annotation refer to different screenshots."""


class NoSupportedClasses(ShotparseError):
    """Macro averaging needs at least one class with nonzero support."""


class EmptyInput(ShotparseError):
    """An aggregate operation received an empty sequence."""


class MissingAnnotation(SchemaError):
    """Evaluation input lacks an annotation for a screenshot."""

    def __init__(self, screenshot_id: str):
        super().__init__(f"no annotation for screenshot {screenshot_id!r}")
        self.screenshot_id = screenshot_id


class InconsistentSpec(ShotparseError):
    """A fixture spec violates its own cardinality invariants."""
