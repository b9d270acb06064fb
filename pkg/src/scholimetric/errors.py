"""Exception types shared across the package."""

from __future__ import annotations


class ScholimetricError(Exception):
    """Base class for every error this package raises on bad input."""


class ValidationError(ScholimetricError):
    """A precondition on caller-supplied arguments failed."""


class IngestError(ScholimetricError):
    """A source file failed validation.

    Carries the file, 1-based line number and field name so callers can
    point at the exact offending record.
    """

    def __init__(self, message: str, *, file: str | None = None,
                 line: int | None = None, field: str | None = None):
        self.file = file
        self.line = line
        self.field = field
        loc = ""
        if file is not None:
            loc = f"{file}:" if line is None else f"{file}:{line}:"
        if field is not None:
            loc += f" field '{field}':"
        super().__init__(f"{loc} {message}".strip())


class DuplicateIdError(IngestError):
    """The same identifier was declared twice in one registry."""


class UnknownPublicationError(ScholimetricError):
    """A pub_id was requested that is not in the corpus."""


class UnknownInstitutionError(ScholimetricError):
    """An institution id was requested that is not in the registry."""


class UnknownFieldError(ScholimetricError):
    """A field code that no journal in the registry carries."""


class MissingYearError(ScholimetricError):
    """A benchmark lookup for a year the table does not cover."""

    def __init__(self, year: int, message: str | None = None):
        self.year = year
        super().__init__(message or f"benchmark has no entry for year {year}")


class UndefinedRciError(ScholimetricError):
    """RCI requested against a zero global mean (cpp = 0)."""


class UndefinedCorrelationError(ScholimetricError):
    """Pearson correlation of constant input has no defined value."""


class BandSchemeError(ScholimetricError):
    """A band specification is malformed or leaves gaps."""


class SubmissionPoolError(ScholimetricError):
    """The candidate pool cannot satisfy the requested submission size."""
