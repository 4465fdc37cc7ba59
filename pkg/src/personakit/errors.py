"""Exception hierarchy.

Data errors carry the 1-based file line (header is line 1) and the column
they were found in, so diagnostics can point at the offending cell.
"""
from __future__ import annotations

from typing import Optional


class PersonaKitError(Exception):
    """Base class for every error raised by this package."""


class DataError(PersonaKitError, ValueError):
    def __init__(self, message: str, row: Optional[int] = None, column: Optional[str] = None):
        self.message = message
        self.row = row
        self.column = column
        self.source: Optional[str] = None
        super().__init__(self.located())

    def located(self) -> str:
        where = []
        if self.row is not None:
            where.append(f"row {self.row}")
        if self.column is not None:
            where.append(f"column {self.column!r}")
        prefix = f"{', '.join(where)}: " if where else ""
        return f"{type(self).__name__}: {prefix}{self.message}"


class MissingColumn(DataError):
    pass


class UnexpectedColumn(DataError):
    pass


class OutOfRangeScore(DataError):
    pass


class DuplicateRespondentId(DataError):
    pass


class UnknownDemographicValue(DataError):
    pass


class UnknownItemId(DataError):
    pass


class UnknownPersonaName(DataError):
    pass


class MissingSelectedPersona(DataError):
    pass


class IncompleteItemSet(DataError):
    pass


class DuplicateItemScore(DataError):
    pass


class AudienceMismatch(DataError):
    pass


class InconsistentParticipant(DataError):
    pass


class ConfigError(PersonaKitError, ValueError):
    pass


class MalformedConfig(ConfigError):
    pass


class EmptyNamePool(ConfigError):
    pass


class UnknownScoringMode(ConfigError):
    pass


class EmptyInput(PersonaKitError, ValueError):
    pass


class UnknownMemberId(PersonaKitError, KeyError):
    pass


class GroupEmpty(PersonaKitError, ValueError):
    pass


class NoItemsAnswered(PersonaKitError, ValueError):
    pass


class EmptyPersonaSet(PersonaKitError, ValueError):
    pass


class MissingItemStats(PersonaKitError, ValueError):
    pass


class MissingArtifact(PersonaKitError, FileNotFoundError):
    pass


class IgnoredFieldWarning(UserWarning):
    """A field was present in the input but has no meaning for that record."""


class MalformedRow(DataError):
    pass
