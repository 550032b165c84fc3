"""Exception types shared across the package."""


class ShapeError(ValueError):
    """Operand dimensions are incompatible."""


class RankError(ValueError):
    """A matrix required to have full column rank does not."""


class DomainError(ValueError):
    """A parameter lies outside the domain of the operation."""


class ConfigError(ValueError):
    """An experiment configuration is invalid or inconsistent."""


class DataFileError(ValueError):
    """A dataset file could not be parsed.

    ``row`` and ``column`` are 1-based file coordinates when known.
    """

    def __init__(self, message, path=None, row=None, column=None):
        self.path = path
        self.row = row
        self.column = column
        where = ""
        if row is not None and column is not None:
            where = f" at row {row}, column {column}"
        elif row is not None:
            where = f" at row {row}"
        prefix = f"{path}: " if path else ""
        super().__init__(f"{prefix}{message}{where}")
