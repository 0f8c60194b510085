class GoldbachLabError(Exception):
    """Base class for errors raised by goldbach_lab."""


class CapacityError(GoldbachLabError, ValueError):
    """A requested size exceeds what the table or memory budget can hold."""


class DomainError(GoldbachLabError, ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class CoverageError(GoldbachLabError, ValueError):
    """A zero-table query reaches beyond the table's verified height."""


class ZeroTableParseError(GoldbachLabError, ValueError):
    def __init__(self, message, line=None, path=None):
        self.line = line
        self.path = path
        where = ""
        if path is not None:
            where += f"{path}"
        if line is not None:
            where += f":{line}"
        super().__init__(f"{where}: {message}" if where else message)


class AliasingError(GoldbachLabError, ValueError):
    """Quadrature node count too small to integrate the trigonometric polynomial exactly."""
