"""Exception hierarchy.

Data-shaped failures subclass :class:`ValueError` so callers that only know
the sklearn conventions still catch them.
"""


class JdcviError(Exception):
    """Base class for every error raised by this package."""


class EmptyClusterError(JdcviError, ValueError):
    pass


class InsufficientClustersError(JdcviError, ValueError):
    pass


class DegenerateCentersError(JdcviError, ValueError):
    pass


class ZeroDispersionError(JdcviError, ValueError):
    pass


class ZeroSeparationError(JdcviError, ValueError):
    pass


class LengthMismatchError(JdcviError, ValueError):
    pass


class UndefinedSimilarityError(JdcviError, ValueError):
    pass


class MissingLabelsError(JdcviError, ValueError):
    pass


class ParseError(JdcviError, ValueError):
    def __init__(self, message, path=None, row=None, column=None):
        loc = []
        if path is not None:
            loc.append(str(path))
        if row is not None:
            loc.append(f"row {row}")
        if column is not None:
            loc.append(f"column {column}")
        prefix = ", ".join(loc)
        super().__init__(f"{prefix}: {message}" if prefix else message)
        self.path = path
        self.row = row
        self.column = column


class DimensionMismatchError(ParseError):
    pass
