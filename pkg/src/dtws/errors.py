"""Exception types raised across the toolkit."""


class DTWSError(Exception):
    """Base class for all toolkit errors."""


class ConstantVectorError(DTWSError):
    """A vector with zero variance was given where variation is required."""


class LengthMismatchError(DTWSError):
    """Two vectors or series that must have equal length do not."""


class NoFlatShapeletError(DTWSError):
    """A shapelet set is missing its flat member."""


class DuplicateFlatError(DTWSError):
    """A shapelet set contains more than one flat member."""


class InsufficientRankError(DTWSError):
    """Fewer than w-1 linearly independent non-flat shapelets were supplied."""


class SeriesTooShortError(DTWSError):
    """Series is shorter than the shapelet window."""


class EmptyTrainingSetError(DTWSError):
    """No training series were provided."""


class EmptySequenceError(DTWSError):
    """An empty sequence was passed to an alignment routine."""


class InfeasibleWindowError(DTWSError):
    """Warping window is too narrow to connect the sequence endpoints."""


class SequenceTooLongError(DTWSError):
    """Sequence exceeds the brute-force enumeration guard."""


class BadKError(DTWSError):
    """Requested cluster count is outside 1..n."""


class SingleClusterError(DTWSError):
    """Silhouette is undefined for fewer than two clusters."""


class BadBaseIndexError(DTWSError):
    """Ensemble base index is out of range."""


class ParseError(DTWSError):
    """Malformed input file; carries row/column position when known."""

    def __init__(self, message, row=None, column=None):
        if row is not None:
            message = f"{message} (row {row}" + (f", column {column})" if column is not None else ")")
        super().__init__(message)
        self.row = row
        self.column = column


class EmptyFileError(DTWSError):
    """Input file contains no instances."""
