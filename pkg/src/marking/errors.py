"""Exception hierarchy.

Everything derives from :class:`MarkingError`.  The CLI maps
:class:`ValidationError` to exit code 2 and :class:`TrainingError` to exit
code 3.
"""


class MarkingError(Exception):
    pass


class ValidationError(MarkingError):
    """Bad input data or configuration."""


class TrainingError(MarkingError):
    """Training could not complete."""


class MarkupError(ValidationError):
    def __init__(self, message, position=None):
        if position is not None:
            message = f"{message} (at offset {position})"
        super().__init__(message)
        self.position = position


class UnbalancedDelimiter(MarkupError):
    pass


class NestedSpan(MarkupError):
    pass


class OverlappingSpan(MarkupError):
    """Two spans claim the same whitespace-delimited word."""


class EmptySpan(MarkupError):
    pass


class InvalidDelimiter(MarkupError):
    pass


class InvalidGrade(ValidationError):
    pass


class SchemaError(ValidationError):
    def __init__(self, message, locator=None):
        if locator:
            message = f"{locator}: {message}"
        super().__init__(message)
        self.locator = locator


class InvalidLabel(ValidationError):
    pass


class MalformedRow(ValidationError):
    def __init__(self, message, row=None):
        if row is not None:
            message = f"row {row}: {message}"
        super().__init__(message)
        self.row = row


class EmptyHypothesis(ValidationError):
    pass


class TooLong(ValidationError):
    pass


class AlignmentMismatch(ValidationError):
    pass


class UnknownEncoder(ValidationError):
    pass


class EncoderUnavailable(ValidationError):
    """A known encoder whose pretrained weights cannot be loaded."""


class CheckpointMismatch(ValidationError):
    pass


class LengthMismatch(ValidationError):
    pass


class MissingPrediction(ValidationError):
    pass


class EmptyInput(ValidationError):
    pass


class EmptyCorpus(TrainingError):
    pass


class NonFiniteLoss(TrainingError):
    pass
