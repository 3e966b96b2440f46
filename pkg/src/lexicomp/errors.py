"""Exception hierarchy shared by all lexicomp modules.

DataError covers problems with input files (missing, malformed, duplicated
identifiers); StudyError covers comparisons that cannot be carried out on
otherwise well-formed data. The CLI maps these onto exit codes 2 and 3.
"""


class LexicompError(Exception):
    """Base class for all errors raised by this package."""


class DataError(LexicompError):
    """A problem with an input file or its contents."""


class MissingFile(DataError):
    pass


class MalformedRow(DataError):
    pass


class DuplicateId(DataError):
    pass


class MalformedModel(DataError):
    pass


class EmptyForm(DataError):
    """A transcription is empty after preprocessing."""


class BothEmpty(DataError):
    """Normalized edit distance is undefined for two empty sequences."""


class DuplicateRecord(DataError):
    pass


class UnknownLabel(DataError):
    pass


class UnknownVariety(DataError):
    pass


class StudyError(LexicompError):
    """A comparison that cannot proceed on the given data."""


class EmptyDataset(StudyError):
    pass


class EmptySlot(StudyError):
    pass


class NoSharedConcepts(StudyError):
    pass


class EmptyGroup(StudyError):
    pass


class MissingPrediction(StudyError):
    """A gold-annotated form pair was never compared."""
