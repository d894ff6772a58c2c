"""Exception types shared across the toolkit."""


class OntomatchError(Exception):
    """Base class for all toolkit errors."""


class MalformedDocument(OntomatchError):
    """A document could not be parsed. Carries the error position when known."""

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        if line is not None:
            message = f"{message} (line {line}, column {column})"
        super().__init__(message)


class UnsupportedFormat(OntomatchError):
    """The requested document format is not supported."""


class UnsupportedRelation(OntomatchError):
    """An alignment cell uses a relation other than equivalence."""

    def __init__(self, relation):
        self.relation = relation
        super().__init__(f"unsupported correspondence relation: {relation!r}")


class LexiconUnavailable(OntomatchError):
    """The morphy lexicon files were not found at the configured path."""


class EmptyInput(OntomatchError):
    """An aggregate operation received no data to aggregate."""


class EmptyEntityText(OntomatchError):
    """A prompt was requested for an entity with no displayable text."""


class ProviderUnavailable(OntomatchError):
    """The LLM provider could not be reached after exhausting retries."""


class QuotaExceeded(OntomatchError):
    """The LLM provider rejected the request for quota/rate-limit reasons."""
