"""Exception types raised by keylift."""


class KeyliftError(Exception):
    """Base class for all keylift errors."""


class ParameterError(KeyliftError, ValueError):
    """An argument is outside its documented range."""


class DuplicateDocumentError(KeyliftError, ValueError):
    def __init__(self, doc_id: str):
        super().__init__(f"duplicate doc_id: {doc_id!r}")
        self.doc_id = doc_id


class IndexFormatError(KeyliftError):
    """The index file is missing, truncated or has bad magic bytes."""


class FingerprintMismatchError(KeyliftError):
    """The index was built under a different normalization."""

    def __init__(self, expected: str, found: str):
        super().__init__(
            f"index normalization fingerprint {found!r} does not match {expected!r}"
        )
        self.expected = expected
        self.found = found
