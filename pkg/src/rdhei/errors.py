"""Exception hierarchy shared by the codec, container and CLI layers."""


class RDHError(Exception):
    """Base class for every error raised by this package."""


class FormatError(RDHError):
    """A container or file does not follow the expected layout."""


class CorruptionError(RDHError):
    """Decoded content is inconsistent, usually a wrong key or a damaged image."""


class TruncatedStreamError(CorruptionError):
    """A coded bit stream ended before the requested output length."""


class NotEmbeddable(RDHError):
    """The compressed image does not leave room for the length record."""

    def __init__(self, occupied, limit):
        self.occupied = occupied
        self.limit = limit
        super().__init__(
            f"occupied bits {occupied} exceed the available {limit}; image is not embeddable"
        )


class CapacityExceeded(RDHError):
    """The framed payload does not fit in the vacated region."""

    def __init__(self, available, required):
        self.available = available
        self.required = required
        super().__init__(f"payload needs {required} bits but only {available} are vacated")
