"""Exception hierarchy shared by all pipeline stages.

Each error class carries the process exit code the CLI maps it to:
2 configuration, 3 data, 4 network, 5 anything else.
"""


class SentilensError(Exception):
    """Base class for all errors raised by this package."""

    exit_code = 5


class ConfigError(SentilensError):
    """Invalid configuration: bad field values, unparseable config files."""

    exit_code = 2


class DataError(SentilensError):
    """Malformed or inconsistent data: bad JSON, missing fields, id mismatches."""

    exit_code = 3


class NetworkError(SentilensError):
    """HTTP or transport failure while collecting records.

    `attempts` is the number of requests made before giving up;
    `retryable` marks transient failures (timeouts, 5xx) that the
    collect loop is allowed to retry.
    """

    exit_code = 4

    def __init__(self, message: str, *, attempts: int = 1, retryable: bool = True):
        super().__init__(message)
        self.attempts = attempts
        self.retryable = retryable


class RateLimitError(NetworkError):
    """HTTP 429 from the endpoint; `retry_after` is the server-suggested wait
    in seconds (None when the Retry-After header was absent or unparseable)."""

    def __init__(self, message: str, *, retry_after: float | None = None, attempts: int = 1):
        super().__init__(message, attempts=attempts, retryable=True)
        self.retry_after = retry_after


class ModelFormatError(DataError):
    """Model file is corrupted, truncated, or has an unsupported version."""
