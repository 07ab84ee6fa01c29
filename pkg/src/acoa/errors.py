"""Error types shared across the package.

Every error carries a short machine-readable ``code`` that surfaces
verbatim in CLI output (``code: message``) and in API error bodies.
"""

from __future__ import annotations


class AcoaError(Exception):
    """Base class for all expected failures."""

    code = "error"

    def __init__(self, message: str):
        super().__init__(message)
        self.message = message


class Unsluggable(AcoaError):
    code = "unsluggable"


class InvalidCount(AcoaError):
    code = "invalid_count"


class TruncationRefused(AcoaError):
    code = "truncation_refused"


class EmptyChronology(AcoaError):
    code = "empty_chronology"


class NotARepository(AcoaError):
    code = "not_a_repository"


class AlreadyInitialized(AcoaError):
    code = "already_initialized"


class IoFailure(AcoaError):
    code = "io_failure"


class InvalidWork(AcoaError):
    """Raised when a work fails structural validation; carries the report."""

    code = "invalid_work"

    def __init__(self, message: str, report=None):
        super().__init__(message)
        self.report = report


class DanglingMediaRef(AcoaError):
    code = "dangling_media_ref"


class NotFound(AcoaError):
    code = "not_found"


class ConfirmationRequired(AcoaError):
    code = "confirmation_required"


class EmptyBlob(AcoaError):
    code = "empty_blob"


class KindMismatch(AcoaError):
    code = "kind_mismatch"


class InvalidAbout(AcoaError):
    code = "invalid_about"


class CorruptArchive(AcoaError):
    code = "corrupt_archive"


class VersionUnsupported(AcoaError):
    code = "version_unsupported"


class AlreadySeeded(AcoaError):
    code = "already_seeded"


class UsernameTaken(AcoaError):
    code = "username_taken"


class WeakPassword(AcoaError):
    code = "weak_password"


class InvalidUsername(AcoaError):
    code = "invalid_username"


class InvalidCredentials(AcoaError):
    code = "invalid_credentials"


class Unauthorized(AcoaError):
    code = "unauthorized"


class ConfigError(AcoaError):
    code = "invalid_config"
