"""Admin credentials and bearer sessions.

Passwords are stored as salted PBKDF2-SHA256 digests in
``auth/users.manifest``; raw passwords never touch disk or error messages.
Sessions live in memory, scoped to one repository and one server process.
Login runs the key derivation and a constant-time comparison on every
attempt; unknown usernames take the same path against a dummy credential,
so they are indistinguishable from wrong passwords.
"""

from __future__ import annotations

import hashlib
import hmac
import secrets
import threading
from dataclasses import dataclass
from datetime import datetime, timedelta, timezone
from typing import Callable

from . import store
from .errors import (
    InvalidCredentials,
    InvalidUsername,
    Unauthorized,
    UsernameTaken,
    WeakPassword,
)
from .store import Repository

ALGORITHM = "pbkdf2-sha256"
DEFAULT_ITERATIONS = 120_000
DEFAULT_TTL_HOURS = 12
MIN_PASSWORD_LENGTH = 8
SALT_BYTES = 16


@dataclass
class AdminSession:
    token: str
    username: str
    expires_at: datetime


def hash_password(password: str, salt: bytes, iterations: int) -> bytes:
    return hashlib.pbkdf2_hmac("sha256", password.encode("utf-8"), salt, iterations)


def _check_username(username: str) -> None:
    if not username or not username.isascii() or any(c.isspace() for c in username):
        raise InvalidUsername("username must be non-empty ASCII without whitespace")


def add_admin(
    repo: Repository,
    username: str,
    password: str,
    iterations: int = DEFAULT_ITERATIONS,
) -> None:
    """Create an admin credential; usernames are unique per repository."""
    _check_username(username)
    if len(password) < MIN_PASSWORD_LENGTH:
        raise WeakPassword(f"password must be at least {MIN_PASSWORD_LENGTH} characters")
    users = store.read_auth_users(repo)
    if username in users:
        raise UsernameTaken(f"username {username!r} already exists")
    salt = secrets.token_bytes(SALT_BYTES)
    users[username] = {
        "algorithm": ALGORITHM,
        "iterations": iterations,
        "salt": salt.hex(),
        "secret_digest": hash_password(password, salt, iterations).hex(),
    }
    store.write_auth_users(repo, users)


class Authenticator:
    """Issues and checks bearer sessions for one repository."""

    def __init__(
        self,
        repo: Repository,
        ttl_hours: int = DEFAULT_TTL_HOURS,
        iterations: int = DEFAULT_ITERATIONS,
        clock: Callable[[], datetime] | None = None,
    ):
        self.repo = repo
        self.ttl = timedelta(hours=ttl_hours)
        self.iterations = iterations
        self._clock = clock or (lambda: datetime.now(timezone.utc))
        self._sessions: dict[str, AdminSession] = {}
        self._sessions_lock = threading.Lock()
        # Dummy credential keeps the unknown-user path on the same timing
        # profile as a wrong password; the digest can never be produced.
        self._dummy_salt = secrets.token_bytes(SALT_BYTES)
        self._dummy_digest = secrets.token_bytes(32)

    def _now(self) -> datetime:
        return self._clock().astimezone(timezone.utc).replace(microsecond=0)

    def add_admin(self, username: str, password: str) -> None:
        add_admin(self.repo, username, password, iterations=self.iterations)

    def login(self, username: str, password: str) -> AdminSession:
        """Verify credentials and issue a fresh session token."""
        users = store.read_auth_users(self.repo)
        record = users.get(username)
        if record is not None:
            salt = bytes.fromhex(record["salt"])
            iterations = record["iterations"]
            expected = bytes.fromhex(record["secret_digest"])
        else:
            salt = self._dummy_salt
            iterations = self.iterations
            expected = self._dummy_digest
        candidate = hash_password(password, salt, iterations)
        if not hmac.compare_digest(candidate, expected):
            raise InvalidCredentials("invalid username or password")
        session = AdminSession(
            token=secrets.token_urlsafe(32),
            username=username,
            expires_at=self._now() + self.ttl,
        )
        with self._sessions_lock:
            self._sessions[session.token] = session
        return session

    def authorize(self, token: str) -> str:
        """Return the owning username iff the token exists and is unexpired."""
        with self._sessions_lock:
            session = self._sessions.get(token)
            if session is None:
                raise Unauthorized("missing or unknown session token")
            if self._now() >= session.expires_at:
                del self._sessions[token]
                raise Unauthorized("session has expired")
            return session.username
