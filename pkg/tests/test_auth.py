from __future__ import annotations

import re
import string

import pytest

from acoa import store
from acoa.auth import Authenticator, add_admin
from acoa.errors import (
    InvalidCredentials,
    InvalidUsername,
    Unauthorized,
    UsernameTaken,
    WeakPassword,
)

URL_SAFE = set(string.ascii_letters + string.digits + "-_")


@pytest.fixture
def authn(repo, clock) -> Authenticator:
    # Fast KDF for tests; the scheme is iteration-count agnostic.
    auth = Authenticator(repo, iterations=10, clock=clock)
    auth.add_admin("curator", "s3cret-pass")
    return auth


def test_login_issues_token(authn):
    session = authn.login("curator", "s3cret-pass")
    # 128 bits in URL-safe base64 is at least ceil(128 / 6) = 22 characters.
    assert len(session.token) >= 22
    assert set(session.token) <= URL_SAFE
    assert session.username == "curator"


def test_session_expiry_is_ttl(authn, clock):
    session = authn.login("curator", "s3cret-pass")
    assert (session.expires_at - clock.current).total_seconds() == 12 * 3600


def test_duplicate_username(authn):
    with pytest.raises(UsernameTaken):
        authn.add_admin("curator", "another-pass")


def test_weak_password(authn):
    with pytest.raises(WeakPassword):
        authn.add_admin("second", "abc")


def test_invalid_username(repo):
    for bad in ("", "añtelevision", "two words"):
        with pytest.raises(InvalidUsername):
            add_admin(repo, bad, "long-enough-pass", iterations=10)


def test_wrong_password_and_unknown_user_are_indistinguishable(authn):
    with pytest.raises(InvalidCredentials) as wrong:
        authn.login("curator", "wrong-pass")
    with pytest.raises(InvalidCredentials) as unknown:
        authn.login("nobody", "wrong-pass")
    assert wrong.value.code == unknown.value.code
    assert str(wrong.value) == str(unknown.value)


def test_authorize_round_trip(authn):
    session = authn.login("curator", "s3cret-pass")
    assert authn.authorize(session.token) == "curator"


def test_authorize_expired(authn, clock):
    session = authn.login("curator", "s3cret-pass")
    clock.advance(hours=13)
    with pytest.raises(Unauthorized):
        authn.authorize(session.token)


def test_authorize_unknown_token(authn):
    with pytest.raises(Unauthorized):
        authn.authorize("AAAAAAAAAAAAAAAAAAAAAAAAAAAAAAA")


def test_token_uniqueness_over_many_logins(authn):
    tokens = {authn.login("curator", "s3cret-pass").token for _ in range(10_000)}
    assert len(tokens) == 10_000


def test_manifest_never_stores_raw_password(repo, authn):
    text = repo.users_path.read_text(encoding="utf-8")
    assert "s3cret-pass" not in text
    doc = store.read_auth_users(repo)
    record = doc["curator"]
    assert set(record) == {"algorithm", "iterations", "salt", "secret_digest"}
    assert re.fullmatch(r"[0-9a-f]{32,}", record["salt"])
    assert re.fullmatch(r"[0-9a-f]{64}", record["secret_digest"])


def test_credentials_persist_across_reopen(tmp_path, clock):
    repo = store.init_repository(tmp_path / "r", clock)
    add_admin(repo, "curator", "s3cret-pass", iterations=10)
    reopened = store.open_repository(tmp_path / "r", clock)
    authn = Authenticator(reopened, iterations=10, clock=clock)
    assert authn.login("curator", "s3cret-pass").username == "curator"


def test_sessions_are_per_authenticator(repo, clock):
    a = Authenticator(repo, iterations=10, clock=clock)
    a.add_admin("curator", "s3cret-pass")
    b = Authenticator(repo, iterations=10, clock=clock)
    token = a.login("curator", "s3cret-pass").token
    with pytest.raises(Unauthorized):
        b.authorize(token)
