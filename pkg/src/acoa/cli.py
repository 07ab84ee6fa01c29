"""Operator command line: initialize, seed, validate, archive and serve.

Failures print a single machine-parsable ``code: message`` line on stderr
and exit non-zero. Repository paths fall back to the ACOA_REPO environment
variable; serve honors ACOA_BIND and ACOA_SESSION_TTL.
"""

from __future__ import annotations

import functools
import logging
import sys
from dataclasses import dataclass

import click

from . import auth as auth_module
from . import store
from .api import create_app
from .auth import Authenticator
from .errors import AcoaError, ConfigError
from .fixtures import seed_fixtures
from .model import validate_artwork


@dataclass
class ServeConfig:
    repo_path: str
    bind_address: str
    session_ttl_hours: int = 12
    cors_origin: str | None = None
    log_level: str = "info"

    @property
    def host(self) -> str:
        return self._split()[0]

    @property
    def port(self) -> int:
        return self._split()[1]

    def _split(self) -> tuple[str, int]:
        host, sep, port_s = self.bind_address.rpartition(":")
        if not sep or not host:
            raise ConfigError(f"bind address {self.bind_address!r} must be host:port")
        try:
            port = int(port_s)
        except ValueError:
            raise ConfigError(f"bind address {self.bind_address!r} has a non-numeric port")
        if not 1 <= port <= 65535:
            raise ConfigError(f"port {port} outside 1..65535")
        return host, port

    def validate(self) -> None:
        self._split()
        if self.session_ttl_hours < 1:
            raise ConfigError("session ttl must be at least 1 hour")


def _guarded(fn):
    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except AcoaError as exc:
            click.echo(f"{exc.code}: {exc.message}", err=True)
            sys.exit(1)

    return wrapper


@click.group(name="acoa")
def main():
    """Documentation service for the chronological trajectories of artworks."""


@main.command("init")
@click.argument("path", envvar="ACOA_REPO")
@_guarded
def init_cmd(path: str):
    """Create a new repository at PATH."""
    store.init_repository(path)
    click.echo(f"initialized repository at {path}")


@main.command("seed")
@click.argument("path", envvar="ACOA_REPO")
@_guarded
def seed_cmd(path: str):
    """Install the two case-study works and the About record."""
    repo = store.open_repository(path)
    for slug in seed_fixtures(repo):
        click.echo(f"seeded {slug}")


@main.command("validate")
@click.argument("path", envvar="ACOA_REPO")
@_guarded
def validate_cmd(path: str):
    """Check every stored work; print one line per issue."""
    repo = store.open_repository(path)
    slugs = repo.work_slugs()
    issue_count = 0
    for slug in slugs:
        work = store.get_work(repo, slug)
        for issue in validate_artwork(work).issues:
            issue_count += 1
            click.echo(f"{slug}: {issue.path}: {issue.code}: {issue.message}")
        for ref in sorted(set(store.collect_media_refs(work))):
            if not repo.has_media(ref):
                issue_count += 1
                click.echo(f"{slug}: media: dangling_media_ref: {ref} does not resolve")
    click.echo(f"{len(slugs)} works, {issue_count} issues")
    if issue_count:
        sys.exit(1)


@main.command("export")
@click.argument("path", envvar="ACOA_REPO")
@click.argument("archive")
@_guarded
def export_cmd(path: str, archive: str):
    """Write the whole repository into a portable archive file."""
    repo = store.open_repository(path)
    store.export_archive(repo, archive)
    click.echo(f"exported {len(repo.work_slugs())} works to {archive}")


@main.command("import")
@click.argument("path", envvar="ACOA_REPO")
@click.argument("archive")
@click.option("--overwrite", is_flag=True, help="Replace works whose slug already exists.")
@_guarded
def import_cmd(path: str, archive: str, overwrite: bool):
    """Install works, media and About content from an archive file."""
    repo = store.open_repository(path)
    report = store.import_archive(repo, archive, overwrite)
    click.echo(
        f"imported {len(report.works_imported)} works, "
        f"skipped {len(report.works_skipped)}, "
        f"added {report.blobs_added} blobs"
    )
    for slug in report.works_skipped:
        click.echo(f"skipped {slug} (already present)")


@main.group()
def admin():
    """Administrative account management."""


@admin.command("add-user")
@click.argument("path", envvar="ACOA_REPO")
@click.argument("username")
@_guarded
def add_user_cmd(path: str, username: str):
    """Create an admin login; the password is prompted, never a flag."""
    repo = store.open_repository(path)
    password = click.prompt("Password", hide_input=True, confirmation_prompt=True)
    auth_module.add_admin(repo, username, password)
    click.echo(f"added admin user {username}")


@main.command("serve")
@click.argument("path", envvar="ACOA_REPO")
@click.option(
    "--bind",
    default="127.0.0.1:8300",
    envvar="ACOA_BIND",
    show_default=True,
    help="host:port to listen on.",
)
@click.option(
    "--session-ttl",
    type=int,
    default=12,
    envvar="ACOA_SESSION_TTL",
    show_default=True,
    help="Admin session lifetime in hours.",
)
@click.option("--cors-origin", default=None, help="Origin allowed for cross-origin UI requests.")
@click.option("--log-level", default="info", show_default=True, help="Log verbosity.")
@_guarded
def serve_cmd(path: str, bind: str, session_ttl: int, cors_origin: str | None, log_level: str):
    """Serve the public and admin APIs until interrupted."""
    config = ServeConfig(
        repo_path=path,
        bind_address=bind,
        session_ttl_hours=session_ttl,
        cors_origin=cors_origin,
        log_level=log_level,
    )
    config.validate()
    logging.basicConfig(
        stream=sys.stderr,
        level=getattr(logging, config.log_level.upper(), logging.INFO),
        format="%(asctime)s %(levelname)s %(name)s %(message)s",
    )
    repo = store.open_repository(config.repo_path)
    authenticator = Authenticator(repo, ttl_hours=config.session_ttl_hours)
    app = create_app(repo, authenticator, cors_origin=config.cors_origin)

    import uvicorn

    uvicorn.run(app, host=config.host, port=config.port, log_level=config.log_level)


if __name__ == "__main__":
    main()
