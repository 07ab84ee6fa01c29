from __future__ import annotations

import socket
import subprocess
import sys
import time
import urllib.request
from pathlib import Path

import pytest
from click.testing import CliRunner

from acoa.cli import ServeConfig, main
from acoa.errors import ConfigError

GOLDEN_DIR = Path(__file__).parent / "data"


@pytest.fixture
def runner():
    return CliRunner()


def test_init_seed_validate_flow(runner, tmp_path):
    repo = str(tmp_path / "repo")
    assert runner.invoke(main, ["init", repo]).exit_code == 0
    seeded = runner.invoke(main, ["seed", repo])
    assert seeded.exit_code == 0
    assert "seeded ensaio-para-uma-paisagem" in seeded.output
    assert "seeded le-dejeuner-sur-l-herbe" in seeded.output

    result = runner.invoke(main, ["validate", repo])
    assert result.exit_code == 0
    assert "2 works, 0 issues" in result.output


def test_seed_twice_errors(runner, tmp_path):
    repo = str(tmp_path / "repo")
    runner.invoke(main, ["init", repo])
    runner.invoke(main, ["seed", repo])
    result = runner.invoke(main, ["seed", repo])
    assert result.exit_code == 1
    assert result.stderr.startswith("already_seeded:")


def test_init_on_existing_repo_errors(runner, tmp_path):
    repo = str(tmp_path / "repo")
    runner.invoke(main, ["init", repo])
    result = runner.invoke(main, ["init", repo])
    assert result.exit_code == 1
    assert result.stderr.startswith("already_initialized:")


def test_validate_reports_issue_lines(runner, tmp_path, clock):
    from acoa import encoding, store
    from acoa.fixtures import seed_fixtures

    repo_path = tmp_path / "repo"
    repo = store.init_repository(repo_path, clock)
    seed_fixtures(repo)
    # Break one stored manifest directly on disk.
    slug = "ensaio-para-uma-paisagem"
    doc = encoding.canonical_loads(repo.work_path(slug).read_bytes())
    doc["title"] = " "
    repo.work_path(slug).write_bytes(encoding.canonical_bytes(doc))

    result = runner.invoke(main, ["validate", str(repo_path)])
    assert result.exit_code == 1
    assert f"{slug}: title: empty_title" in result.output
    assert "2 works, 1 issues" in result.output


def test_export_import_round_trip(runner, tmp_path):
    source = str(tmp_path / "source")
    target = str(tmp_path / "target")
    archive = str(tmp_path / "bundle.acoa")

    runner.invoke(main, ["init", source])
    runner.invoke(main, ["seed", source])
    exported = runner.invoke(main, ["export", source, archive])
    assert exported.exit_code == 0
    assert "exported 2 works" in exported.output

    runner.invoke(main, ["init", target])
    imported = runner.invoke(main, ["import", target, archive])
    assert imported.exit_code == 0
    assert "imported 2 works, skipped 0" in imported.output

    result = runner.invoke(main, ["validate", target])
    assert result.exit_code == 0
    assert "2 works, 0 issues" in result.output

    again = runner.invoke(main, ["import", target, archive])
    assert again.exit_code == 0
    assert "imported 0 works, skipped 2" in again.output


def test_import_corrupt_archive(runner, tmp_path):
    target = str(tmp_path / "target")
    runner.invoke(main, ["init", target])
    bad = tmp_path / "bad.acoa"
    bad.write_bytes(b"garbage")
    result = runner.invoke(main, ["import", target, str(bad)])
    assert result.exit_code == 1
    assert result.stderr.startswith("corrupt_archive:")


def test_add_user_prompts_hidden(runner, tmp_path):
    repo = str(tmp_path / "repo")
    runner.invoke(main, ["init", repo])
    result = runner.invoke(
        main, ["admin", "add-user", repo, "curator"], input="s3cret-pass\ns3cret-pass\n"
    )
    assert result.exit_code == 0
    assert "added admin user curator" in result.output
    assert "s3cret-pass" not in result.output

    from acoa import store
    from acoa.auth import Authenticator

    opened = store.open_repository(repo)
    assert Authenticator(opened).login("curator", "s3cret-pass").username == "curator"


def test_repo_path_from_environment(runner, tmp_path):
    repo = str(tmp_path / "repo")
    env = {"ACOA_REPO": repo}
    assert runner.invoke(main, ["init"], env=env).exit_code == 0
    assert runner.invoke(main, ["seed"], env=env).exit_code == 0
    result = runner.invoke(main, ["validate"], env=env)
    assert result.exit_code == 0
    assert "2 works, 0 issues" in result.output


def test_serve_config_validation():
    ServeConfig(repo_path="r", bind_address="0.0.0.0:8300").validate()
    with pytest.raises(ConfigError):
        ServeConfig(repo_path="r", bind_address="no-port").validate()
    with pytest.raises(ConfigError):
        ServeConfig(repo_path="r", bind_address="host:notaport").validate()
    with pytest.raises(ConfigError):
        ServeConfig(repo_path="r", bind_address="host:99999").validate()
    with pytest.raises(ConfigError):
        ServeConfig(repo_path="r", bind_address="h:80", session_ttl_hours=0).validate()


def _golden_check(name: str, text: str):
    path = GOLDEN_DIR / name
    assert path.is_file(), f"golden file {name} missing"
    assert text == path.read_text(encoding="utf-8")


def test_help_matches_golden(runner):
    result = runner.invoke(main, ["--help"])
    assert result.exit_code == 0
    for command in ("init", "seed", "validate", "export", "import", "admin", "serve"):
        assert command in result.output
    _golden_check("help.txt", result.output)


def test_serve_help_matches_golden(runner):
    result = runner.invoke(main, ["serve", "--help"])
    assert result.exit_code == 0
    for flag in ("--bind", "--session-ttl", "--cors-origin", "--log-level"):
        assert flag in result.output
    _golden_check("help_serve.txt", result.output)


def _free_port() -> int:
    with socket.socket() as sock:
        sock.bind(("127.0.0.1", 0))
        return sock.getsockname()[1]


def test_serve_end_to_end(tmp_path):
    runner = CliRunner()
    repo = str(tmp_path / "repo")
    runner.invoke(main, ["init", repo])
    runner.invoke(main, ["seed", repo])

    port = _free_port()
    process = subprocess.Popen(
        [sys.executable, "-m", "acoa.cli", "serve", repo, "--bind", f"127.0.0.1:{port}"],
        stdout=subprocess.PIPE,
        stderr=subprocess.PIPE,
    )
    try:
        deadline = time.time() + 15
        body = None
        while time.time() < deadline:
            try:
                with urllib.request.urlopen(
                    f"http://127.0.0.1:{port}/api/works", timeout=1
                ) as response:
                    body = response.read()
                break
            except OSError:
                if process.poll() is not None:
                    raise AssertionError(process.stderr.read().decode())
                time.sleep(0.2)
        assert body is not None, "server never came up"
        assert b"Ensaio para uma Paisagem" in body
    finally:
        process.terminate()
        process.wait(timeout=10)
