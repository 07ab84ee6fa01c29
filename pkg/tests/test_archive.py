from __future__ import annotations

import dataclasses
import hashlib
import struct

import pytest

from conftest import build_work

from acoa import store
from acoa.errors import CorruptArchive, VersionUnsupported
from acoa.fixtures import seed_fixtures
from acoa.store import (
    ARCHIVE_MAGIC,
    ARCHIVE_VERSION_PATH,
    ARCHIVE_VERSION_PAYLOAD,
    _encode_record,
)


def _manifest_bytes(repo):
    return {slug: repo.work_path(slug).read_bytes() for slug in repo.work_slugs()}


def _build_archive(records):
    body = ARCHIVE_MAGIC + b"".join(_encode_record(p, d) for p, d in records)
    return body + hashlib.sha256(body).digest()


def test_export_import_is_isomorphism(tmp_path, clock):
    source = store.init_repository(tmp_path / "source", clock)
    seed_fixtures(source)
    archive = tmp_path / "bundle.acoa"
    store.export_archive(source, archive)

    target = store.init_repository(tmp_path / "target", clock)
    report = store.import_archive(target, archive, overwrite=False)

    assert report.works_imported == sorted(source.work_slugs())
    assert report.works_skipped == []
    assert report.about_imported
    assert _manifest_bytes(target) == _manifest_bytes(source)
    assert target.media_digests() == source.media_digests()
    assert (target.root / "about.manifest").read_bytes() == (
        source.root / "about.manifest"
    ).read_bytes()
    for digest in target.media_digests():
        _, data = store.get_media(target, digest)
        assert hashlib.sha256(data).hexdigest() == digest


def test_import_skips_collisions_without_overwrite(tmp_path, clock):
    source = store.init_repository(tmp_path / "source", clock)
    seed_fixtures(source)
    archive = tmp_path / "bundle.acoa"
    store.export_archive(source, archive)

    report = store.import_archive(source, archive, overwrite=False)
    assert report.works_imported == []
    assert sorted(report.works_skipped) == sorted(source.work_slugs())
    assert report.about_skipped and not report.about_imported


def test_import_overwrite_replaces(tmp_path, clock):
    source = store.init_repository(tmp_path / "source", clock)
    seed_fixtures(source)
    archive = tmp_path / "bundle.acoa"
    store.export_archive(source, archive)

    slug = "ensaio-para-uma-paisagem"
    edited = dataclasses.replace(store.get_work(source, slug), title="Edited Title")
    clock.advance(seconds=30)
    store.put_work(source, edited)
    assert store.get_work(source, slug).title == "Edited Title"

    report = store.import_archive(source, archive, overwrite=True)
    assert slug in report.works_imported
    assert store.get_work(source, slug).title == "Ensaio para uma Paisagem"


def test_truncated_blob_is_corrupt(tmp_path, clock, repo, image_id):
    work = build_work(image_id)
    store.put_work(repo, work)
    archive = tmp_path / "bundle.acoa"
    store.export_archive(repo, archive)

    # Rebuild the archive with the blob payload cut short; the outer digest
    # is recomputed, so only the per-blob checksum can catch it.
    records = list(store._decode_records(archive.read_bytes()[len(ARCHIVE_MAGIC) : -32]))
    broken = [
        (p, d[:-4] if p.startswith("media/") and not p.endswith(".meta") else d)
        for p, d in records
    ]
    bad = tmp_path / "broken.acoa"
    bad.write_bytes(_build_archive(broken))

    target = store.init_repository(tmp_path / "target", clock)
    with pytest.raises(CorruptArchive):
        store.import_archive(target, bad, overwrite=False)


def test_flipped_byte_fails_whole_archive_digest(tmp_path, clock):
    source = store.init_repository(tmp_path / "source", clock)
    seed_fixtures(source)
    archive = tmp_path / "bundle.acoa"
    store.export_archive(source, archive)

    raw = bytearray(archive.read_bytes())
    raw[len(raw) // 2] ^= 0xFF
    (tmp_path / "flip.acoa").write_bytes(bytes(raw))

    target = store.init_repository(tmp_path / "target", clock)
    with pytest.raises(CorruptArchive):
        store.import_archive(target, tmp_path / "flip.acoa", overwrite=False)


def test_bad_magic(tmp_path, repo):
    bad = tmp_path / "x.acoa"
    bad.write_bytes(b"NOTME" + b"\x00" * 64)
    with pytest.raises(CorruptArchive):
        store.import_archive(repo, bad, overwrite=False)


def test_unsupported_version(tmp_path, repo):
    bad = tmp_path / "v2.acoa"
    bad.write_bytes(_build_archive([(ARCHIVE_VERSION_PATH, b"acoa-archive 99\n")]))
    with pytest.raises(VersionUnsupported):
        store.import_archive(repo, bad, overwrite=False)


def test_missing_version_record(tmp_path, repo):
    bad = tmp_path / "nover.acoa"
    bad.write_bytes(_build_archive([("works/x.manifest", b"{}\n")]))
    with pytest.raises(CorruptArchive):
        store.import_archive(repo, bad, overwrite=False)


def test_non_canonical_manifest_rejected(tmp_path, repo):
    bad = tmp_path / "noncanon.acoa"
    bad.write_bytes(
        _build_archive(
            [
                (ARCHIVE_VERSION_PATH, ARCHIVE_VERSION_PAYLOAD),
                ("works/x.manifest", b'{"title": "x"}'),
            ]
        )
    )
    with pytest.raises(CorruptArchive):
        store.import_archive(repo, bad, overwrite=False)


def test_truncated_record_header(tmp_path, repo):
    body = ARCHIVE_MAGIC + _encode_record(ARCHIVE_VERSION_PATH, ARCHIVE_VERSION_PAYLOAD)
    body += struct.pack(">I", 500)  # header promising more than exists
    bad = tmp_path / "trunc.acoa"
    bad.write_bytes(body + hashlib.sha256(body).digest())
    with pytest.raises(CorruptArchive):
        store.import_archive(repo, bad, overwrite=False)


def test_archive_excludes_credentials(tmp_path, clock):
    source = store.init_repository(tmp_path / "source", clock)
    seed_fixtures(source)
    from acoa.auth import add_admin

    add_admin(source, "curator", "s3cret-pass", iterations=10)
    archive = tmp_path / "bundle.acoa"
    store.export_archive(source, archive)
    records = list(store._decode_records(archive.read_bytes()[len(ARCHIVE_MAGIC) : -32]))
    assert all(not p.startswith("auth/") for p, _ in records)
