"""File-backed repository for works, media blobs, About content and admin
credentials.

Layout under the repository root:

    acoa.repo                  marker file, format version line
    works/<slug>.manifest      canonical work manifest
    media/<d0d1>/<digest>      raw blob, content-addressed by sha256
    media/<d0d1>/<digest>.meta asset metadata manifest
    about.manifest             the single About record
    auth/users.manifest        admin credentials

Writes are atomic (temp file + rename) and serialized through a single
writer lock; readers only ever observe fully committed files. Blobs are
deduplicated by digest and retained when works are deleted.
"""

from __future__ import annotations

import hashlib
import os
import struct
import tempfile
import threading
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path
from typing import Callable, Iterator

from . import encoding
from .errors import (
    AlreadyInitialized,
    ConfirmationRequired,
    CorruptArchive,
    DanglingMediaRef,
    EmptyBlob,
    InvalidAbout,
    InvalidWork,
    IoFailure,
    KindMismatch,
    NotARepository,
    NotFound,
    VersionUnsupported,
)
from .model import (
    AboutContent,
    Artwork,
    Issue,
    MediaAsset,
    ValidationReport,
    make_slug,
    playback_policy_for_kind,
    validate_artwork,
)

MARKER_NAME = "acoa.repo"
MARKER_LINE = "acoa-repo 1"

ARCHIVE_MAGIC = b"ACOA1"
ARCHIVE_VERSION_PATH = "manifest-version"
ARCHIVE_VERSION_PAYLOAD = b"acoa-archive 1\n"

Clock = Callable[[], datetime]

# Rebindable seam so tests can inject a crash between temp write and rename.
_replace = os.replace


def _utc_now() -> datetime:
    return datetime.now(timezone.utc)


def _atomic_write_bytes(path: Path, data: bytes) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp_name = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.")
    try:
        with os.fdopen(fd, "wb") as handle:
            handle.write(data)
        _replace(tmp_name, path)
    finally:
        if os.path.exists(tmp_name):
            os.unlink(tmp_name)


def digest_bytes(data: bytes) -> str:
    return hashlib.sha256(data).hexdigest()


@dataclass
class WorkSummary:
    slug: str
    title: str
    artist_name: str
    creation_year: int | None
    cover_media: str
    phase_count: int


@dataclass
class ImportReport:
    works_imported: list[str] = field(default_factory=list)
    works_skipped: list[str] = field(default_factory=list)
    blobs_added: int = 0
    about_imported: bool = False
    about_skipped: bool = False


class Repository:
    """A single repository rooted at a directory; one writer, many readers."""

    def __init__(self, root: Path, clock: Clock | None = None):
        self.root = Path(root)
        self._clock = clock or _utc_now
        self._lock = threading.RLock()
        self._works: dict[str, Path] = {}
        self._media: dict[str, Path] = {}

    # -- paths ---------------------------------------------------------

    @property
    def works_dir(self) -> Path:
        return self.root / "works"

    @property
    def media_dir(self) -> Path:
        return self.root / "media"

    @property
    def about_path(self) -> Path:
        return self.root / "about.manifest"

    @property
    def users_path(self) -> Path:
        return self.root / "auth" / "users.manifest"

    def work_path(self, slug: str) -> Path:
        return self.works_dir / f"{slug}.manifest"

    def blob_path(self, digest: str) -> Path:
        return self.media_dir / digest[:2] / digest

    def meta_path(self, digest: str) -> Path:
        return self.media_dir / digest[:2] / f"{digest}.meta"

    # -- time ----------------------------------------------------------

    def now(self) -> datetime:
        """Current UTC time truncated to seconds precision."""
        return self._clock().astimezone(timezone.utc).replace(microsecond=0)

    # -- index ---------------------------------------------------------

    def _scan(self) -> None:
        self._works = {}
        self._media = {}
        if self.works_dir.is_dir():
            for entry in sorted(self.works_dir.iterdir()):
                if entry.name.endswith(".manifest"):
                    self._works[entry.name[: -len(".manifest")]] = entry
        if self.media_dir.is_dir():
            for bucket in sorted(self.media_dir.iterdir()):
                if not bucket.is_dir():
                    continue
                for entry in sorted(bucket.iterdir()):
                    if not entry.name.endswith(".meta"):
                        self._media[entry.name] = entry

    def work_slugs(self) -> list[str]:
        with self._lock:
            return sorted(self._works)

    def media_digests(self) -> list[str]:
        with self._lock:
            return sorted(self._media)

    def has_media(self, digest: str) -> bool:
        with self._lock:
            return digest in self._media


def init_repository(path: str | Path, clock: Clock | None = None) -> Repository:
    """Create a new repository in an empty or absent directory."""
    root = Path(path)
    marker = root / MARKER_NAME
    if marker.exists():
        raise AlreadyInitialized(f"{root} already contains a repository")
    if root.exists() and any(root.iterdir()):
        raise IoFailure(f"{root} exists and is not empty")
    try:
        root.mkdir(parents=True, exist_ok=True)
        (root / "works").mkdir()
        (root / "media").mkdir()
        (root / "auth").mkdir()
        _atomic_write_bytes(marker, f"{MARKER_LINE}\n".encode("utf-8"))
    except OSError as exc:
        raise IoFailure(f"cannot initialize repository at {root}: {exc}") from exc
    repo = Repository(root, clock)
    repo._scan()
    return repo


def open_repository(path: str | Path, clock: Clock | None = None) -> Repository:
    """Open an existing repository, rebuilding the indices by scanning."""
    root = Path(path)
    marker = root / MARKER_NAME
    if not marker.is_file():
        raise NotARepository(f"{root} is not a repository (missing {MARKER_NAME})")
    first_line = marker.read_text(encoding="utf-8").splitlines()
    if not first_line or first_line[0] != MARKER_LINE:
        raise NotARepository(f"{root} has an unsupported repository format")
    repo = Repository(root, clock)
    repo._scan()
    return repo


# -- works ---------------------------------------------------------------


def collect_media_refs(work: Artwork) -> list[str]:
    refs = [work.cover_media]
    for phase in work.phases:
        refs.extend(phase.media)
        for sub in phase.subphases:
            refs.extend(sub.media)
    return refs


def _assign_slug(repo: Repository, title: str) -> str:
    base = make_slug(title)
    if base not in repo._works:
        return base
    k = 2
    while f"{base}-{k}" in repo._works:
        k += 1
    return f"{base}-{k}"


def put_work(repo: Repository, work: Artwork) -> str:
    """Validate and persist a work, assigning or retaining its slug.

    A work with an empty id gets a slug derived from its title (suffixed
    -2, -3, ... on collision); a non-empty id targets that exact slug,
    updating it when present. Timestamps are owned by the store.
    """
    report = validate_artwork(work)
    if not report.valid:
        raise InvalidWork("work fails validation", report=report)

    with repo._lock:
        missing = sorted({r for r in collect_media_refs(work) if not repo.has_media(r)})
        if missing:
            raise DanglingMediaRef(f"unresolved media reference(s): {', '.join(missing)}")
        cover = _read_asset(repo, work.cover_media)
        if cover.kind != "image":
            raise InvalidWork(
                "cover must be an image asset",
                report=ValidationReport(
                    issues=[
                        Issue(
                            code="cover_not_image",
                            path="cover_media",
                            message=f"cover asset {work.cover_media} has kind {cover.kind}",
                        )
                    ]
                ),
            )

        slug = work.id or _assign_slug(repo, work.title)
        now = repo.now()
        created_at = now
        existing_path = repo._works.get(slug)
        if existing_path is not None:
            existing = encoding.work_from_doc(
                encoding.canonical_loads(existing_path.read_bytes())
            )
            if existing.created_at is not None:
                created_at = existing.created_at

        stored = Artwork(
            id=slug,
            title=work.title,
            artist_name=work.artist_name,
            creation_year=work.creation_year,
            cover_media=work.cover_media,
            phases=work.phases,
            created_at=created_at,
            updated_at=now,
        )
        try:
            _atomic_write_bytes(
                repo.work_path(slug), encoding.canonical_bytes(encoding.work_to_doc(stored))
            )
        except OSError as exc:
            raise IoFailure(f"cannot write manifest for {slug}: {exc}") from exc
        repo._works[slug] = repo.work_path(slug)
        return slug


def get_work(repo: Repository, slug: str) -> Artwork:
    with repo._lock:
        path = repo._works.get(slug)
    if path is None:
        raise NotFound(f"no work with slug {slug!r}")
    try:
        return encoding.work_from_doc(encoding.canonical_loads(path.read_bytes()))
    except OSError as exc:
        raise IoFailure(f"cannot read manifest for {slug}: {exc}") from exc


def list_works(repo: Repository) -> list[WorkSummary]:
    """Summaries of all works, sorted by title then slug."""
    summaries = []
    for slug in repo.work_slugs():
        work = get_work(repo, slug)
        summaries.append(
            WorkSummary(
                slug=slug,
                title=work.title,
                artist_name=work.artist_name,
                creation_year=work.creation_year,
                cover_media=work.cover_media,
                phase_count=len(work.phases),
            )
        )
    summaries.sort(key=lambda s: (s.title, s.slug))
    return summaries


def delete_work(repo: Repository, slug: str, confirm: bool) -> None:
    """Remove a work's manifest; blobs stay (they may be shared)."""
    if not confirm:
        raise ConfirmationRequired(f"deleting {slug!r} requires confirmation")
    with repo._lock:
        path = repo._works.get(slug)
        if path is None:
            raise NotFound(f"no work with slug {slug!r}")
        try:
            path.unlink()
        except OSError as exc:
            raise IoFailure(f"cannot delete manifest for {slug}: {exc}") from exc
        del repo._works[slug]


# -- media ---------------------------------------------------------------

_KIND_MIME_PREFIX = {"image": "image/", "video": "video/", "audio": "audio/"}


def _check_kind(kind: str, content_type: str) -> None:
    if kind not in _KIND_MIME_PREFIX and kind != "document":
        raise KindMismatch(f"unknown media kind {kind!r}")
    prefix = _KIND_MIME_PREFIX.get(kind)
    if prefix is not None:
        if not content_type.startswith(prefix):
            raise KindMismatch(f"kind {kind} does not match content type {content_type}")
    else:
        # Documents are everything that is not image/video/audio.
        if any(content_type.startswith(p) for p in _KIND_MIME_PREFIX.values()):
            raise KindMismatch(f"kind document does not match content type {content_type}")


def _read_asset(repo: Repository, digest: str) -> MediaAsset:
    meta = repo.meta_path(digest)
    try:
        return encoding.asset_from_doc(encoding.canonical_loads(meta.read_bytes()))
    except OSError as exc:
        raise IoFailure(f"cannot read metadata for {digest}: {exc}") from exc


def put_media(
    repo: Repository,
    data: bytes,
    filename: str,
    content_type: str,
    kind: str,
    caption: str | None = None,
    credit: str | None = None,
) -> MediaAsset:
    """Store a blob content-addressed by its sha256 digest.

    Identical bytes always map to the same id and a single stored blob;
    re-uploads refresh the sidecar metadata.
    """
    if not data:
        raise EmptyBlob("media content must be non-empty")
    _check_kind(kind, content_type)
    digest = digest_bytes(data)
    asset = MediaAsset(
        id=digest,
        kind=kind,
        filename=filename,
        content_type=content_type,
        byte_size=len(data),
        checksum=digest,
        caption=caption,
        credit=credit,
        playback_policy=playback_policy_for_kind(kind),
    )
    with repo._lock:
        try:
            if not repo.has_media(digest):
                _atomic_write_bytes(repo.blob_path(digest), data)
            _atomic_write_bytes(
                repo.meta_path(digest), encoding.canonical_bytes(encoding.asset_to_doc(asset))
            )
        except OSError as exc:
            raise IoFailure(f"cannot store media {digest}: {exc}") from exc
        repo._media[digest] = repo.blob_path(digest)
    return asset


def get_media(repo: Repository, digest: str) -> tuple[MediaAsset, bytes]:
    if not repo.has_media(digest):
        raise NotFound(f"no media with id {digest!r}")
    asset = _read_asset(repo, digest)
    try:
        data = repo.blob_path(digest).read_bytes()
    except OSError as exc:
        raise IoFailure(f"cannot read blob {digest}: {exc}") from exc
    if digest_bytes(data) != digest:
        raise IoFailure(f"blob {digest} is corrupt on disk")
    return asset, data


def get_media_asset(repo: Repository, digest: str) -> MediaAsset:
    """Asset metadata without the blob bytes."""
    if not repo.has_media(digest):
        raise NotFound(f"no media with id {digest!r}")
    return _read_asset(repo, digest)


# -- about ----------------------------------------------------------------


def put_about(repo: Repository, about: AboutContent) -> None:
    if not about.title.strip():
        raise InvalidAbout("about title must be non-empty")
    with repo._lock:
        missing = sorted({r for r in about.media if not repo.has_media(r)})
        if missing:
            raise DanglingMediaRef(f"unresolved media reference(s): {', '.join(missing)}")
        try:
            _atomic_write_bytes(
                repo.about_path, encoding.canonical_bytes(encoding.about_to_doc(about))
            )
        except OSError as exc:
            raise IoFailure(f"cannot write about manifest: {exc}") from exc


def get_about(repo: Repository) -> AboutContent:
    if not repo.about_path.is_file():
        raise NotFound("about content has not been configured")
    return encoding.about_from_doc(encoding.canonical_loads(repo.about_path.read_bytes()))


# -- auth users manifest (encoding owned here, semantics in auth) ----------


def read_auth_users(repo: Repository) -> dict:
    if not repo.users_path.is_file():
        return {}
    doc = encoding.canonical_loads(repo.users_path.read_bytes())
    return doc.get("users", {})


def write_auth_users(repo: Repository, users: dict) -> None:
    with repo._lock:
        try:
            _atomic_write_bytes(repo.users_path, encoding.canonical_bytes({"users": users}))
        except OSError as exc:
            raise IoFailure(f"cannot write users manifest: {exc}") from exc


# -- archive ----------------------------------------------------------------


def _encode_record(path: str, data: bytes) -> bytes:
    path_bytes = path.encode("utf-8")
    return struct.pack(">I", len(path_bytes)) + path_bytes + struct.pack(">Q", len(data)) + data


def _decode_records(body: bytes) -> Iterator[tuple[str, bytes]]:
    offset = 0
    total = len(body)
    while offset < total:
        if offset + 4 > total:
            raise CorruptArchive("truncated record header")
        (path_len,) = struct.unpack_from(">I", body, offset)
        offset += 4
        if offset + path_len + 8 > total:
            raise CorruptArchive("truncated record path")
        path = body[offset : offset + path_len].decode("utf-8")
        offset += path_len
        (data_len,) = struct.unpack_from(">Q", body, offset)
        offset += 8
        if offset + data_len > total:
            raise CorruptArchive("truncated record payload")
        yield path, body[offset : offset + data_len]
        offset += data_len


def export_archive(repo: Repository, out_path: str | Path) -> None:
    """Write a self-contained archive: version, manifests, referenced blobs."""
    records: list[tuple[str, bytes]] = [(ARCHIVE_VERSION_PATH, ARCHIVE_VERSION_PAYLOAD)]
    referenced: set[str] = set()
    try:
        with repo._lock:
            for slug in repo.work_slugs():
                raw = repo.work_path(slug).read_bytes()
                records.append((f"works/{slug}.manifest", raw))
                referenced.update(
                    collect_media_refs(encoding.work_from_doc(encoding.canonical_loads(raw)))
                )
            if repo.about_path.is_file():
                raw = repo.about_path.read_bytes()
                records.append(("about.manifest", raw))
                referenced.update(encoding.about_from_doc(encoding.canonical_loads(raw)).media)
            for digest in sorted(referenced):
                if not repo.has_media(digest):
                    raise DanglingMediaRef(f"repository references missing blob {digest}")
                rel = f"media/{digest[:2]}/{digest}"
                records.append((rel, repo.blob_path(digest).read_bytes()))
                records.append((f"{rel}.meta", repo.meta_path(digest).read_bytes()))
    except OSError as exc:
        raise IoFailure(f"cannot read repository contents: {exc}") from exc
    body = ARCHIVE_MAGIC + b"".join(_encode_record(p, d) for p, d in records)
    payload = body + hashlib.sha256(body).digest()
    try:
        _atomic_write_bytes(Path(out_path), payload)
    except OSError as exc:
        raise IoFailure(f"cannot write archive {out_path}: {exc}") from exc


def _canonical_or_corrupt(raw: bytes, what: str) -> dict:
    try:
        doc = encoding.canonical_loads(raw)
    except ValueError as exc:
        raise CorruptArchive(f"{what} is not valid JSON: {exc}") from exc
    if encoding.canonical_bytes(doc) != raw:
        raise CorruptArchive(f"{what} is not in canonical form")
    return doc


def import_archive(repo: Repository, in_path: str | Path, overwrite: bool) -> ImportReport:
    """Install archive contents; slug collisions are skipped unless overwriting."""
    try:
        raw = Path(in_path).read_bytes()
    except OSError as exc:
        raise IoFailure(f"cannot read archive {in_path}: {exc}") from exc
    if len(raw) < len(ARCHIVE_MAGIC) + 32 or not raw.startswith(ARCHIVE_MAGIC):
        raise CorruptArchive("missing archive magic")
    body, trailer = raw[:-32], raw[-32:]
    if hashlib.sha256(body).digest() != trailer:
        raise CorruptArchive("archive digest mismatch")

    records = list(_decode_records(body[len(ARCHIVE_MAGIC) :]))
    if not records or records[0][0] != ARCHIVE_VERSION_PATH:
        raise CorruptArchive("archive is missing its version record")
    if records[0][1] != ARCHIVE_VERSION_PAYLOAD:
        raise VersionUnsupported(
            f"unsupported archive version {records[0][1].decode('utf-8', 'replace').strip()!r}"
        )

    blobs: dict[str, bytes] = {}
    metas: dict[str, bytes] = {}
    works: list[tuple[str, bytes]] = []
    about_raw: bytes | None = None
    for path, data in records[1:]:
        if path.startswith("works/") and path.endswith(".manifest"):
            works.append((path[len("works/") : -len(".manifest")], data))
        elif path == "about.manifest":
            about_raw = data
        elif path.startswith("media/") and path.endswith(".meta"):
            metas[path.split("/")[-1][: -len(".meta")]] = data
        elif path.startswith("media/"):
            blobs[path.split("/")[-1]] = data
        else:
            raise CorruptArchive(f"unexpected archive entry {path!r}")

    report = ImportReport()
    with repo._lock:
        for digest, data in sorted(blobs.items()):
            if digest_bytes(data) != digest:
                raise CorruptArchive(f"blob {digest} fails its checksum")
            meta_raw = metas.get(digest)
            if meta_raw is None:
                raise CorruptArchive(f"blob {digest} has no metadata record")
            asset = encoding.asset_from_doc(_canonical_or_corrupt(meta_raw, f"metadata {digest}"))
            if asset.id != digest or asset.checksum != digest or asset.byte_size != len(data):
                raise CorruptArchive(f"metadata {digest} does not describe its blob")
            is_new = not repo.has_media(digest)
            try:
                if is_new:
                    _atomic_write_bytes(repo.blob_path(digest), data)
                    report.blobs_added += 1
                if is_new or overwrite:
                    _atomic_write_bytes(repo.meta_path(digest), meta_raw)
            except OSError as exc:
                raise IoFailure(f"cannot write blob {digest}: {exc}") from exc
            repo._media[digest] = repo.blob_path(digest)

        for slug, data in works:
            doc = _canonical_or_corrupt(data, f"manifest {slug}")
            try:
                work = encoding.work_from_doc(doc)
            except (KeyError, TypeError, ValueError) as exc:
                raise CorruptArchive(f"manifest {slug} is malformed: {exc}") from exc
            if work.id != slug:
                raise CorruptArchive(f"manifest {slug} carries mismatched id {work.id!r}")
            if not validate_artwork(work).valid:
                raise CorruptArchive(f"manifest {slug} fails validation")
            missing = [r for r in collect_media_refs(work) if not repo.has_media(r)]
            if missing:
                raise CorruptArchive(f"manifest {slug} references missing blobs")
            if slug in repo._works and not overwrite:
                report.works_skipped.append(slug)
                continue
            try:
                _atomic_write_bytes(repo.work_path(slug), data)
            except OSError as exc:
                raise IoFailure(f"cannot write manifest {slug}: {exc}") from exc
            repo._works[slug] = repo.work_path(slug)
            report.works_imported.append(slug)

        if about_raw is not None:
            about_doc = _canonical_or_corrupt(about_raw, "about manifest")
            try:
                encoding.about_from_doc(about_doc)
            except (KeyError, TypeError, ValueError) as exc:
                raise CorruptArchive(f"about manifest is malformed: {exc}") from exc
            if repo.about_path.is_file() and not overwrite:
                report.about_skipped = True
            else:
                try:
                    _atomic_write_bytes(repo.about_path, about_raw)
                except OSError as exc:
                    raise IoFailure(f"cannot write about manifest: {exc}") from exc
                report.about_imported = True

    return report
