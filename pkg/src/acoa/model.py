"""Artwork, chronology and media domain types plus structural validation.

All types are plain value objects. Validation never raises: violations are
collected into a :class:`ValidationReport` in document order so callers
(store, API, CLI) can render field-level problems.
"""

from __future__ import annotations

import dataclasses
import re
import unicodedata
from dataclasses import dataclass, field
from datetime import datetime

from .errors import InvalidCount, TruncationRefused, Unsluggable

SLUG_PATTERN = re.compile(r"[a-z0-9]+(?:-[a-z0-9]+)*")

MEDIA_KINDS = ("image", "video", "audio", "document")
PLAYBACK_STATIC = "static"
PLAYBACK_USER_INITIATED = "user_initiated"

MAX_YEAR = 9999


@dataclass
class SubPhase:
    """One nested content subdivision of a phase (exactly one level deep)."""

    ordinal: int
    label: str
    description: str = ""
    media: list[str] = field(default_factory=list)


@dataclass
class Phase:
    """One stage of an artwork's trajectory, labeled and optionally dated."""

    ordinal: int
    label: str
    year: int | None = None
    description: str = ""
    media: list[str] = field(default_factory=list)
    subphases: list[SubPhase] = field(default_factory=list)


@dataclass
class Artwork:
    """A documented work with an ordered chronology of phases.

    ``id`` is the URL slug; it may be empty on a candidate that has not
    been stored yet (the store assigns one from the title). Timestamps are
    UTC at seconds precision and are owned by the store.
    """

    id: str
    title: str
    artist_name: str
    creation_year: int | None
    cover_media: str
    phases: list[Phase]
    created_at: datetime | None = None
    updated_at: datetime | None = None


@dataclass
class MediaAsset:
    """Content-addressed binary; ``id`` equals the hex digest of the bytes."""

    id: str
    kind: str
    filename: str
    content_type: str
    byte_size: int
    checksum: str
    caption: str | None = None
    credit: str | None = None
    playback_policy: str = PLAYBACK_STATIC


@dataclass
class AboutContent:
    """The single configurable About section of a deployment."""

    title: str
    body: str = ""
    media: list[str] = field(default_factory=list)


@dataclass
class Issue:
    code: str
    path: str
    message: str


@dataclass
class ValidationReport:
    issues: list[Issue] = field(default_factory=list)

    @property
    def valid(self) -> bool:
        return not self.issues


def playback_policy_for_kind(kind: str) -> str:
    """Audio and video must be user initiated; everything else is static."""
    return PLAYBACK_USER_INITIATED if kind in ("audio", "video") else PLAYBACK_STATIC


def validate_artwork(work: Artwork) -> ValidationReport:
    """Check every structural invariant of a candidate work.

    Issues come back in document order: work fields first, then each phase
    and its subphases by position. Violations are data, not failures.
    """
    issues: list[Issue] = []

    def add(code: str, path: str, message: str) -> None:
        issues.append(Issue(code=code, path=path, message=message))

    if work.id and not SLUG_PATTERN.fullmatch(work.id):
        add("invalid_id", "id", f"id {work.id!r} is not a valid slug")
    if not work.title.strip():
        add("empty_title", "title", "title must be non-empty")
    if not work.artist_name.strip():
        add("empty_artist", "artist_name", "artist_name must be non-empty")
    if work.creation_year is not None and not 0 < work.creation_year <= MAX_YEAR:
        add(
            "year_out_of_range",
            "creation_year",
            f"creation_year {work.creation_year} outside 1..{MAX_YEAR}",
        )
    if not work.cover_media:
        add("missing_cover", "cover_media", "cover_media must reference an image asset")

    if not work.phases:
        add("no_phases", "phases", "at least one phase is required")

    last_year: int | None = None
    last_year_path = ""
    for i, phase in enumerate(work.phases):
        base = f"phases[{i}]"
        if phase.ordinal != i:
            add(
                "ordinal_mismatch",
                f"{base}.ordinal",
                f"expected ordinal {i}, found {phase.ordinal}",
            )
        if not phase.label.strip():
            add("empty_label", f"{base}.label", "phase label must be non-empty")
        if phase.year is not None:
            if not 0 < phase.year <= MAX_YEAR:
                add(
                    "year_out_of_range",
                    f"{base}.year",
                    f"year {phase.year} outside 1..{MAX_YEAR}",
                )
            elif last_year is not None and phase.year < last_year:
                add(
                    "years_not_monotone",
                    f"{base}.year",
                    f"year {phase.year} precedes {last_year} at {last_year_path}",
                )
            # Each dated phase is compared against the previous dated one.
            last_year = phase.year
            last_year_path = f"{base}.year"
        for k, ref in enumerate(phase.media):
            if not ref:
                add("bad_media_ref", f"{base}.media[{k}]", "empty media reference")
        for j, sub in enumerate(phase.subphases):
            sub_base = f"{base}.subphases[{j}]"
            if sub.ordinal != j:
                add(
                    "ordinal_mismatch",
                    f"{sub_base}.ordinal",
                    f"expected ordinal {j}, found {sub.ordinal}",
                )
            if not sub.label.strip():
                add("empty_label", f"{sub_base}.label", "subphase label must be non-empty")
            for k, ref in enumerate(sub.media):
                if not ref:
                    add("bad_media_ref", f"{sub_base}.media[{k}]", "empty media reference")

    return ValidationReport(issues=issues)


def make_slug(title: str) -> str:
    """Derive a URL slug from a title.

    Lowercases, maps accented Latin letters to their base ASCII letter, and
    collapses every maximal run of other characters into a single hyphen.
    Deterministic and idempotent.
    """
    decomposed = unicodedata.normalize("NFKD", title)
    stripped = "".join(ch for ch in decomposed if not unicodedata.combining(ch))
    lowered = stripped.lower()
    parts = re.split(r"[^a-z0-9]+", lowered)
    slug = "-".join(p for p in parts if p)
    if not slug:
        raise Unsluggable(f"no alphanumeric characters survive in {title!r}")
    return slug


def _placeholder_phase(ordinal: int) -> Phase:
    return Phase(ordinal=ordinal, label=f"Phase {ordinal + 1}")


def resize_phases(work: Artwork, new_count: int, allow_truncation: bool) -> Artwork:
    """Grow or shrink a work's chronology to ``new_count`` phases.

    Growing appends placeholder phases; shrinking drops the highest
    ordinals and is refused unless ``allow_truncation`` is set. Surviving
    phases are carried over untouched.
    """
    if new_count < 1:
        raise InvalidCount(f"phase count must be >= 1, got {new_count}")
    current = len(work.phases)
    if new_count < current and not allow_truncation:
        raise TruncationRefused(
            f"shrinking from {current} to {new_count} phases requires allow_truncation"
        )
    if new_count >= current:
        phases = list(work.phases) + [
            _placeholder_phase(k) for k in range(current, new_count)
        ]
    else:
        phases = list(work.phases[:new_count])
    return dataclasses.replace(work, phases=phases)
