"""Canonical manifest encoding and document conversions.

Manifests are JSON restricted to strings, integers, booleans, null, lists
and string-keyed objects (never floats), emitted with sorted keys, 2-space
indent, UTF-8 and a single trailing LF. parse(serialize(doc)) and
serialize(parse(bytes)) are both identities, so byte equality is a valid
round-trip check.
"""

from __future__ import annotations

import json
from datetime import datetime, timezone
from typing import Any

from .model import (
    AboutContent,
    Artwork,
    MediaAsset,
    Phase,
    SubPhase,
)

TIMESTAMP_FORMAT = "%Y-%m-%dT%H:%M:%SZ"


def _check_tree(value: Any, path: str) -> None:
    if value is None or isinstance(value, (str, bool, int)):
        return
    if isinstance(value, float):
        raise ValueError(f"float at {path} is not canonical")
    if isinstance(value, list):
        for i, item in enumerate(value):
            _check_tree(item, f"{path}[{i}]")
        return
    if isinstance(value, dict):
        for key, item in value.items():
            if not isinstance(key, str):
                raise ValueError(f"non-string key at {path}: {key!r}")
            _check_tree(item, f"{path}.{key}")
        return
    raise ValueError(f"unsupported type {type(value).__name__} at {path}")


def canonical_dumps(doc: Any) -> str:
    _check_tree(doc, "$")
    return json.dumps(doc, ensure_ascii=False, sort_keys=True, indent=2) + "\n"


def canonical_bytes(doc: Any) -> bytes:
    return canonical_dumps(doc).encode("utf-8")


def canonical_loads(text: str | bytes) -> Any:
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    return json.loads(text)


def format_timestamp(value: datetime) -> str:
    return value.astimezone(timezone.utc).strftime(TIMESTAMP_FORMAT)


def parse_timestamp(text: str) -> datetime:
    return datetime.strptime(text, TIMESTAMP_FORMAT).replace(tzinfo=timezone.utc)


def subphase_to_doc(sub: SubPhase) -> dict:
    return {
        "ordinal": sub.ordinal,
        "label": sub.label,
        "description": sub.description,
        "media": list(sub.media),
    }


def subphase_from_doc(doc: dict) -> SubPhase:
    return SubPhase(
        ordinal=doc["ordinal"],
        label=doc["label"],
        description=doc["description"],
        media=list(doc["media"]),
    )


def phase_to_doc(phase: Phase) -> dict:
    return {
        "ordinal": phase.ordinal,
        "label": phase.label,
        "year": phase.year,
        "description": phase.description,
        "media": list(phase.media),
        "subphases": [subphase_to_doc(s) for s in phase.subphases],
    }


def phase_from_doc(doc: dict) -> Phase:
    return Phase(
        ordinal=doc["ordinal"],
        label=doc["label"],
        year=doc["year"],
        description=doc["description"],
        media=list(doc["media"]),
        subphases=[subphase_from_doc(s) for s in doc["subphases"]],
    )


def work_to_doc(work: Artwork) -> dict:
    return {
        "id": work.id,
        "title": work.title,
        "artist_name": work.artist_name,
        "creation_year": work.creation_year,
        "cover_media": work.cover_media,
        "phases": [phase_to_doc(p) for p in work.phases],
        "created_at": format_timestamp(work.created_at) if work.created_at else None,
        "updated_at": format_timestamp(work.updated_at) if work.updated_at else None,
    }


def work_from_doc(doc: dict) -> Artwork:
    return Artwork(
        id=doc["id"],
        title=doc["title"],
        artist_name=doc["artist_name"],
        creation_year=doc["creation_year"],
        cover_media=doc["cover_media"],
        phases=[phase_from_doc(p) for p in doc["phases"]],
        created_at=parse_timestamp(doc["created_at"]) if doc["created_at"] else None,
        updated_at=parse_timestamp(doc["updated_at"]) if doc["updated_at"] else None,
    )


def asset_to_doc(asset: MediaAsset) -> dict:
    return {
        "id": asset.id,
        "kind": asset.kind,
        "filename": asset.filename,
        "content_type": asset.content_type,
        "byte_size": asset.byte_size,
        "checksum": asset.checksum,
        "caption": asset.caption,
        "credit": asset.credit,
        "playback_policy": asset.playback_policy,
    }


def asset_from_doc(doc: dict) -> MediaAsset:
    return MediaAsset(
        id=doc["id"],
        kind=doc["kind"],
        filename=doc["filename"],
        content_type=doc["content_type"],
        byte_size=doc["byte_size"],
        checksum=doc["checksum"],
        caption=doc["caption"],
        credit=doc["credit"],
        playback_policy=doc["playback_policy"],
    )


def about_to_doc(about: AboutContent) -> dict:
    return {
        "title": about.title,
        "body": about.body,
        "media": list(about.media),
    }


def about_from_doc(doc: dict) -> AboutContent:
    return AboutContent(
        title=doc["title"],
        body=doc["body"],
        media=list(doc["media"]),
    )
