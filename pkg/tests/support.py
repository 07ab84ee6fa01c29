"""Shared helpers: controllable clock, independent oracles, random works."""

from __future__ import annotations

import random
import unicodedata
from datetime import datetime, timedelta, timezone

from acoa.model import Artwork, Phase, SubPhase


class ManualClock:
    """Injectable clock; starts at a fixed instant and only moves on demand."""

    def __init__(self, start: datetime | None = None):
        self.current = start or datetime(2024, 5, 2, 10, 0, 0, tzinfo=timezone.utc)

    def __call__(self) -> datetime:
        return self.current

    def advance(self, seconds: int = 0, hours: int = 0) -> None:
        self.current += timedelta(seconds=seconds, hours=hours)


def slug_oracle(title: str) -> str:
    """Character-by-character reference for slug derivation."""
    out: list[str] = []
    pending_hyphen = False
    for ch in unicodedata.normalize("NFKD", title):
        if unicodedata.combining(ch):
            continue
        ch = ch.lower()
        if ch in "abcdefghijklmnopqrstuvwxyz0123456789":
            if pending_hyphen and out:
                out.append("-")
            out.append(ch)
            pending_hyphen = False
        else:
            pending_hyphen = True
    return "".join(out)


def monotone_violation_indexes(years: list[int | None]) -> list[int]:
    """Brute force: indexes whose year drops below the previous dated year."""
    dated = [(i, y) for i, y in enumerate(years) if y is not None]
    return [i for (_, prev), (i, y) in zip(dated, dated[1:]) if y < prev]


_TITLE_WORDS = [
    "Estudo",
    "Paisagem",
    "Interior",
    "Véu",
    "Janela",
    "Mesa",
    "Jardim",
    "Sombra",
    "Casa",
    "Límite",
    "Objecto",
    "Horizonte",
]

_LABEL_WORDS = ["Conception", "Studies", "Exhibition", "Tour", "Restoration", "Archive"]

_DESCRIPTIONS = [
    "",
    "Notes on the staging of the installation.",
    "First paragraph.\n\nSecond paragraph with more detail.",
    "Documentação da montagem — materiais e medidas.",
]


def random_artwork(rng: random.Random, cover: str, media_pool: list[str]) -> Artwork:
    """A structurally valid random work over an existing media pool."""

    def some_media() -> list[str]:
        count = rng.randint(0, min(2, len(media_pool)))
        return [rng.choice(media_pool) for _ in range(count)]

    n_phases = rng.randint(1, 6)
    dated = rng.random() < 0.5
    years = None
    if dated:
        start = rng.randint(1400, 2020)
        years = sorted(rng.randint(start, start + 60) for _ in range(n_phases))

    phases = []
    for i in range(n_phases):
        subphases = [
            SubPhase(
                ordinal=j,
                label=f"{rng.choice(_LABEL_WORDS)} {j + 1}",
                description=rng.choice(_DESCRIPTIONS),
                media=some_media(),
            )
            for j in range(rng.randint(0, 2))
        ]
        phases.append(
            Phase(
                ordinal=i,
                label=f"{rng.choice(_LABEL_WORDS)} {i + 1}",
                year=years[i] if years else (rng.randint(1500, 2020) if rng.random() < 0.1 else None),
                description=rng.choice(_DESCRIPTIONS),
                media=some_media(),
                subphases=subphases,
            )
        )
    if not dated:
        # Undated pool may still sprinkle years; keep them monotone.
        current = None
        for phase in phases:
            if phase.year is not None:
                if current is not None and phase.year < current:
                    phase.year = current
                current = phase.year

    title = " ".join(rng.choice(_TITLE_WORDS) for _ in range(rng.randint(1, 3)))
    return Artwork(
        id="",
        title=title,
        artist_name=rng.choice(["Ana Vieira", "Helena Almeida", "Lourdes Castro"]),
        creation_year=rng.choice([None, rng.randint(1940, 2000)]),
        cover_media=cover,
        phases=phases,
    )


def strip_volatile(work: Artwork) -> Artwork:
    """Copy with slug and timestamps cleared, for modulo-comparison."""
    import dataclasses

    return dataclasses.replace(work, id="", created_at=None, updated_at=None)
