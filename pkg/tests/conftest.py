from __future__ import annotations

import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from support import ManualClock

from acoa import store
from acoa.fixtures import seed_fixtures
from acoa.model import Artwork, Phase, SubPhase


@pytest.fixture
def clock() -> ManualClock:
    return ManualClock()


@pytest.fixture
def repo(tmp_path, clock):
    return store.init_repository(tmp_path / "repo", clock)


@pytest.fixture
def seeded_repo(tmp_path, clock):
    repo = store.init_repository(tmp_path / "seeded", clock)
    seed_fixtures(repo)
    return repo


@pytest.fixture
def image_id(repo) -> str:
    asset = store.put_media(
        repo, b"not-really-a-png", "cover.png", "image/png", "image", caption="Cover"
    )
    return asset.id


def build_work(cover: str, title: str = "Estudo para um Interior") -> Artwork:
    return Artwork(
        id="",
        title=title,
        artist_name="Ana Vieira",
        creation_year=1984,
        cover_media=cover,
        phases=[
            Phase(
                ordinal=0,
                label="Conception",
                description="Preparatory studies.",
                subphases=[
                    SubPhase(ordinal=0, label="Ideas", description="Sketches."),
                    SubPhase(ordinal=1, label="Materials", description="Wood, glass."),
                ],
            ),
            Phase(ordinal=1, label="Exhibition", description="First showing."),
            Phase(ordinal=2, label="Post-Exhibition", description="Press echo."),
        ],
    )


@pytest.fixture
def work(image_id) -> Artwork:
    return build_work(image_id)
