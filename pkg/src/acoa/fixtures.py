"""Seed content: the two Ana Vieira case-study works and the About record.

All media are generated placeholder images (solid color plus caption text),
so the repository ships no copyrighted files while keeping the documented
structure of both works intact.
"""

from __future__ import annotations

import io
import unicodedata

from .errors import AlreadySeeded
from .model import AboutContent, Artwork, Phase, SubPhase, make_slug
from .store import Repository, put_about, put_media, put_work

ARCHIVE_CREDIT = (
    "© Ana Vieira Archive, courtesy of the family and Banco de Arte Contemporânea (BAC)"
)

_PALETTE = [
    (52, 73, 94),
    (142, 68, 173),
    (39, 124, 98),
    (176, 103, 58),
    (120, 66, 68),
    (46, 96, 144),
    (105, 105, 84),
    (87, 64, 110),
    (60, 110, 113),
    (134, 84, 57),
    (72, 84, 96),
    (99, 110, 79),
]


def placeholder_image(text: str, color: tuple[int, int, int], size=(640, 400)) -> bytes:
    """Render a solid-color PNG with the given text drawn on it."""
    from PIL import Image, ImageDraw

    img = Image.new("RGB", size, color)
    draw = ImageDraw.Draw(img)
    try:
        draw.text((24, 24), text, fill=(245, 245, 240))
    except UnicodeEncodeError:
        ascii_text = (
            unicodedata.normalize("NFKD", text).encode("ascii", "ignore").decode("ascii")
        )
        draw.text((24, 24), ascii_text, fill=(245, 245, 240))
    buf = io.BytesIO()
    img.save(buf, format="PNG")
    return buf.getvalue()


def _put_placeholder(repo: Repository, text: str, color_index: int, caption: str) -> str:
    data = placeholder_image(text, _PALETTE[color_index % len(_PALETTE)])
    asset = put_media(
        repo,
        data,
        filename=f"{make_slug(text)}.png",
        content_type="image/png",
        kind="image",
        caption=caption,
        credit=ARCHIVE_CREDIT,
    )
    return asset.id


def _ensaio_work(repo: Repository) -> Artwork:
    title = "Ensaio para uma Paisagem"
    cover = _put_placeholder(repo, title, 0, title)
    conception = _put_placeholder(repo, f"{title} — Conception", 1, "Conception")
    ideas = _put_placeholder(repo, f"{title} — Ideas", 2, "Ideas")
    materials = _put_placeholder(repo, f"{title} — Materials", 3, "Materials")
    exhibition = _put_placeholder(repo, f"{title} — Exhibition", 4, "Exhibition")
    post = _put_placeholder(repo, f"{title} — Post-Exhibition", 5, "Post-Exhibition")

    return Artwork(
        id="",
        title=title,
        artist_name="Ana Vieira",
        creation_year=1997,
        cover_media=cover,
        phases=[
            Phase(
                ordinal=0,
                label="Conception",
                description=(
                    "Studies and preparations made before the installation "
                    "was first shown."
                ),
                media=[conception],
                subphases=[
                    SubPhase(
                        ordinal=0,
                        label="Ideas",
                        description=(
                            "Sketches and first drawings that carried the "
                            "installation from thought onto paper."
                        ),
                        media=[ideas],
                    ),
                    SubPhase(
                        ordinal=1,
                        label="Materials",
                        description=(
                            "Seven elements compose the installation, each "
                            "built from its own materials:\n\n"
                            "Fumo, Areia, Farol, Humidade, Ventos, Madeira, Metal"
                        ),
                        media=[materials],
                    ),
                ],
            ),
            Phase(
                ordinal=1,
                label="Exhibition",
                description=(
                    "Photographs, video and written accounts of the single "
                    "1997 presentation in Lisbon."
                ),
                media=[exhibition],
            ),
            Phase(
                ordinal=2,
                label="Post-Exhibition",
                description="Press articles and responses that followed the exhibition.",
                media=[post],
            ),
        ],
    )


def _dejeuner_work(repo: Repository) -> Artwork:
    title = "Le Déjeuner sur L'Herbe"
    cover = _put_placeholder(repo, title, 6, title)
    year_media = {
        year: _put_placeholder(repo, f"{title} — {year}", 7 + i, str(year))
        for i, year in enumerate((1977, 1998, 2011, 2017))
    }

    return Artwork(
        id="",
        title=title,
        artist_name="Ana Vieira",
        creation_year=1977,
        cover_media=cover,
        phases=[
            Phase(
                ordinal=0,
                label="1977",
                year=1977,
                description=(
                    "First presentation. The picnic setting gathers four "
                    "glasses, five plates, three bottles, one bowl, a palette "
                    "with three brushes, a picnic basket in lintel and two oranges."
                ),
                media=[year_media[1977]],
            ),
            Phase(
                ordinal=1,
                label="1998",
                year=1998,
                description="The installation is shown again in 1998.",
                media=[year_media[1998]],
            ),
            Phase(
                ordinal=2,
                label="2011",
                year=2011,
                description="A further exhibition of the installation in 2011.",
                media=[year_media[2011]],
            ),
            Phase(
                ordinal=3,
                label="2017",
                year=2017,
                description="The most recent exhibition of the installation.",
                media=[year_media[2017]],
            ),
        ],
    )


def seed_fixtures(repo: Repository) -> list[str]:
    """Install both case-study works and the About record.

    Refuses to run twice: raises ``already_seeded`` when either slug is
    already present.
    """
    expected = [make_slug("Ensaio para uma Paisagem"), make_slug("Le Déjeuner sur L'Herbe")]
    present = set(repo.work_slugs())
    if any(slug in present for slug in expected):
        raise AlreadySeeded("fixture works are already present")

    slugs = [put_work(repo, _ensaio_work(repo)), put_work(repo, _dejeuner_work(repo))]

    portrait = _put_placeholder(repo, "Ana Vieira", 11, "Ana Vieira")
    put_about(
        repo,
        AboutContent(
            title="Ana Vieira (1940–2016)",
            body=(
                "Ana Vieira (1940–2016) was a Portuguese artist whose "
                "installations stage domestic space, landscape and the act "
                "of looking.\n\n"
                "This site documents the trajectories of selected works, "
                "from conception through their exhibitions."
            ),
            media=[portrait],
        ),
    )
    return slugs
