"""Timeline classification and normalized horizontal layout.

A chronology is quantitative when every phase carries a year and at least
two distinct years exist; quantitative ticks are spread proportionally
across the year span, qualitative ticks uniformly. Positions live in
[0, 1] so any renderer can scale them onto a horizontal axis.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import EmptyChronology
from .model import Phase

QUALITATIVE = "qualitative"
QUANTITATIVE = "quantitative"


@dataclass
class Tick:
    ordinal: int
    position: float
    tick_label: str


@dataclass
class TimelineLayout:
    mode: str
    ticks: list[Tick] = field(default_factory=list)


def classify(phases: list[Phase]) -> str:
    """Decide whether a chronology is qualitative or quantitative.

    Quantitative requires a year on every phase and at least two distinct
    year values; a degenerate all-equal span stays qualitative so the
    layout never divides by zero.
    """
    if not phases:
        raise EmptyChronology("cannot classify an empty chronology")
    years = [p.year for p in phases]
    if all(y is not None for y in years) and len(set(years)) >= 2:
        return QUANTITATIVE
    return QUALITATIVE


def layout(phases: list[Phase]) -> TimelineLayout:
    """Compute normalized tick positions for a validated chronology."""
    mode = classify(phases)
    n = len(phases)
    ticks: list[Tick] = []
    if n == 1:
        # A singleton can never be quantitative (needs two distinct years).
        phase = phases[0]
        ticks.append(Tick(ordinal=phase.ordinal, position=0.5, tick_label=phase.label))
        return TimelineLayout(mode=mode, ticks=ticks)

    if mode == QUANTITATIVE:
        years = [p.year for p in phases]
        y_min = min(years)
        y_max = max(years)
        span = y_max - y_min
        for phase in phases:
            position = (phase.year - y_min) / span
            ticks.append(
                Tick(ordinal=phase.ordinal, position=position, tick_label=str(phase.year))
            )
    else:
        for i, phase in enumerate(phases):
            ticks.append(
                Tick(ordinal=phase.ordinal, position=i / (n - 1), tick_label=phase.label)
            )
    return TimelineLayout(mode=mode, ticks=ticks)
