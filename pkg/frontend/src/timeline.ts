/** Horizontal chronology: ticks placed at the layout's normalized
 * positions, a detail panel for the selected phase, and sub-phase tabs
 * that switch content without losing the phase selection.
 */

import { ApiClient, Phase, WorkDetail } from "./api";
import { createMediaElement } from "./media";

export interface TimelineSelection {
  phase: number;
  subphase: number;
}

function clamp(value: number, max: number): number {
  return Math.min(Math.max(value, 0), max);
}

export function clampSelection(detail: WorkDetail, selection: TimelineSelection): TimelineSelection {
  const phase = clamp(selection.phase, detail.phases.length - 1);
  const subCount = detail.phases[phase].subphases.length;
  const subphase = subCount === 0 ? 0 : clamp(selection.subphase, subCount - 1);
  return { phase, subphase };
}

function paragraphs(text: string): HTMLElement[] {
  return text
    .split(/\n\s*\n/)
    .map((part) => part.trim())
    .filter(Boolean)
    .map((part) => {
      const p = document.createElement("p");
      p.textContent = part;
      return p;
    });
}

function mediaStrip(api: ApiClient, ids: string[]): HTMLElement | null {
  if (ids.length === 0) return null;
  const strip = document.createElement("div");
  strip.className = "media-strip";
  for (const id of ids) strip.append(createMediaElement(api, id));
  return strip;
}

function renderPhasePanel(
  api: ApiClient,
  phase: Phase,
  selection: TimelineSelection,
  onSelectSubphase: (ordinal: number) => void,
): HTMLElement {
  const panel = document.createElement("section");
  panel.className = "phase-panel";

  const heading = document.createElement("h3");
  heading.textContent = phase.year !== null ? `${phase.label}` : phase.label;
  panel.append(heading);
  panel.append(...paragraphs(phase.description));
  const strip = mediaStrip(api, phase.media);
  if (strip) panel.append(strip);

  if (phase.subphases.length > 0) {
    const tabs = document.createElement("div");
    tabs.className = "subphase-tabs";
    tabs.setAttribute("role", "tablist");
    for (const sub of phase.subphases) {
      const tab = document.createElement("button");
      tab.type = "button";
      tab.className = "subphase-tab";
      tab.setAttribute("role", "tab");
      tab.setAttribute(
        "aria-selected",
        sub.ordinal === selection.subphase ? "true" : "false",
      );
      tab.textContent = sub.label;
      tab.addEventListener("click", () => onSelectSubphase(sub.ordinal));
      tabs.append(tab);
    }
    panel.append(tabs);

    const active = phase.subphases[selection.subphase];
    const body = document.createElement("div");
    body.className = "subphase-body";
    body.append(...paragraphs(active.description));
    const subStrip = mediaStrip(api, active.media);
    if (subStrip) body.append(subStrip);
    panel.append(body);
  }
  return panel;
}

export function renderTimeline(
  container: HTMLElement,
  api: ApiClient,
  detail: WorkDetail,
  selection: TimelineSelection,
  onSelect: (selection: TimelineSelection) => void,
): void {
  const current = clampSelection(detail, selection);
  container.innerHTML = "";

  const timeline = document.createElement("div");
  timeline.className = "timeline";
  timeline.dataset.mode = detail.layout.mode;

  const track = document.createElement("div");
  track.className = "timeline-track";
  for (const tick of detail.layout.ticks) {
    const button = document.createElement("button");
    button.type = "button";
    button.className = "timeline-tick";
    button.style.left = `${(tick.position * 100).toFixed(4)}%`;
    button.setAttribute(
      "aria-selected",
      tick.ordinal === current.phase ? "true" : "false",
    );
    const label = document.createElement("span");
    label.className = "tick-label";
    label.textContent = tick.tick_label;
    button.append(label);
    button.addEventListener("click", () =>
      onSelect({ phase: tick.ordinal, subphase: 0 }),
    );
    track.append(button);
  }
  timeline.append(track);
  container.append(timeline);

  container.append(
    renderPhasePanel(api, detail.phases[current.phase], current, (subphase) =>
      onSelect({ phase: current.phase, subphase }),
    ),
  );
}
