/** About view: the configured biographical section. */

import { ApiClient, ApiError } from "./api";
import { createMediaElement } from "./media";

export async function renderAbout(container: HTMLElement, api: ApiClient): Promise<void> {
  container.innerHTML = "";
  try {
    const about = await api.getAbout();
    const heading = document.createElement("h2");
    heading.textContent = about.title;
    container.append(heading);
    for (const part of about.body.split(/\n\s*\n/)) {
      if (!part.trim()) continue;
      const p = document.createElement("p");
      p.textContent = part.trim();
      container.append(p);
    }
    if (about.media.length > 0) {
      const strip = document.createElement("div");
      strip.className = "media-strip";
      for (const id of about.media) strip.append(createMediaElement(api, id));
      container.append(strip);
    }
  } catch (error) {
    const message = document.createElement("p");
    message.className = "empty-state";
    message.textContent =
      error instanceof ApiError && error.status === 404
        ? "The About section has not been configured yet."
        : "The About section could not be loaded.";
    container.append(message);
  }
}
