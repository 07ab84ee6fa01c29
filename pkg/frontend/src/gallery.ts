/** Works gallery: cover grid for the public landing view. */

import { ApiClient, WorkSummary } from "./api";
import { coverImage } from "./media";

export interface GalleryCallbacks {
  openWork: (slug: string) => void;
  newWork?: () => void;
}

function errorBanner(message: string, retry: () => void): HTMLElement {
  const banner = document.createElement("div");
  banner.className = "error-banner";
  const text = document.createElement("span");
  text.textContent = message;
  const button = document.createElement("button");
  button.type = "button";
  button.className = "retry";
  button.textContent = "Retry";
  button.addEventListener("click", retry);
  banner.append(text, button);
  return banner;
}

function workCard(api: ApiClient, summary: WorkSummary, open: () => void): HTMLElement {
  const card = document.createElement("article");
  card.className = "work-card";
  card.tabIndex = 0;
  card.append(coverImage(api, summary.cover_media, summary.title));

  const title = document.createElement("h3");
  title.textContent = summary.title;
  const artist = document.createElement("p");
  artist.className = "artist";
  artist.textContent =
    summary.creation_year !== null
      ? `${summary.artist_name}, ${summary.creation_year}`
      : summary.artist_name;
  card.append(title, artist);

  card.addEventListener("click", open);
  card.addEventListener("keydown", (event) => {
    if (event.key === "Enter") open();
  });
  return card;
}

export async function renderGallery(
  container: HTMLElement,
  api: ApiClient,
  callbacks: GalleryCallbacks,
): Promise<void> {
  container.innerHTML = "";
  const heading = document.createElement("h2");
  heading.textContent = "Works";
  container.append(heading);

  if (api.isLoggedIn && callbacks.newWork) {
    const add = document.createElement("button");
    add.type = "button";
    add.className = "new-work";
    add.textContent = "New work";
    add.addEventListener("click", () => callbacks.newWork?.());
    container.append(add);
  }

  let works: WorkSummary[];
  try {
    works = await api.getWorks();
  } catch {
    container.append(
      errorBanner("The works list could not be loaded.", () =>
        void renderGallery(container, api, callbacks),
      ),
    );
    return;
  }

  if (works.length === 0) {
    const empty = document.createElement("p");
    empty.className = "empty-state";
    empty.textContent = "No works have been published yet.";
    container.append(empty);
    return;
  }

  const grid = document.createElement("div");
  grid.className = "work-grid";
  for (const summary of works) {
    grid.append(workCard(api, summary, () => callbacks.openWork(summary.slug)));
  }
  container.append(grid);
}
