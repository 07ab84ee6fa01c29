/** Media rendering: images inline, video paused with controls, audio
 * strictly click-to-play. Nothing here ever sets an autoplay attribute;
 * playback of sound only starts from an explicit user action.
 */

import { ApiClient, MediaInfo } from "./api";

function captionLine(info: MediaInfo): HTMLElement | null {
  if (!info.caption && !info.credit) return null;
  const caption = document.createElement("figcaption");
  if (info.caption) {
    const text = document.createElement("span");
    text.className = "media-caption";
    text.textContent = info.caption;
    caption.append(text);
  }
  if (info.credit) {
    const credit = document.createElement("span");
    credit.className = "media-credit";
    credit.textContent = info.credit;
    caption.append(credit);
  }
  return caption;
}

function placeholder(text: string): HTMLElement {
  const box = document.createElement("div");
  box.className = "media-missing";
  box.setAttribute("role", "img");
  box.setAttribute("aria-label", text);
  box.textContent = text;
  return box;
}

function renderImage(figure: HTMLElement, url: string, info: MediaInfo): void {
  const img = document.createElement("img");
  img.src = url;
  img.alt = info.caption ?? "artwork media";
  img.loading = "lazy";
  img.addEventListener("error", () => {
    img.replaceWith(placeholder(img.alt));
  });
  figure.append(img);
}

function renderVideo(figure: HTMLElement, url: string, info: MediaInfo): void {
  const video = document.createElement("video");
  video.controls = true;
  video.preload = "metadata";
  video.src = url;
  if (info.caption) video.title = info.caption;
  figure.append(video);
}

function renderAudio(figure: HTMLElement, url: string, info: MediaInfo): void {
  const button = document.createElement("button");
  button.type = "button";
  button.className = "audio-play";
  button.textContent = `Play audio${info.caption ? `: ${info.caption}` : ""}`;
  button.addEventListener("click", () => {
    const audio = document.createElement("audio");
    audio.controls = true;
    audio.src = url;
    button.replaceWith(audio);
    try {
      void audio.play()?.catch(() => undefined);
    } catch {
      // some environments have no playback engine; controls remain usable
    }
  });
  figure.append(button);
}

function renderDocument(figure: HTMLElement, url: string, info: MediaInfo): void {
  const link = document.createElement("a");
  link.href = url;
  link.target = "_blank";
  link.rel = "noopener";
  link.textContent = info.caption ?? "Open document";
  figure.append(link);
}

/** Create a figure for a media id; resolves its kind from a HEAD probe. */
export function createMediaElement(api: ApiClient, mediaId: string): HTMLElement {
  const figure = document.createElement("figure");
  figure.className = "media-item";
  figure.dataset.mediaId = mediaId;
  const url = api.mediaUrl(mediaId);

  api
    .getMediaInfo(mediaId)
    .then((info) => {
      if (info.contentType.startsWith("image/")) {
        renderImage(figure, url, info);
      } else if (info.contentType.startsWith("video/")) {
        renderVideo(figure, url, info);
      } else if (info.contentType.startsWith("audio/")) {
        renderAudio(figure, url, info);
      } else {
        renderDocument(figure, url, info);
      }
      const caption = captionLine(info);
      if (caption) figure.append(caption);
    })
    .catch(() => {
      figure.append(placeholder("media unavailable"));
    });

  return figure;
}

/** Plain cover thumbnail for gallery cards (no HEAD probe needed). */
export function coverImage(api: ApiClient, mediaId: string, alt: string): HTMLImageElement {
  const img = document.createElement("img");
  img.className = "cover";
  img.src = api.mediaUrl(mediaId);
  img.alt = alt;
  img.loading = "lazy";
  img.addEventListener("error", () => {
    img.replaceWith(placeholder(alt));
  });
  return img;
}
