/** Shared fixture data and a recording fetch mock. */

import { vi } from "vitest";
import { AboutContent, WorkDetail, WorkSummary } from "../src/api";

export const COVER_A = "a".repeat(64);
export const COVER_B = "b".repeat(64);
export const MEDIA_IMG = "c".repeat(64);
export const MEDIA_AUDIO = "d".repeat(64);

export const ENSAIO: WorkDetail = {
  id: "ensaio-para-uma-paisagem",
  title: "Ensaio para uma Paisagem",
  artist_name: "Ana Vieira",
  creation_year: 1997,
  cover_media: COVER_A,
  phases: [
    {
      ordinal: 0,
      label: "Conception",
      year: null,
      description: "Preparatory studies.\n\nFrom idea to paper.",
      media: [MEDIA_IMG],
      subphases: [
        { ordinal: 0, label: "Ideas", description: "Sketches on paper.", media: [] },
        { ordinal: 1, label: "Materials", description: "Seven elements.", media: [] },
      ],
    },
    {
      ordinal: 1,
      label: "Exhibition",
      year: null,
      description: "The 1997 presentation.",
      media: [],
      subphases: [],
    },
    {
      ordinal: 2,
      label: "Post-Exhibition",
      year: null,
      description: "Press response.",
      media: [],
      subphases: [],
    },
  ],
  layout: {
    mode: "qualitative",
    ticks: [
      { ordinal: 0, position: 0.0, tick_label: "Conception" },
      { ordinal: 1, position: 0.5, tick_label: "Exhibition" },
      { ordinal: 2, position: 1.0, tick_label: "Post-Exhibition" },
    ],
  },
  created_at: "2024-05-02T10:00:00Z",
  updated_at: "2024-05-02T10:00:00Z",
};

export const DEJEUNER: WorkDetail = {
  id: "le-dejeuner-sur-l-herbe",
  title: "Le Déjeuner sur L'Herbe",
  artist_name: "Ana Vieira",
  creation_year: 1977,
  cover_media: COVER_B,
  phases: [1977, 1998, 2011, 2017].map((year, i) => ({
    ordinal: i,
    label: String(year),
    year,
    description: i === 0 ? "First presentation." : "",
    media: [],
    subphases: [],
  })),
  layout: {
    mode: "quantitative",
    ticks: [
      { ordinal: 0, position: 0.0, tick_label: "1977" },
      { ordinal: 1, position: 0.525, tick_label: "1998" },
      { ordinal: 2, position: 0.85, tick_label: "2011" },
      { ordinal: 3, position: 1.0, tick_label: "2017" },
    ],
  },
  created_at: "2024-05-02T10:00:00Z",
  updated_at: "2024-05-02T10:00:00Z",
};

export function summaryOf(detail: WorkDetail): WorkSummary {
  return {
    slug: detail.id,
    title: detail.title,
    artist_name: detail.artist_name,
    creation_year: detail.creation_year,
    cover_media: detail.cover_media,
    phase_count: detail.phases.length,
  };
}

export const ABOUT: AboutContent = {
  title: "Ana Vieira (1940–2016)",
  body: "Portuguese artist.\n\nDocumented here.",
  media: [],
};

export interface Recorded {
  method: string;
  url: string;
  headers: Headers;
  body: unknown;
  rawBody: BodyInit | null | undefined;
}

export type MockHandler = (request: Recorded) => Response | undefined;

export function jsonResponse(data: unknown, status = 200): Response {
  return new Response(JSON.stringify(data), {
    status,
    headers: { "Content-Type": "application/json" },
  });
}

export function headResponse(headers: Record<string, string>, status = 200): Response {
  return new Response(null, { status, headers });
}

export interface FetchMock {
  requests: Recorded[];
  handle: (handler: MockHandler) => void;
}

/** Replace global fetch with a recorder dispatching to stacked handlers. */
export function installFetch(...handlers: MockHandler[]): FetchMock {
  const requests: Recorded[] = [];
  const stack = [...handlers];
  const mock: FetchMock = {
    requests,
    handle: (handler) => stack.push(handler),
  };

  vi.stubGlobal(
    "fetch",
    vi.fn(async (input: RequestInfo | URL, init?: RequestInit) => {
      const url = typeof input === "string" ? input : input.toString();
      const method = (init?.method ?? "GET").toUpperCase();
      let body: unknown = init?.body;
      if (typeof init?.body === "string") {
        try {
          body = JSON.parse(init.body);
        } catch {
          body = init.body;
        }
      }
      const recorded: Recorded = {
        method,
        url,
        headers: new Headers(init?.headers),
        body,
        rawBody: init?.body,
      };
      requests.push(recorded);
      for (let i = stack.length - 1; i >= 0; i -= 1) {
        const response = stack[i](recorded);
        if (response) return response;
      }
      return jsonResponse({ code: "not_found", message: `no handler for ${url}` }, 404);
    }),
  );
  return mock;
}

/** Default read-only backend covering both fixture works. */
export function publicBackend(): MockHandler {
  return ({ method, url }) => {
    if (method === "GET" && url === "/api/works") {
      return jsonResponse([summaryOf(ENSAIO), summaryOf(DEJEUNER)]);
    }
    if (method === "GET" && url === `/api/works/${ENSAIO.id}`) return jsonResponse(ENSAIO);
    if (method === "GET" && url === `/api/works/${DEJEUNER.id}`) return jsonResponse(DEJEUNER);
    if (method === "GET" && url === "/api/about") return jsonResponse(ABOUT);
    if (method === "HEAD" && url.startsWith("/media/")) {
      return headResponse({
        "Content-Type": url.includes(MEDIA_AUDIO) ? "audio/mpeg" : "image/png",
        "X-Playback-Policy": url.includes(MEDIA_AUDIO) ? "user_initiated" : "static",
      });
    }
    return undefined;
  };
}

export async function waitFor(
  predicate: () => boolean,
  timeoutMs = 1500,
): Promise<void> {
  const start = Date.now();
  while (!predicate()) {
    if (Date.now() - start > timeoutMs) throw new Error("waitFor timed out");
    await new Promise((resolve) => setTimeout(resolve, 5));
  }
}

export function flush(): Promise<void> {
  return new Promise((resolve) => setTimeout(resolve, 0));
}
