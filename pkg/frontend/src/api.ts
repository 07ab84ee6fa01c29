/** Typed client for the backend HTTP contract.
 *
 * The admin session token lives only in this object's memory: a page
 * refresh drops it and the user logs in again. Concurrent GETs to the
 * same path share one in-flight request.
 */

export interface WorkSummary {
  slug: string;
  title: string;
  artist_name: string;
  creation_year: number | null;
  cover_media: string;
  phase_count: number;
}

export interface SubPhase {
  ordinal: number;
  label: string;
  description: string;
  media: string[];
}

export interface Phase {
  ordinal: number;
  label: string;
  year: number | null;
  description: string;
  media: string[];
  subphases: SubPhase[];
}

export interface Tick {
  ordinal: number;
  position: number;
  tick_label: string;
}

export interface TimelineLayout {
  mode: "qualitative" | "quantitative";
  ticks: Tick[];
}

export interface WorkDetail {
  id: string;
  title: string;
  artist_name: string;
  creation_year: number | null;
  cover_media: string;
  phases: Phase[];
  layout: TimelineLayout;
  created_at: string | null;
  updated_at: string | null;
}

/** The editable fields, exactly what PUT/POST /api/admin/works accepts. */
export interface WorkPayload {
  title: string;
  artist_name: string;
  creation_year: number | null;
  cover_media: string;
  phases: Phase[];
}

export interface AboutContent {
  title: string;
  body: string;
  media: string[];
}

export interface MediaAsset {
  id: string;
  kind: "image" | "video" | "audio" | "document";
  filename: string;
  content_type: string;
  byte_size: number;
  checksum: string;
  caption: string | null;
  credit: string | null;
  playback_policy: "static" | "user_initiated";
}

/** Metadata recoverable from a HEAD probe of /media/{id}. */
export interface MediaInfo {
  contentType: string;
  playbackPolicy: "static" | "user_initiated";
  caption: string | null;
  credit: string | null;
}

export interface ValidationIssue {
  code: string;
  path: string;
  message: string;
}

export class ApiError extends Error {
  constructor(
    public status: number,
    public code: string,
    message: string,
    public issues: ValidationIssue[] = [],
  ) {
    super(message);
  }
}

/** Field order fixed here so a re-submitted form is byte-identical JSON. */
export function workToPayload(work: {
  title: string;
  artist_name: string;
  creation_year: number | null;
  cover_media: string;
  phases: Phase[];
}): WorkPayload {
  return {
    title: work.title,
    artist_name: work.artist_name,
    creation_year: work.creation_year,
    cover_media: work.cover_media,
    phases: work.phases.map((phase) => ({
      ordinal: phase.ordinal,
      label: phase.label,
      year: phase.year,
      description: phase.description,
      media: [...phase.media],
      subphases: phase.subphases.map((sub) => ({
        ordinal: sub.ordinal,
        label: sub.label,
        description: sub.description,
        media: [...sub.media],
      })),
    })),
  };
}

async function toApiError(response: Response): Promise<ApiError> {
  let code = "http_error";
  let message = `request failed with status ${response.status}`;
  let issues: ValidationIssue[] = [];
  try {
    const body = await response.json();
    if (body && typeof body.code === "string") {
      code = body.code;
      message = body.message ?? message;
      issues = Array.isArray(body.issues) ? body.issues : [];
    }
  } catch {
    // non-JSON error body; keep the transport-level message
  }
  return new ApiError(response.status, code, message, issues);
}

export class ApiClient {
  token: string | null = null;
  private inflight = new Map<string, Promise<unknown>>();

  constructor(private base: string = "") {}

  mediaUrl(id: string): string {
    return `${this.base}/media/${id}`;
  }

  private async requestJson<T>(path: string, init: RequestInit = {}): Promise<T> {
    const response = await fetch(this.base + path, init);
    if (!response.ok) throw await toApiError(response);
    if (response.status === 204) return undefined as T;
    return (await response.json()) as T;
  }

  /** GETs to the same path share one in-flight promise. */
  private dedupGet<T>(path: string): Promise<T> {
    const pending = this.inflight.get(path);
    if (pending) return pending as Promise<T>;
    const request = this.requestJson<T>(path).finally(() => this.inflight.delete(path));
    this.inflight.set(path, request);
    return request;
  }

  private authHeaders(): Record<string, string> {
    if (!this.token) throw new ApiError(401, "unauthorized", "not logged in");
    return { Authorization: `Bearer ${this.token}` };
  }

  getWorks(): Promise<WorkSummary[]> {
    return this.dedupGet("/api/works");
  }

  getWork(slug: string): Promise<WorkDetail> {
    return this.dedupGet(`/api/works/${encodeURIComponent(slug)}`);
  }

  getAbout(): Promise<AboutContent> {
    return this.dedupGet("/api/about");
  }

  async getMediaInfo(id: string): Promise<MediaInfo> {
    const response = await fetch(this.mediaUrl(id), { method: "HEAD" });
    if (!response.ok) throw await toApiError(response);
    const decode = (name: string): string | null => {
      const value = response.headers.get(name);
      return value === null ? null : decodeURIComponent(value);
    };
    return {
      contentType: response.headers.get("Content-Type") ?? "application/octet-stream",
      playbackPolicy:
        response.headers.get("X-Playback-Policy") === "user_initiated"
          ? "user_initiated"
          : "static",
      caption: decode("X-Media-Caption"),
      credit: decode("X-Media-Credit"),
    };
  }

  async login(username: string, password: string): Promise<void> {
    const session = await this.requestJson<{ token: string; expires_at: string }>(
      "/api/admin/login",
      {
        method: "POST",
        headers: { "Content-Type": "application/json" },
        body: JSON.stringify({ username, password }),
      },
    );
    this.token = session.token;
  }

  logout(): void {
    this.token = null;
  }

  get isLoggedIn(): boolean {
    return this.token !== null;
  }

  async createWork(payload: WorkPayload): Promise<{ slug: string }> {
    return this.requestJson("/api/admin/works", {
      method: "POST",
      headers: { ...this.authHeaders(), "Content-Type": "application/json" },
      body: JSON.stringify(payload),
    });
  }

  async updateWork(slug: string, payload: WorkPayload): Promise<WorkDetail> {
    return this.requestJson(`/api/admin/works/${encodeURIComponent(slug)}`, {
      method: "PUT",
      headers: { ...this.authHeaders(), "Content-Type": "application/json" },
      body: JSON.stringify(payload),
    });
  }

  async deleteWork(slug: string): Promise<void> {
    return this.requestJson(
      `/api/admin/works/${encodeURIComponent(slug)}?confirm=true`,
      { method: "DELETE", headers: this.authHeaders() },
    );
  }

  async setPhaseCount(
    slug: string,
    newCount: number,
    allowTruncation: boolean,
  ): Promise<WorkDetail> {
    return this.requestJson(
      `/api/admin/works/${encodeURIComponent(slug)}/phase-count`,
      {
        method: "PUT",
        headers: { ...this.authHeaders(), "Content-Type": "application/json" },
        body: JSON.stringify({ new_count: newCount, allow_truncation: allowTruncation }),
      },
    );
  }

  async uploadMedia(
    file: File,
    kind: MediaAsset["kind"],
    caption?: string,
    credit?: string,
  ): Promise<MediaAsset> {
    const form = new FormData();
    form.append("file", file);
    form.append("kind", kind);
    if (caption) form.append("caption", caption);
    if (credit) form.append("credit", credit);
    return this.requestJson("/api/admin/media", {
      method: "POST",
      headers: this.authHeaders(),
      body: form,
    });
  }
}
