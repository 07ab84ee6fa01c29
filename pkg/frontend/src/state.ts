/** Hash-based routing and the view state model.
 *
 * Admin edit routes are only reachable with a live session token; the
 * guard callback lets a dirty form block navigation until confirmed.
 */

export type Route =
  | { kind: "works-list" }
  | { kind: "work-detail"; slug: string; phase: number; subphase: number }
  | { kind: "about" }
  | { kind: "admin-login" }
  | { kind: "admin-edit"; slug: string | null };

export function parseHash(hash: string): Route {
  const parts = hash.replace(/^#\/?/, "").split("/").filter(Boolean).map(decodeURIComponent);
  if (parts.length === 0) return { kind: "works-list" };
  if (parts[0] === "about") return { kind: "about" };
  if (parts[0] === "admin") {
    if (parts[1] === "new") return { kind: "admin-edit", slug: null };
    if (parts[1] === "edit" && parts[2]) return { kind: "admin-edit", slug: parts[2] };
    return { kind: "admin-login" };
  }
  if (parts[0] === "works" && parts[1]) {
    const phase = Number.parseInt(parts[2] ?? "0", 10);
    const subphase = Number.parseInt(parts[3] ?? "0", 10);
    return {
      kind: "work-detail",
      slug: parts[1],
      phase: Number.isFinite(phase) && phase >= 0 ? phase : 0,
      subphase: Number.isFinite(subphase) && subphase >= 0 ? subphase : 0,
    };
  }
  return { kind: "works-list" };
}

export function routeToHash(route: Route): string {
  switch (route.kind) {
    case "works-list":
      return "#/";
    case "about":
      return "#/about";
    case "admin-login":
      return "#/admin";
    case "admin-edit":
      return route.slug === null
        ? "#/admin/new"
        : `#/admin/edit/${encodeURIComponent(route.slug)}`;
    case "work-detail": {
      const base = `#/works/${encodeURIComponent(route.slug)}`;
      if (route.phase === 0 && route.subphase === 0) return base;
      return `${base}/${route.phase}/${route.subphase}`;
    }
  }
}

export class Router {
  /** Returns false to block navigation (e.g. unsaved admin edits). */
  leaveGuard: (() => boolean) | null = null;

  private listener: ((route: Route) => void) | null = null;
  private lastHash: string;
  private reverting = false;
  private readonly boundHandler = () => this.handleChange();

  constructor(private win: Window = window) {
    this.lastHash = win.location.hash || "#/";
  }

  get current(): Route {
    return parseHash(this.win.location.hash);
  }

  start(onChange: (route: Route) => void): void {
    this.listener = onChange;
    this.win.addEventListener("hashchange", this.boundHandler);
    onChange(this.current);
  }

  stop(): void {
    this.win.removeEventListener("hashchange", this.boundHandler);
    this.listener = null;
  }

  navigate(route: Route): void {
    this.win.location.hash = routeToHash(route);
  }

  /** Update the detail sub-state without triggering a re-render. */
  replace(route: Route): void {
    const hash = routeToHash(route);
    this.lastHash = hash;
    this.win.history.replaceState(null, "", hash);
  }

  private handleChange(): void {
    if (this.reverting) {
      this.reverting = false;
      return;
    }
    if (this.leaveGuard && !this.leaveGuard()) {
      this.reverting = true;
      this.win.location.hash = this.lastHash;
      return;
    }
    this.lastHash = this.win.location.hash || "#/";
    this.listener?.(this.current);
  }
}
