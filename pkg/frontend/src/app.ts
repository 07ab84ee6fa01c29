/** Root controller: header navigation, route dispatch, admin gating. */

import { ApiClient, WorkDetail } from "./api";
import { renderAbout } from "./about";
import { confirmDialog, renderLogin, renderWorkEditor } from "./admin/forms";
import { renderGallery } from "./gallery";
import { coverImage } from "./media";
import { Route, Router } from "./state";
import { clampSelection, renderTimeline, TimelineSelection } from "./timeline";

export class App {
  private main: HTMLElement;
  private nav!: HTMLElement;

  constructor(
    private root: HTMLElement,
    private api: ApiClient,
    private router: Router = new Router(),
  ) {
    this.root.innerHTML = "";
    const header = document.createElement("header");
    const brand = document.createElement("h1");
    const home = document.createElement("a");
    home.href = "#/";
    home.textContent = "Chronologies of Artworks";
    brand.append(home);
    this.nav = document.createElement("nav");
    header.append(brand, this.nav);

    this.main = document.createElement("main");
    this.root.append(header, this.main);
  }

  start(): void {
    this.router.start((route) => void this.render(route));
  }

  private renderNav(active: Route["kind"]): void {
    this.nav.innerHTML = "";
    const links: Array<[string, string, boolean]> = [
      ["Works", "#/", active === "works-list"],
      ["About", "#/about", active === "about"],
    ];
    for (const [label, href, current] of links) {
      const link = document.createElement("a");
      link.href = href;
      link.textContent = label;
      if (current) link.setAttribute("aria-current", "page");
      this.nav.append(link);
    }
    if (this.api.isLoggedIn) {
      const logout = document.createElement("button");
      logout.type = "button";
      logout.className = "logout";
      logout.textContent = "Log out";
      logout.addEventListener("click", () => {
        this.api.logout();
        this.router.navigate({ kind: "works-list" });
        void this.render(this.router.current);
      });
      this.nav.append(logout);
    } else {
      const admin = document.createElement("a");
      admin.href = "#/admin";
      admin.textContent = "Admin";
      if (active === "admin-login") admin.setAttribute("aria-current", "page");
      this.nav.append(admin);
    }
  }

  private async render(route: Route): Promise<void> {
    this.router.leaveGuard = null;
    this.renderNav(route.kind);
    switch (route.kind) {
      case "works-list":
        await renderGallery(this.main, this.api, {
          openWork: (slug) =>
            this.router.navigate({ kind: "work-detail", slug, phase: 0, subphase: 0 }),
          newWork: () => this.router.navigate({ kind: "admin-edit", slug: null }),
        });
        return;
      case "about":
        await renderAbout(this.main, this.api);
        return;
      case "admin-login":
        if (this.api.isLoggedIn) {
          this.router.navigate({ kind: "works-list" });
          return;
        }
        renderLogin(this.main, this.api, () =>
          this.router.navigate({ kind: "works-list" }),
        );
        return;
      case "admin-edit": {
        if (!this.api.isLoggedIn) {
          this.router.navigate({ kind: "admin-login" });
          return;
        }
        const handle = await renderWorkEditor(this.main, this.api, route.slug, {
          onSaved: (slug) =>
            this.router.navigate({ kind: "work-detail", slug, phase: 0, subphase: 0 }),
          onCancel: () => this.router.navigate({ kind: "works-list" }),
        });
        this.router.leaveGuard = () =>
          !handle.isDirty() ||
          window.confirm("Discard unsaved changes to this work?");
        return;
      }
      case "work-detail":
        await this.renderDetail(route);
        return;
    }
  }

  private async renderDetail(
    route: Extract<Route, { kind: "work-detail" }>,
  ): Promise<void> {
    this.main.innerHTML = "";
    let detail: WorkDetail;
    try {
      detail = await this.api.getWork(route.slug);
    } catch {
      const missing = document.createElement("p");
      missing.className = "empty-state";
      missing.textContent = "This work could not be found.";
      this.main.append(missing);
      return;
    }

    const article = document.createElement("article");
    article.className = "work-detail";

    const heading = document.createElement("h2");
    heading.textContent = detail.title;
    const byline = document.createElement("p");
    byline.className = "artist";
    byline.textContent =
      detail.creation_year !== null
        ? `${detail.artist_name}, ${detail.creation_year}`
        : detail.artist_name;
    article.append(heading, byline);
    article.append(coverImage(this.api, detail.cover_media, detail.title));

    if (this.api.isLoggedIn) {
      const bar = document.createElement("div");
      bar.className = "admin-bar";
      const edit = document.createElement("button");
      edit.type = "button";
      edit.className = "edit-work";
      edit.textContent = "Edit";
      edit.addEventListener("click", () =>
        this.router.navigate({ kind: "admin-edit", slug: detail.id }),
      );
      const del = document.createElement("button");
      del.type = "button";
      del.className = "delete-work";
      del.textContent = "Delete";
      del.addEventListener("click", async () => {
        const accepted = await confirmDialog(
          `Delete “${detail.title}” permanently? Its media stay in the archive.`,
          "Delete work",
        );
        if (!accepted) return;
        await this.api.deleteWork(detail.id);
        this.router.navigate({ kind: "works-list" });
      });
      bar.append(edit, del);
      article.append(bar);
    }

    const timelineHost = document.createElement("div");
    timelineHost.className = "timeline-host";
    article.append(timelineHost);
    this.main.append(article);

    const draw = (selection: TimelineSelection) => {
      const clamped = clampSelection(detail, selection);
      this.router.replace({ kind: "work-detail", slug: route.slug, ...clamped });
      renderTimeline(timelineHost, this.api, detail, clamped, draw);
    };
    draw({ phase: route.phase, subphase: route.subphase });
  }
}
