/** Admin UI: login form and the work editor.
 *
 * The editor serves both create and edit; editing opens with every field
 * pre-filled from the stored work, so an immediate save round-trips the
 * exact payload. Destructive actions (phase truncation, delete) always go
 * through an explicit confirmation dialog.
 */

import {
  ApiClient,
  ApiError,
  MediaAsset,
  Phase,
  SubPhase,
  WorkPayload,
  workToPayload,
} from "../api";

export function confirmDialog(message: string, confirmLabel = "Confirm"): Promise<boolean> {
  return new Promise((resolve) => {
    const overlay = document.createElement("div");
    overlay.className = "dialog-overlay";
    const dialog = document.createElement("div");
    dialog.className = "dialog";
    dialog.setAttribute("role", "alertdialog");

    const text = document.createElement("p");
    text.textContent = message;

    const actions = document.createElement("div");
    actions.className = "dialog-actions";
    const cancel = document.createElement("button");
    cancel.type = "button";
    cancel.dataset.action = "cancel";
    cancel.textContent = "Cancel";
    const confirm = document.createElement("button");
    confirm.type = "button";
    confirm.dataset.action = "confirm";
    confirm.textContent = confirmLabel;

    const finish = (result: boolean) => {
      overlay.remove();
      resolve(result);
    };
    cancel.addEventListener("click", () => finish(false));
    confirm.addEventListener("click", () => finish(true));

    actions.append(cancel, confirm);
    dialog.append(text, actions);
    overlay.append(dialog);
    document.body.append(overlay);
  });
}

// -- login --------------------------------------------------------------------

export function renderLogin(
  container: HTMLElement,
  api: ApiClient,
  onSuccess: () => void,
): void {
  container.innerHTML = "";
  const heading = document.createElement("h2");
  heading.textContent = "Administration";
  const form = document.createElement("form");
  form.className = "login-form";
  form.innerHTML = `
    <label>Username <input name="username" autocomplete="username" required></label>
    <label>Password <input name="password" type="password" autocomplete="current-password" required></label>
    <p class="form-error" hidden></p>
    <button type="submit">Log in</button>
  `;
  form.addEventListener("submit", (event) => {
    event.preventDefault();
    const data = new FormData(form);
    const error = form.querySelector<HTMLElement>(".form-error")!;
    error.hidden = true;
    api
      .login(String(data.get("username")), String(data.get("password")))
      .then(onSuccess)
      .catch((failure) => {
        error.textContent =
          failure instanceof ApiError && failure.status === 401
            ? "Invalid username or password."
            : "Login failed; try again.";
        error.hidden = false;
      });
  });
  container.append(heading, form);
}

// -- work editor ----------------------------------------------------------------

export interface EditorHandle {
  isDirty: () => boolean;
}

interface EditorHooks {
  onSaved: (slug: string) => void;
  onCancel: () => void;
}

function kindForFile(file: File): MediaAsset["kind"] {
  if (file.type.startsWith("image/")) return "image";
  if (file.type.startsWith("video/")) return "video";
  if (file.type.startsWith("audio/")) return "audio";
  return "document";
}

function emptyPhase(ordinal: number): Phase {
  return {
    ordinal,
    label: `Phase ${ordinal + 1}`,
    year: null,
    description: "",
    media: [],
    subphases: [],
  };
}

function labeledInput(labelText: string, input: HTMLElement): HTMLLabelElement {
  const label = document.createElement("label");
  label.append(labelText + " ", input);
  return label;
}

function textInput(className: string, value: string): HTMLInputElement {
  const input = document.createElement("input");
  input.className = className;
  input.value = value;
  return input;
}

function yearInput(className: string, value: number | null): HTMLInputElement {
  const input = document.createElement("input");
  input.className = className;
  input.type = "number";
  input.min = "1";
  input.max = "9999";
  input.value = value === null ? "" : String(value);
  return input;
}

function parseYear(input: HTMLInputElement): number | null {
  const raw = input.value.trim();
  if (!raw) return null;
  const value = Number.parseInt(raw, 10);
  return Number.isFinite(value) ? value : null;
}

export class WorkEditor {
  private dirty = false;
  private draft: WorkPayload;
  private form!: HTMLFormElement;

  constructor(
    private container: HTMLElement,
    private api: ApiClient,
    private slug: string | null,
    private hooks: EditorHooks,
  ) {
    this.draft = {
      title: "",
      artist_name: "",
      creation_year: null,
      cover_media: "",
      phases: [emptyPhase(0)],
    };
  }

  isDirty(): boolean {
    return this.dirty;
  }

  async load(): Promise<void> {
    if (this.slug !== null) {
      const detail = await this.api.getWork(this.slug);
      this.draft = workToPayload(detail);
    }
    this.render();
  }

  private markDirty(): void {
    this.dirty = true;
  }

  // -- media helpers ------------------------------------------------------------

  private mediaChip(ids: string[], id: string, rerender: () => void): HTMLElement {
    const chip = document.createElement("span");
    chip.className = "media-chip";
    chip.dataset.mediaId = id;
    const thumb = document.createElement("img");
    thumb.src = this.api.mediaUrl(id);
    thumb.alt = "";
    const remove = document.createElement("button");
    remove.type = "button";
    remove.className = "remove-media";
    remove.textContent = "×";
    remove.addEventListener("click", () => {
      ids.splice(ids.indexOf(id), 1);
      this.markDirty();
      rerender();
    });
    chip.append(thumb, remove);
    return chip;
  }

  private mediaListEditor(ids: string[], accept: string): HTMLElement {
    const wrap = document.createElement("div");
    wrap.className = "media-list";
    const rerender = () => {
      wrap.querySelectorAll(".media-chip").forEach((chip) => chip.remove());
      for (const id of ids) wrap.prepend(this.mediaChip(ids, id, rerender));
    };
    const upload = document.createElement("input");
    upload.type = "file";
    upload.accept = accept;
    upload.className = "media-upload";
    upload.addEventListener("change", async () => {
      const file = upload.files?.[0];
      if (!file) return;
      const asset = await this.api.uploadMedia(file, kindForFile(file));
      ids.push(asset.id);
      this.markDirty();
      rerender();
      upload.value = "";
    });
    wrap.append(upload);
    rerender();
    return wrap;
  }

  // -- phase editors --------------------------------------------------------------

  private subphaseEditor(phase: Phase, sub: SubPhase): HTMLElement {
    const fieldset = document.createElement("fieldset");
    fieldset.className = "subphase-editor";
    const legend = document.createElement("legend");
    legend.textContent = `Sub-phase ${sub.ordinal + 1}`;
    fieldset.append(legend);

    const label = textInput("subphase-label", sub.label);
    label.addEventListener("input", () => {
      sub.label = label.value;
      this.markDirty();
    });
    fieldset.append(labeledInput("Name", label));

    const description = document.createElement("textarea");
    description.className = "subphase-description";
    description.value = sub.description;
    description.addEventListener("input", () => {
      sub.description = description.value;
      this.markDirty();
    });
    fieldset.append(labeledInput("Description", description));

    fieldset.append(this.mediaListEditor(sub.media, "image/*,video/*,audio/*"));

    const remove = document.createElement("button");
    remove.type = "button";
    remove.className = "remove-subphase";
    remove.textContent = "Remove sub-phase";
    remove.addEventListener("click", () => {
      phase.subphases.splice(phase.subphases.indexOf(sub), 1);
      phase.subphases.forEach((s, i) => (s.ordinal = i));
      this.markDirty();
      this.render();
    });
    fieldset.append(remove);
    return fieldset;
  }

  private phaseEditor(phase: Phase): HTMLElement {
    const fieldset = document.createElement("fieldset");
    fieldset.className = "phase-editor";
    fieldset.dataset.ordinal = String(phase.ordinal);
    const legend = document.createElement("legend");
    legend.textContent = `Phase ${phase.ordinal + 1}`;
    fieldset.append(legend);

    const label = textInput("phase-label", phase.label);
    label.addEventListener("input", () => {
      phase.label = label.value;
      this.markDirty();
    });
    fieldset.append(labeledInput("Name", label));

    const year = yearInput("phase-year", phase.year);
    year.addEventListener("input", () => {
      phase.year = parseYear(year);
      this.markDirty();
    });
    fieldset.append(labeledInput("Year", year));

    const description = document.createElement("textarea");
    description.className = "phase-description";
    description.value = phase.description;
    description.addEventListener("input", () => {
      phase.description = description.value;
      this.markDirty();
    });
    fieldset.append(labeledInput("Description", description));

    fieldset.append(this.mediaListEditor(phase.media, "image/*,video/*,audio/*"));

    const subphases = document.createElement("div");
    subphases.className = "subphases";
    for (const sub of phase.subphases) subphases.append(this.subphaseEditor(phase, sub));
    fieldset.append(subphases);

    const addSub = document.createElement("button");
    addSub.type = "button";
    addSub.className = "add-subphase";
    addSub.textContent = "Add sub-phase";
    addSub.addEventListener("click", () => {
      phase.subphases.push({
        ordinal: phase.subphases.length,
        label: `Sub-phase ${phase.subphases.length + 1}`,
        description: "",
        media: [],
      });
      this.markDirty();
      this.render();
    });
    fieldset.append(addSub);
    return fieldset;
  }

  // -- phase count ------------------------------------------------------------------

  private async applyPhaseCount(requested: number): Promise<void> {
    const current = this.draft.phases.length;
    if (!Number.isFinite(requested) || requested < 1 || requested === current) return;

    if (requested < current) {
      const removed = this.draft.phases
        .slice(requested)
        .map((p) => p.label)
        .join(", ");
      const accepted = await confirmDialog(
        `Reducing to ${requested} phases permanently removes: ${removed}. Continue?`,
        "Remove phases",
      );
      if (!accepted) {
        this.render();
        return;
      }
    }

    if (this.slug !== null) {
      const detail =
        requested < current
          ? await this.api.setPhaseCount(this.slug, requested, true)
          : await this.api.setPhaseCount(this.slug, requested, false);
      this.draft.phases = workToPayload(detail).phases;
    } else if (requested < current) {
      this.draft.phases = this.draft.phases.slice(0, requested);
    } else {
      for (let i = current; i < requested; i += 1) this.draft.phases.push(emptyPhase(i));
    }
    this.markDirty();
    this.render();
  }

  // -- submit ---------------------------------------------------------------------

  private payloadFromForm(): WorkPayload {
    // Re-read every field from the DOM, then normalize through the same
    // shaping function the loader used, so save-after-open is identical.
    const form = this.form;
    const title = form.querySelector<HTMLInputElement>("input[name=title]")!.value;
    const artist = form.querySelector<HTMLInputElement>("input[name=artist_name]")!.value;
    const creationYear = parseYear(
      form.querySelector<HTMLInputElement>("input[name=creation_year]")!,
    );
    const cover = form.querySelector<HTMLInputElement>("input[name=cover_media]")!.value;

    const phases: Phase[] = [];
    form.querySelectorAll<HTMLElement>(".phase-editor").forEach((editor, index) => {
      const draftPhase = this.draft.phases[index];
      phases.push({
        ordinal: index,
        label: editor.querySelector<HTMLInputElement>(".phase-label")!.value,
        year: parseYear(editor.querySelector<HTMLInputElement>(".phase-year")!),
        description: editor.querySelector<HTMLTextAreaElement>(".phase-description")!.value,
        media: [...draftPhase.media],
        subphases: Array.from(
          editor.querySelectorAll<HTMLElement>(".subphase-editor"),
        ).map((subEditor, subIndex) => ({
          ordinal: subIndex,
          label: subEditor.querySelector<HTMLInputElement>(".subphase-label")!.value,
          description: subEditor.querySelector<HTMLTextAreaElement>(
            ".subphase-description",
          )!.value,
          media: [...draftPhase.subphases[subIndex].media],
        })),
      });
    });

    return workToPayload({
      title,
      artist_name: artist,
      creation_year: creationYear,
      cover_media: cover,
      phases,
    });
  }

  private showIssues(error: ApiError): void {
    const list = this.form.querySelector<HTMLElement>(".form-errors")!;
    list.innerHTML = "";
    list.hidden = false;
    const issues = error.issues.length
      ? error.issues
      : [{ code: error.code, path: "", message: error.message }];
    for (const issue of issues) {
      const item = document.createElement("li");
      item.dataset.path = issue.path;
      item.dataset.code = issue.code;
      item.textContent = issue.path ? `${issue.path}: ${issue.message}` : issue.message;
      list.append(item);
      const field = this.form.querySelector<HTMLElement>(`[name="${issue.path}"]`);
      field?.setAttribute("aria-invalid", "true");
    }
  }

  private async submit(): Promise<void> {
    const payload = this.payloadFromForm();
    this.form
      .querySelectorAll("[aria-invalid]")
      .forEach((el) => el.removeAttribute("aria-invalid"));
    try {
      if (this.slug === null) {
        const created = await this.api.createWork(payload);
        this.dirty = false;
        this.hooks.onSaved(created.slug);
      } else {
        await this.api.updateWork(this.slug, payload);
        this.dirty = false;
        this.hooks.onSaved(this.slug);
      }
    } catch (error) {
      if (error instanceof ApiError) this.showIssues(error);
      else throw error;
    }
  }

  // -- render ------------------------------------------------------------------------

  render(): void {
    this.container.innerHTML = "";
    const heading = document.createElement("h2");
    heading.textContent = this.slug === null ? "New work" : `Edit: ${this.draft.title}`;
    this.container.append(heading);

    const form = document.createElement("form");
    form.className = "work-editor";
    this.form = form;

    const title = textInput("", this.draft.title);
    title.name = "title";
    title.addEventListener("input", () => {
      this.draft.title = title.value;
      this.markDirty();
    });
    form.append(labeledInput("Title", title));

    const artist = textInput("", this.draft.artist_name);
    artist.name = "artist_name";
    artist.addEventListener("input", () => {
      this.draft.artist_name = artist.value;
      this.markDirty();
    });
    form.append(labeledInput("Artist", artist));

    const creationYear = yearInput("", this.draft.creation_year);
    creationYear.name = "creation_year";
    creationYear.addEventListener("input", () => {
      this.draft.creation_year = parseYear(creationYear);
      this.markDirty();
    });
    form.append(labeledInput("Creation year", creationYear));

    const coverSet = document.createElement("fieldset");
    coverSet.className = "cover-editor";
    const coverLegend = document.createElement("legend");
    coverLegend.textContent = "Cover photo";
    coverSet.append(coverLegend);
    const coverValue = document.createElement("input");
    coverValue.type = "hidden";
    coverValue.name = "cover_media";
    coverValue.value = this.draft.cover_media;
    coverSet.append(coverValue);
    if (this.draft.cover_media) {
      const preview = document.createElement("img");
      preview.className = "cover-preview";
      preview.src = this.api.mediaUrl(this.draft.cover_media);
      preview.alt = "current cover";
      coverSet.append(preview);
    }
    const coverUpload = document.createElement("input");
    coverUpload.type = "file";
    coverUpload.accept = "image/*";
    coverUpload.className = "cover-upload";
    coverUpload.addEventListener("change", async () => {
      const file = coverUpload.files?.[0];
      if (!file) return;
      const asset = await this.api.uploadMedia(file, "image");
      this.draft.cover_media = asset.id;
      coverValue.value = asset.id;
      this.markDirty();
      this.render();
    });
    coverSet.append(coverUpload);
    form.append(coverSet);

    const countControl = document.createElement("div");
    countControl.className = "phase-count-control";
    const count = document.createElement("input");
    count.type = "number";
    count.min = "1";
    count.name = "phase_count";
    count.value = String(this.draft.phases.length);
    const apply = document.createElement("button");
    apply.type = "button";
    apply.className = "apply-phase-count";
    apply.textContent = "Change phase count";
    apply.addEventListener("click", () =>
      void this.applyPhaseCount(Number.parseInt(count.value, 10)),
    );
    countControl.append(labeledInput("Number of phases", count), apply);
    form.append(countControl);

    const phases = document.createElement("div");
    phases.className = "phases";
    for (const phase of this.draft.phases) phases.append(this.phaseEditor(phase));
    form.append(phases);

    const errors = document.createElement("ul");
    errors.className = "form-errors";
    errors.hidden = true;
    form.append(errors);

    const actions = document.createElement("div");
    actions.className = "editor-actions";
    const save = document.createElement("button");
    save.type = "submit";
    save.className = "save-work";
    save.textContent = this.slug === null ? "Create work" : "Save changes";
    const cancel = document.createElement("button");
    cancel.type = "button";
    cancel.className = "cancel-edit";
    cancel.textContent = "Back";
    cancel.addEventListener("click", () => this.hooks.onCancel());
    actions.append(save, cancel);
    form.append(actions);

    form.addEventListener("submit", (event) => {
      event.preventDefault();
      void this.submit();
    });

    this.container.append(form);
  }
}

export async function renderWorkEditor(
  container: HTMLElement,
  api: ApiClient,
  slug: string | null,
  hooks: EditorHooks,
): Promise<EditorHandle> {
  const editor = new WorkEditor(container, api, slug, hooks);
  await editor.load();
  return { isDirty: () => editor.isDirty() };
}
