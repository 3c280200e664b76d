import { ApiClient, ApiError } from "./api.js";
import { renderChartError, renderChartGrid } from "./charts.js";
import { el } from "./dom.js";
import {
  clampUnit,
  emptyState,
  snapRange,
  stateFromQuery,
  stateToQuery,
} from "./filters.js";
import type { FilterState, Range } from "./filters.js";
import { MODES } from "./types.js";
import type {
  Dimension,
  DistributionsPayload,
  Mode,
  UserDetailPayload,
  UsersPayload,
} from "./types.js";
import {
  renderDetail,
  renderDetailPlaceholder,
  renderListError,
  renderUserList,
} from "./users.js";

export interface AppOptions {
  root: HTMLElement;
  api: ApiClient;
  win?: Window;
}

/** Dashboard controller. The server owns all filtering semantics: every
 * brush or mode change re-fetches, and the list always shows exactly the
 * latest response (stale in-flight responses are dropped by sequence
 * number; errors blank the affected panel rather than leaving old data). */
export class App {
  readonly root: HTMLElement;
  state: FilterState;
  snapToBins = true;
  brands: string[] = [];
  currentUsers: UsersPayload | null = null;
  currentDistributions: DistributionsPayload | null = null;
  currentDetail: UserDetailPayload | null = null;

  private api: ApiClient;
  private win: Window;
  private distSeq = 0;
  private listSeq = 0;
  private detailSeq = 0;

  private headerEl!: HTMLElement;
  private errorEl!: HTMLElement;
  private chartsEl!: HTMLElement;
  private listEl!: HTMLElement;
  private detailEl!: HTMLElement;
  private toastEl!: HTMLElement;
  private brandSelect!: HTMLSelectElement;
  private modeInputs: HTMLInputElement[] = [];
  private snapInput!: HTMLInputElement;

  constructor(opts: AppOptions) {
    this.root = opts.root;
    this.api = opts.api;
    this.win = opts.win ?? window;
    this.state = emptyState("");
    this.buildSkeleton();
  }

  private buildSkeleton(): void {
    this.errorEl = el("div", { class: "error-banner", role: "alert", hidden: "" });
    this.chartsEl = el("section", { class: "charts" });
    this.listEl = el("section", { class: "user-list" });
    this.detailEl = el("aside", { class: "detail" });
    this.toastEl = el("div", { class: "toast", hidden: "" });
    this.toastEl.addEventListener("click", () => this.dismissToast());

    this.brandSelect = el("select", { class: "brand-select" });
    this.brandSelect.addEventListener("change", () => {
      void this.setBrand(this.brandSelect.value);
    });
    const modeGroup = el("span", { class: "mode-group" });
    for (const mode of MODES) {
      const input = el("input", { type: "radio", name: "mode", value: mode });
      input.addEventListener("change", () => {
        if (input.checked) void this.setMode(mode);
      });
      this.modeInputs.push(input);
      modeGroup.appendChild(el("label", { class: "mode-option" }, [input, mode]));
    }
    this.snapInput = el("input", { type: "checkbox", class: "snap-toggle" });
    this.snapInput.checked = this.snapToBins;
    this.snapInput.addEventListener("change", () => {
      this.snapToBins = this.snapInput.checked;
    });
    const clearBtn = el("button", { class: "clear-all" }, ["clear filters"]);
    clearBtn.addEventListener("click", () => void this.clearAll());

    this.headerEl = el("header", { class: "topbar" }, [
      el("h1", {}, ["brand attitudes"]),
      this.brandSelect,
      modeGroup,
      el("label", { class: "snap-label" }, [this.snapInput, "snap to bins"]),
      clearBtn,
    ]);

    this.root.replaceChildren(
      this.headerEl,
      this.errorEl,
      this.chartsEl,
      el("main", { class: "content" }, [this.listEl, this.detailEl]),
      this.toastEl,
    );
    renderDetailPlaceholder(this.detailEl);
  }

  /** Read any deep-linked state from the URL, discover brands, and load. */
  async init(): Promise<void> {
    let brands: string[];
    try {
      brands = (await this.api.health()).brands;
    } catch (err) {
      this.showError(err);
      renderChartError(this.chartsEl, "service unavailable");
      renderListError(this.listEl, "service unavailable");
      return;
    }
    this.brands = brands;
    const fallback = brands[0] ?? "";
    try {
      this.state = stateFromQuery(this.win.location.search, fallback);
    } catch {
      this.state = emptyState(fallback);
    }
    if (!this.state.brand) this.state.brand = fallback;
    this.brandSelect.replaceChildren(
      ...this.brands.map((b) => el("option", { value: b }, [b])),
    );
    this.syncHeader();
    await this.refresh();
  }

  private syncHeader(): void {
    if (this.brands.includes(this.state.brand)) {
      this.brandSelect.value = this.state.brand;
    }
    for (const input of this.modeInputs) {
      input.checked = input.value === this.state.mode;
    }
    this.snapInput.checked = this.snapToBins;
  }

  private pushUrl(): void {
    this.win.history.replaceState(null, "", `?${stateToQuery(this.state)}`);
  }

  private showError(err: unknown): void {
    const message = err instanceof ApiError ? err.message : String(err);
    this.errorEl.textContent = `Request failed: ${message}`;
    this.errorEl.hidden = false;
  }

  private clearError(): void {
    this.errorEl.hidden = true;
    this.errorEl.textContent = "";
  }

  async refresh(): Promise<void> {
    await Promise.all([this.refreshDistributions(), this.refreshUsers()]);
  }

  async refreshDistributions(): Promise<void> {
    const seq = ++this.distSeq;
    try {
      const payload = await this.api.distributions(this.state.brand, this.state.mode);
      if (seq !== this.distSeq) return;
      this.currentDistributions = payload;
      this.clearError();
      this.renderCharts();
    } catch (err) {
      if (seq !== this.distSeq) return;
      this.currentDistributions = null;
      this.showError(err);
      renderChartError(this.chartsEl, "distributions unavailable");
    }
  }

  async refreshUsers(): Promise<void> {
    const seq = ++this.listSeq;
    try {
      const payload = await this.api.users(this.state);
      if (seq !== this.listSeq) return;
      this.currentUsers = payload;
      this.clearError();
      renderUserList(this.listEl, payload, { onSelect: (id) => void this.showDetail(id) });
      if (
        this.currentDetail &&
        !payload.users.some((u) => u.user_id === this.currentDetail?.user_id)
      ) {
        this.closeDetail();
      }
    } catch (err) {
      if (seq !== this.listSeq) return;
      this.currentUsers = null;
      this.showError(err);
      renderListError(this.listEl, "customer list unavailable");
    }
  }

  private renderCharts(): void {
    if (!this.currentDistributions) return;
    renderChartGrid(this.chartsEl, this.currentDistributions, this.state.ranges, {
      onBrush: (dim, lo, hi) => void this.applyBrush(dim, lo, hi),
      onBinClick: (dim, lo, hi) => void this.applyExactRange(dim, lo, hi),
      onClear: (dim) => void this.clearBrush(dim),
    });
  }

  binEdges(dim: Dimension): number[] | undefined {
    return this.currentDistributions?.distributions[dim]?.bin_edges;
  }

  /** Set one dimension's range (replacing any prior range on it), snapping
   * to bin edges unless the free-range toggle is off. */
  async applyBrush(dim: Dimension, lo: number, hi: number): Promise<void> {
    const a = clampUnit(Math.min(lo, hi));
    const b = clampUnit(Math.max(lo, hi));
    let range: Range = { lo: a, hi: b };
    const edges = this.binEdges(dim);
    if (this.snapToBins && edges) range = snapRange(a, b, edges);
    await this.applyExactRange(dim, range.lo, range.hi);
  }

  /** Set a range without snapping (bin clicks arrive already aligned). */
  async applyExactRange(dim: Dimension, lo: number, hi: number): Promise<void> {
    this.state.ranges[dim] = { lo, hi };
    this.pushUrl();
    this.renderCharts();
    await this.refreshUsers();
  }

  async clearBrush(dim: Dimension): Promise<void> {
    delete this.state.ranges[dim];
    this.pushUrl();
    this.renderCharts();
    await this.refreshUsers();
  }

  async clearAll(): Promise<void> {
    this.state.ranges = {};
    this.pushUrl();
    this.renderCharts();
    await this.refreshUsers();
  }

  async setMode(mode: Mode): Promise<void> {
    if (mode === this.state.mode) return;
    this.state.mode = mode;
    this.pushUrl();
    this.syncHeader();
    await this.refresh();
  }

  async setBrand(brand: string): Promise<void> {
    if (brand === this.state.brand) return;
    this.state.brand = brand;
    this.closeDetail();
    this.pushUrl();
    this.syncHeader();
    await this.refresh();
  }

  setSnap(on: boolean): void {
    this.snapToBins = on;
    this.snapInput.checked = on;
  }

  async showDetail(userId: string): Promise<void> {
    const seq = ++this.detailSeq;
    try {
      const payload = await this.api.userDetail(this.state.brand, userId);
      if (seq !== this.detailSeq) return;
      this.currentDetail = payload;
      renderDetail(this.detailEl, payload, { onClose: () => this.closeDetail() });
    } catch (err) {
      if (seq !== this.detailSeq) return;
      const message = err instanceof ApiError ? err.message : String(err);
      this.showToast(`Could not load ${userId}: ${message}`);
    }
  }

  closeDetail(): void {
    this.currentDetail = null;
    renderDetailPlaceholder(this.detailEl);
  }

  private showToast(message: string): void {
    this.toastEl.textContent = message;
    this.toastEl.hidden = false;
  }

  dismissToast(): void {
    this.toastEl.hidden = true;
    this.toastEl.textContent = "";
  }

  listedUserIds(): string[] {
    const rows = this.listEl.querySelectorAll<HTMLElement>("[data-user-id]");
    return Array.from(rows, (row) => row.dataset["userId"] ?? "");
  }
}
