/** Application controller: one form, one exploration state, a view stack.
 *
 * All fetched payloads live on the exploration state, so stepping back
 * from documents to the histogram to the table re-renders from memory
 * and never refetches. A submission that is superseded before its
 * response arrives is discarded (the handle comparison below).
 */

import { ApiClient, RequestFailed } from "./api.js";
import { InquiryForm } from "./form.js";
import { renderDocuments, renderHistogram, renderOverviewTable } from "./render.js";
import type { CreateInquiryResponse, DocumentHit, HistogramPayload, InquiryConfig } from "./types.js";

interface TableView {
  kind: "table";
}

interface HistogramView {
  kind: "histogram";
  row: string;
  col: string;
  data: HistogramPayload;
}

interface DocumentsView {
  kind: "documents";
  row: string;
  col: string;
  year?: number;
  data: DocumentHit[];
}

type View = TableView | HistogramView | DocumentsView;

export interface ExplorationState {
  handle: string;
  response: CreateInquiryResponse;
  stack: View[];
}

export class App {
  readonly form: InquiryForm;
  private readonly resultsRoot: HTMLElement;
  private exploration: ExplorationState | null = null;
  private submissionSeq = 0;
  private notice: string | null = null;

  constructor(
    root: HTMLElement,
    private readonly api: ApiClient,
  ) {
    this.form = new InquiryForm((config) => {
      void this.submitInquiry(config);
    });
    this.resultsRoot = document.createElement("div");
    this.resultsRoot.className = "results";
    root.append(this.form.element, this.resultsRoot);
  }

  get state(): ExplorationState | null {
    return this.exploration;
  }

  async submitInquiry(config: InquiryConfig): Promise<void> {
    const seq = ++this.submissionSeq;
    this.form.clearErrors();
    let response: CreateInquiryResponse;
    try {
      response = await this.api.createInquiry(config);
    } catch (error) {
      if (seq !== this.submissionSeq) {
        return; // superseded while in flight
      }
      if (error instanceof RequestFailed && error.detail.field) {
        this.form.showFieldError(error.detail.field, error.detail.message);
      } else if (error instanceof RequestFailed) {
        this.form.showBanner(error.detail.message, error.status >= 500);
      } else {
        this.form.showBanner("server unreachable", true);
      }
      return;
    }
    if (seq !== this.submissionSeq) {
      return; // a newer submission owns the screen
    }
    if (this.exploration && this.exploration.handle === response.handle.id) {
      // identical inquiry: keep the existing exploration (and its history)
      this.render();
      return;
    }
    this.exploration = {
      handle: response.handle.id,
      response,
      stack: [{ kind: "table" }],
    };
    this.render();
  }

  async openCell(row: string, col: string): Promise<void> {
    if (!this.exploration) {
      return;
    }
    const expected = this.exploration.handle;
    let data: HistogramPayload;
    try {
      data = await this.api.getHistogram(expected, row, col);
    } catch (error) {
      this.recoverToTable(expected, error);
      return;
    }
    if (!this.exploration || this.exploration.handle !== expected) {
      return; // stale: a different inquiry took over meanwhile
    }
    this.exploration.stack.push({ kind: "histogram", row, col, data });
    this.render();
  }

  async openDocuments(row: string, col: string, year?: number): Promise<void> {
    if (!this.exploration) {
      return;
    }
    const expected = this.exploration.handle;
    let data: DocumentHit[];
    try {
      data = await this.api.getDocuments(expected, row, col, year);
    } catch (error) {
      this.recoverToTable(expected, error);
      return;
    }
    if (!this.exploration || this.exploration.handle !== expected) {
      return;
    }
    this.exploration.stack.push({ kind: "documents", row, col, year, data });
    this.render();
  }

  /** Drop back to the overview with a notice when a drill-down fails. */
  private recoverToTable(expected: string, error: unknown): void {
    if (!this.exploration || this.exploration.handle !== expected) {
      return;
    }
    this.exploration.stack = [{ kind: "table" }];
    this.notice =
      error instanceof RequestFailed ? error.detail.message : "request failed, please retry";
    this.render();
  }

  back(): void {
    if (!this.exploration || this.exploration.stack.length <= 1) {
      return;
    }
    this.exploration.stack.pop();
    this.render();
  }

  private render(): void {
    this.resultsRoot.replaceChildren();
    if (!this.exploration) {
      return;
    }
    const { response, stack } = this.exploration;
    const view = stack[stack.length - 1];
    if (this.notice !== null) {
      const note = document.createElement("p");
      note.className = "notice";
      note.textContent = this.notice;
      this.resultsRoot.append(note);
      this.notice = null;
    }
    if (view.kind === "table") {
      for (const warning of response.warnings) {
        const note = document.createElement("p");
        note.className = "warning";
        note.textContent = warning;
        this.resultsRoot.append(note);
      }
      this.resultsRoot.append(
        renderOverviewTable(response.overview, (row, col) => {
          void this.openCell(row, col);
        }),
      );
    } else if (view.kind === "histogram") {
      this.resultsRoot.append(
        renderHistogram(view.row, view.col, view.data, {
          onYearClick: (year) => {
            void this.openDocuments(view.row, view.col, year);
          },
          onAllDocuments: () => {
            void this.openDocuments(view.row, view.col);
          },
          onBack: () => this.back(),
        }),
      );
    } else {
      this.resultsRoot.append(
        renderDocuments(view.row, view.col, view.year, view.data, () => this.back()),
      );
    }
  }
}

export function mount(root: HTMLElement, baseUrl = ""): App {
  return new App(root, new ApiClient(baseUrl));
}
