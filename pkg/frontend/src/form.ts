/** Inquiry composition form.
 *
 * Mirrors the server-side validation (same field names) so inline errors
 * land next to the inputs whether they were caught locally or by the API.
 */

import type { InquiryConfig } from "./types.js";

export interface DimensionRow {
  label: string;
  terms: string[];
}

export interface InquiryFormState {
  central: string;
  preceding: string[];
  succeeding: string[];
  dimensions: DimensionRow[];
  after: number | null;
  before: number | null;
  fields: "title" | "abstract" | "all";
  window: number;
}

export type FormErrors = Map<string, string>;

const MAX_WINDOW = 10;

function splitWords(raw: string): string[] {
  return raw
    .split(",")
    .map((w) => w.trim())
    .filter((w) => w.length > 0);
}

export function validateForm(state: InquiryFormState): FormErrors {
  const errors: FormErrors = new Map();
  if (!state.central.trim()) {
    errors.set("main.central", "central term must not be empty");
  }
  for (const [field, words] of [
    ["main.preceding", state.preceding],
    ["main.succeeding", state.succeeding],
  ] as const) {
    if (words.some((w) => /\s/.test(w))) {
      errors.set(field, "attachment entries must be single words");
    }
    if (new Set(words).size !== words.length) {
      errors.set(field, "duplicate word");
    }
  }
  const labels = new Set<string>();
  const allTerms = new Set<string>();
  state.dimensions.forEach((dim, idx) => {
    if (!dim.label.trim()) {
      errors.set(`dimensions[${idx}].label`, "label must not be empty");
    } else if (labels.has(dim.label)) {
      errors.set(`dimensions[${idx}].label`, `duplicate label "${dim.label}"`);
    }
    labels.add(dim.label);
    if (dim.terms.length === 0) {
      errors.set(`dimensions[${idx}].terms`, "needs at least one term");
    }
    for (const term of dim.terms) {
      const key = term.toLowerCase();
      if (allTerms.has(key)) {
        errors.set(`dimensions[${idx}].terms`, `term "${term}" already used`);
      }
      allTerms.add(key);
    }
  });
  if (!Number.isInteger(state.window) || state.window < 0 || state.window > MAX_WINDOW) {
    errors.set("window", `window must be an integer between 0 and ${MAX_WINDOW}`);
  }
  for (const [field, year] of [
    ["interval.begin", state.after],
    ["interval.end", state.before],
  ] as const) {
    if (year !== null && (year < 1000 || year > 9999)) {
      errors.set(field, "years must have 4 digits");
    }
  }
  if (state.after !== null && state.before !== null && state.after > state.before) {
    errors.set("interval", "'after' year exceeds 'before' year");
  }
  return errors;
}

export function buildConfig(state: InquiryFormState): InquiryConfig {
  const config: InquiryConfig = {
    main: {
      central: state.central.trim(),
      preceding: state.preceding,
      succeeding: state.succeeding,
    },
    dimensions: state.dimensions.map((d) => ({ label: d.label.trim(), terms: d.terms })),
    fields: state.fields,
    window: state.window,
  };
  if (state.after !== null || state.before !== null) {
    config.interval = {
      begin: state.after ?? 1000,
      end: state.before ?? 9999,
    };
  }
  return config;
}

/** DOM form wired to a submit callback; owns its own inline error slots. */
export class InquiryForm {
  readonly element: HTMLFormElement;
  private centralInput!: HTMLInputElement;
  private precedingInput!: HTMLInputElement;
  private succeedingInput!: HTMLInputElement;
  private afterInput!: HTMLInputElement;
  private beforeInput!: HTMLInputElement;
  private fieldsSelect!: HTMLSelectElement;
  private windowInput!: HTMLInputElement;
  private submitButton!: HTMLButtonElement;
  private dimensionList!: HTMLDivElement;

  constructor(private onSubmit: (config: InquiryConfig) => void) {
    this.element = document.createElement("form");
    this.element.className = "inquiry-form";
    this.element.noValidate = true;
    this.build();
    this.element.addEventListener("submit", (event) => {
      event.preventDefault();
      this.submit();
    });
  }

  private labelled(text: string, input: HTMLElement, field: string): HTMLElement {
    const wrap = document.createElement("label");
    wrap.className = "field";
    const caption = document.createElement("span");
    caption.textContent = text;
    const error = document.createElement("span");
    error.className = "field-error";
    error.dataset.field = field;
    wrap.append(caption, input, error);
    return wrap;
  }

  private build(): void {
    this.centralInput = document.createElement("input");
    this.centralInput.name = "central";
    this.centralInput.placeholder = "e.g. amygdala";
    this.centralInput.addEventListener("input", () => this.refreshSubmitState());

    this.precedingInput = document.createElement("input");
    this.precedingInput.name = "preceding";
    this.precedingInput.placeholder = "comma-separated, e.g. left, right";
    this.succeedingInput = document.createElement("input");
    this.succeedingInput.name = "succeeding";
    this.succeedingInput.placeholder = "comma-separated";

    this.afterInput = document.createElement("input");
    this.afterInput.name = "after";
    this.afterInput.type = "number";
    this.beforeInput = document.createElement("input");
    this.beforeInput.name = "before";
    this.beforeInput.type = "number";

    this.fieldsSelect = document.createElement("select");
    this.fieldsSelect.name = "fields";
    for (const value of ["all", "title", "abstract"]) {
      const option = document.createElement("option");
      option.value = value;
      option.textContent = value === "all" ? "all fields" : value;
      this.fieldsSelect.append(option);
    }

    this.windowInput = document.createElement("input");
    this.windowInput.name = "window";
    this.windowInput.type = "number";
    this.windowInput.value = "6";
    this.windowInput.min = "0";
    this.windowInput.max = String(MAX_WINDOW);

    this.dimensionList = document.createElement("div");
    this.dimensionList.className = "dimension-list";
    const addDimension = document.createElement("button");
    addDimension.type = "button";
    addDimension.className = "add-dimension";
    addDimension.textContent = "+ dimension";
    addDimension.addEventListener("click", () => this.addDimensionRow());

    this.submitButton = document.createElement("button");
    this.submitButton.type = "submit";
    this.submitButton.className = "go";
    this.submitButton.textContent = "Go";

    const banner = document.createElement("div");
    banner.className = "form-banner";
    banner.hidden = true;

    this.element.append(
      banner,
      this.labelled("Main query", this.centralInput, "main.central"),
      this.labelled("Preceding words", this.precedingInput, "main.preceding"),
      this.labelled("Succeeding words", this.succeedingInput, "main.succeeding"),
      this.dimensionList,
      addDimension,
      this.labelled("After year", this.afterInput, "interval.begin"),
      this.labelled("Before year", this.beforeInput, "interval.end"),
      this.labelled("Search in", this.fieldsSelect, "fields"),
      this.labelled("Window", this.windowInput, "window"),
      this.submitButton,
    );
    this.refreshSubmitState();
  }

  addDimensionRow(label = "", terms = ""): void {
    const index = this.dimensionList.children.length;
    const row = document.createElement("div");
    row.className = "dimension-row";

    const labelInput = document.createElement("input");
    labelInput.className = "dimension-label";
    labelInput.placeholder = "dimension label";
    labelInput.value = label;

    const termsInput = document.createElement("input");
    termsInput.className = "dimension-terms";
    termsInput.placeholder = "terms, comma-separated";
    termsInput.value = terms;

    const remove = document.createElement("button");
    remove.type = "button";
    remove.textContent = "x";
    remove.title = "remove dimension";
    remove.addEventListener("click", () => row.remove());

    row.append(
      this.labelled(`Dimension ${index + 1}`, labelInput, `dimensions[${index}].label`),
      this.labelled("Terms", termsInput, `dimensions[${index}].terms`),
      remove,
    );
    this.dimensionList.append(row);
  }

  readState(): InquiryFormState {
    const dimensions: DimensionRow[] = [];
    for (const row of this.dimensionList.querySelectorAll(".dimension-row")) {
      const label = (row.querySelector(".dimension-label") as HTMLInputElement).value.trim();
      const terms = splitWords((row.querySelector(".dimension-terms") as HTMLInputElement).value);
      if (label || terms.length) {
        dimensions.push({ label, terms });
      }
    }
    return {
      central: this.centralInput.value,
      preceding: splitWords(this.precedingInput.value),
      succeeding: splitWords(this.succeedingInput.value),
      dimensions,
      after: this.afterInput.value ? Number(this.afterInput.value) : null,
      before: this.beforeInput.value ? Number(this.beforeInput.value) : null,
      fields: this.fieldsSelect.value as InquiryFormState["fields"],
      window: this.windowInput.value ? Number(this.windowInput.value) : 6,
    };
  }

  refreshSubmitState(): void {
    this.submitButton.disabled = !this.centralInput.value.trim();
  }

  clearErrors(): void {
    for (const slot of this.element.querySelectorAll<HTMLElement>(".field-error")) {
      slot.textContent = "";
    }
    const banner = this.element.querySelector<HTMLElement>(".form-banner")!;
    banner.hidden = true;
    banner.textContent = "";
  }

  showFieldError(field: string, message: string): void {
    const slot = this.element.querySelector<HTMLElement>(`.field-error[data-field="${field}"]`);
    if (slot) {
      slot.textContent = message;
    } else {
      this.showBanner(`${field}: ${message}`, false);
    }
  }

  showBanner(message: string, retryable: boolean): void {
    const banner = this.element.querySelector<HTMLElement>(".form-banner")!;
    banner.hidden = false;
    banner.textContent = retryable ? `${message} - check the server and retry` : message;
    banner.classList.toggle("retryable", retryable);
  }

  private submit(): void {
    this.clearErrors();
    const state = this.readState();
    const errors = validateForm(state);
    if (errors.size > 0) {
      for (const [field, message] of errors) {
        this.showFieldError(field, message);
      }
      return;
    }
    this.onSubmit(buildConfig(state));
  }
}
