/** DOM renderers for the three result views.
 *
 * Counts come straight from the payload (String(count), no arithmetic)
 * and highlight spans are sliced exactly as provided.
 */

import type { DocumentHit, HistogramPayload, OverviewPayload, Span } from "./types.js";

export function renderHighlighted(text: string, spans: Span[]): DocumentFragment {
  const fragment = document.createDocumentFragment();
  let pos = 0;
  for (const [start, end] of spans) {
    if (start > pos) {
      fragment.append(document.createTextNode(text.slice(pos, start)));
    }
    const mark = document.createElement("mark");
    mark.textContent = text.slice(start, end);
    fragment.append(mark);
    pos = end;
  }
  if (pos < text.length) {
    fragment.append(document.createTextNode(text.slice(pos)));
  }
  return fragment;
}

function heat(percent: number | null): string {
  // Deeper tint for larger shares; presentation only.
  if (percent === null) {
    return "transparent";
  }
  const alpha = Math.min(percent, 100) / 100 * 0.55;
  return `rgba(31, 119, 180, ${alpha.toFixed(3)})`;
}

export function renderOverviewTable(
  overview: OverviewPayload,
  onCellClick: (row: string, col: string) => void,
): HTMLTableElement {
  const table = document.createElement("table");
  table.className = "overview";

  const head = table.createTHead().insertRow();
  head.append(document.createElement("th"));
  for (const col of overview.columns) {
    const th = document.createElement("th");
    th.textContent = col;
    head.append(th);
  }

  const body = table.createTBody();
  for (const row of overview.rows) {
    const tr = body.insertRow();
    const th = document.createElement("th");
    th.textContent = row;
    th.scope = "row";
    tr.append(th);
    for (const col of overview.columns) {
      const cell = overview.cells[row][col];
      const td = tr.insertCell();
      td.className = "cell";
      td.dataset.row = row;
      td.dataset.col = col;
      td.style.backgroundColor = heat(cell.percent);
      const count = document.createElement("span");
      count.className = "count";
      count.textContent = String(cell.count);
      const percent = document.createElement("span");
      percent.className = "percent";
      percent.textContent = cell.percent === null ? "-" : `${cell.percent.toFixed(1)}%`;
      td.append(count, percent);
      td.addEventListener("click", () => onCellClick(row, col));
    }
  }
  return table;
}

export interface HistogramActions {
  onYearClick: (year: number) => void;
  onAllDocuments: () => void;
  onBack: () => void;
}

export function renderHistogram(
  row: string,
  col: string,
  data: HistogramPayload,
  actions: HistogramActions,
): HTMLElement {
  const panel = document.createElement("section");
  panel.className = "histogram-view";

  const back = document.createElement("button");
  back.type = "button";
  back.className = "back";
  back.textContent = "< back to table";
  back.addEventListener("click", actions.onBack);

  const heading = document.createElement("h2");
  heading.textContent = `${row} x ${col}`;

  const totals = document.createElement("p");
  totals.className = "totals";
  totals.textContent = `${data.total} matching articles, ${data.sentences} matching sentences`;

  const chart = document.createElement("div");
  chart.className = "chart";
  const years = Object.keys(data.bins).sort();
  const maxCount = Math.max(1, ...years.map((y) => data.bins[y]));
  if (years.length === 0) {
    const empty = document.createElement("p");
    empty.className = "empty";
    empty.textContent = "no matching articles";
    chart.append(empty);
  }
  for (const year of years) {
    const count = data.bins[year];
    const column = document.createElement("button");
    column.type = "button";
    column.className = "bar";
    column.dataset.year = year;
    column.title = `${year}: ${count}`;
    column.addEventListener("click", () => actions.onYearClick(Number(year)));

    const value = document.createElement("span");
    value.className = "bar-count";
    value.textContent = String(count);
    const fill = document.createElement("span");
    fill.className = "bar-fill";
    fill.style.height = `${Math.round((count / maxCount) * 100)}%`;
    const label = document.createElement("span");
    label.className = "bar-year";
    label.textContent = year;
    column.append(value, fill, label);
    chart.append(column);
  }

  const allDocs = document.createElement("button");
  allDocs.type = "button";
  allDocs.className = "all-documents";
  allDocs.textContent = "view matching documents";
  allDocs.addEventListener("click", actions.onAllDocuments);

  panel.append(back, heading, totals, chart, allDocs);
  return panel;
}

export function renderDocuments(
  row: string,
  col: string,
  year: number | undefined,
  hits: DocumentHit[],
  onBack: () => void,
): HTMLElement {
  const panel = document.createElement("section");
  panel.className = "documents-view";

  const back = document.createElement("button");
  back.type = "button";
  back.className = "back";
  back.textContent = "< back to histogram";
  back.addEventListener("click", onBack);

  const heading = document.createElement("h2");
  heading.textContent = year === undefined ? `${row} x ${col}` : `${row} x ${col} in ${year}`;

  const list = document.createElement("ol");
  list.className = "hits";
  if (hits.length === 0) {
    const empty = document.createElement("p");
    empty.className = "empty";
    empty.textContent = "no documents";
    panel.append(back, heading, empty);
    return panel;
  }
  for (const hit of hits) {
    const item = document.createElement("li");
    item.className = "hit";

    const title = document.createElement("a");
    title.className = "hit-title";
    title.href = hit.link;
    title.target = "_blank";
    title.rel = "noopener";
    title.append(renderHighlighted(hit.title, hit.title_spans));

    const meta = document.createElement("div");
    meta.className = "hit-meta";
    meta.textContent = hit.doi
      ? `id ${hit.doc_id} - doi ${hit.doi} - ${hit.year}`
      : `id ${hit.doc_id} - ${hit.year}`;

    const sentences = document.createElement("ul");
    sentences.className = "hit-sentences";
    for (const sentence of hit.matched_sentences) {
      const li = document.createElement("li");
      li.append(renderHighlighted(sentence.text, sentence.spans));
      sentences.append(li);
    }

    item.append(title, meta, sentences);
    list.append(item);
  }
  panel.append(back, heading, list);
  return panel;
}
