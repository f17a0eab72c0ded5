/** Payload shapes of the inquiry API. The client renders these verbatim:
 * counts and highlight spans are never recomputed on this side. */

export type Span = [number, number];

export interface InquiryConfig {
  main: { central: string; preceding: string[]; succeeding: string[] };
  dimensions: { label: string; terms: string[] }[];
  interval?: { begin: number; end: number } | null;
  fields: "title" | "abstract" | "all";
  window: number;
}

export interface InquiryEcho {
  main: { central: string; preceding: string[]; succeeding: string[] };
  dimensions: { label: string; terms: string[] }[];
  interval: { begin: number; end: number } | null;
  fields: string;
  window: number;
}

export interface OverviewCell {
  count: number;
  percent: number | null;
}

export interface OverviewPayload {
  rows: string[];
  columns: string[];
  cells: Record<string, Record<string, OverviewCell>>;
}

export interface InquiryHandle {
  id: string;
  created_at: string;
  inquiry: InquiryEcho;
}

export interface CreateInquiryResponse {
  handle: InquiryHandle;
  overview: OverviewPayload;
  warnings: string[];
}

export interface HistogramPayload {
  bins: Record<string, number>;
  total: number;
  sentences: number;
}

export interface SentenceHit {
  index: number;
  text: string;
  spans: Span[];
}

export interface DocumentHit {
  doc_id: string;
  doi: string | null;
  year: number;
  title: string;
  title_spans: Span[];
  matched_sentences: SentenceHit[];
  link: string;
}

export interface CorpusInfo {
  label: string;
  documents: number;
  years: { begin: number; end: number } | null;
}

export interface ApiError {
  message: string;
  field?: string;
}
