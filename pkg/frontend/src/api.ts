/** Thin fetch wrapper around the inquiry API. */

import type {
  ApiError,
  CorpusInfo,
  CreateInquiryResponse,
  DocumentHit,
  HistogramPayload,
  InquiryConfig,
} from "./types.js";

export class RequestFailed extends Error {
  constructor(
    readonly status: number,
    readonly detail: ApiError,
  ) {
    super(detail.message);
  }
}

async function parseError(response: Response): Promise<ApiError> {
  try {
    const body = await response.json();
    if (body && typeof body.detail === "object" && body.detail !== null) {
      return { message: String(body.detail.message ?? "request failed"), field: body.detail.field };
    }
    if (body && typeof body.detail === "string") {
      return { message: body.detail };
    }
  } catch {
    // fall through to the generic message
  }
  return { message: `request failed with status ${response.status}` };
}

export class ApiClient {
  constructor(readonly baseUrl: string = "") {}

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    const response = await fetch(this.baseUrl + path, init);
    if (!response.ok) {
      throw new RequestFailed(response.status, await parseError(response));
    }
    return (await response.json()) as T;
  }

  createInquiry(config: InquiryConfig): Promise<CreateInquiryResponse> {
    return this.request("/api/inquiries", {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(config),
    });
  }

  cellUrl(handle: string, row: string, col: string, leaf: string): string {
    const r = encodeURIComponent(row);
    const c = encodeURIComponent(col);
    return `/api/inquiries/${handle}/cells/${r}/${c}/${leaf}`;
  }

  getHistogram(handle: string, row: string, col: string): Promise<HistogramPayload> {
    return this.request(this.cellUrl(handle, row, col, "histogram"));
  }

  getDocuments(handle: string, row: string, col: string, year?: number): Promise<DocumentHit[]> {
    const suffix = year === undefined ? "" : `?year=${year}`;
    return this.request(this.cellUrl(handle, row, col, "documents") + suffix);
  }

  corpusInfo(): Promise<CorpusInfo> {
    return this.request("/api/corpus/info");
  }
}
