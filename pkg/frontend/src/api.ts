import type { EncodeResponse, ReviewDecision, TermHit } from "./types";

export class ApiError extends Error {
  constructor(
    public status: number,
    message: string,
  ) {
    super(message);
  }
}

async function errorDetail(response: Response): Promise<string> {
  try {
    const body = await response.json();
    if (body && typeof body.detail === "string") return body.detail;
  } catch {
    // non-JSON error body
  }
  return `request failed with status ${response.status}`;
}

/** Thin client over the JSON endpoints; no local term knowledge. */
export class ApiClient {
  constructor(private baseUrl: string = "") {}

  async encode(text: string, maxTerms?: number): Promise<EncodeResponse> {
    const payload: Record<string, unknown> = { text };
    if (maxTerms !== undefined) payload.max_terms = maxTerms;
    const response = await fetch(`${this.baseUrl}/api/encode`, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(payload),
    });
    if (!response.ok) throw new ApiError(response.status, await errorDetail(response));
    return response.json();
  }

  async searchTerms(query: string): Promise<TermHit[]> {
    const q = encodeURIComponent(query);
    const response = await fetch(`${this.baseUrl}/api/terms?q=${q}`);
    if (!response.ok) throw new ApiError(response.status, await errorDetail(response));
    return response.json();
  }

  async postReview(decision: ReviewDecision): Promise<void> {
    const response = await fetch(`${this.baseUrl}/api/review`, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(decision),
    });
    if (!response.ok) throw new ApiError(response.status, await errorDetail(response));
  }
}
