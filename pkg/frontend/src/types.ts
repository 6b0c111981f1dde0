// Wire types for the coding service (POST /api/encode, GET /api/terms,
// POST /api/review). The UI never derives term data itself; everything
// shown comes from these payloads.

export interface VoterSpan {
  index: number;
  surface: string;
  char_span: number[];
}

export interface WinnerPayload {
  llt_id: string;
  llt_text: string;
  pt_id: string;
  pt_text: string;
  weights: Record<string, number>;
  voters: VoterSpan[];
  stem_used: boolean;
  via_synonym: string | null;
}

export interface EncodeResponse {
  winners: WinnerPayload[];
  negation_alert: boolean;
  negation_spans: number[][];
  candidates_total: number;
  timing_ms: number;
}

export interface TermHit {
  llt_id: string;
  llt_text: string;
  pt_id: string;
  pt_text: string;
}

export type ReviewAction = "accept" | "reject" | "replace";

export interface ReviewDecision {
  case_id: string;
  llt_id: string;
  action: ReviewAction;
  target_llt_id?: string;
  reviewer_id: string;
}
