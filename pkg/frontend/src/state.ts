import type { ApiClient } from "./api";
import { ApiError } from "./api";
import type { EncodeResponse, ReviewDecision, TermHit, WinnerPayload } from "./types";

export type CardState =
  | { kind: "proposed" }
  | { kind: "accepted" }
  | { kind: "rejected" }
  | { kind: "replaced"; target: TermHit };

export type SubmitState = "unsent" | "sent" | "failed";

/**
 * One candidate term under review. A card is in exactly one state;
 * "replaced" requires a target chosen from the term search. Submit
 * bookkeeping lives here too so a retry never double-posts a card.
 */
export class CandidateCard {
  state: CardState = { kind: "proposed" };
  submitState: SubmitState = "unsent";
  submitError = "";

  constructor(readonly winner: WinnerPayload) {}

  private ensureEditable(): void {
    if (this.submitState === "sent") {
      throw new Error("decision already submitted");
    }
  }

  accept(): void {
    this.ensureEditable();
    this.state = { kind: "accepted" };
  }

  reject(): void {
    this.ensureEditable();
    this.state = { kind: "rejected" };
  }

  replace(target: TermHit | null): void {
    this.ensureEditable();
    if (!target) return; // empty selection leaves the state unchanged
    this.state = { kind: "replaced", target };
  }

  reset(): void {
    this.ensureEditable();
    this.state = { kind: "proposed" };
  }

  get terminal(): boolean {
    return this.state.kind !== "proposed";
  }

  decision(caseId: string, reviewerId: string): ReviewDecision {
    const base = { case_id: caseId, llt_id: this.winner.llt_id, reviewer_id: reviewerId };
    switch (this.state.kind) {
      case "accepted":
        return { ...base, action: "accept" };
      case "rejected":
        return { ...base, action: "reject" };
      case "replaced":
        return { ...base, action: "replace", target_llt_id: this.state.target.llt_id };
      case "proposed":
        throw new Error("card has no terminal state yet");
    }
  }
}

export interface SubmitOutcome {
  posted: number;
  failed: number;
  queued: number;
  done: boolean;
}

/** The review of one encoded case: one card per proposed term. */
export class ReviewSession {
  readonly cards: CandidateCard[];

  constructor(
    readonly caseId: string,
    readonly response: EncodeResponse,
  ) {
    this.cards = response.winners.map((w) => new CandidateCard(w));
  }

  get allTerminal(): boolean {
    return this.cards.every((c) => c.terminal);
  }

  get submitted(): boolean {
    return this.cards.length > 0 && this.cards.every((c) => c.submitState === "sent");
  }

  decisions(reviewerId: string): ReviewDecision[] {
    return this.cards.map((c) => c.decision(this.caseId, reviewerId));
  }

  /**
   * Post one decision per card that has not been recorded yet. Network
   * failures leave the card queued for retry; a validation error (HTTP
   * 422) is surfaced on the card itself.
   */
  async submit(client: ApiClient, reviewerId: string): Promise<SubmitOutcome> {
    if (!this.allTerminal) {
      throw new Error("all cards need a decision before submitting");
    }
    let posted = 0;
    let failed = 0;
    for (const card of this.cards) {
      if (card.submitState === "sent") continue;
      try {
        await client.postReview(card.decision(this.caseId, reviewerId));
        card.submitState = "sent";
        card.submitError = "";
        posted += 1;
      } catch (error) {
        card.submitState = "failed";
        card.submitError = error instanceof ApiError ? error.message : "network error, queued for retry";
        failed += 1;
      }
    }
    const queued = this.cards.filter((c) => c.submitState !== "sent").length;
    return { posted, failed, queued, done: this.submitted };
  }
}
