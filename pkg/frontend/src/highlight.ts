import type { EncodeResponse } from "./types";

export type SegmentKind = "plain" | "match" | "negation";

export interface Segment {
  text: string;
  kind: SegmentKind;
}

/**
 * Split the original description into contiguous segments, marking the
 * character ranges matched by any winner's voters and the flagged
 * negation words. Negation wins where ranges overlap.
 */
export function highlightSegments(text: string, response: EncodeResponse): Segment[] {
  const kinds = new Array<SegmentKind>(text.length).fill("plain");
  for (const winner of response.winners) {
    for (const voter of winner.voters) {
      const [start, end] = voter.char_span;
      for (let i = Math.max(0, start); i < Math.min(text.length, end); i++) {
        kinds[i] = "match";
      }
    }
  }
  for (const [start, end] of response.negation_spans) {
    for (let i = Math.max(0, start); i < Math.min(text.length, end); i++) {
      kinds[i] = "negation";
    }
  }
  const segments: Segment[] = [];
  for (let i = 0; i < text.length; i++) {
    const last = segments[segments.length - 1];
    if (last && last.kind === kinds[i]) {
      last.text += text[i];
    } else {
      segments.push({ text: text[i], kind: kinds[i] });
    }
  }
  return segments;
}
