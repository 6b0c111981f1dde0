import { afterEach, beforeEach, describe, expect, it, vi } from "vitest";

import { ApiClient } from "../src/api";
import { createApp } from "../src/app";
import type { ReviewDecision } from "../src/types";

import d1 from "./fixtures/d1.json";
import negation from "./fixtures/negation.json";

const PYREXIA_HIT = {
  llt_id: "10037660",
  llt_text: "Pyrexia",
  pt_id: "20000004",
  pt_text: "Pyrexia",
};

interface MockService {
  encodeBody: unknown;
  encodeStatus: number;
  termsBody: unknown;
  reviewStatus: number;
  reviewPosts: ReviewDecision[];
  failNetwork: boolean;
}

function mockFetch(service: MockService) {
  return vi.fn(async (input: RequestInfo | URL, init?: RequestInit) => {
    const url = String(input);
    if (service.failNetwork) throw new TypeError("network down");
    const respond = (body: unknown, status = 200) => ({
      ok: status < 400,
      status,
      json: async () => body,
    });
    if (url.includes("/api/encode")) {
      return respond(service.encodeBody, service.encodeStatus);
    }
    if (url.includes("/api/terms")) {
      return respond(service.termsBody);
    }
    if (url.includes("/api/review")) {
      if (service.reviewStatus >= 400) {
        return respond({ detail: "unknown llt_id" }, service.reviewStatus);
      }
      service.reviewPosts.push(JSON.parse(String(init?.body)) as ReviewDecision);
      return respond(service.reviewPosts[service.reviewPosts.length - 1]);
    }
    throw new Error(`unexpected url ${url}`);
  });
}

function flush(): Promise<void> {
  return new Promise((resolve) => setTimeout(resolve, 0));
}

let service: MockService;
let root: HTMLElement;

function $(selector: string): HTMLElement {
  const node = root.querySelector(selector);
  if (!node) throw new Error(`not found: ${selector}`);
  return node as HTMLElement;
}

function $$(selector: string): HTMLElement[] {
  return Array.from(root.querySelectorAll(selector));
}

function click(selector: string, scope: ParentNode = root): void {
  const node = scope.querySelector(selector);
  if (!node) throw new Error(`not found: ${selector}`);
  (node as HTMLElement).dispatchEvent(new MouseEvent("click", { bubbles: true }));
}

async function encodeText(text: string): Promise<void> {
  ($('[data-testid="description"]') as HTMLTextAreaElement).value = text;
  click('[data-testid="encode-btn"]');
  await flush();
}

beforeEach(() => {
  service = {
    encodeBody: d1.response,
    encodeStatus: 200,
    termsBody: [PYREXIA_HIT],
    reviewStatus: 200,
    reviewPosts: [],
    failNetwork: false,
  };
  vi.stubGlobal("fetch", mockFetch(service));
  document.body.innerHTML = '<div id="app"></div>';
  root = document.getElementById("app") as HTMLElement;
  createApp(root, new ApiClient());
});

afterEach(() => {
  vi.unstubAllGlobals();
});

describe("rendering a case", () => {
  it("shows one card per winner of the D1 fixture", async () => {
    await encodeText(d1.text);
    const cards = $$('[data-testid="card"]');
    expect(cards).toHaveLength(2);
    expect(cards[0].textContent).toContain("Anaphylactic shock");
    expect(cards[1].textContent).toContain("Hypotension");
    expect($$('[data-testid="state"]').map((s) => s.textContent)).toEqual([
      "proposed",
      "proposed",
    ]);
  });

  it("highlights the matched spans in the narrative", async () => {
    await encodeText(d1.text);
    const marks = $$("mark.match").map((m) => m.textContent);
    expect(marks).toEqual(expect.arrayContaining(["anaphylactic", "shock", "hypotension"]));
  });

  it("keeps the negation banner hidden without an alert", async () => {
    await encodeText(d1.text);
    expect(($('[data-testid="negation-banner"]') as HTMLElement).hidden).toBe(true);
  });

  it("shows the negation banner and span on the negation fixture", async () => {
    service.encodeBody = negation.response;
    await encodeText(negation.text);
    expect(($('[data-testid="negation-banner"]') as HTMLElement).hidden).toBe(false);
    expect($$("mark.negation").map((m) => m.textContent)).toEqual(["senza"]);
  });

  it("renders an empty state when there are no winners", async () => {
    service.encodeBody = {
      winners: [],
      negation_alert: false,
      negation_spans: [],
      candidates_total: 0,
      timing_ms: 0.1,
    };
    await encodeText("qqq zzz");
    expect($('[data-testid="no-candidates"]').textContent).toContain("No candidate terms");
  });

  it("shows a retryable error state when encoding fails", async () => {
    service.encodeStatus = 503;
    service.encodeBody = { detail: "terminology not loaded yet" };
    await encodeText(d1.text);
    expect(($('[data-testid="error"]') as HTMLElement).hidden).toBe(false);
    service.encodeStatus = 200;
    service.encodeBody = d1.response;
    click('[data-testid="retry-btn"]');
    await flush();
    expect($$('[data-testid="card"]')).toHaveLength(2);
    expect(($('[data-testid="error"]') as HTMLElement).hidden).toBe(true);
  });
});

describe("card state transitions", () => {
  it("accept and trash set terminal states, undo restores proposed", async () => {
    await encodeText(d1.text);
    const [first, second] = $$('[data-testid="card"]');
    click('[data-testid="accept-btn"]', first);
    expect($$('[data-testid="state"]')[0].textContent).toBe("accepted");
    click('[data-testid="trash-btn"]', $$('[data-testid="card"]')[1]);
    expect($$('[data-testid="state"]')[1].textContent).toBe("rejected");
    click('[data-testid="undo-btn"]', $$('[data-testid="card"]')[1]);
    expect($$('[data-testid="state"]')[1].textContent).toBe("proposed");
    expect(second).toBeDefined();
  });

  it("replace searches the service and needs a picked target", async () => {
    await encodeText(d1.text);
    click('[data-testid="replace-btn"]', $$('[data-testid="card"]')[1]);
    const panel = $('[data-testid="replace-panel"]');
    expect(panel).toBeDefined();

    const input = panel.querySelector('[data-testid="search-input"]') as HTMLInputElement;
    input.value = "pyr";
    input.dispatchEvent(new Event("input", { bubbles: true }));
    click('[data-testid="search-btn"]', $$('[data-testid="card"]')[1]);
    await flush();

    let confirm = root.querySelector('[data-testid="confirm-replace-btn"]') as HTMLButtonElement;
    expect(confirm.disabled).toBe(true);
    click('[data-testid="search-results"] li', $$('[data-testid="card"]')[1]);
    confirm = root.querySelector('[data-testid="confirm-replace-btn"]') as HTMLButtonElement;
    expect(confirm.disabled).toBe(false);
    confirm.dispatchEvent(new MouseEvent("click", { bubbles: true }));

    expect($$('[data-testid="state"]')[1].textContent).toBe("replaced with Pyrexia");
  });

  it("cancelling a replace leaves the card proposed", async () => {
    await encodeText(d1.text);
    click('[data-testid="replace-btn"]', $$('[data-testid="card"]')[0]);
    click('[data-testid="cancel-replace-btn"]', $$('[data-testid="card"]')[0]);
    expect($$('[data-testid="state"]')[0].textContent).toBe("proposed");
    expect(root.querySelector('[data-testid="replace-panel"]')).toBeNull();
  });

  it("an empty search result disables confirm", async () => {
    service.termsBody = [];
    await encodeText(d1.text);
    click('[data-testid="replace-btn"]', $$('[data-testid="card"]')[0]);
    const card = $$('[data-testid="card"]')[0];
    const input = card.querySelector('[data-testid="search-input"]') as HTMLInputElement;
    input.value = "nothing";
    input.dispatchEvent(new Event("input", { bubbles: true }));
    click('[data-testid="search-btn"]', $$('[data-testid="card"]')[0]);
    await flush();
    const confirm = root.querySelector('[data-testid="confirm-replace-btn"]') as HTMLButtonElement;
    expect(confirm.disabled).toBe(true);
    expect($('[data-testid="search-results"]').textContent).toContain("no matching terms");
  });
});

describe("submitting a review", () => {
  async function decideAll(): Promise<void> {
    await encodeText(d1.text);
    click('[data-testid="accept-btn"]', $$('[data-testid="card"]')[0]);
    click('[data-testid="trash-btn"]', $$('[data-testid="card"]')[1]);
  }

  it("submit stays disabled until every card is terminal", async () => {
    await encodeText(d1.text);
    const submit = $('[data-testid="submit-btn"]') as HTMLButtonElement;
    expect(submit.disabled).toBe(true);
    click('[data-testid="accept-btn"]', $$('[data-testid="card"]')[0]);
    expect(($('[data-testid="submit-btn"]') as HTMLButtonElement).disabled).toBe(true);
    click('[data-testid="trash-btn"]', $$('[data-testid="card"]')[1]);
    expect(($('[data-testid="submit-btn"]') as HTMLButtonElement).disabled).toBe(false);
  });

  it("posts exactly one decision per card and reports success", async () => {
    await decideAll();
    click('[data-testid="submit-btn"]');
    await flush();
    expect(service.reviewPosts).toHaveLength(2);
    expect(service.reviewPosts.map((d) => [d.llt_id, d.action])).toEqual([
      ["10002199", "accept"],
      ["10021097", "reject"],
    ]);
    expect($('[data-testid="status"]').textContent).toContain("review submitted (2 decisions)");
    expect(($('[data-testid="submit-btn"]') as HTMLButtonElement).disabled).toBe(true);
  });

  it("surfaces a validation error on the card", async () => {
    await decideAll();
    service.reviewStatus = 422;
    click('[data-testid="submit-btn"]');
    await flush();
    expect($$('[data-testid="card-error"]')).toHaveLength(2);
    expect($$('[data-testid="card-error"]')[0].textContent).toContain("unknown llt_id");
  });

  it("queues decisions while offline and retries them", async () => {
    await decideAll();
    service.failNetwork = true;
    click('[data-testid="submit-btn"]');
    await flush();
    expect(service.reviewPosts).toHaveLength(0);
    expect($('[data-testid="status"]').textContent).toContain("2 queued for retry");
    expect($('[data-testid="submit-btn"]').textContent).toBe("Retry submit");

    service.failNetwork = false;
    click('[data-testid="submit-btn"]');
    await flush();
    expect(service.reviewPosts).toHaveLength(2);
    expect($('[data-testid="status"]').textContent).toContain("review submitted");
  });
});
