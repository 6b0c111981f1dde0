import { ApiClient } from "./api";
import { highlightSegments } from "./highlight";
import { CandidateCard, ReviewSession } from "./state";
import type { TermHit } from "./types";

interface ReplacePanelState {
  open: boolean;
  query: string;
  results: TermHit[];
  searched: boolean;
  selected: TermHit | null;
}

function freshPanel(): ReplacePanelState {
  return { open: false, query: "", results: [], searched: false, selected: null };
}

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  attrs: Record<string, string> = {},
  text = "",
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  for (const [key, value] of Object.entries(attrs)) node.setAttribute(key, value);
  if (text) node.textContent = text;
  return node;
}

/** Reviewer page: encode a description, review the candidate cards,
 * submit one decision per card. All term data comes from the service. */
export class ReviewApp {
  session: ReviewSession | null = null;
  text = "";
  errorMessage = "";
  statusMessage = "";
  private panels = new Map<CandidateCard, ReplacePanelState>();
  private caseCounter = 0;

  constructor(
    private root: HTMLElement,
    private client: ApiClient,
  ) {
    this.renderShell();
  }

  private query<T extends HTMLElement>(selector: string): T {
    const node = this.root.querySelector(selector);
    if (!node) throw new Error(`missing element ${selector}`);
    return node as T;
  }

  private renderShell(): void {
    this.root.replaceChildren();
    const compose = el("section", { class: "compose" });
    const description = el("textarea", {
      "data-testid": "description",
      placeholder: "Narrative reaction description",
    });
    const reviewer = el("input", { "data-testid": "reviewer", value: "reviewer-1" });
    const encodeBtn = el("button", { "data-testid": "encode-btn" }, "Encode");
    encodeBtn.addEventListener("click", () => void this.encode());
    compose.append(description, reviewer, encodeBtn);

    const error = el("div", { "data-testid": "error", class: "error", hidden: "" });
    const negation = el(
      "div",
      { "data-testid": "negation-banner", class: "banner", hidden: "" },
      "Possible negation in the description: review the matches carefully.",
    );
    const highlighted = el("p", { "data-testid": "highlighted", class: "narrative" });
    const cards = el("div", { "data-testid": "cards", class: "cards" });
    const submit = el("button", { "data-testid": "submit-btn", disabled: "" }, "Submit review");
    submit.addEventListener("click", () => void this.submit());
    const status = el("p", { "data-testid": "status", class: "status" });

    this.root.append(compose, error, negation, highlighted, cards, submit, status);
  }

  async encode(): Promise<void> {
    this.text = this.query<HTMLTextAreaElement>('[data-testid="description"]').value;
    this.errorMessage = "";
    this.statusMessage = "";
    try {
      const response = await this.client.encode(this.text);
      this.caseCounter += 1;
      this.session = new ReviewSession(`case-${this.caseCounter}`, response);
      this.panels = new Map(this.session.cards.map((c) => [c, freshPanel()]));
    } catch (error) {
      this.session = null;
      this.errorMessage = error instanceof Error ? error.message : "request failed";
    }
    this.renderCase();
  }

  async submit(): Promise<void> {
    if (!this.session || !this.session.allTerminal) return;
    const reviewer = this.query<HTMLInputElement>('[data-testid="reviewer"]').value || "reviewer";
    const outcome = await this.session.submit(this.client, reviewer);
    if (outcome.done) {
      this.statusMessage = `review submitted (${this.session.cards.length} decisions)`;
    } else {
      this.statusMessage = `${outcome.posted} recorded, ${outcome.queued} queued for retry`;
    }
    this.renderCase();
  }

  renderCase(): void {
    const error = this.query<HTMLDivElement>('[data-testid="error"]');
    if (this.errorMessage) {
      error.replaceChildren(
        document.createTextNode(`Encoding failed: ${this.errorMessage} `),
      );
      const retry = el("button", { "data-testid": "retry-btn" }, "Retry");
      retry.addEventListener("click", () => void this.encode());
      error.append(retry);
      error.hidden = false;
    } else {
      error.hidden = true;
      error.replaceChildren();
    }

    const banner = this.query<HTMLDivElement>('[data-testid="negation-banner"]');
    banner.hidden = !(this.session && this.session.response.negation_alert);

    this.renderNarrative();
    this.renderCards();

    const submit = this.query<HTMLButtonElement>('[data-testid="submit-btn"]');
    submit.disabled = !this.session || !this.session.allTerminal || this.session.submitted;
    if (this.session?.cards.some((c) => c.submitState === "failed")) {
      submit.textContent = "Retry submit";
    } else {
      submit.textContent = "Submit review";
    }
    this.query<HTMLParagraphElement>('[data-testid="status"]').textContent = this.statusMessage;
  }

  private renderNarrative(): void {
    const narrative = this.query<HTMLParagraphElement>('[data-testid="highlighted"]');
    narrative.replaceChildren();
    if (!this.session) return;
    for (const segment of highlightSegments(this.text, this.session.response)) {
      if (segment.kind === "plain") {
        narrative.append(document.createTextNode(segment.text));
      } else {
        narrative.append(el("mark", { class: segment.kind }, segment.text));
      }
    }
  }

  private renderCards(): void {
    const container = this.query<HTMLDivElement>('[data-testid="cards"]');
    container.replaceChildren();
    if (!this.session) return;
    if (this.session.cards.length === 0) {
      container.append(el("p", { "data-testid": "no-candidates" }, "No candidate terms."));
      return;
    }
    for (const card of this.session.cards) {
      container.append(this.renderCard(card));
    }
  }

  private renderCard(card: CandidateCard): HTMLElement {
    const w = card.winner;
    const panel = this.panels.get(card) ?? freshPanel();
    const node = el("article", { class: "card", "data-testid": "card", "data-llt": w.llt_id });

    const header = el("header", {});
    header.append(el("strong", {}, w.llt_text), el("span", { class: "pt" }, ` PT: ${w.pt_text}`));
    if (w.via_synonym) {
      header.append(el("span", { class: "badge", "data-testid": "synonym-badge" }, `via "${w.via_synonym}"`));
    }
    node.append(header);

    const weights = w.weights;
    node.append(
      el(
        "p",
        { class: "weights" },
        `coverage ${weights.coverage} | stem ${weights.stem_flag} | distance ${Number(weights.text_distance).toFixed(2)} | density ${weights.density}`,
      ),
    );
    node.append(
      el("p", { class: "matched" }, `matched: ${w.voters.map((v) => v.surface).join(" ")}`),
    );

    const stateLabel =
      card.state.kind === "replaced"
        ? `replaced with ${card.state.target.llt_text}`
        : card.state.kind;
    node.append(el("p", { "data-testid": "state", class: `state ${card.state.kind}` }, stateLabel));
    if (card.submitError) {
      node.append(el("p", { "data-testid": "card-error", class: "error" }, card.submitError));
    }

    const actions = el("div", { class: "actions" });
    const accept = el("button", { "data-testid": "accept-btn" }, "Accept");
    accept.addEventListener("click", () => {
      card.accept();
      this.renderCase();
    });
    const trash = el("button", { "data-testid": "trash-btn", title: "Refuse this term" }, "Trash");
    trash.addEventListener("click", () => {
      card.reject();
      this.renderCase();
    });
    const replace = el("button", { "data-testid": "replace-btn" }, "Replace");
    replace.addEventListener("click", () => {
      panel.open = true;
      this.panels.set(card, panel);
      this.renderCase();
    });
    const undo = el("button", { "data-testid": "undo-btn" }, "Undo");
    undo.addEventListener("click", () => {
      card.reset();
      this.renderCase();
    });
    if (card.submitState === "sent") {
      for (const btn of [accept, trash, replace, undo]) btn.setAttribute("disabled", "");
    } else if (!card.terminal) {
      undo.setAttribute("disabled", "");
    }
    actions.append(accept, trash, replace, undo);
    node.append(actions);

    if (panel.open) node.append(this.renderReplacePanel(card, panel));
    return node;
  }

  private renderReplacePanel(card: CandidateCard, panel: ReplacePanelState): HTMLElement {
    const box = el("div", { class: "replace-panel", "data-testid": "replace-panel" });
    const input = el("input", {
      "data-testid": "search-input",
      placeholder: "Search terms",
      value: panel.query,
    });
    input.addEventListener("input", () => {
      panel.query = input.value;
    });
    const searchBtn = el("button", { "data-testid": "search-btn" }, "Search");
    searchBtn.addEventListener("click", () => void this.search(card, panel));
    box.append(input, searchBtn);

    const list = el("ul", { "data-testid": "search-results" });
    for (const hit of panel.results) {
      const item = el("li", { "data-llt": hit.llt_id }, `${hit.llt_text} (${hit.pt_text})`);
      if (panel.selected?.llt_id === hit.llt_id) item.setAttribute("class", "selected");
      item.addEventListener("click", () => {
        panel.selected = hit;
        this.renderCase();
      });
      list.append(item);
    }
    if (panel.searched && panel.results.length === 0) {
      list.append(el("li", { class: "empty" }, "no matching terms"));
    }
    box.append(list);

    const confirm = el("button", { "data-testid": "confirm-replace-btn" }, "Confirm");
    if (!panel.selected) confirm.setAttribute("disabled", "");
    confirm.addEventListener("click", () => {
      card.replace(panel.selected);
      this.panels.set(card, freshPanel());
      this.renderCase();
    });
    const cancel = el("button", { "data-testid": "cancel-replace-btn" }, "Cancel");
    cancel.addEventListener("click", () => {
      this.panels.set(card, freshPanel());
      this.renderCase();
    });
    box.append(confirm, cancel);
    return box;
  }

  private async search(card: CandidateCard, panel: ReplacePanelState): Promise<void> {
    try {
      panel.results = panel.query ? await this.client.searchTerms(panel.query) : [];
    } catch {
      panel.results = [];
    }
    panel.searched = true;
    panel.selected = null;
    this.panels.set(card, panel);
    this.renderCase();
  }
}

export function createApp(root: HTMLElement, client: ApiClient = new ApiClient()): ReviewApp {
  return new ReviewApp(root, client);
}

const mount = document.querySelector<HTMLElement>("#app[data-automount]");
if (mount) {
  createApp(mount);
}
