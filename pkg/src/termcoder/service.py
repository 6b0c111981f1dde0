"""HTTP service: stateless encoding plus the reviewer API.

Endpoints (JSON, UTF-8):

    POST /api/encode   {"text": ..., "max_terms": 6?, thresholds?}
    GET  /api/terms?q=prefix
    POST /api/review   {"case_id", "llt_id", "action", "target_llt_id"?,
                        "reviewer_id"}

The terminology is immutable and shared across requests; the only mutable
state is the append-only review log, serialized through a single writer
lock. Replaying the log (last decision per case/term wins) reconstructs
the validated encoding of every case.
"""

from __future__ import annotations

import json
import threading
import time
from contextlib import asynccontextmanager
from pathlib import Path
from typing import Literal

from fastapi import FastAPI, HTTPException, Query
from pydantic import BaseModel

from .coder import TermCoder
from .config import CoderConfig
from .selection import EncodingResult


class EncodeRequest(BaseModel):
    text: str | None = None
    max_terms: int | None = None
    c3_threshold: float | None = None
    c4_threshold: float | None = None
    enable_c5: bool | None = None


class ReviewDecision(BaseModel):
    case_id: str
    llt_id: str
    action: Literal["accept", "reject", "replace"]
    target_llt_id: str | None = None
    reviewer_id: str


def result_payload(result: EncodingResult, timing_ms: float) -> dict:
    tokens = {t.index: t for t in result.tokens}
    winners = []
    for w in result.winners:
        winners.append(
            {
                "llt_id": w.llt_id,
                "llt_text": w.llt_text,
                "pt_id": w.pt_id,
                "pt_text": w.pt_text,
                "weights": w.weights.to_dict(),
                "voters": [
                    {
                        "index": i,
                        "surface": tokens[i].surface,
                        "char_span": [tokens[i].start, tokens[i].end],
                    }
                    for i in w.voters
                ],
                "stem_used": w.stem_used,
                "via_synonym": w.via_synonym,
            }
        )
    return {
        "winners": winners,
        "negation_alert": result.negation_alert,
        "negation_spans": [list(span) for span in result.negation_spans],
        "candidates_total": result.candidates_total,
        "timing_ms": round(timing_ms, 3),
    }


class ReviewLog:
    """Append-only JSON-lines log of review decisions."""

    def __init__(self, path: str | Path):
        self.path = Path(path)
        self._lock = threading.Lock()

    def append(self, record: dict) -> None:
        line = json.dumps(record, ensure_ascii=False)
        with self._lock:
            with self.path.open("a", encoding="utf-8") as fh:
                fh.write(line + "\n")

    def replay(self) -> dict[str, dict[str, dict]]:
        """Final decision per (case_id, llt_id); later lines supersede."""
        cases: dict[str, dict[str, dict]] = {}
        if not self.path.exists():
            return cases
        with self.path.open(encoding="utf-8") as fh:
            for line in fh:
                line = line.strip()
                if not line:
                    continue
                record = json.loads(line)
                cases.setdefault(record["case_id"], {})[record["llt_id"]] = record
        return cases


def create_app(
    coder: TermCoder | None = None,
    dict_path: str | Path | None = None,
    config: CoderConfig | None = None,
    review_log: str | Path = "review_log.jsonl",
    ui_dir: str | Path | None = None,
) -> FastAPI:
    """Build the FastAPI app; with ``dict_path`` the coder is fitted at startup."""
    log = ReviewLog(review_log)
    state = {"coder": coder}

    @asynccontextmanager
    async def lifespan(_app: FastAPI):
        if state["coder"] is None and dict_path is not None:
            cfg = config or CoderConfig()
            state["coder"] = cfg.make_coder().fit(dict_path)
        yield

    app = FastAPI(title="termcoder", version="0.1.0", lifespan=lifespan)

    def _ready_coder() -> TermCoder:
        fitted = state["coder"]
        if fitted is None:
            raise HTTPException(status_code=503, detail="terminology not loaded yet")
        return fitted

    @app.post("/api/encode")
    def http_encode(request: EncodeRequest):
        fitted = _ready_coder()
        if request.text is None:
            raise HTTPException(status_code=400, detail="missing 'text'")
        overrides = {
            name: value
            for name, value in (
                ("c3_threshold", request.c3_threshold),
                ("c4_threshold", request.c4_threshold),
                ("enable_c5", request.enable_c5),
            )
            if value is not None
        }
        start = time.perf_counter()
        if overrides:
            from . import selection

            result = selection.encode(
                request.text,
                fitted.terminology_,
                fitted.exact_index_,
                fitted.stem_index_,
                stemmer=fitted.stemmer_,
                max_terms=request.max_terms or fitted.max_terms,
                c3_threshold=overrides.get("c3_threshold", fitted.c3_threshold),
                c4_threshold=overrides.get("c4_threshold", fitted.c4_threshold),
                enable_c5=overrides.get("enable_c5", fitted.enable_c5),
                negation_words=fitted.negation_words_,
            )
        else:
            result = fitted.encode(request.text, max_terms=request.max_terms)
        elapsed_ms = (time.perf_counter() - start) * 1000.0
        return result_payload(result, elapsed_ms)

    @app.get("/api/terms")
    def http_terms(q: str = Query(default="")):
        fitted = _ready_coder()
        if not q:
            raise HTTPException(status_code=400, detail="missing query parameter 'q'")
        hits = fitted.terminology_.prefix_search(q)
        return [
            {"llt_id": e.llt_id, "llt_text": e.llt_text, "pt_id": e.pt_id, "pt_text": e.pt_text}
            for e in hits
        ]

    @app.post("/api/review")
    def http_review(decision: ReviewDecision):
        fitted = _ready_coder()
        terminology = fitted.terminology_
        if decision.llt_id not in terminology:
            raise HTTPException(status_code=422, detail=f"unknown llt_id {decision.llt_id!r}")
        if decision.action == "replace":
            if not decision.target_llt_id:
                raise HTTPException(status_code=422, detail="replace requires target_llt_id")
            if decision.target_llt_id not in terminology:
                raise HTTPException(
                    status_code=422, detail=f"unknown target_llt_id {decision.target_llt_id!r}"
                )
        elif decision.target_llt_id:
            raise HTTPException(status_code=422, detail="target_llt_id only valid with replace")
        record = decision.model_dump()
        record["timestamp"] = time.strftime("%Y-%m-%dT%H:%M:%S%z")
        log.append(record)
        return record

    if ui_dir is not None:
        from fastapi.staticfiles import StaticFiles

        app.mount("/", StaticFiles(directory=str(ui_dir), html=True), name="ui")

    app.state.review_log = log
    return app
