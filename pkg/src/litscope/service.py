"""HTTP service exposing corpus info, inquiry execution, and drill-downs.

The service is stateless apart from the loaded corpus snapshot and an
in-memory result cache keyed by content hash, so identical inquiries
return identical handles. Corpus swaps are a single reference assignment;
results computed against the previous snapshot are dropped.
"""

from __future__ import annotations

import importlib.resources
import os
from dataclasses import dataclass, field
from typing import Any, Mapping

from fastapi import FastAPI, HTTPException
from fastapi.middleware.cors import CORSMiddleware

from .aggregate import (
    PUBMED_URL_TEMPLATE,
    InquiryResult,
    OverviewTable,
    UnknownCellError,
    cell_documents,
    cell_histogram,
    overview,
    run_inquiry,
)
from .corpus import Corpus, load_corpus, now_utc
from .inquiry import InquiryValidationError, validate
from .lexicon import SynonymSet, load_synonyms

ENV_PORT = "LITSCOPE_PORT"
ENV_CORPUS = "LITSCOPE_CORPUS"
ENV_LEXICON = "LITSCOPE_LEXICON"
ENV_UI_ORIGIN = "LITSCOPE_UI_ORIGIN"
ENV_LINK_TEMPLATE = "LITSCOPE_LINK_TEMPLATE"


def default_synonyms() -> SynonymSet:
    """The packaged starter lexicon (neuroscience families)."""
    resource = importlib.resources.files("litscope").joinpath("data/neuro_synonyms.json")
    with importlib.resources.as_file(resource) as path:
        return load_synonyms(path)


@dataclass
class Engine:
    """Mutable service state shared across requests."""

    corpus: Corpus | None = None
    synonyms: SynonymSet = field(default_factory=SynonymSet.empty)
    link_template: str = PUBMED_URL_TEMPLATE
    results: dict[str, tuple[InquiryResult, OverviewTable, str]] = field(default_factory=dict)

    def set_corpus(self, corpus: Corpus) -> None:
        # Atomic swap: requests running against the old snapshot keep it;
        # cached handles refer to the old corpus, so they are invalidated.
        self.corpus = corpus
        self.results = {}

    def execute(self, config: Mapping[str, Any]) -> tuple[str, InquiryResult, OverviewTable, str]:
        if self.corpus is None:
            raise HTTPException(status_code=503, detail="no corpus loaded")
        inquiry = validate(config, synonyms=self.synonyms)
        handle = inquiry.content_hash(self.corpus.source_label)
        if handle not in self.results:
            result = run_inquiry(inquiry, self.corpus)
            self.results[handle] = (result, overview(result), now_utc())
        result, table, created_at = self.results[handle]
        return handle, result, table, created_at

    def lookup(self, handle: str) -> InquiryResult:
        if handle not in self.results:
            raise HTTPException(status_code=404, detail=f"unknown inquiry handle {handle!r}")
        return self.results[handle][0]


def create_app(
    corpus: Corpus | None = None,
    synonyms: SynonymSet | None = None,
    ui_origin: str | None = None,
    link_template: str | None = None,
) -> FastAPI:
    """Build the service; arguments default to the environment."""
    engine = Engine(
        corpus=corpus,
        synonyms=synonyms if synonyms is not None else default_synonyms(),
        link_template=link_template or os.environ.get(ENV_LINK_TEMPLATE, PUBMED_URL_TEMPLATE),
    )
    if engine.corpus is None and os.environ.get(ENV_CORPUS):
        engine.corpus = load_corpus(os.environ[ENV_CORPUS])
    if synonyms is None and os.environ.get(ENV_LEXICON):
        engine.synonyms = load_synonyms(os.environ[ENV_LEXICON])

    app = FastAPI(title="litscope", version="0.1.0")
    app.state.engine = engine

    origin = ui_origin or os.environ.get(ENV_UI_ORIGIN)
    if origin:
        app.add_middleware(
            CORSMiddleware,
            allow_origins=[origin],
            allow_methods=["*"],
            allow_headers=["*"],
        )

    @app.post("/api/inquiries")
    def create_inquiry(body: dict) -> dict:
        try:
            handle, result, table, created_at = engine.execute(body)
        except InquiryValidationError as exc:
            raise HTTPException(
                status_code=400, detail={"message": str(exc), "field": exc.field}
            ) from exc
        return {
            "handle": {
                "id": handle,
                "created_at": created_at,
                "inquiry": result.inquiry.to_payload(),
            },
            "overview": table.to_payload(),
            "warnings": list(result.warnings),
        }

    @app.get("/api/inquiries/{handle}/cells/{row}/{col}/histogram")
    def get_histogram(handle: str, row: str, col: str) -> dict:
        result = engine.lookup(handle)
        try:
            return cell_histogram(result, row, col).to_payload()
        except UnknownCellError as exc:
            raise HTTPException(status_code=404, detail=f"unknown cell {row!r} x {col!r}") from exc

    @app.get("/api/inquiries/{handle}/cells/{row}/{col}/documents")
    def get_documents(handle: str, row: str, col: str, year: int | None = None) -> list[dict]:
        result = engine.lookup(handle)
        try:
            hits = cell_documents(result, row, col, year=year, link_template=engine.link_template)
        except UnknownCellError as exc:
            raise HTTPException(status_code=404, detail=f"unknown cell {row!r} x {col!r}") from exc
        return [h.to_payload() for h in hits]

    @app.get("/api/corpus/info")
    def corpus_info() -> dict:
        if engine.corpus is None:
            raise HTTPException(status_code=503, detail="no corpus loaded")
        years = engine.corpus.year_range()
        return {
            "label": engine.corpus.source_label,
            "documents": len(engine.corpus),
            "years": {"begin": years.begin, "end": years.end} if years else None,
        }

    return app
