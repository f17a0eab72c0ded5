"""End-to-end inquiry execution and result shaping.

``run_inquiry`` applies the time filter, generates the cross-query
lattice, runs the search, and snapshots everything needed for the
overview table, per-cell year histograms, and per-document drill-downs.
Results are immutable and their canonical serialization is deterministic
for fixed inputs.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Iterable

from .corpus import Corpus, Document, TimeInterval, filter_by_interval, now_utc
from .inquiry import NONE_COLUMN, Inquiry, cell_key, column_keys, cross_queries, main_variants
from .matcher import SENTENCE, TITLE, DocumentMatch, MatchSpan, search

PUBMED_URL_TEMPLATE = "https://pubmed.ncbi.nlm.nih.gov/{id}/"


class UnknownCellError(KeyError):
    """Requested overview cell does not exist in this result."""


@dataclass(frozen=True)
class QueryHits:
    """Matches of one cross-query: sorted ids plus full span data."""

    doc_ids: tuple[str, ...]
    matches: tuple[DocumentMatch, ...]

    @property
    def doc_count(self) -> int:
        return len(self.doc_ids)

    def to_payload(self) -> dict[str, Any]:
        return {
            "doc_count": self.doc_count,
            "doc_ids": list(self.doc_ids),
            "matches": [m.to_payload() for m in self.matches],
        }


@dataclass(frozen=True)
class InquiryResult:
    """Snapshot of one executed inquiry over one corpus."""

    inquiry: Inquiry
    corpus_label: str
    interval: TimeInterval
    rows: tuple[str, ...]
    columns: tuple[str, ...]
    per_query: dict[str, QueryHits]
    documents: dict[str, Document]
    warnings: tuple[str, ...]
    executed_at: str

    def hits(self, row_key: str, col_key: str) -> QueryHits:
        key = cell_key(row_key, col_key)
        if key not in self.per_query:
            raise UnknownCellError(key)
        return self.per_query[key]

    def to_payload(self) -> dict[str, Any]:
        """Canonical serialization; identical for identical inputs.

        The execution timestamp is deliberately left out so that re-running
        the same inquiry yields byte-identical output.
        """
        return {
            "corpus_label": self.corpus_label,
            "inquiry": self.inquiry.to_payload(),
            "interval": {"begin": self.interval.begin, "end": self.interval.end},
            "warnings": list(self.warnings),
            "rows": list(self.rows),
            "columns": list(self.columns),
            "per_query": {key: hits.to_payload() for key, hits in self.per_query.items()},
        }


@dataclass(frozen=True)
class Cell:
    count: int
    percent: float | None  # None when the row base is zero


@dataclass(frozen=True)
class OverviewTable:
    """Juxtaposed frequencies: main variants x dimension combinations."""

    rows: tuple[str, ...]
    columns: tuple[str, ...]
    cells: dict[str, dict[str, Cell]]

    def to_payload(self) -> dict[str, Any]:
        return {
            "rows": list(self.rows),
            "columns": list(self.columns),
            "cells": {
                row: {
                    col: {"count": cell.count, "percent": cell.percent}
                    for col, cell in by_col.items()
                }
                for row, by_col in self.cells.items()
            },
        }


@dataclass(frozen=True)
class YearHistogram:
    """Per-year document counts for one cell, plus matched-sentence total."""

    bins: dict[int, int]
    total: int
    sentences: int

    def to_payload(self) -> dict[str, Any]:
        return {
            "bins": {str(year): self.bins[year] for year in sorted(self.bins)},
            "total": self.total,
            "sentences": self.sentences,
        }


@dataclass(frozen=True)
class SentenceHit:
    """One matched sentence with highlight spans (original char offsets)."""

    index: int
    text: str
    spans: tuple[tuple[int, int], ...]

    def to_payload(self) -> dict[str, Any]:
        return {"index": self.index, "text": self.text, "spans": [list(s) for s in self.spans]}


@dataclass(frozen=True)
class DocumentHit:
    """Drill-down entry: one matching document with highlighted evidence."""

    doc_id: str
    doi: str | None
    year: int
    title: str
    title_spans: tuple[tuple[int, int], ...]
    matched_sentences: tuple[SentenceHit, ...]
    link: str

    def to_payload(self) -> dict[str, Any]:
        return {
            "doc_id": self.doc_id,
            "doi": self.doi,
            "year": self.year,
            "title": self.title,
            "title_spans": [list(s) for s in self.title_spans],
            "matched_sentences": [s.to_payload() for s in self.matched_sentences],
            "link": self.link,
        }


# ---------------------------------------------------------------------------
# Execution


def run_inquiry(i: Inquiry, c: Corpus) -> InquiryResult:
    """Execute an inquiry: filter by time, build the lattice, search.

    With no explicit interval the full corpus year range applies. An
    interval that excludes every document still yields a complete,
    all-zero result plus a warning.
    """
    warnings: list[str] = []
    interval = i.interval or c.year_range()
    if interval is None:
        interval = TimeInterval(1000, 9999)
        warnings.append("corpus is empty")
    docs = filter_by_interval(c.documents, interval)
    if not docs and len(c) > 0:
        warnings.append(
            f"no documents published between {interval.begin} and {interval.end}"
        )
    cqs = cross_queries(i)
    raw = search(cqs, docs, i.fields, i.synonyms, i.window)

    per_query: dict[str, QueryHits] = {}
    matched_ids: set[str] = set()
    for cq in cqs:
        matches = sorted(raw[cq.key], key=lambda m: m.doc_id)
        per_query[cq.key] = QueryHits(
            doc_ids=tuple(m.doc_id for m in matches),
            matches=tuple(matches),
        )
        matched_ids.update(m.doc_id for m in matches)

    by_id = {d.id: d for d in docs}
    return InquiryResult(
        inquiry=i,
        corpus_label=c.source_label,
        interval=interval,
        rows=tuple(v.text for v in main_variants(i.main)),
        columns=tuple(column_keys(i)),
        per_query=per_query,
        documents={doc_id: by_id[doc_id] for doc_id in sorted(matched_ids)},
        warnings=tuple(warnings),
        executed_at=now_utc(),
    )


def overview(r: InquiryResult) -> OverviewTable:
    """Counts and row-relative percentages for every lattice cell.

    Percentages are taken against the row's no-dimension column (the main
    variant's own total); a zero base leaves them undefined.
    """
    cells: dict[str, dict[str, Cell]] = {}
    for row in r.rows:
        base = r.hits(row, NONE_COLUMN).doc_count
        by_col: dict[str, Cell] = {}
        for col in r.columns:
            count = r.hits(row, col).doc_count
            percent = 100.0 * count / base if base else None
            by_col[col] = Cell(count=count, percent=percent)
        cells[row] = by_col
    return OverviewTable(rows=r.rows, columns=r.columns, cells=cells)


def _sentence_count(matches: Iterable[DocumentMatch]) -> int:
    total = 0
    for match in matches:
        total += len({s.sentence_index for s in match.spans if s.field == SENTENCE})
    return total


def cell_histogram(r: InquiryResult, row_key: str, col_key: str) -> YearHistogram:
    """Year distribution of one cell's documents."""
    hits = r.hits(row_key, col_key)
    bins: dict[int, int] = {}
    for doc_id in hits.doc_ids:
        year = r.documents[doc_id].year
        bins[year] = bins.get(year, 0) + 1
    return YearHistogram(bins=bins, total=hits.doc_count, sentences=_sentence_count(hits.matches))


def _merge_spans(spans: Iterable[tuple[int, int]]) -> tuple[tuple[int, int], ...]:
    """Sort and merge overlapping char spans for clean highlighting."""
    merged: list[tuple[int, int]] = []
    for start, end in sorted(spans):
        if merged and start < merged[-1][1]:
            merged[-1] = (merged[-1][0], max(merged[-1][1], end))
        else:
            merged.append((start, end))
    return tuple(merged)


def cell_documents(
    r: InquiryResult,
    row_key: str,
    col_key: str,
    year: int | None = None,
    link_template: str = PUBMED_URL_TEMPLATE,
) -> list[DocumentHit]:
    """Drill-down hits for one cell, newest first, optionally one year."""
    hits = r.hits(row_key, col_key)
    out: list[DocumentHit] = []
    for match in hits.matches:
        doc = r.documents[match.doc_id]
        if year is not None and doc.year != year:
            continue
        title_spans = _merge_spans(
            (s.char_start, s.char_end) for s in match.spans if s.field == TITLE
        )
        by_sentence: dict[int, list[MatchSpan]] = {}
        for span in match.spans:
            if span.field == SENTENCE:
                by_sentence.setdefault(span.sentence_index, []).append(span)
        sentences = tuple(
            SentenceHit(
                index=idx,
                text=doc.sentences[idx],
                spans=_merge_spans((s.char_start, s.char_end) for s in spans),
            )
            for idx, spans in sorted(by_sentence.items())
        )
        out.append(
            DocumentHit(
                doc_id=doc.id,
                doi=doc.doi,
                year=doc.year,
                title=doc.title,
                title_spans=title_spans,
                matched_sentences=sentences,
                link=link_template.format(id=doc.id),
            )
        )
    out.sort(key=lambda h: (-h.year, h.doc_id))
    return out
