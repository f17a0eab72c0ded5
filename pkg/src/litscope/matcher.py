"""Windowed, boundary-aware term matching over titles and sentences.

Query terms are compiled to token-sequence patterns rather than character
regexes: every query word must match a whole token of the normalized
text, and up to ``window`` intermediate tokens are allowed between
consecutive query words. Matching a cross-query against a document is a
conjunction over its terms at document level; each term may hit a
different sentence.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from functools import cached_property
from typing import Iterable, Mapping, Sequence

from .corpus import Document, tokenize
from .inquiry import CrossQuery, QueryTerm, TermVariant, expand_term
from .lexicon import SynonymSet

TITLE = "title"
SENTENCE = "sentence"


@dataclass(frozen=True)
class CompiledPattern:
    """Alternative token sequences per query-word position, plus the window.

    ``positions[i]`` holds the token sequences that may stand for source
    word ``i`` (the original word first, synonyms after; multi-word
    alternatives are sequences longer than one). Between any two
    consecutive matched tokens, 0..window other tokens may intervene.
    """

    positions: tuple[tuple[tuple[str, ...], ...], ...]
    window: int

    def __post_init__(self):
        if not self.positions or any(not alts for alts in self.positions):
            raise ValueError("pattern needs at least one alternative per position")
        if self.window < 0:
            raise ValueError("window must be >= 0")

    @cached_property
    def _first_tokens(self) -> frozenset[str]:
        return frozenset(alt[0] for alt in self.positions[0])

    def match_end(self, tokens: Sequence[str], start: int) -> int | None:
        """Smallest exclusive end of a match anchored at ``start``.

        The chosen alternative of the first position must begin exactly at
        ``start``; every later query token may sit up to ``window`` tokens
        after the previously matched one. All placements are explored, so
        a nearer candidate never hides a feasible farther one.
        """
        if tokens[start] not in self._first_tokens:
            return None
        n = len(tokens)
        best: int | None = None

        def rec_seq(slot: int, alt: tuple[str, ...], ai: int, last: int) -> None:
            # alt[:ai] of this slot's alternative already matched; ``last``
            # is the index of the most recently matched token.
            if best is not None and last + 1 >= best:
                return
            if ai == len(alt):
                rec_slot(slot + 1, last)
                return
            hi = min(last + 1 + self.window, n - 1)
            for j in range(last + 1, hi + 1):
                if tokens[j] == alt[ai]:
                    rec_seq(slot, alt, ai + 1, j)

        def rec_slot(slot: int, last: int) -> None:
            nonlocal best
            if slot == len(self.positions):
                end = last + 1
                if best is None or end < best:
                    best = end
                return
            for alt in self.positions[slot]:
                hi = min(last + 1 + self.window, n - 1)
                for j in range(last + 1, hi + 1):
                    if tokens[j] == alt[0]:
                        rec_seq(slot, alt, 1, j)

        for alt in self.positions[0]:
            if alt[0] == tokens[start]:
                rec_seq(0, alt, 1, start)
        return best


def compile_pattern(variants: Sequence[TermVariant], window: int) -> CompiledPattern:
    """Merge variants of one source term into a single pattern.

    All variants must have the same number of positions (they derive from
    one term); per position, duplicate alternatives collapse.
    """
    if not variants:
        raise ValueError("cannot compile an empty variant list")
    width = len(variants[0].parts)
    if any(len(v.parts) != width for v in variants):
        raise ValueError("variants do not derive from the same source term")
    positions: list[tuple[tuple[str, ...], ...]] = []
    for k in range(width):
        alts: list[tuple[str, ...]] = []
        seen: set[tuple[str, ...]] = set()
        for v in variants:
            part = v.parts[k]
            if part not in seen:
                seen.add(part)
                alts.append(part)
        positions.append(tuple(alts))
    return CompiledPattern(tuple(positions), window)


def compile_term(term: QueryTerm, synonyms: SynonymSet, window: int) -> CompiledPattern:
    """Expand a term with synonyms and compile the result."""
    return compile_pattern(expand_term(term, synonyms), window)


@dataclass(frozen=True)
class MatchSpan:
    """One pattern occurrence in one text unit.

    Token indices are inclusive and refer to the normalized tokenization;
    character offsets refer to the original text unit and drive
    highlighting.
    """

    token_start: int
    token_end: int
    char_start: int
    char_end: int
    field: str | None = None
    sentence_index: int | None = None

    def __post_init__(self):
        if self.token_start > self.token_end:
            raise ValueError("token_start exceeds token_end")
        if self.field == SENTENCE and self.sentence_index is None:
            raise ValueError("sentence spans need a sentence_index")
        if self.field == TITLE and self.sentence_index is not None:
            raise ValueError("title spans must not carry a sentence_index")

    def to_payload(self) -> dict:
        return {
            "field": self.field,
            "sentence_index": self.sentence_index,
            "token_start": self.token_start,
            "token_end": self.token_end,
            "char_start": self.char_start,
            "char_end": self.char_end,
        }


def s_match(pattern: CompiledPattern, text: str) -> list[MatchSpan]:
    """Leftmost non-overlapping occurrences of ``pattern`` in one text unit.

    The text is normalized internally; returned spans carry both token
    indices and original character offsets.
    """
    toks = tokenize(text)
    spans: list[MatchSpan] = []
    i, n = 0, len(toks.tokens)
    while i < n:
        end = pattern.match_end(toks.tokens, i)
        if end is None:
            i += 1
            continue
        spans.append(
            MatchSpan(
                token_start=i,
                token_end=end - 1,
                char_start=toks.spans[i][0],
                char_end=toks.spans[end - 1][1],
            )
        )
        i = end
    return spans


@dataclass(frozen=True)
class DocumentMatch:
    """A document satisfying one cross-query, with every term's spans."""

    doc_id: str
    cross_query_key: str
    spans: tuple[MatchSpan, ...]

    def to_payload(self) -> dict:
        return {"doc_id": self.doc_id, "spans": [s.to_payload() for s in self.spans]}


def _term_spans(pattern: CompiledPattern, doc: Document, fields: str) -> tuple[MatchSpan, ...]:
    spans: list[MatchSpan] = []
    if fields in (TITLE, "all"):
        for span in s_match(pattern, doc.title):
            spans.append(replace(span, field=TITLE))
    if fields in ("abstract", "all"):
        for idx, sentence in enumerate(doc.sentences):
            for span in s_match(pattern, sentence):
                spans.append(replace(span, field=SENTENCE, sentence_index=idx))
    return tuple(spans)


def _evaluate(
    cq: CrossQuery,
    doc: Document,
    spans_by_term: Mapping[QueryTerm, tuple[MatchSpan, ...]],
) -> DocumentMatch | None:
    collected: list[MatchSpan] = []
    for term in cq.terms():
        spans = spans_by_term[term]
        if not spans:
            return None
        collected.extend(spans)
    return DocumentMatch(doc_id=doc.id, cross_query_key=cq.key, spans=tuple(collected))


def match_document(
    cq: CrossQuery,
    doc: Document,
    fields: str,
    synonyms: SynonymSet,
    window: int,
) -> DocumentMatch | None:
    """Evaluate one cross-query against one document.

    Every term (main variant and each conjunct) must hit the title or at
    least one sentence, per the field selector; terms may hit different
    sentences.
    """
    spans_by_term = {
        term: _term_spans(compile_term(term, synonyms, window), doc, fields)
        for term in cq.terms()
    }
    return _evaluate(cq, doc, spans_by_term)


def search(
    cqs: Sequence[CrossQuery],
    docs: Iterable[Document],
    fields: str,
    synonyms: SynonymSet,
    window: int,
) -> dict[str, set[DocumentMatch]]:
    """Evaluate every cross-query over every document.

    Each distinct term is compiled once and evaluated once per document;
    cross-queries then combine the shared per-term results. Keys of the
    returned map are cross-query keys; values are sets of matches.
    """
    patterns: dict[QueryTerm, CompiledPattern] = {}
    for cq in cqs:
        for term in cq.terms():
            if term not in patterns:
                patterns[term] = compile_term(term, synonyms, window)
    results: dict[str, set[DocumentMatch]] = {cq.key: set() for cq in cqs}
    for doc in sorted(docs, key=lambda d: d.id):
        spans_by_term = {term: _term_spans(p, doc, fields) for term, p in patterns.items()}
        for cq in cqs:
            match = _evaluate(cq, doc, spans_by_term)
            if match is not None:
                results[cq.key].add(match)
    return results
