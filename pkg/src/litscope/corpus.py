"""Document model, text normalization, sentence segmentation, and corpus storage.

A corpus is an immutable set of documents and is read-only after load.
Documents interchange as JSON Lines: one flat record per line with fields
``id``, ``title``, ``abstract`` (unsegmented), ``year`` and optional
``doi``; unknown fields are ignored.
"""

from __future__ import annotations

import json
import logging
import random
import re
from dataclasses import dataclass
from datetime import datetime, timezone
from functools import cached_property
from pathlib import Path
from typing import Callable, Iterable, Iterator

log = logging.getLogger(__name__)

WarnFn = Callable[[str], None]


class CorpusError(Exception):
    """Base error for corpus loading and validation."""


class CorpusFormatError(CorpusError):
    """A record in the interchange file could not be parsed."""

    def __init__(self, line_number: int, message: str):
        super().__init__(f"line {line_number}: {message}")
        self.line_number = line_number


class DuplicateDocumentError(CorpusError):
    """Two records share a document id."""

    def __init__(self, doc_id: str):
        super().__init__(f"duplicate document id {doc_id!r}")
        self.doc_id = doc_id


# ---------------------------------------------------------------------------
# Normalization and tokenization


@dataclass(frozen=True)
class NormalizedText:
    """Lower-cased text with punctuation collapsed to single spaces.

    ``char_spans[i]`` is the (start, end) span in the original string that
    produced character ``i`` of ``text``, so offsets into the normalized
    string map back to the original for highlighting.
    """

    text: str
    char_spans: tuple[tuple[int, int], ...]

    def original_span(self, start: int, end: int) -> tuple[int, int]:
        """Map a half-open span of the normalized text to original offsets."""
        if start >= end:
            return (0, 0)
        return (self.char_spans[start][0], self.char_spans[end - 1][1])


def normalize_with_offsets(text: str) -> NormalizedText:
    """Normalize ``text`` keeping a per-character map back to the original.

    Every non-alphanumeric character (punctuation and whitespace alike) acts
    as a separator and runs of separators collapse to a single space, so
    "anxiety-like" yields the tokens "anxiety" and "like" rather than a
    merged word. Letters are case-folded.
    """
    out: list[str] = []
    spans: list[tuple[int, int]] = []
    sep_start: int | None = None
    for i, ch in enumerate(text):
        # Case folding may expand a letter into several characters; keep only
        # the alphanumeric ones (e.g. drop the combining dot that lower()
        # produces for a dotted capital I) so the output is stable under
        # re-normalization.
        kept = [low for low in ch.lower() if low.isalnum()] if ch.isalnum() else []
        if kept:
            if out and sep_start is not None:
                out.append(" ")
                spans.append((sep_start, i))
            sep_start = None
            for low in kept:
                out.append(low)
                spans.append((i, i + 1))
        elif sep_start is None:
            sep_start = i
    return NormalizedText("".join(out), tuple(spans))


def normalize(text: str) -> str:
    """Lower-case ``text`` and replace punctuation runs with single spaces."""
    return normalize_with_offsets(text).text


@dataclass(frozen=True)
class TokenizedText:
    """Word tokens of a text unit plus their original character spans."""

    tokens: tuple[str, ...]
    spans: tuple[tuple[int, int], ...]


def tokenize(text: str) -> TokenizedText:
    """Split ``text`` into normalized word tokens with original offsets."""
    norm = normalize_with_offsets(text)
    tokens: list[str] = []
    spans: list[tuple[int, int]] = []
    i, n = 0, len(norm.text)
    while i < n:
        if norm.text[i] == " ":
            i += 1
            continue
        j = i
        while j < n and norm.text[j] != " ":
            j += 1
        tokens.append(norm.text[i:j])
        spans.append(norm.original_span(i, j))
        i = j
    return TokenizedText(tuple(tokens), tuple(spans))


# ---------------------------------------------------------------------------
# Sentence segmentation

_TERMINATORS = frozenset(".!?")
# Dotted abbreviations that must not end a sentence; compared case-insensitively
# on the word immediately before the terminator.
_ABBREVIATIONS = frozenset({"e.g", "i.e", "vs", "fig"})
_LAST_WORD = re.compile(r"(\S+)\s*$")
_OPENERS = "\"'([{"


def _ends_with_abbreviation(before: str) -> bool:
    m = _LAST_WORD.search(before)
    if not m:
        return False
    word = m.group(1).lstrip(_OPENERS)
    if not word:
        return False
    low = word.lower()
    if low in _ABBREVIATIONS:
        return True
    if low == "al":
        prev = _LAST_WORD.search(before[: m.start()])
        return prev is not None and prev.group(1).lstrip(_OPENERS).lower() == "et"
    # Initials such as "J. Smith"
    return len(word) == 1 and word.isalpha() and word.isupper()


def segment_sentences(abstract: str) -> list[str]:
    """Split an abstract into sentences.

    A sentence ends at '.', '!' or '?' followed by whitespace or end of
    text, unless the terminator closes a known abbreviation (e.g, i.e,
    et al, Fig, vs, or a single-capital initial). Terminators stay with
    their sentence; surrounding whitespace is trimmed.
    """
    sentences: list[str] = []
    start = 0
    n = len(abstract)
    for k, ch in enumerate(abstract):
        if ch not in _TERMINATORS:
            continue
        if k + 1 < n and not abstract[k + 1].isspace():
            continue
        if ch == "." and _ends_with_abbreviation(abstract[start:k]):
            continue
        segment = abstract[start : k + 1].strip()
        if segment:
            sentences.append(segment)
        start = k + 1
    tail = abstract[start:].strip()
    if tail:
        sentences.append(tail)
    return sentences


# ---------------------------------------------------------------------------
# Domain types


@dataclass(frozen=True)
class Document:
    """A searchable article: title, segmented abstract sentences, year, id."""

    id: str
    title: str
    sentences: tuple[str, ...]
    year: int
    doi: str | None = None

    def __post_init__(self):
        if not self.id:
            raise ValueError("document id must be non-empty")
        if not isinstance(self.year, int) or not 1000 <= self.year <= 9999:
            raise ValueError(f"document {self.id!r}: year must be a 4-digit integer")
        if any(not s for s in self.sentences):
            raise ValueError(f"document {self.id!r}: empty sentence")


@dataclass(frozen=True)
class TimeInterval:
    """Inclusive year range used to restrict a search."""

    begin: int
    end: int

    def __post_init__(self):
        if self.begin > self.end:
            raise ValueError(f"interval begin {self.begin} exceeds end {self.end}")

    def contains(self, year: int) -> bool:
        return self.begin <= year <= self.end


@dataclass(frozen=True)
class CorpusRecord:
    """Raw ingestion record, staged before sentence segmentation."""

    id: str
    title: str
    abstract: str
    year: int | None
    doi: str | None = None


@dataclass(frozen=True)
class Corpus:
    """Immutable document collection; safe to share across threads."""

    documents: frozenset[Document]
    source_label: str = ""
    fetched_at: str = ""

    def __len__(self) -> int:
        return len(self.documents)

    def __iter__(self) -> Iterator[Document]:
        return iter(self.ordered)

    @cached_property
    def ordered(self) -> tuple[Document, ...]:
        return tuple(sorted(self.documents, key=lambda d: d.id))

    @cached_property
    def by_id(self) -> dict[str, Document]:
        return {d.id: d for d in self.documents}

    def year_range(self) -> TimeInterval | None:
        """Span from the oldest to the most recent document, if any."""
        if not self.documents:
            return None
        years = [d.year for d in self.documents]
        return TimeInterval(min(years), max(years))


def filter_by_interval(docs: Iterable[Document], ti: TimeInterval) -> frozenset[Document]:
    """Documents published within ``ti``, bounds inclusive."""
    return frozenset(d for d in docs if ti.contains(d.year))


# ---------------------------------------------------------------------------
# Interchange format


def parse_record(obj: dict, line_number: int) -> CorpusRecord:
    if not isinstance(obj, dict):
        raise CorpusFormatError(line_number, "record is not an object")
    doc_id = obj.get("id")
    if not isinstance(doc_id, str) or not doc_id.strip():
        raise CorpusFormatError(line_number, "missing or empty 'id'")
    title = obj.get("title", "")
    abstract = obj.get("abstract", "")
    if not isinstance(title, str) or not isinstance(abstract, str):
        raise CorpusFormatError(line_number, "'title' and 'abstract' must be strings")
    year = obj.get("year")
    if year is not None and not isinstance(year, int):
        raise CorpusFormatError(line_number, "'year' must be an integer")
    doi = obj.get("doi")
    if doi is not None and not isinstance(doi, str):
        raise CorpusFormatError(line_number, "'doi' must be a string")
    return CorpusRecord(id=doc_id.strip(), title=title, abstract=abstract, year=year, doi=doi or None)


def read_interchange(path: str | Path) -> Iterator[CorpusRecord]:
    """Yield records from a JSON Lines corpus file, validating each line."""
    with open(path, encoding="utf-8") as fh:
        for line_number, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as exc:
                raise CorpusFormatError(line_number, f"invalid JSON ({exc.msg})") from exc
            yield parse_record(obj, line_number)


def build_corpus(
    records: Iterable[CorpusRecord],
    source_label: str = "",
    fetched_at: str = "",
    warn: WarnFn | None = None,
) -> Corpus:
    """Segment records into documents, rejecting duplicate ids.

    Records without a usable publication year are skipped with a warning:
    time filtering requires one. Empty titles or abstracts are kept but
    flagged.
    """
    emit = warn or log.warning
    docs: dict[str, Document] = {}
    for rec in records:
        if rec.id in docs:
            raise DuplicateDocumentError(rec.id)
        if rec.year is None or not 1000 <= rec.year <= 9999:
            emit(f"record {rec.id}: no valid publication year, skipped")
            continue
        if not rec.title:
            emit(f"record {rec.id}: empty title")
        if not rec.abstract:
            emit(f"record {rec.id}: empty abstract")
        docs[rec.id] = Document(
            id=rec.id,
            title=rec.title,
            sentences=tuple(segment_sentences(rec.abstract)),
            year=rec.year,
            doi=rec.doi,
        )
    return Corpus(frozenset(docs.values()), source_label=source_label, fetched_at=fetched_at)


def load_corpus(path: str | Path, source_label: str | None = None, warn: WarnFn | None = None) -> Corpus:
    """Load a corpus from an interchange file.

    Raises :class:`CorpusFormatError` with the offending line number for
    malformed records and :class:`DuplicateDocumentError` for repeated ids.
    """
    label = source_label if source_label is not None else Path(path).name
    corpus = build_corpus(read_interchange(path), source_label=label, fetched_at=now_utc(), warn=warn)
    log.info("loaded %d documents from %s", len(corpus), path)
    return corpus


def save_corpus(corpus: Corpus, path: str | Path) -> None:
    """Write a corpus back to the interchange format, one record per line."""
    with open(path, "w", encoding="utf-8") as fh:
        for doc in corpus.ordered:
            rec = {
                "id": doc.id,
                "title": doc.title,
                "abstract": " ".join(doc.sentences),
                "year": doc.year,
            }
            if doc.doi:
                rec["doi"] = doc.doi
            fh.write(json.dumps(rec, ensure_ascii=False) + "\n")


def now_utc() -> str:
    return datetime.now(timezone.utc).isoformat(timespec="seconds")


# ---------------------------------------------------------------------------
# Synthetic corpora (deterministic; used by tests and the CLI generator)

_SYNTH_ALPHABET = "abc"
_SYNTH_PUNCT = [",", ";", ":", "-", "(", ")"]


def _synthetic_vocab(rng: random.Random, size: int) -> list[str]:
    vocab: list[str] = []
    seen: set[str] = set()
    while len(vocab) < size:
        word = "".join(rng.choice(_SYNTH_ALPHABET) for _ in range(rng.randint(1, 4)))
        if word not in seen:
            seen.add(word)
            vocab.append(word)
    return vocab


def _synthetic_phrase(rng: random.Random, vocab: list[str], n_words: int) -> str:
    parts: list[str] = []
    for _ in range(n_words):
        parts.append(rng.choice(vocab))
        if rng.random() < 0.15:
            parts[-1] += rng.choice(_SYNTH_PUNCT)
    return " ".join(parts)


def synthetic_corpus(
    seed: int,
    n_docs: int = 50,
    vocab_size: int = 40,
    year_range: tuple[int, int] = (1990, 2020),
) -> Corpus:
    """Reproducible random corpus: same seed, same documents.

    Vocabulary words are short strings over a tiny alphabet so that
    substring collisions (word-boundary traps) occur naturally.
    """
    rng = random.Random(seed)
    vocab = _synthetic_vocab(rng, vocab_size)
    records = []
    for i in range(n_docs):
        sentences = []
        for _ in range(rng.randint(0, 5)):
            body = _synthetic_phrase(rng, vocab, rng.randint(3, 12))
            sentences.append(body + rng.choice(".!?"))
        records.append(
            CorpusRecord(
                id=f"S{i:05d}",
                title=_synthetic_phrase(rng, vocab, rng.randint(2, 8)),
                abstract=" ".join(sentences),
                year=rng.randint(*year_range),
                doi=f"10.5555/syn.{seed}.{i}" if rng.random() < 0.5 else None,
            )
        )
    return build_corpus(records, source_label=f"synthetic-{seed}", warn=lambda _msg: None)
