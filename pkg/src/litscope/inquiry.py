"""Inquiry model: validation, main-query variants, synonym expansion, and
the cross-query lattice.

An inquiry is one main query plus optional dimensions of related terms.
Evaluating it means running every cross-query: a main-query variant
conjoined with one chosen term from each dimension in some subset of the
dimensions. Expansion with synonyms happens later, at pattern-compile
time, so lattice keys stay human-readable.
"""

from __future__ import annotations

import hashlib
import itertools
import json
from dataclasses import dataclass, field
from typing import Any, Mapping

from .corpus import TimeInterval, normalize
from .lexicon import SynonymSet, synset

DEFAULT_WINDOW = 6
MAX_WINDOW = 10
FIELD_CHOICES = ("title", "abstract", "all")

# Column key for the cross-query with no dimension conjuncts. Parentheses
# cannot occur in normalized terms, so this never collides with a term.
NONE_COLUMN = "(none)"


class InquiryValidationError(ValueError):
    """User input rejected; ``field`` names the offending config entry."""

    def __init__(self, field_name: str, message: str):
        super().__init__(f"{field_name}: {message}")
        self.field = field_name


@dataclass(frozen=True)
class QueryTerm:
    """An ordered sequence of normalized words."""

    words: tuple[str, ...]

    def __post_init__(self):
        if not self.words or any(not w for w in self.words):
            raise ValueError("query term must contain non-empty words")

    @property
    def text(self) -> str:
        return " ".join(self.words)

    @staticmethod
    def parse(raw: str) -> "QueryTerm":
        """Normalize free text into a term; raises ValueError when empty."""
        words = tuple(normalize(raw).split())
        if not words:
            raise ValueError(f"term {raw!r} is empty after normalization")
        return QueryTerm(words)


@dataclass(frozen=True)
class MainQuery:
    central: QueryTerm
    preceding: tuple[str, ...] = ()
    succeeding: tuple[str, ...] = ()


@dataclass(frozen=True)
class Dimension:
    """One aspect of interest: a label and its alternative search terms."""

    label: str
    terms: tuple[QueryTerm, ...]


@dataclass(frozen=True)
class Inquiry:
    main: MainQuery
    dimensions: tuple[Dimension, ...] = ()
    interval: TimeInterval | None = None
    fields: str = "all"
    synonyms: SynonymSet = field(default_factory=SynonymSet.empty)
    window: int = DEFAULT_WINDOW

    def to_payload(self) -> dict[str, Any]:
        """Canonical config echo: stable field names and ordering."""
        return {
            "main": {
                "central": self.main.central.text,
                "preceding": list(self.main.preceding),
                "succeeding": list(self.main.succeeding),
            },
            "dimensions": [
                {"label": d.label, "terms": [t.text for t in d.terms]} for d in self.dimensions
            ],
            "interval": (
                {"begin": self.interval.begin, "end": self.interval.end} if self.interval else None
            ),
            "fields": self.fields,
            "window": self.window,
        }

    def content_hash(self, corpus_label: str = "") -> str:
        """Stable id over the inquiry, its synonyms, and the corpus label."""
        blob = json.dumps(
            {
                "inquiry": self.to_payload(),
                "synonyms": sorted((k, list(v)) for k, v in self.synonyms.entries.items()),
                "corpus": corpus_label,
            },
            sort_keys=True,
            ensure_ascii=False,
        )
        return hashlib.sha256(blob.encode("utf-8")).hexdigest()[:16]


@dataclass(frozen=True)
class TermVariant:
    """One concrete synonym choice per word of a source term.

    ``parts[i]`` holds the tokens chosen for source word ``i``; a
    multi-word alternative splices several tokens into one slot.
    """

    parts: tuple[tuple[str, ...], ...]

    @property
    def words(self) -> tuple[str, ...]:
        return tuple(tok for part in self.parts for tok in part)


@dataclass(frozen=True)
class CrossQuery:
    """A main-query variant conjoined with at most one term per dimension."""

    main_variant: QueryTerm
    conjuncts: tuple[tuple[str, QueryTerm], ...] = ()

    def terms(self) -> list[QueryTerm]:
        return [self.main_variant, *(t for _, t in self.conjuncts)]

    @property
    def row_key(self) -> str:
        return self.main_variant.text

    @property
    def col_key(self) -> str:
        if not self.conjuncts:
            return NONE_COLUMN
        return " & ".join(t.text for _, t in self.conjuncts)

    @property
    def key(self) -> str:
        return f"{self.row_key} | {self.col_key}"


def cell_key(row_key: str, col_key: str) -> str:
    return f"{row_key} | {col_key}"


# ---------------------------------------------------------------------------
# Validation


def _parse_attachments(value: Any, field_name: str) -> tuple[str, ...]:
    if value is None:
        return ()
    if not isinstance(value, (list, tuple)):
        raise InquiryValidationError(field_name, "must be a list of words")
    out: list[str] = []
    for item in value:
        token = normalize(str(item))
        if not token:
            raise InquiryValidationError(field_name, "contains an empty word")
        if " " in token:
            raise InquiryValidationError(field_name, f"{item!r} must be a single word")
        if token in out:
            raise InquiryValidationError(field_name, f"duplicate word {token!r}")
        out.append(token)
    return tuple(out)


def validate(
    draft: Mapping[str, Any],
    synonyms: SynonymSet | None = None,
    max_window: int = MAX_WINDOW,
) -> Inquiry:
    """Turn a raw config mapping into a validated inquiry.

    Applies defaults (window 6, all fields, unrestricted interval),
    normalizes every term, and rejects inconsistent drafts with errors
    naming the offending field.
    """
    raw_main = draft.get("main")
    if isinstance(raw_main, str):
        raw_main = {"central": raw_main}
    if raw_main is None:
        raw_main = {}
    if not isinstance(raw_main, Mapping):
        raise InquiryValidationError("main", "must be a string or an object")

    central_raw = str(raw_main.get("central", "") or "")
    try:
        central = QueryTerm.parse(central_raw)
    except ValueError:
        raise InquiryValidationError("main.central", "central term must not be empty") from None
    main = MainQuery(
        central=central,
        preceding=_parse_attachments(raw_main.get("preceding"), "main.preceding"),
        succeeding=_parse_attachments(raw_main.get("succeeding"), "main.succeeding"),
    )
    variant_texts = [v.text for v in main_variants(main)]
    if len(set(variant_texts)) != len(variant_texts):
        raise InquiryValidationError(
            "main", "preceding/succeeding words produce duplicate variants"
        )

    raw_dims = draft.get("dimensions") or []
    if not isinstance(raw_dims, (list, tuple)):
        raise InquiryValidationError("dimensions", "must be a list of {label, terms} objects")
    dimensions: list[Dimension] = []
    seen_labels: set[str] = set()
    seen_terms: set[str] = set()
    for pos, raw_dim in enumerate(raw_dims):
        where = f"dimensions[{pos}]"
        if not isinstance(raw_dim, Mapping):
            raise InquiryValidationError(where, "must be an object with label and terms")
        label = str(raw_dim.get("label", "") or "").strip()
        if not label:
            raise InquiryValidationError(f"{where}.label", "label must not be empty")
        if label in seen_labels:
            raise InquiryValidationError(f"{where}.label", f"duplicate label {label!r}")
        seen_labels.add(label)
        raw_terms = raw_dim.get("terms")
        if not isinstance(raw_terms, (list, tuple)) or not raw_terms:
            raise InquiryValidationError(f"{where}.terms", "needs at least one term")
        terms: list[QueryTerm] = []
        for raw_term in raw_terms:
            try:
                term = QueryTerm.parse(str(raw_term))
            except ValueError:
                raise InquiryValidationError(f"{where}.terms", f"term {raw_term!r} is empty") from None
            if term.text in {t.text for t in terms}:
                raise InquiryValidationError(f"{where}.terms", f"duplicate term {term.text!r}")
            if term.text in seen_terms:
                # The same term in two dimensions would make overview columns
                # ambiguous; reject it.
                raise InquiryValidationError(
                    f"{where}.terms", f"term {term.text!r} already used by another dimension"
                )
            terms.append(term)
        seen_terms.update(t.text for t in terms)
        dimensions.append(Dimension(label=label, terms=tuple(terms)))

    interval = None
    raw_interval = draft.get("interval")
    if raw_interval is not None:
        if not isinstance(raw_interval, Mapping):
            raise InquiryValidationError("interval", "must be an object with begin and end")
        begin, end = raw_interval.get("begin"), raw_interval.get("end")
        if not isinstance(begin, int) or not isinstance(end, int):
            raise InquiryValidationError("interval", "begin and end must be integers")
        if not (1000 <= begin <= 9999 and 1000 <= end <= 9999):
            raise InquiryValidationError("interval", "years must be 4-digit integers")
        if begin > end:
            raise InquiryValidationError("interval", f"begin {begin} exceeds end {end}")
        interval = TimeInterval(begin, end)

    fields = str(draft.get("fields") or "all")
    if fields not in FIELD_CHOICES:
        raise InquiryValidationError("fields", f"must be one of {', '.join(FIELD_CHOICES)}")

    window = draft.get("window", DEFAULT_WINDOW)
    if window is None:
        window = DEFAULT_WINDOW
    if not isinstance(window, int) or isinstance(window, bool):
        raise InquiryValidationError("window", "must be an integer")
    if window < 0:
        raise InquiryValidationError("window", "must be >= 0")
    if window > max_window:
        raise InquiryValidationError("window", f"must be <= {max_window}")

    return Inquiry(
        main=main,
        dimensions=tuple(dimensions),
        interval=interval,
        fields=fields,
        synonyms=synonyms if synonyms is not None else SynonymSet.empty(),
        window=window,
    )


# ---------------------------------------------------------------------------
# Variant and lattice generation


def main_variants(mq: MainQuery) -> list[QueryTerm]:
    """Bare central term, then one variant per preceding/succeeding word.

    Attachment words extend the central term by one position; the window
    between words applies at match time, not here.
    """
    variants = [mq.central]
    variants.extend(QueryTerm((p, *mq.central.words)) for p in mq.preceding)
    variants.extend(QueryTerm((*mq.central.words, s)) for s in mq.succeeding)
    return variants


def expand_term(t: QueryTerm, sy: SynonymSet) -> list[TermVariant]:
    """All synonym choices for a term: the positional cartesian product.

    The all-original variant comes first; multi-word alternatives splice
    their tokens into the slot of the word they replace.
    """
    slots = [[tuple(choice.split()) for choice in synset(w, sy)] for w in t.words]
    return [TermVariant(parts=combo) for combo in itertools.product(*slots)]


def dimension_subsets(n: int) -> list[tuple[int, ...]]:
    """Index subsets ordered by size, then by position."""
    out: list[tuple[int, ...]] = []
    for size in range(n + 1):
        out.extend(itertools.combinations(range(n), size))
    return out


def cross_queries(i: Inquiry) -> list[CrossQuery]:
    """The full lattice: every main variant crossed with every dimension
    subset and every one-term-per-dimension choice within that subset.

    Order is deterministic: main variants outermost, subsets by size then
    user order, term choices in user order.
    """
    variants = main_variants(i.main)
    dims = i.dimensions
    out: list[CrossQuery] = []
    for variant in variants:
        for subset in dimension_subsets(len(dims)):
            term_lists = [dims[k].terms for k in subset]
            for choice in itertools.product(*term_lists):
                conjuncts = tuple((dims[k].label, term) for k, term in zip(subset, choice))
                out.append(CrossQuery(main_variant=variant, conjuncts=conjuncts))
    return out


def column_keys(i: Inquiry) -> list[str]:
    """Overview column keys in lattice order: none, singles, pairs, ..."""
    keys: list[str] = []
    dims = i.dimensions
    for subset in dimension_subsets(len(dims)):
        term_lists = [dims[k].terms for k in subset]
        for choice in itertools.product(*term_lists):
            keys.append(" & ".join(t.text for t in choice) if choice else NONE_COLUMN)
    return keys
