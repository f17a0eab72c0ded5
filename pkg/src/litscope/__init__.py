"""litscope: juxtaposed co-occurrence search over scientific literature.

Pose one main query plus related-term dimensions; the engine expands
terms with synonyms, generates the full cross-query lattice, evaluates
windowed conjunctive matches over titles and abstract sentences, and
aggregates the hits into an overview table with per-cell year histograms
and matched-sentence drill-downs.
"""

from .aggregate import (
    DocumentHit,
    InquiryResult,
    OverviewTable,
    YearHistogram,
    cell_documents,
    cell_histogram,
    overview,
    run_inquiry,
)
from .corpus import (
    Corpus,
    Document,
    TimeInterval,
    filter_by_interval,
    load_corpus,
    normalize,
    save_corpus,
    segment_sentences,
    synthetic_corpus,
)
from .inquiry import CrossQuery, Inquiry, cross_queries, expand_term, main_variants, validate
from .lexicon import SynonymSet, load_synonyms, synset
from .matcher import CompiledPattern, DocumentMatch, MatchSpan, compile_pattern, s_match, search

__version__ = "0.1.0"

__all__ = [
    "CompiledPattern",
    "Corpus",
    "CrossQuery",
    "Document",
    "DocumentHit",
    "DocumentMatch",
    "Inquiry",
    "InquiryResult",
    "MatchSpan",
    "OverviewTable",
    "SynonymSet",
    "TimeInterval",
    "YearHistogram",
    "cell_documents",
    "cell_histogram",
    "compile_pattern",
    "cross_queries",
    "expand_term",
    "filter_by_interval",
    "load_corpus",
    "load_synonyms",
    "main_variants",
    "normalize",
    "overview",
    "run_inquiry",
    "s_match",
    "save_corpus",
    "search",
    "segment_sentences",
    "synset",
    "synthetic_corpus",
    "validate",
]
