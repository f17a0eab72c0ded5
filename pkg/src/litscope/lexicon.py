"""Domain synonym and acronym dictionary used for query expansion."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Mapping

from .corpus import normalize


class LexiconError(Exception):
    """Invalid lexicon file or entry."""


@dataclass(frozen=True)
class SynonymSet:
    """Word -> alternatives map; keys are single normalized tokens.

    The key itself is never listed among its alternatives (lookups always
    include it implicitly, first), and alternative lists are duplicate-free.
    Alternatives may be multi-word phrases; they are matched as windowed
    token sequences.
    """

    entries: dict[str, tuple[str, ...]] = field(default_factory=dict)

    @staticmethod
    def empty() -> "SynonymSet":
        return SynonymSet({})

    def __len__(self) -> int:
        return len(self.entries)


def make_synonym_set(raw: Mapping[str, Iterable[str]]) -> SynonymSet:
    """Validate and normalize a word -> alternatives mapping."""
    entries: dict[str, tuple[str, ...]] = {}
    for raw_key, raw_alts in raw.items():
        key = normalize(str(raw_key))
        if not key:
            raise LexiconError(f"entry {raw_key!r}: empty key")
        if " " in key:
            raise LexiconError(f"entry {raw_key!r}: key must be a single word")
        if key in entries:
            raise LexiconError(f"duplicate key {key!r}")
        alts: list[str] = []
        for raw_alt in raw_alts:
            alt = normalize(str(raw_alt))
            if not alt:
                raise LexiconError(f"entry {key!r}: empty alternative")
            if alt == key:
                raise LexiconError(f"entry {key!r}: alternative equals its key")
            if alt not in alts:
                alts.append(alt)
        entries[key] = tuple(alts)
    return SynonymSet(entries)


def load_synonyms(path: str | Path) -> SynonymSet:
    """Load a lexicon file: a flat JSON object mapping word -> [alternatives].

    An empty or whitespace-only file is accepted as an empty lexicon.
    Duplicate keys (after normalization) are rejected.
    """
    text = Path(path).read_text(encoding="utf-8")
    if not text.strip():
        return SynonymSet.empty()
    try:
        pairs = json.loads(text, object_pairs_hook=list)
    except json.JSONDecodeError as exc:
        raise LexiconError(f"{path}: invalid JSON ({exc.msg})") from exc
    if not isinstance(pairs, list) or not all(isinstance(p, tuple) and len(p) == 2 for p in pairs):
        raise LexiconError(f"{path}: lexicon must be a JSON object")
    seen: set[str] = set()
    raw: dict[str, list[str]] = {}
    for key, value in pairs:
        norm_key = normalize(str(key))
        if norm_key in seen:
            raise LexiconError(f"duplicate key {norm_key!r}")
        seen.add(norm_key)
        if not isinstance(value, list) or not all(isinstance(v, str) for v in value):
            raise LexiconError(f"entry {key!r}: alternatives must be an array of strings")
        raw[key] = value
    return make_synonym_set(raw)


def synset(word: str, sy: SynonymSet) -> list[str]:
    """The word itself followed by its alternatives, duplicate-free.

    Identity when the word has no entry; the word is always first, so the
    original spelling heads every expansion.
    """
    return [word, *sy.entries.get(word, ())]
