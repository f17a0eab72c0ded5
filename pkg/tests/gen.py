"""Seeded random generators for corpora, lexicons, and inquiries.

Sizes stay within the acceptance bounds (corpus <= 200 docs, vocabulary
<= 50 tokens, <= 4 dimensions with <= 3 terms each, window in {0,1,3,6})
but are sampled small on average so a trial stays cheap.
"""

from __future__ import annotations

import random

from litscope.corpus import Corpus, TimeInterval, synthetic_corpus
from litscope.inquiry import Dimension, Inquiry, MainQuery, QueryTerm
from litscope.lexicon import SynonymSet, make_synonym_set

WINDOWS = (0, 1, 3, 6)
FIELDS = ("title", "abstract", "all")


def random_corpus(rng: random.Random, max_docs: int = 200, max_vocab: int = 50) -> Corpus:
    small = rng.randint(2, max(2, min(25, max_docs)))
    medium = rng.randint(min(10, max_docs), min(60, max_docs))
    large = rng.randint(min(50, max_docs), max_docs)
    n_docs = rng.choice([small, medium, large])
    vocab_size = rng.randint(8, max_vocab)
    return synthetic_corpus(seed=rng.randrange(2**31), n_docs=n_docs, vocab_size=vocab_size)


def corpus_vocab(corpus: Corpus) -> list[str]:
    """Tokens actually present in the corpus, plus a few absent ones."""
    from litscope.corpus import tokenize

    seen: set[str] = set()
    for doc in corpus.ordered:
        seen.update(tokenize(doc.title).tokens)
        for sentence in doc.sentences:
            seen.update(tokenize(sentence).tokens)
    vocab = sorted(seen)
    vocab.extend(["zzq", "zzr"])  # never generated by the corpus alphabet
    return vocab


def random_synonyms(rng: random.Random, vocab: list[str]) -> SynonymSet:
    entries: dict[str, list[str]] = {}
    for word in rng.sample(vocab, k=min(len(vocab), rng.randint(0, 6))):
        alts: list[str] = []
        for _ in range(rng.randint(1, 2)):
            if rng.random() < 0.25:
                pair = rng.sample(vocab, k=2)
                candidate = f"{pair[0]} {pair[1]}"
            else:
                candidate = rng.choice(vocab)
            if candidate != word and candidate not in alts:
                alts.append(candidate)
        if alts:
            entries[word] = alts
    return make_synonym_set(entries)


def _random_term(rng: random.Random, vocab: list[str], taken: set[str]) -> QueryTerm | None:
    for _ in range(20):
        words = tuple(rng.choice(vocab) for _ in range(rng.randint(1, 2)))
        term = QueryTerm(words)
        if term.text not in taken:
            return term
    return None


def random_inquiry(rng: random.Random, vocab: list[str], synonyms: SynonymSet) -> Inquiry:
    central = QueryTerm(tuple(rng.choice(vocab) for _ in range(rng.randint(1, 2))))
    attach_pool = [w for w in vocab if " " not in w]
    preceding: list[str] = []
    succeeding: list[str] = []
    variant_texts = {central.text}
    for _ in range(rng.randint(0, 2)):
        word = rng.choice(attach_pool)
        text = f"{word} {central.text}"
        if word not in preceding and text not in variant_texts:
            preceding.append(word)
            variant_texts.add(text)
    for _ in range(rng.randint(0, 2)):
        word = rng.choice(attach_pool)
        text = f"{central.text} {word}"
        if word not in succeeding and text not in variant_texts:
            succeeding.append(word)
            variant_texts.add(text)

    taken: set[str] = set()
    dimensions: list[Dimension] = []
    for d in range(rng.randint(0, 4)):
        terms: list[QueryTerm] = []
        for _ in range(rng.randint(1, 3)):
            term = _random_term(rng, vocab, taken)
            if term is not None:
                taken.add(term.text)
                terms.append(term)
        if terms:
            dimensions.append(Dimension(label=f"dim{d}", terms=tuple(terms)))

    interval = None
    if rng.random() < 0.4:
        a, b = sorted((rng.randint(1990, 2020), rng.randint(1990, 2020)))
        interval = TimeInterval(a, b)

    return Inquiry(
        main=MainQuery(central=central, preceding=tuple(preceding), succeeding=tuple(succeeding)),
        dimensions=tuple(dimensions),
        interval=interval,
        fields=rng.choice(FIELDS),
        synonyms=synonyms,
        window=rng.choice(WINDOWS),
    )


def random_trial(rng: random.Random) -> tuple[Corpus, Inquiry]:
    corpus = random_corpus(rng)
    vocab = corpus_vocab(corpus)
    synonyms = random_synonyms(rng, vocab)
    return corpus, random_inquiry(rng, vocab, synonyms)
