"""Review text preparation.

The pipeline is: ordered strip rules (URLs, email addresses, emoji,
whitespace runs), lowercasing, alphabetic tokenization, stopword removal,
suffix stripping, then a minimum-length filter. Stopwords are checked
both before and after stemming so a stem can never land back on a
stopword (e.g. "beings" -> "be").

Collocations use a count-threshold score,
    score(a, b) = (count(ab) - min_count) * vocab_size / (count(a) * count(b)),
with trigrams discovered by a second scoring pass over bigram-merged
documents. Non-English documents are screened out by the fraction of raw
tokens found in the stopword list or a bundled common-word list.
"""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources

from .porter import stem

# Screening threshold: a document is kept when at least this fraction of
# its raw tokens are recognizably English.
ENGLISH_MIN_FRACTION = 0.2

# Applied in order; every match is replaced by a single space.
DEFAULT_STRIP_PATTERNS: tuple[tuple[str, str], ...] = (
    ("url", r"(?i)\b(?:https?://|www\.)\S+"),
    ("email", r"(?i)\b[^\s@]+@[^\s@]+\.[^\s@]+\b"),
    ("emoji", "[\U0001f000-\U0001faff☀-➿←-⇿⬀-⯿️‍]"),
    ("whitespace", r"\s+"),
)

_WORD_RE = re.compile(r"[a-z]+")


def _load_wordlist(name: str) -> frozenset[str]:
    text = (resources.files("ugs_topics") / "data" / name).read_text("utf-8")
    return frozenset(line.strip() for line in text.splitlines() if line.strip())


@lru_cache(maxsize=None)
def load_stopwords() -> frozenset[str]:
    """Bundled stopword list, one token per line."""
    return _load_wordlist("stopwords.txt")


@lru_cache(maxsize=None)
def load_common_words() -> frozenset[str]:
    """Bundled high-frequency English word list used for language screening."""
    return _load_wordlist("common_words.txt")


@dataclass(frozen=True)
class PrepConfig:
    min_token_length: int = 2
    stopword_list: frozenset[str] = field(default_factory=load_stopwords)
    strip_patterns: tuple[tuple[str, str], ...] = DEFAULT_STRIP_PATTERNS
    phrase_min_count: int = 5
    phrase_threshold: float = 10.0

    def __post_init__(self) -> None:
        if self.min_token_length < 1:
            raise ValueError("min_token_length must be >= 1")
        if self.phrase_min_count < 1:
            raise ValueError("phrase_min_count must be >= 1")


def surface_tokens(text: str, config: PrepConfig | None = None) -> list[str]:
    """Lowercase alphabetic tokens after the strip rules, before any filtering."""
    config = config or PrepConfig()
    for _, pattern in config.strip_patterns:
        text = re.sub(pattern, " ", text)
    return _WORD_RE.findall(text.lower())


def _stem_pairs(text: str, config: PrepConfig) -> list[tuple[str, str]]:
    # (stem, surface) pairs surviving every filter, in text order
    pairs = []
    for token in surface_tokens(text, config):
        if token in config.stopword_list:
            continue
        stemmed = stem(token)
        if stemmed in config.stopword_list:
            continue
        if len(stemmed) < config.min_token_length:
            continue
        pairs.append((stemmed, token))
    return pairs


def preprocess(text: str, config: PrepConfig | None = None) -> list[str]:
    """Normalize one document to a list of stemmed tokens. Total: never raises."""
    config = config or PrepConfig()
    return [stemmed for stemmed, _ in _stem_pairs(text, config)]


def english_fraction(text: str, config: PrepConfig | None = None) -> float:
    """Fraction of raw tokens found in the stopword or common-word lists.

    Computed before stopword removal so function words count as evidence.
    An empty document has no evidence and scores 0.0.
    """
    config = config or PrepConfig()
    tokens = surface_tokens(text, config)
    if not tokens:
        return 0.0
    known = config.stopword_list | load_common_words()
    hits = sum(1 for token in tokens if token in known)
    return hits / len(tokens)


def is_english(
    text: str,
    config: PrepConfig | None = None,
    min_fraction: float = ENGLISH_MIN_FRACTION,
) -> bool:
    return english_fraction(text, config) >= min_fraction


@dataclass(frozen=True)
class PhraseModel:
    """Accepted collocations: n-gram tuple -> score, every score >= threshold."""

    table: dict[tuple[str, ...], float]
    threshold: float

    def __post_init__(self) -> None:
        for gram, score in self.table.items():
            if score < self.threshold:
                raise ValueError(f"scored below threshold: {gram}")

    def to_jsonable(self) -> dict:
        return {
            "threshold": self.threshold,
            "grams": [[list(gram), score] for gram, score in sorted(self.table.items())],
        }

    @classmethod
    def from_jsonable(cls, payload: dict) -> "PhraseModel":
        table = {tuple(gram): score for gram, score in payload["grams"]}
        return cls(table=table, threshold=payload["threshold"])


def _score_pairs(
    docs: list[list[str]], min_count: int, threshold: float
) -> tuple[Counter, Counter, int]:
    unigrams: Counter = Counter()
    bigrams: Counter = Counter()
    for doc in docs:
        unigrams.update(doc)
        bigrams.update(zip(doc, doc[1:]))
    return unigrams, bigrams, len(unigrams)


def build_phrase_model(
    token_docs: list[list[str]], config: PrepConfig | None = None
) -> PhraseModel:
    """Score adjacent pairs corpus-wide; second pass promotes pair+token to trigrams."""
    config = config or PrepConfig()
    if not token_docs:
        raise ValueError("phrase model needs at least one document")
    min_count = config.phrase_min_count
    threshold = config.phrase_threshold

    unigrams, bigrams, vocab_size = _score_pairs(token_docs, min_count, threshold)
    table: dict[tuple[str, ...], float] = {}
    for (a, b), count in bigrams.items():
        if count < min_count:
            continue
        score = (count - min_count) * vocab_size / (unigrams[a] * unigrams[b])
        if score >= threshold:
            table[(a, b)] = score

    # second pass over merged docs; only pair+single combinations (3 words) kept
    first = PhraseModel(table=dict(table), threshold=threshold)
    merged = [apply_phrases(doc, first) for doc in token_docs]
    unigrams2, bigrams2, vocab_size2 = _score_pairs(merged, min_count, threshold)
    for (a, b), count in bigrams2.items():
        if count < min_count:
            continue
        parts = tuple(a.split("_") + b.split("_"))
        if len(parts) != 3:
            continue
        score = (count - min_count) * vocab_size2 / (unigrams2[a] * unigrams2[b])
        if score >= threshold:
            table[parts] = score

    return PhraseModel(table=table, threshold=threshold)


def apply_phrases(tokens: list[str], model: PhraseModel) -> list[str]:
    """Greedy left-to-right joining, longest accepted n-gram first."""
    table = model.table
    out: list[str] = []
    i = 0
    n = len(tokens)
    while i < n:
        if i + 2 < n and (tokens[i], tokens[i + 1], tokens[i + 2]) in table:
            out.append("_".join(tokens[i : i + 3]))
            i += 3
        elif i + 1 < n and (tokens[i], tokens[i + 1]) in table:
            out.append("_".join(tokens[i : i + 2]))
            i += 2
        else:
            out.append(tokens[i])
            i += 1
    return out


@dataclass(frozen=True)
class PreparedCorpus:
    """Preprocessing result for a batch of documents.

    kept_indices maps each output document back to its input position.
    surface_forms maps each stem to its most frequent surface spelling
    (ties broken alphabetically), for readable reporting.
    """

    docs: list[list[str]]
    kept_indices: list[int]
    phrase_model: PhraseModel
    surface_forms: dict[str, str]


def prepare_corpus(
    texts: list[str],
    config: PrepConfig | None = None,
    *,
    english_min_fraction: float = ENGLISH_MIN_FRACTION,
    build_phrases: bool = True,
) -> PreparedCorpus:
    """Screen, preprocess, and phrase-merge a document batch."""
    config = config or PrepConfig()
    docs: list[list[str]] = []
    kept: list[int] = []
    surface_counts: Counter = Counter()
    for idx, text in enumerate(texts):
        if english_fraction(text, config) < english_min_fraction:
            continue
        pairs = _stem_pairs(text, config)
        docs.append([stemmed for stemmed, _ in pairs])
        kept.append(idx)
        surface_counts.update(pairs)

    if build_phrases and docs:
        model = build_phrase_model(docs, config)
        docs = [apply_phrases(doc, model) for doc in docs]
    else:
        model = PhraseModel(table={}, threshold=config.phrase_threshold)

    surface_forms: dict[str, str] = {}
    # highest count wins; ties fall to the alphabetically first surface
    for (stemmed, surface), count in sorted(
        surface_counts.items(), key=lambda item: (item[0][0], -item[1], item[0][1])
    ):
        surface_forms.setdefault(stemmed, surface)

    return PreparedCorpus(
        docs=docs, kept_indices=kept, phrase_model=model, surface_forms=surface_forms
    )
