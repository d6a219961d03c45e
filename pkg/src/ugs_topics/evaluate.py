"""Model-quality metrics: coherence and predictive likelihood.

Co-occurrence probabilities are document-frequency based: P(v) is the
fraction of documents containing v, and P(vi, vj) the fraction containing
both. A sliding-window variant treats every contiguous token window as a
virtual document. The smoothing constant enters inside logarithms only,
standing in for a zero joint probability; positive probabilities are used
exactly, so co-occurring pairs score their unsmoothed value.

"Perplexity" follows the sign convention of per-word predictive natural
log-likelihood (a negative number; larger is better); the classical
positive form exp(-L) is available alongside.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field
from itertools import combinations
from pathlib import Path

from .lda import TopicModel, TopicTopWords, infer_doc_topics, top_words
from .vectorize import BowDocument, Vocabulary

EPSILON = 1e-12


@dataclass(frozen=True)
class CooccurrenceStats:
    df: dict[str, int]
    joint: dict[tuple[str, str], int]  # keys sorted lexicographically
    doc_count: int
    epsilon: float = EPSILON

    def probability(self, token: str) -> float:
        if token not in self.df:
            raise KeyError(f"unknown token: {token!r}")
        return self.df[token] / self.doc_count

    def joint_probability(self, a: str, b: str) -> float:
        if a not in self.df or b not in self.df:
            raise KeyError("unknown token in pair")
        key = (a, b) if a <= b else (b, a)
        return self.joint.get(key, 0) / self.doc_count


def _window_spans(doc: list[str], window: int) -> list[list[str]]:
    if len(doc) <= window:
        return [doc]
    return [doc[i : i + window] for i in range(len(doc) - window + 1)]


def build_cooccurrence(
    token_docs: list[list[str]], *, window: int | None = None
) -> CooccurrenceStats:
    """Document-level co-occurrence counts; window=N uses N-token spans."""
    if not token_docs:
        raise ValueError("empty corpus")
    units: list[list[str]] = []
    if window is None:
        units = token_docs
    else:
        if window < 2:
            raise ValueError("window must cover at least 2 tokens")
        for doc in token_docs:
            units.extend(_window_spans(doc, window))

    df: dict[str, int] = {}
    joint: dict[tuple[str, str], int] = {}
    for unit in units:
        present = sorted(set(unit))
        for token in present:
            df[token] = df.get(token, 0) + 1
        for a, b in combinations(present, 2):
            joint[(a, b)] = joint.get((a, b), 0) + 1
    return CooccurrenceStats(df=df, joint=joint, doc_count=len(units))


def pmi_pair(v_i: str, v_j: str, stats: CooccurrenceStats) -> float:
    """ln(P(vi,vj) / (P(vi) P(vj))), eps replacing a zero joint probability.

    Symmetric in its arguments.
    """
    p_i = stats.probability(v_i)
    p_j = stats.probability(v_j)
    p_ij = stats.joint_probability(v_i, v_j)
    return math.log((p_ij if p_ij > 0 else stats.epsilon) / (p_i * p_j))


def _word_list(top_words: TopicTopWords | list[str]) -> list[str]:
    if isinstance(top_words, TopicTopWords):
        return [word for word, _ in top_words.words]
    return list(top_words)


def coherence_pmi(top_words: TopicTopWords | list[str], stats: CooccurrenceStats) -> float:
    """Mean pairwise PMI over all distinct pairs of the top-word set."""
    words = _word_list(top_words)
    if len(words) < 2:
        raise ValueError("coherence needs at least 2 words")
    pairs = list(combinations(words, 2))
    return sum(pmi_pair(a, b, stats) for a, b in pairs) / len(pairs)


def coherence_umass(top_words: TopicTopWords | list[str], stats: CooccurrenceStats) -> float:
    """Conditional-log-likelihood coherence over weight-ordered words.

    zeta = 2/(N(N-1)) * sum_{i=2..N} sum_{j<i} ln(P(vi,vj)/P(vj)), with eps
    replacing a zero joint probability; unlike the PMI form this depends
    on the word order.
    """
    words = _word_list(top_words)
    n = len(words)
    if n < 2:
        raise ValueError("coherence needs at least 2 words")
    total = 0.0
    for i in range(1, n):
        for j in range(i):
            p_ij = stats.joint_probability(words[i], words[j])
            total += math.log(
                (p_ij if p_ij > 0 else stats.epsilon) / stats.probability(words[j])
            )
    return 2.0 * total / (n * (n - 1))


def model_coherence(
    model: TopicModel,
    vocab: Vocabulary,
    stats: CooccurrenceStats,
    *,
    n: int = 10,
    metric: str = "pmi",
) -> float:
    """Mean coherence over all topics, using unmapped vocabulary tokens."""
    if metric == "pmi":
        score = coherence_pmi
    elif metric == "umass":
        score = coherence_umass
    else:
        raise ValueError(f"unknown coherence metric: {metric!r}")
    values = [
        score(top_words(model, topic, n, vocab), stats)
        for topic in range(model.n_topics)
    ]
    return sum(values) / len(values)


def perplexity(model: TopicModel, bows: list[BowDocument]) -> float:
    """Per-word predictive log-likelihood over a heldout corpus (negative)."""
    total_log = 0.0
    total_tokens = 0
    for doc in bows:
        if not doc:
            continue
        theta = infer_doc_topics(model, doc)
        word_probs = theta @ model.topic_word
        for v, count in doc:
            total_log += count * math.log(word_probs[v])
            total_tokens += count
    if total_tokens == 0:
        raise ValueError("heldout corpus has no tokens")
    return total_log / total_tokens


def exp_perplexity(per_word_log_likelihood: float) -> float:
    """Classical positive perplexity from the per-word log-likelihood."""
    return math.exp(-per_word_log_likelihood)


def split_heldout(
    bows: list[BowDocument], fraction: float = 0.1
) -> tuple[list[BowDocument], list[BowDocument]]:
    """Deterministic split: the last max(1, floor(D*fraction)) docs are heldout."""
    if len(bows) < 2:
        raise ValueError("need at least 2 documents to split")
    n_heldout = max(1, int(len(bows) * fraction))
    cut = len(bows) - n_heldout
    return list(bows[:cut]), list(bows[cut:])


@dataclass(frozen=True)
class EvaluationRow:
    alpha: str  # descriptor: "symmetric" or numeric text
    beta: float
    k: int
    coherence: float
    perplexity: float  # per-word log-likelihood, negative
    coherence_umass: float | None = None
    perplexity_exp: float | None = None


@dataclass(frozen=True)
class EvaluationReport:
    rows: list[EvaluationRow] = field(default_factory=list)

    def to_csv(self, path: str | Path, *, extended: bool = False) -> None:
        columns = ["alpha", "beta", "coherence", "perplexity", "k"]
        if extended:
            columns += ["coherence_umass", "perplexity_exp"]
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(columns)
            for row in self.rows:
                record = [row.alpha, row.beta, row.coherence, row.perplexity, row.k]
                if extended:
                    record += [row.coherence_umass, row.perplexity_exp]
                writer.writerow(record)

    @classmethod
    def from_csv(cls, path: str | Path) -> "EvaluationReport":
        rows = []
        with open(path, newline="") as fh:
            for record in csv.DictReader(fh):
                rows.append(
                    EvaluationRow(
                        alpha=record["alpha"],
                        beta=float(record["beta"]),
                        k=int(record["k"]),
                        coherence=float(record["coherence"]),
                        perplexity=float(record["perplexity"]),
                    )
                )
        return cls(rows=rows)
