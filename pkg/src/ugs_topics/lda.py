"""Dirichlet topic model trained by collapsed Gibbs sampling.

The sampler integrates out both distribution sets and walks the token
topic assignments; point estimates come from smoothed counts of the final
post-burn-in state (optionally averaged over post-burn-in sweeps):

    topic_word[k, v] = (n_kv + beta) / (n_k + V*beta)
    doc_topic[d, k]  = (n_dk + alpha_k) / (len_d + alpha_0)

Topic assignment for a document is the hard argmax of the per-topic token
log-likelihood; predictive word probability mixes topic_word rows with a
document's inferred topic weights. All tie-breaks resolve to the lowest
topic index or token id, and every run is reproducible from its seed.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

import numpy as np

from .gibbs import CollapsedGibbsSampler
from .vectorize import BowDocument, Vocabulary

_MASK64 = (1 << 64) - 1


@dataclass(frozen=True)
class HyperParams:
    n_topics: int
    alpha: float | str | tuple = "symmetric"
    beta: float = 0.2
    seed: int = 0
    iterations: int = 500
    burn_in: int = 100
    allow_single_topic: bool = False  # test escape hatch for the K=1 corner

    def __post_init__(self) -> None:
        minimum = 1 if self.allow_single_topic else 2
        if self.n_topics < minimum:
            raise ValueError(f"topic count must be at least {minimum}")
        if self.beta <= 0:
            raise ValueError("beta must be positive")
        if self.iterations < 1:
            raise ValueError("iterations must be at least 1")
        if not 0 <= self.burn_in < self.iterations:
            raise ValueError("burn_in must lie in [0, iterations)")
        if not 0 <= self.seed <= _MASK64:
            raise ValueError("seed must fit in 64 bits")
        if isinstance(self.alpha, Sequence) and not isinstance(self.alpha, str):
            object.__setattr__(self, "alpha", tuple(float(a) for a in self.alpha))
        self.resolve_alpha()

    def resolve_alpha(self) -> np.ndarray:
        """Concrete per-topic concentration vector."""
        if isinstance(self.alpha, str):
            if self.alpha != "symmetric":
                raise ValueError(f"unknown alpha mode: {self.alpha!r}")
            values = np.full(self.n_topics, 1.0 / self.n_topics)
        elif isinstance(self.alpha, tuple):
            if len(self.alpha) != self.n_topics:
                raise ValueError("alpha vector length must equal topic count")
            values = np.asarray(self.alpha, dtype=np.float64)
        else:
            values = np.full(self.n_topics, float(self.alpha))
        if not (values > 0).all():
            raise ValueError("alpha entries must be positive")
        return values

    def alpha_label(self) -> str:
        """Report-facing descriptor: 'symmetric' or the numeric value."""
        if isinstance(self.alpha, str):
            return self.alpha
        if isinstance(self.alpha, tuple):
            return ",".join(format(a, "g") for a in self.alpha)
        return format(float(self.alpha), "g")

    def to_jsonable(self) -> dict:
        alpha = list(self.alpha) if isinstance(self.alpha, tuple) else self.alpha
        payload = {
            "k": self.n_topics,
            "alpha": alpha,
            "beta": self.beta,
            "seed": self.seed,
            "iterations": self.iterations,
            "burn_in": self.burn_in,
        }
        if self.allow_single_topic:
            payload["allow_single_topic"] = True
        return payload

    @classmethod
    def from_jsonable(cls, payload: dict) -> "HyperParams":
        alpha = payload.get("alpha", "symmetric")
        if isinstance(alpha, list):
            alpha = tuple(alpha)
        return cls(
            n_topics=payload["k"],
            alpha=alpha,
            beta=payload.get("beta", 0.2),
            seed=payload.get("seed", 0),
            iterations=payload.get("iterations", 500),
            burn_in=payload.get("burn_in", 100),
            allow_single_topic=payload.get("allow_single_topic", False),
        )


def dirichlet_pdf(z: Sequence[float], alpha: Sequence[float]) -> float:
    """Density of the Dirichlet distribution at a simplex point."""
    z = np.asarray(z, dtype=np.float64)
    alpha = np.asarray(alpha, dtype=np.float64)
    if z.shape != alpha.shape or z.ndim != 1:
        raise ValueError("z and alpha must be vectors of equal length")
    if not (alpha > 0).all():
        raise ValueError("alpha entries must be positive")
    if abs(z.sum() - 1.0) > 1e-9:
        raise ValueError("z is not on the simplex")
    if (z < 0).any():
        raise ValueError("z is not on the simplex")

    log_density = math.lgamma(alpha.sum()) - sum(math.lgamma(a) for a in alpha)
    for z_i, a_i in zip(z, alpha):
        if a_i == 1.0:
            continue  # z_i^0 factor; permits boundary points
        if z_i <= 0.0:
            raise ValueError("z must be strictly positive where alpha != 1")
        log_density += (a_i - 1.0) * math.log(z_i)
    return math.exp(log_density)


@dataclass(frozen=True)
class TopicTopWords:
    topic: int
    words: list[tuple[str, float]]

    def __post_init__(self) -> None:
        weights = [w for _, w in self.words]
        if any(a < b for a, b in zip(weights, weights[1:])):
            raise ValueError("weights must be non-increasing")


@dataclass(frozen=True)
class TopicModel:
    hyperparams: HyperParams
    vocab_hash: str
    topic_word: np.ndarray  # K x V, rows on the simplex
    doc_topic: np.ndarray  # D x K, rows on the simplex
    training_log: list[float] = field(default_factory=list)

    @property
    def n_topics(self) -> int:
        return self.topic_word.shape[0]

    @property
    def vocab_size(self) -> int:
        return self.topic_word.shape[1]

    def to_jsonable(self) -> dict:
        return {
            "hyperparams": self.hyperparams.to_jsonable(),
            "vocabulary_sha256": self.vocab_hash,
            "topic_word": [[float(x) for x in row] for row in self.topic_word],
            "doc_topic": [[float(x) for x in row] for row in self.doc_topic],
            "training_log": [float(x) for x in self.training_log],
        }

    @classmethod
    def from_jsonable(cls, payload: dict) -> "TopicModel":
        return cls(
            hyperparams=HyperParams.from_jsonable(payload["hyperparams"]),
            vocab_hash=payload["vocabulary_sha256"],
            topic_word=np.asarray(payload["topic_word"], dtype=np.float64),
            doc_topic=np.asarray(payload["doc_topic"], dtype=np.float64),
            training_log=list(payload["training_log"]),
        )

    def save(self, path: str | Path) -> None:
        Path(path).write_text(
            json.dumps(self.to_jsonable(), indent=2, sort_keys=True) + "\n", "utf-8"
        )

    @classmethod
    def load(cls, path: str | Path) -> "TopicModel":
        return cls.from_jsonable(json.loads(Path(path).read_text("utf-8")))


def train(
    bows: list[BowDocument],
    vocab: Vocabulary,
    hp: HyperParams,
    *,
    average_samples: bool = False,
) -> TopicModel:
    """Run the collapsed sampler for hp.iterations sweeps over the corpus."""
    if not bows:
        raise ValueError("empty corpus")
    total_tokens = sum(count for bow in bows for _, count in bow)
    if hp.n_topics > total_tokens:
        raise ValueError("more topics than tokens in the corpus")

    alpha = hp.resolve_alpha()
    sampler = CollapsedGibbsSampler(
        bows, len(vocab), hp.n_topics, alpha, hp.beta, hp.seed
    )
    training_log = []
    acc_dk = np.zeros_like(sampler.n_dk)
    acc_kv = np.zeros_like(sampler.n_kv)
    samples = 0
    for iteration in range(hp.iterations):
        sampler.sweep()
        training_log.append(sampler.joint_log_likelihood())
        if average_samples and iteration >= hp.burn_in:
            acc_dk += sampler.n_dk
            acc_kv += sampler.n_kv
            samples += 1

    if average_samples:
        n_dk = acc_dk / samples
        n_kv = acc_kv / samples
    else:
        n_dk = sampler.n_dk.astype(np.float64)
        n_kv = sampler.n_kv.astype(np.float64)
    n_k = n_kv.sum(axis=1)

    vbeta = len(vocab) * hp.beta
    topic_word = (n_kv + hp.beta) / (n_k + vbeta)[:, None]
    alpha0 = alpha.sum()
    doc_lens = sampler.doc_lens.astype(np.float64)
    doc_topic = (n_dk + alpha) / (doc_lens + alpha0)[:, None]

    return TopicModel(
        hyperparams=hp,
        vocab_hash=vocab.content_hash(),
        topic_word=topic_word,
        doc_topic=doc_topic,
        training_log=training_log,
    )


def _doc_arrays(model: TopicModel, doc: BowDocument) -> tuple[np.ndarray, np.ndarray]:
    if not doc:
        return np.empty(0, dtype=np.int64), np.empty(0, dtype=np.float64)
    ids = np.asarray([v for v, _ in doc], dtype=np.int64)
    counts = np.asarray([c for _, c in doc], dtype=np.float64)
    if ids.min() < 0 or ids.max() >= model.vocab_size:
        raise ValueError("token id outside model vocabulary")
    return ids, counts


def _topic_scores(model: TopicModel, doc: BowDocument) -> np.ndarray:
    # per-topic hard-assignment log-likelihood of the whole document
    ids, counts = _doc_arrays(model, doc)
    return np.log(model.topic_word[:, ids]) @ counts


def log_likelihood(model: TopicModel, bows: list[BowDocument]) -> float:
    """Corpus log-likelihood under each document's best single topic."""
    return float(sum(_topic_scores(model, doc).max() for doc in bows if doc))


def assign_topic(model: TopicModel, doc: BowDocument) -> int:
    """Best topic for one document; ties resolve to the lowest index."""
    if not doc:
        raise ValueError("empty document is unassignable")
    return int(np.argmax(_topic_scores(model, doc)))


def infer_doc_topics(
    model: TopicModel,
    doc: BowDocument,
    *,
    max_rounds: int = 200,
    tolerance: float = 1e-12,
) -> np.ndarray:
    """Topic weights for an arbitrary document under a trained model.

    Deterministic fixed-point iteration on expected per-topic token counts
    with the model's own smoothing; an empty document returns the prior.
    """
    alpha = model.hyperparams.resolve_alpha()
    alpha0 = alpha.sum()
    ids, counts = _doc_arrays(model, doc)
    if ids.size == 0:
        return alpha / alpha0

    rows = model.topic_word[:, ids]  # K x T
    theta = np.full(model.n_topics, 1.0 / model.n_topics)
    for _ in range(max_rounds):
        resp = theta[:, None] * rows
        resp /= resp.sum(axis=0, keepdims=True)
        expected = resp @ counts
        updated = (expected + alpha) / (counts.sum() + alpha0)
        if np.abs(updated - theta).max() < tolerance:
            theta = updated
            break
        theta = updated
    return theta


def predictive_word_probability(model: TopicModel, doc: BowDocument, v: int) -> float:
    """p(w = v | doc) mixing topic rows by the document's topic weights."""
    if not 0 <= v < model.vocab_size:
        raise ValueError("token id outside model vocabulary")
    theta = infer_doc_topics(model, doc)
    return float(theta @ model.topic_word[:, v])


def top_words(
    model: TopicModel,
    topic: int,
    n: int,
    vocab: Vocabulary,
    surface_forms: dict[str, str] | None = None,
) -> TopicTopWords:
    """The n heaviest words of one topic; ties resolve to ascending token id."""
    if not 0 <= topic < model.n_topics:
        raise ValueError("topic index out of range")
    if n < 1:
        raise ValueError("need at least one word")
    row = model.topic_word[topic]
    n = min(n, model.vocab_size)
    order = sorted(range(model.vocab_size), key=lambda v: (-row[v], v))[:n]

    words = []
    for v in order:
        token = vocab.id_to_token[v]
        if surface_forms:
            token = "_".join(surface_forms.get(part, part) for part in token.split("_"))
        words.append((token, float(row[v])))
    return TopicTopWords(topic=topic, words=words)
