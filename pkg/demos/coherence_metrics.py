"""
Scoring topics without labels
=============================

Two intrinsic quality measures over word co-occurrence, plus held-out
predictive likelihood.
"""

import math

from ugs_topics.evaluate import (
    build_cooccurrence,
    coherence_pmi,
    coherence_umass,
    exp_perplexity,
    perplexity,
    pmi_pair,
    split_heldout,
)
from ugs_topics.lda import HyperParams, train
from ugs_topics.synthetic import make_planted_corpus
from ugs_topics.vectorize import build_vocabulary, to_bow

# document-level co-occurrence from a toy corpus
docs = [
    ["lake", "swan", "bench"],
    ["lake", "swan"],
    ["bench", "picnic"],
    ["picnic", "lake"],
]
stats = build_cooccurrence(docs)

# swans only ever appear with the lake, so the pair scores far above 0
print(f"pmi(lake, swan)   = {pmi_pair('lake', 'swan', stats):+.4f}")
print(f"pmi(swan, picnic) = {pmi_pair('swan', 'picnic', stats):+.4f}  (never co-occur)")

good_topic = ["lake", "swan", "bench"]
print(f"\ncoherence_pmi{good_topic}   = {coherence_pmi(good_topic, stats):+.4f}")
print(f"coherence_umass{good_topic} = {coherence_umass(good_topic, stats):+.4f}")

# perplexity: train on 90% of a synthetic corpus, score the held-out 10%
corpus, _ = make_planted_corpus(n_docs=100, tokens_per_doc=20)
vocab = build_vocabulary(corpus)
bows = [to_bow(doc, vocab) for doc in corpus]
train_bows, heldout = split_heldout(bows, 0.1)

model = train(train_bows, vocab, HyperParams(n_topics=2, seed=3, iterations=150, burn_in=50))
score = perplexity(model, heldout)
print(f"\nheld-out per-word log-likelihood: {score:.4f}")
print(f"exp(-L): {exp_perplexity(score):.2f} (random guessing over {len(vocab)} words: {len(vocab)})")
assert math.isclose(exp_perplexity(score), math.exp(-score))
