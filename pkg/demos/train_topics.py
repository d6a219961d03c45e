# Train a small topic model on the bundled review sample and print the
# keywords. Reviews are screened for English, stemmed, and phrase-merged
# before counting; the report maps stems back to readable surface forms.

from ugs_topics import data_path
from ugs_topics.corpus import load_reviews
from ugs_topics.lda import HyperParams, top_words, train
from ugs_topics.textprep import prepare_corpus
from ugs_topics.vectorize import build_vocabulary, to_bow

corpus = load_reviews(str(data_path("reviews_sample.jsonl")))
print(f"{len(corpus)} reviews from {corpus.source_label}")

prepared = prepare_corpus(corpus.texts())
print(f"{len(prepared.docs)} kept after language screening")

vocab = build_vocabulary(prepared.docs)
bows = [to_bow(doc, vocab) for doc in prepared.docs]
print(f"vocabulary size {len(vocab)}")

hp = HyperParams(n_topics=2, alpha="symmetric", beta=0.2, seed=7, iterations=200, burn_in=50)
model = train(bows, vocab, hp)

for k in range(model.n_topics):
    ranked = top_words(model, k, 6, vocab, prepared.surface_forms)
    pretty = ", ".join(f"{w} ({p:.3f})" for w, p in ranked.words)
    print(f"topic {k}: {pretty}")

# same seed, same model: the sampler is deterministic
again = train(bows, vocab, hp)
print("rerun identical:", (model.topic_word == again.topic_word).all())
