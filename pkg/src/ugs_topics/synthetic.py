"""Synthetic corpora with known structure, for verification and demos.

make_planted_corpus builds documents whose tokens come from one of two
disjoint vocabulary blocks, so the true topic of every document is known
by construction. exact_posterior_suite lists corpora small enough that
the collapsed posterior over all assignment vectors can be enumerated
outright; their sizes and concentrations are chosen so a 20k-sample chain
mixes well across the full state space (mild peaks, at most 2^6 states).
"""

from __future__ import annotations

from .rng import Xoshiro256StarStar

PLANTED_SEED = 97


def make_planted_corpus(
    n_docs: int = 200,
    tokens_per_doc: int = 30,
    block_size: int = 50,
    seed: int = PLANTED_SEED,
) -> tuple[list[list[str]], list[int]]:
    """Two-block corpus; returns (token_docs, planted block label per doc)."""
    blocks = (
        [f"red{i:02d}" for i in range(block_size)],
        [f"blue{i:02d}" for i in range(block_size)],
    )
    rng = Xoshiro256StarStar(seed)
    docs: list[list[str]] = []
    labels: list[int] = []
    for d in range(n_docs):
        label = d % 2
        block = blocks[label]
        docs.append([block[rng.next_below(block_size)] for _ in range(tokens_per_doc)])
        labels.append(label)
    return docs, labels


def shuffle_corpus_tokens(
    token_docs: list[list[str]], seed: int = 0
) -> list[list[str]]:
    """Redistribute all tokens across documents, destroying co-occurrence.

    Document lengths are preserved; token multiset is preserved.
    """
    flat = [token for doc in token_docs for token in doc]
    rng = Xoshiro256StarStar(seed)
    # Fisher-Yates on the flattened stream
    for i in range(len(flat) - 1, 0, -1):
        j = rng.next_below(i + 1)
        flat[i], flat[j] = flat[j], flat[i]
    out: list[list[str]] = []
    cursor = 0
    for doc in token_docs:
        out.append(flat[cursor : cursor + len(doc)])
        cursor += len(doc)
    return out


def exact_posterior_suite() -> list[dict]:
    """Corpora small enough to enumerate every topic-assignment vector.

    Each entry fixes K=2 and supplies bag-of-words documents over a tiny
    vocabulary, with concentrations kept near 1 so no assignment mode is
    deep enough to trap the sampler.
    """
    return [
        {
            "name": "one-token",
            "bows": [[(0, 1)]],
            "vocab_size": 1,
            "alpha": (1.0, 1.0),
            "beta": 1.0,
        },
        {
            "name": "single-doc-repeats",
            "bows": [[(0, 4)]],
            "vocab_size": 1,
            "alpha": (0.9, 0.9),
            "beta": 0.8,
        },
        {
            "name": "two-docs-disjoint",
            "bows": [[(0, 3)], [(1, 3)]],
            "vocab_size": 2,
            "alpha": (1.0, 1.0),
            "beta": 1.0,
        },
        {
            "name": "mixed-pair",
            "bows": [[(0, 2), (1, 1)], [(1, 1)]],
            "vocab_size": 2,
            "alpha": (1.2, 0.8),
            "beta": 1.0,
        },
        {
            "name": "three-docs",
            "bows": [[(0, 2)], [(1, 2)], [(0, 1), (1, 1)]],
            "vocab_size": 2,
            "alpha": (1.0, 1.0),
            "beta": 0.9,
        },
        {
            "name": "three-word-doc",
            "bows": [[(0, 2), (1, 1), (2, 1)]],
            "vocab_size": 3,
            "alpha": (0.8, 1.3),
            "beta": 1.1,
        },
    ]


def planted_block_vocabularies(block_size: int = 50) -> tuple[tuple[str, ...], tuple[str, ...]]:
    """Two disjoint word blocks that survive preprocessing untouched.

    Candidates are drawn from the bundled common-word list and restricted
    to stemmer fixed points, so a planted word equals its stem and the
    blocks stay disjoint all the way through the pipeline.
    """
    from .porter import stem
    from .textprep import load_common_words, load_stopwords

    stopwords = load_stopwords()
    candidates = [
        word
        for word in sorted(load_common_words())
        if len(word) >= 3 and word not in stopwords and stem(word) == word
    ]
    if len(candidates) < 2 * block_size:
        raise ValueError(f"only {len(candidates)} candidate words for 2x{block_size}")
    return tuple(candidates[:block_size]), tuple(candidates[block_size : 2 * block_size])


def write_planted_reviews(
    path,
    n_docs: int = 200,
    tokens_per_doc: int = 30,
    block_size: int = 50,
    seed: int = PLANTED_SEED,
) -> tuple[tuple[str, ...], tuple[str, ...]]:
    """Planted two-block corpus in review form, for end-to-end pipeline runs.

    Document d draws every body token from block d % 2. Returns the blocks
    so callers can check recovered topics against the truth.
    """
    import json

    blocks = planted_block_vocabularies(block_size)
    rng = Xoshiro256StarStar(seed)
    with open(path, "w", encoding="utf-8") as handle:
        for d in range(n_docs):
            block = blocks[d % 2]
            body = " ".join(
                block[rng.next_below(block_size)] for _ in range(tokens_per_doc)
            )
            record = {
                "title": "",
                "body": body,
                "rating": d % 5 + 1,
                "reviewer_location": None,
                "date": "2019-06-01",
                "venue_id": f"block-{d % 2}",
            }
            handle.write(json.dumps(record, sort_keys=True) + "\n")
    return blocks
