"""Vocabulary, bag-of-words, and TF-IDF weighting.

Token ids are assigned in first-appearance order over the corpus, so the
same documents always produce the same ids. TF-IDF uses raw count times
natural-log inverse document frequency with no normalization; terms
present in every document carry weight zero and are omitted.

The topic model itself consumes integer counts; TF-IDF output is used for
keyword weighting in reports.
"""

from __future__ import annotations

import hashlib
import json
import math
from collections import Counter
from dataclasses import dataclass
from pathlib import Path

# sparse document forms: (token id, value) with strictly increasing ids
BowDocument = list[tuple[int, int]]
TfidfDocument = list[tuple[int, float]]


@dataclass(frozen=True)
class Vocabulary:
    token_to_id: dict[str, int]
    id_to_token: list[str]
    df: list[int]
    doc_count: int

    def __post_init__(self) -> None:
        if len(self.token_to_id) != len(self.id_to_token):
            raise ValueError("token/id maps disagree")
        for token, idx in self.token_to_id.items():
            if self.id_to_token[idx] != token:
                raise ValueError("token/id maps are not inverse")
        for value in self.df:
            if not 1 <= value <= self.doc_count:
                raise ValueError("document frequency out of range")

    def __len__(self) -> int:
        return len(self.id_to_token)

    def content_hash(self) -> str:
        """Stable fingerprint of the id assignment, for artifact cross-checks."""
        payload = "\n".join(self.id_to_token).encode("utf-8")
        return hashlib.sha256(payload).hexdigest()

    def to_jsonable(self) -> dict:
        return {
            "document_count": self.doc_count,
            "tokens": [
                {"token": token, "id": idx, "df": self.df[idx]}
                for idx, token in enumerate(self.id_to_token)
            ],
        }

    @classmethod
    def from_jsonable(cls, payload: dict) -> "Vocabulary":
        entries = sorted(payload["tokens"], key=lambda item: item["id"])
        if [item["id"] for item in entries] != list(range(len(entries))):
            raise ValueError("token ids must be dense")
        id_to_token = [item["token"] for item in entries]
        return cls(
            token_to_id={token: idx for idx, token in enumerate(id_to_token)},
            id_to_token=id_to_token,
            df=[item["df"] for item in entries],
            doc_count=payload["document_count"],
        )

    def save(self, path: str | Path) -> None:
        Path(path).write_text(
            json.dumps(self.to_jsonable(), indent=2, sort_keys=True) + "\n", "utf-8"
        )

    @classmethod
    def load(cls, path: str | Path) -> "Vocabulary":
        return cls.from_jsonable(json.loads(Path(path).read_text("utf-8")))


def build_vocabulary(
    token_docs: list[list[str]],
    *,
    min_df: int = 1,
    max_df_fraction: float = 1.0,
) -> Vocabulary:
    """First-appearance token ids with per-token document frequencies.

    Empty documents contribute no tokens but still count toward the
    document total. min_df/max_df_fraction can trim rare or near-universal
    tokens; both default to no filtering.
    """
    if not any(token_docs):
        raise ValueError("vocabulary needs at least one non-empty document")
    doc_count = len(token_docs)
    df_by_token: Counter = Counter()
    for doc in token_docs:
        df_by_token.update(set(doc))

    max_df = max_df_fraction * doc_count
    dropped = {
        token
        for token, value in df_by_token.items()
        if value < min_df or value > max_df
    }

    token_to_id: dict[str, int] = {}
    id_to_token: list[str] = []
    for doc in token_docs:
        for token in doc:
            if token in dropped or token in token_to_id:
                continue
            token_to_id[token] = len(id_to_token)
            id_to_token.append(token)
    if not id_to_token:
        raise ValueError("every token was filtered out")

    return Vocabulary(
        token_to_id=token_to_id,
        id_to_token=id_to_token,
        df=[df_by_token[token] for token in id_to_token],
        doc_count=doc_count,
    )


def to_bow(tokens: list[str], vocab: Vocabulary) -> BowDocument:
    """Sparse in-vocabulary counts; unknown tokens are dropped."""
    counts: Counter = Counter()
    for token in tokens:
        idx = vocab.token_to_id.get(token)
        if idx is not None:
            counts[idx] += 1
    return sorted(counts.items())


def tfidf(bow: BowDocument, vocab: Vocabulary) -> TfidfDocument:
    """count * ln(D/df) per term; zero-weight (df = D) entries omitted."""
    out: TfidfDocument = []
    for idx, count in bow:
        df = vocab.df[idx]
        if df == vocab.doc_count:
            continue
        out.append((idx, count * math.log(vocab.doc_count / df)))
    return out
