"""Tabular output writers: topic keywords, venue lists, popularity rankings.

Every writer emits LF newlines and a trailing newline, so identical inputs
produce byte-identical files on any platform.
"""

from __future__ import annotations

import csv
from decimal import ROUND_HALF_UP, Decimal
from pathlib import Path

from .corpus import Venue
from .lda import TopicModel, top_words
from .vectorize import Vocabulary
from .venues import PopularityRanking

DEFAULT_TOP_WORDS = 6


def format_weight(value: float) -> str:
    """Three decimal places, rounding half-up (0.2605 -> '0.261')."""
    return str(Decimal(repr(value)).quantize(Decimal("0.001"), rounding=ROUND_HALF_UP))


def topic_table(
    model: TopicModel,
    vocab: Vocabulary,
    *,
    n: int = DEFAULT_TOP_WORDS,
    surface_forms: dict[str, str] | None = None,
) -> list[tuple[int, int, str, str]]:
    """Rows (topic, rank, word, formatted weight) for every topic."""
    rows = []
    for topic in range(model.n_topics):
        listing = top_words(model, topic, n, vocab, surface_forms=surface_forms)
        for rank, (word, weight) in enumerate(listing.words, start=1):
            rows.append((topic, rank, word, format_weight(weight)))
    return rows


def _write_csv(path: str | Path, header: list[str], rows) -> None:
    with Path(path).open("w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)


def write_topics_csv(
    model: TopicModel,
    vocab: Vocabulary,
    path: str | Path,
    *,
    n: int = DEFAULT_TOP_WORDS,
    surface_forms: dict[str, str] | None = None,
) -> None:
    rows = topic_table(model, vocab, n=n, surface_forms=surface_forms)
    _write_csv(path, ["topic", "rank", "word", "weight"], rows)


def write_topics_markdown(
    model: TopicModel,
    vocab: Vocabulary,
    path: str | Path,
    *,
    n: int = DEFAULT_TOP_WORDS,
    surface_forms: dict[str, str] | None = None,
) -> None:
    lines = ["# Topic keywords", ""]
    current = None
    for topic, rank, word, weight in topic_table(
        model, vocab, n=n, surface_forms=surface_forms
    ):
        if topic != current:
            if current is not None:
                lines.append("")
            lines += [f"## Topic {topic}", "", "| word | weight |", "| --- | --- |"]
            current = topic
        lines.append(f"| {word} | {weight} |")
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def write_venues_csv(venues: list[Venue], path: str | Path) -> None:
    _write_csv(
        path,
        ["id", "name", "district", "likes"],
        [(v.id, v.name, v.district, v.likes) for v in venues],
    )


def write_ranking_csv(ranking: PopularityRanking, path: str | Path) -> None:
    _write_csv(path, ["district", "total_likes", "venue_count"], ranking.entries)
