"""Hyperparameter grid search and configuration selection.

One model trains per grid cell with a seed derived from the base seed and
the cell's position, so the whole sweep is reproducible and cells are
independent. Ranking is by coherence descending; the per-word
log-likelihood breaks ties ascending (the more negative value wins, i.e.
"minimum perplexity"), and any residual tie falls back to the cell
descriptor so selection never depends on row order.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

from .evaluate import (
    EvaluationReport,
    EvaluationRow,
    build_cooccurrence,
    exp_perplexity,
    model_coherence,
    perplexity,
    split_heldout,
)
from .lda import HyperParams, TopicModel, train
from .rng import derive_seed
from .vectorize import BowDocument, Vocabulary

DEFAULT_ALPHAS: tuple = ("symmetric", 0.05, 0.1, 0.2)
DEFAULT_BETAS: tuple = (0.2, 0.3)


@dataclass(frozen=True)
class SearchGrid:
    alphas: tuple = DEFAULT_ALPHAS
    betas: tuple = DEFAULT_BETAS
    ks: tuple = (5,)
    base_seed: int = 0
    iterations: int = 500
    burn_in: int = 100
    top_n: int = 10

    def __post_init__(self) -> None:
        object.__setattr__(self, "alphas", tuple(self.alphas))
        object.__setattr__(self, "betas", tuple(self.betas))
        object.__setattr__(self, "ks", tuple(int(k) for k in self.ks))
        if not (self.alphas and self.betas and self.ks):
            raise ValueError("every candidate list must be non-empty")
        if any(k < 2 for k in self.ks):
            raise ValueError("topic counts must be at least 2")

    def cells(self) -> list[tuple]:
        """(alpha, beta, k) triples in deterministic enumeration order."""
        return list(product(self.alphas, self.betas, self.ks))

    def to_jsonable(self) -> dict:
        return {
            "alphas": list(self.alphas),
            "betas": list(self.betas),
            "ks": list(self.ks),
            "base_seed": self.base_seed,
            "iterations": self.iterations,
            "burn_in": self.burn_in,
            "top_n": self.top_n,
        }

    @classmethod
    def from_jsonable(cls, payload: dict) -> "SearchGrid":
        known = {f for f in cls.__dataclass_fields__}
        return cls(**{key: value for key, value in payload.items() if key in known})


def _row_sort_key(row: EvaluationRow) -> tuple:
    # coherence desc, then perplexity asc ("minimum perplexity"), then the
    # cell descriptor so ranking is content-determined
    return (-row.coherence, row.perplexity, row.alpha, row.beta, row.k)


def rank_report(report: EvaluationReport) -> list[EvaluationRow]:
    return sorted(report.rows, key=_row_sort_key)


def select_best(report: EvaluationReport) -> EvaluationRow:
    """Pure selection over report rows; row order never matters."""
    if not report.rows:
        raise ValueError("empty report")
    return rank_report(report)[0]


@dataclass(frozen=True)
class GridSearchResult:
    report: EvaluationReport
    best_row: EvaluationRow
    best_hp: HyperParams
    best_model: TopicModel
    cell_hyperparams: list[HyperParams] = field(default_factory=list)


def grid_search(
    bows: list[BowDocument],
    vocab: Vocabulary,
    grid: SearchGrid,
    *,
    heldout_fraction: float = 0.1,
) -> GridSearchResult:
    """Train and score every cell; return the report and the winning model.

    Perplexity is computed on the deterministic heldout tail; coherence is
    computed against co-occurrence statistics of the full corpus.
    """
    train_bows, heldout = split_heldout(bows, heldout_fraction)
    # stats over the whole corpus so every vocabulary token has support
    stats = build_cooccurrence(
        [[vocab.id_to_token[v] for v, c in bow for _ in range(c)] for bow in bows]
    )

    rows: list[EvaluationRow] = []
    hps: list[HyperParams] = []
    models: list[TopicModel] = []
    for index, (alpha, beta, k) in enumerate(grid.cells()):
        hp = HyperParams(
            n_topics=k,
            alpha=alpha,
            beta=beta,
            seed=derive_seed(grid.base_seed, index),
            iterations=grid.iterations,
            burn_in=grid.burn_in,
        )
        try:
            model = train(train_bows, vocab, hp)
            pmi = model_coherence(model, vocab, stats, n=grid.top_n, metric="pmi")
            umass = model_coherence(model, vocab, stats, n=grid.top_n, metric="umass")
            heldout_ll = perplexity(model, heldout)
        except Exception as exc:
            raise RuntimeError(
                f"grid cell {index} failed (alpha={alpha}, beta={beta}, k={k})"
            ) from exc
        rows.append(
            EvaluationRow(
                alpha=hp.alpha_label(),
                beta=beta,
                k=k,
                coherence=pmi,
                perplexity=heldout_ll,
                coherence_umass=umass,
                perplexity_exp=exp_perplexity(heldout_ll),
            )
        )
        hps.append(hp)
        models.append(model)

    report = EvaluationReport(rows=rows)
    best = select_best(report)
    best_index = rows.index(best)
    return GridSearchResult(
        report=report,
        best_row=best,
        best_hp=hps[best_index],
        best_model=models[best_index],
        cell_hyperparams=hps,
    )
