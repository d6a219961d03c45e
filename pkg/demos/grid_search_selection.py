# Hyperparameter sweep over a corpus with two planted word blocks.
# Coherence of the top words picks the winner; held-out likelihood
# breaks ties. The K=2 cell should beat the over-split K=10 cells.

from ugs_topics.synthetic import make_planted_corpus
from ugs_topics.tuning import SearchGrid, grid_search, rank_report
from ugs_topics.vectorize import build_vocabulary, to_bow

corpus, labels = make_planted_corpus(n_docs=120, tokens_per_doc=25)
vocab = build_vocabulary(corpus)
bows = [to_bow(doc, vocab) for doc in corpus]

grid = SearchGrid(
    alphas=("symmetric", 0.1),
    betas=(0.2,),
    ks=(2, 10),
    base_seed=42,
    iterations=150,
    burn_in=50,
)
print(f"sweeping {len(list(grid.cells()))} cells...")
result = grid_search(bows, vocab, grid)

print("\nalpha       beta   k   coherence  perplexity")
for row in rank_report(result.report):
    print(f"{row.alpha:<10}{row.beta:>6.2f}{row.k:>4}{row.coherence:>12.4f}{row.perplexity:>12.4f}")

best = result.best_row
print(f"\nwinner: alpha={best.alpha} beta={best.beta} k={best.k}")

# each cell trains from a seed derived from base_seed and the cell index,
# so the whole sweep replays identically
rerun = grid_search(bows, vocab, grid)
print("rerun selects the same cell:", rerun.best_row == best)
