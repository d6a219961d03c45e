"""Command line front end.

Subcommands cover the whole pipeline: `ingest-venues` replays or queries
the venue API and ranks districts, `train` fits one topic model, `sweep`
runs the hyperparameter grid, `evaluate` scores a saved model against a
review file, and `report` regenerates keyword tables from saved artifacts.

Exit codes: 0 success, 2 configuration error, 3 data error, 4 backend error.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from . import data_path
from .corpus import filter_reviews, load_districts, load_reviews, parse_review_date
from .evaluate import (
    EvaluationReport,
    EvaluationRow,
    build_cooccurrence,
    exp_perplexity,
    model_coherence,
    perplexity,
)
from .lda import HyperParams, TopicModel, train
from .reporting import (
    DEFAULT_TOP_WORDS,
    write_ranking_csv,
    write_topics_csv,
    write_topics_markdown,
    write_venues_csv,
)
from .textprep import PrepConfig, load_stopwords, prepare_corpus
from .tuning import SearchGrid, grid_search
from .vectorize import Vocabulary, build_vocabulary, to_bow
from .venues import (
    DEFAULT_RADIUS,
    VenueApiClient,
    VenueApiError,
    VenueConfigError,
    aggregate_popularity,
    collect_venues,
)

log = logging.getLogger("ugs_topics")

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_DATA = 3
EXIT_BACKEND = 4

CONFIG_KEYS = {
    "districts", "reviews", "fixture", "prep", "vectorizer", "model", "grid",
    "out", "report_format", "radius", "limit", "per_venue_mean", "live_url",
    "date_from", "date_to", "top_words",
}
PREP_KEYS = {"min_token_length", "phrase_min_count", "phrase_threshold", "extra_stopwords"}
VECTORIZER_KEYS = {"min_df", "max_df_fraction"}
MODEL_KEYS = {"k", "alpha", "beta", "seed", "iterations", "burn_in"}
GRID_KEYS = {"alphas", "betas", "ks", "base_seed", "iterations", "burn_in"}


class ConfigError(ValueError):
    pass


class DataError(ValueError):
    pass


def _check_keys(section: dict, allowed: set, where: str) -> None:
    unknown = sorted(set(section) - allowed)
    if unknown:
        raise ConfigError(f"unknown {where} keys: {', '.join(unknown)}")


def load_config(path: str | None) -> dict:
    if path is None:
        return {}
    try:
        payload = json.loads(Path(path).read_text(encoding="utf-8"))
    except FileNotFoundError:
        raise ConfigError(f"config file not found: {path}") from None
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config file {path} is not valid JSON: {exc}") from None
    if not isinstance(payload, dict):
        raise ConfigError("config must be a JSON object")
    _check_keys(payload, CONFIG_KEYS, "config")
    for key, allowed in (
        ("prep", PREP_KEYS), ("vectorizer", VECTORIZER_KEYS),
        ("model", MODEL_KEYS), ("grid", GRID_KEYS),
    ):
        if key in payload:
            if not isinstance(payload[key], dict):
                raise ConfigError(f"config section {key!r} must be an object")
            _check_keys(payload[key], allowed, key)
    if "model" in payload and "grid" in payload:
        raise ConfigError("config sets both 'model' and 'grid'; pick one per run")
    if payload.get("report_format") not in (None, "csv", "markdown"):
        raise ConfigError("report_format must be 'csv' or 'markdown'")
    return payload


def _setting(args, config: dict, key: str, default=None):
    value = getattr(args, key.replace("-", "_"), None)
    if value is not None:
        return value
    return config.get(key, default)


def _input_path(args, config, key: str, bundled: str | None) -> Path:
    value = _setting(args, config, key)
    if value is not None:
        return Path(value)
    if bundled is not None:
        log.info("no %s given, using the bundled %s", key, bundled)
        return Path(str(data_path(bundled)))
    raise ConfigError(f"no {key} file given (flag --{key} or config key {key!r})")


def _prep_config(config: dict) -> PrepConfig:
    section = dict(config.get("prep", {}))
    extra = section.pop("extra_stopwords", [])
    stopwords = frozenset(load_stopwords()) | {str(w).lower() for w in extra}
    try:
        return PrepConfig(stopword_list=stopwords, **section)
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"bad prep section: {exc}") from None


def _hyperparams(args, config: dict) -> HyperParams:
    section = {"k": 5, **config.get("model", {})}
    for key in ("k", "alpha", "beta", "iterations", "burn_in"):
        override = getattr(args, key, None)
        if override is not None:
            section[key] = override
    if args.seed is not None:
        section["seed"] = args.seed
    try:
        return HyperParams.from_jsonable(section)
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"bad model section: {exc}") from None


def _search_grid(args, config: dict) -> SearchGrid:
    section = dict(config.get("grid", {}))
    if args.seed is not None:
        section["base_seed"] = args.seed
    try:
        return SearchGrid.from_jsonable(section)
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"bad grid section: {exc}") from None


def _alpha_value(text: str):
    if text == "symmetric":
        return text
    try:
        return float(text)
    except ValueError:
        raise ConfigError(f"alpha must be a number or 'symmetric', got {text!r}") from None


def _out_dir(args, config: dict) -> Path:
    out = Path(_setting(args, config, "out", "out"))
    out.mkdir(parents=True, exist_ok=True)
    return out


def _load_corpus_texts(args, config: dict) -> list[str]:
    path = _input_path(args, config, "reviews", None)
    try:
        corpus = load_reviews(path)
    except FileNotFoundError:
        raise DataError(f"reviews file not found: {path}") from None
    except ValueError as exc:
        raise DataError(str(exc)) from None
    date_from = _setting(args, config, "date_from")
    date_to = _setting(args, config, "date_to")
    if date_from or date_to:
        corpus = filter_reviews(
            corpus,
            after=parse_review_date(date_from) if date_from else None,
            before=parse_review_date(date_to) if date_to else None,
        )
        if not corpus.reviews:
            raise DataError("date filter removed every review")
    log.info("loaded %d reviews from %s", len(corpus), path)
    return corpus.texts()


def _prepare(texts: list[str], prep: PrepConfig):
    prepared = prepare_corpus(texts, prep)
    screened = len(texts) - len(prepared.docs)
    if screened:
        log.info("screened out %d non-English reviews", screened)
    docs = [doc for doc in prepared.docs if doc]
    emptied = len(prepared.docs) - len(docs)
    if emptied:
        log.warning("dropped %d reviews left empty by preprocessing", emptied)
    if not docs:
        raise DataError("every document is empty after preprocessing")
    return docs, prepared.surface_forms


def _vectorize(docs, config: dict) -> tuple[Vocabulary, list]:
    section = config.get("vectorizer", {})
    try:
        vocab = build_vocabulary(
            docs,
            min_df=section.get("min_df", 1),
            max_df_fraction=section.get("max_df_fraction", 1.0),
        )
    except ValueError as exc:
        raise DataError(str(exc)) from None
    return vocab, [to_bow(doc, vocab) for doc in docs]


def _save_json(payload: dict, path: Path) -> None:
    path.write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n", encoding="utf-8")


def _write_topic_report(model, vocab, surface_forms, out: Path, fmt: str, n: int) -> Path:
    if fmt == "markdown":
        path = out / "topics.md"
        write_topics_markdown(model, vocab, path, n=n, surface_forms=surface_forms)
    else:
        path = out / "topics.csv"
        write_topics_csv(model, vocab, path, n=n, surface_forms=surface_forms)
    return path


def _persist_model(model, vocab, surface_forms, out: Path) -> None:
    model.save(out / "model.json")
    vocab.save(out / "vocab.json")
    _save_json(surface_forms, out / "surface_forms.json")


def cmd_ingest_venues(args, config: dict) -> int:
    out = _out_dir(args, config)
    districts_path = _input_path(args, config, "districts", "districts.csv")
    try:
        districts = load_districts(districts_path)
    except FileNotFoundError:
        raise DataError(f"districts file not found: {districts_path}") from None
    except ValueError as exc:
        raise DataError(str(exc)) from None
    if not districts:
        raise DataError(f"no districts in {districts_path}")

    live_url = _setting(args, config, "live_url")
    if live_url:
        client = VenueApiClient.live(live_url)
    else:
        fixture_path = _input_path(args, config, "fixture", "venue_fixture.json")
        try:
            client = VenueApiClient.from_fixture(fixture_path)
        except FileNotFoundError:
            raise DataError(f"fixture file not found: {fixture_path}") from None
        except json.JSONDecodeError as exc:
            raise DataError(f"fixture file is not valid JSON: {exc}") from None

    radius = int(_setting(args, config, "radius", DEFAULT_RADIUS))
    limit = _setting(args, config, "limit")
    venues = collect_venues(
        districts, client, radius=radius, limit=int(limit) if limit is not None else None
    )
    ranking = aggregate_popularity(
        venues, by_mean=bool(_setting(args, config, "per_venue_mean", False))
    )
    write_venues_csv(venues, out / "venues.csv")
    write_ranking_csv(ranking, out / "ranking.csv")
    print(f"{len(venues)} venues across {len(ranking.entries)} districts -> {out}")
    for name, total, count in ranking.entries[:3]:
        print(f"  {name}: {total} likes over {count} venues")
    return EXIT_OK


def cmd_train(args, config: dict) -> int:
    out = _out_dir(args, config)
    hp = _hyperparams(args, config)
    texts = _load_corpus_texts(args, config)
    docs, surface_forms = _prepare(texts, _prep_config(config))
    vocab, bows = _vectorize(docs, config)
    try:
        model = train(bows, vocab, hp)
    except ValueError as exc:
        raise DataError(str(exc)) from None
    _persist_model(model, vocab, surface_forms, out)
    fmt = _setting(args, config, "report_format", "csv")
    n = int(_setting(args, config, "top_words", DEFAULT_TOP_WORDS))
    report = _write_topic_report(model, vocab, surface_forms, out, fmt, n)
    print(f"trained k={hp.n_topics} on {len(bows)} documents, {len(vocab)} terms")
    print(f"model -> {out / 'model.json'}, report -> {report}")
    return EXIT_OK


def cmd_sweep(args, config: dict) -> int:
    out = _out_dir(args, config)
    grid = _search_grid(args, config)
    texts = _load_corpus_texts(args, config)
    docs, surface_forms = _prepare(texts, _prep_config(config))
    vocab, bows = _vectorize(docs, config)
    try:
        result = grid_search(bows, vocab, grid)
    except ValueError as exc:
        raise DataError(str(exc)) from None
    result.report.to_csv(out / "sweep.csv", extended=True)
    _persist_model(result.best_model, vocab, surface_forms, out)
    fmt = _setting(args, config, "report_format", "csv")
    n = int(_setting(args, config, "top_words", DEFAULT_TOP_WORDS))
    _write_topic_report(result.best_model, vocab, surface_forms, out, fmt, n)
    best = result.best_row
    print(f"swept {len(result.report.rows)} cells -> {out / 'sweep.csv'}")
    print(
        f"winner: alpha={best.alpha} beta={best.beta} k={best.k} "
        f"(coherence {best.coherence:.4f}, predictive {best.perplexity:.4f})"
    )
    return EXIT_OK


def _load_artifacts(directory: Path) -> tuple[TopicModel, Vocabulary, dict]:
    model_path = directory / "model.json"
    vocab_path = directory / "vocab.json"
    if not model_path.exists() or not vocab_path.exists():
        raise DataError(f"no model.json/vocab.json under {directory}")
    model = TopicModel.load(model_path)
    vocab = Vocabulary.load(vocab_path)
    if model.vocab_hash != vocab.content_hash():
        raise DataError("model.json was trained against a different vocab.json")
    surfaces_path = directory / "surface_forms.json"
    surfaces = {}
    if surfaces_path.exists():
        surfaces = json.loads(surfaces_path.read_text(encoding="utf-8"))
    return model, vocab, surfaces


def cmd_evaluate(args, config: dict) -> int:
    out = _out_dir(args, config)
    model_dir = Path(args.model_dir) if args.model_dir else out
    model, vocab, _ = _load_artifacts(model_dir)
    texts = _load_corpus_texts(args, config)
    docs, _ = _prepare(texts, _prep_config(config))
    bows = [bow for bow in (to_bow(doc, vocab) for doc in docs) if bow]
    if not bows:
        raise DataError("no document shares any vocabulary with the model")
    if len(bows) < len(docs):
        log.warning("ignored %d documents with no in-vocabulary tokens", len(docs) - len(bows))
    stats = build_cooccurrence(docs)
    n = int(_setting(args, config, "top_words", 10))
    row = EvaluationRow(
        alpha=model.hyperparams.alpha_label(),
        beta=model.hyperparams.beta,
        k=model.n_topics,
        coherence=model_coherence(model, vocab, stats, n=n, metric="pmi"),
        perplexity=perplexity(model, bows),
        coherence_umass=model_coherence(model, vocab, stats, n=n, metric="umass"),
    )
    row = EvaluationRow(
        row.alpha, row.beta, row.k, row.coherence, row.perplexity,
        row.coherence_umass, exp_perplexity(row.perplexity),
    )
    EvaluationReport(rows=[row]).to_csv(out / "evaluation.csv", extended=True)
    print(
        f"k={row.k} alpha={row.alpha} beta={row.beta}: coherence {row.coherence:.4f}, "
        f"umass {row.coherence_umass:.4f}, predictive {row.perplexity:.4f}"
    )
    print(f"report -> {out / 'evaluation.csv'}")
    return EXIT_OK


def cmd_report(args, config: dict) -> int:
    out = _out_dir(args, config)
    model_dir = Path(args.model_dir) if args.model_dir else out
    model, vocab, surfaces = _load_artifacts(model_dir)
    fmt = args.format or _setting(args, config, "report_format", "csv")
    n = int(_setting(args, config, "top_words", DEFAULT_TOP_WORDS))
    path = _write_topic_report(model, vocab, surfaces, out, fmt, n)
    print(f"report -> {path}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ugs-topics",
        description="Mine venue popularity and review topics for urban green spaces.",
    )
    parser.add_argument("--config", metavar="PATH", help="JSON pipeline configuration")
    parser.add_argument("--seed", type=int, metavar="N", help="override the sampling seed")
    parser.add_argument("--out", metavar="DIR", help="output directory (default: out)")
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    ingest = sub.add_parser("ingest-venues", help="rank districts by venue likes")
    ingest.add_argument("--districts", metavar="PATH", help="districts CSV")
    ingest.add_argument("--fixture", metavar="PATH", help="canned API responses JSON")
    ingest.add_argument("--live-url", dest="live_url", metavar="URL", help="query a live endpoint")
    ingest.add_argument("--radius", type=int, metavar="M", help="search radius in meters")
    ingest.add_argument("--limit", type=int, metavar="N", help="max venues per district query")
    ingest.add_argument(
        "--per-venue-mean", dest="per_venue_mean", action="store_const", const=True,
        help="rank by mean likes per venue instead of the district total",
    )
    ingest.set_defaults(func=cmd_ingest_venues)

    def add_corpus_flags(cmd):
        cmd.add_argument("--reviews", metavar="PATH", help="JSON-Lines review file")
        cmd.add_argument("--date-from", dest="date_from", metavar="DATE")
        cmd.add_argument("--date-to", dest="date_to", metavar="DATE")

    train_cmd = sub.add_parser("train", help="fit one topic model")
    add_corpus_flags(train_cmd)
    train_cmd.add_argument("--k", type=int, metavar="K", help="number of topics")
    train_cmd.add_argument("--alpha", type=_alpha_value, metavar="A")
    train_cmd.add_argument("--beta", type=float, metavar="B")
    train_cmd.add_argument("--iterations", type=int, metavar="N")
    train_cmd.add_argument("--burn-in", dest="burn_in", type=int, metavar="N")
    train_cmd.add_argument("--top-words", dest="top_words", type=int, metavar="N")
    train_cmd.set_defaults(func=cmd_train)

    sweep_cmd = sub.add_parser("sweep", help="grid-search hyperparameters")
    add_corpus_flags(sweep_cmd)
    sweep_cmd.set_defaults(func=cmd_sweep)

    eval_cmd = sub.add_parser("evaluate", help="score a saved model on a review file")
    add_corpus_flags(eval_cmd)
    eval_cmd.add_argument("--model-dir", dest="model_dir", metavar="DIR",
                          help="directory holding model.json/vocab.json (default: --out)")
    eval_cmd.add_argument("--top-words", dest="top_words", type=int, metavar="N")
    eval_cmd.set_defaults(func=cmd_evaluate)

    report_cmd = sub.add_parser("report", help="rebuild keyword tables from saved artifacts")
    report_cmd.add_argument("--model-dir", dest="model_dir", metavar="DIR")
    report_cmd.add_argument("--format", choices=("csv", "markdown"))
    report_cmd.add_argument("--top-words", dest="top_words", type=int, metavar="N")
    report_cmd.set_defaults(func=cmd_report)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s %(message)s",
        stream=sys.stderr,
    )
    try:
        config = load_config(args.config)
        return args.func(args, config)
    except (ConfigError, VenueConfigError) as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except DataError as exc:
        print(f"data error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except VenueApiError as exc:
        print(f"backend error: {exc}", file=sys.stderr)
        return EXIT_BACKEND


if __name__ == "__main__":
    sys.exit(main())
