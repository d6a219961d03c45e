"""Green-space review mining: venue ingestion, topic models, reports."""

from importlib import resources

__version__ = "0.1.0"


def data_path(name: str):
    """Traversable handle on a file bundled under ugs_topics/data."""
    return resources.files("ugs_topics") / "data" / name
