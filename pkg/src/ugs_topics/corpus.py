"""Data types and file loaders for districts, venues, and reviews."""

from __future__ import annotations

import datetime as dt
import json
from dataclasses import dataclass
from pathlib import Path

AREAS = ("Northside", "Southside")

DISTRICT_HEADER = ["district", "area", "lat", "lon"]
REVIEW_FIELDS = ("title", "body", "rating", "reviewer_location", "date", "venue_id")


@dataclass(frozen=True)
class District:
    name: str
    area: str
    latitude: float
    longitude: float

    def __post_init__(self):
        if not self.name:
            raise ValueError("district name must be non-empty")
        if self.area not in AREAS:
            raise ValueError(f"unknown area {self.area!r}, expected one of {AREAS}")
        if not -90.0 <= self.latitude <= 90.0 or not -180.0 <= self.longitude <= 180.0:
            raise ValueError(
                f"coordinate out of range for {self.name}: "
                f"({self.latitude}, {self.longitude})"
            )


@dataclass(frozen=True)
class Venue:
    id: str
    name: str
    district: str
    likes: int = 0

    def __post_init__(self):
        if not self.id:
            raise ValueError("venue id must be non-empty")
        if self.likes < 0:
            raise ValueError(f"negative like count for venue {self.id}")


@dataclass(frozen=True)
class Review:
    title: str
    body: str
    rating: int
    date: dt.date
    venue_id: str
    reviewer_location: str | None = None

    def __post_init__(self):
        if isinstance(self.rating, bool) or self.rating not in (1, 2, 3, 4, 5):
            raise ValueError(f"rating must be 1-5, got {self.rating!r}")
        if not self.body.strip():
            raise ValueError("review body is empty")
        if not isinstance(self.date, dt.date):
            raise ValueError("date must be a calendar date")

    @property
    def text(self) -> str:
        """Title and body as the single unit the modelling stages consume."""
        return " ".join(part for part in (self.title, self.body) if part.strip())


@dataclass(frozen=True)
class Corpus:
    reviews: tuple[Review, ...]
    source_label: str = ""

    def __post_init__(self):
        object.__setattr__(self, "reviews", tuple(self.reviews))

    def __len__(self) -> int:
        return len(self.reviews)

    def __iter__(self):
        return iter(self.reviews)

    def texts(self) -> list[str]:
        return [review.text for review in self.reviews]


def parse_review_date(raw: str) -> dt.date:
    """Accepts YYYY-MM-DD and DD-MM-YYYY; everything is stored as the former."""
    try:
        return dt.date.fromisoformat(raw)
    except ValueError:
        pass
    try:
        return dt.datetime.strptime(raw, "%d-%m-%Y").date()
    except ValueError:
        raise ValueError(f"unparseable date {raw!r}") from None


def load_districts(path: str | Path) -> list[District]:
    lines = Path(path).read_text(encoding="utf-8").splitlines()
    if not lines:
        raise ValueError(f"{path}: empty file, expected header {','.join(DISTRICT_HEADER)}")
    header = [cell.strip() for cell in lines[0].split(",")]
    if header != DISTRICT_HEADER:
        raise ValueError(f"{path}: bad header {lines[0]!r}")
    districts = []
    seen = set()
    for number, line in enumerate(lines[1:], start=2):
        if not line.strip():
            continue
        cells = [cell.strip() for cell in line.split(",")]
        if len(cells) != 4:
            raise ValueError(f"{path}: malformed row {number}: {line!r}")
        name, area, lat, lon = cells
        try:
            district = District(name, area, float(lat), float(lon))
        except ValueError as exc:
            raise ValueError(f"{path}: row {number}: {exc}") from None
        if district.name in seen:
            raise ValueError(f"{path}: row {number}: duplicate district {district.name!r}")
        seen.add(district.name)
        districts.append(district)
    return districts


def _review_from_record(record: dict, where: str) -> Review:
    missing = [key for key in ("title", "body", "rating", "date", "venue_id") if key not in record]
    if missing:
        raise ValueError(f"{where}: missing fields {missing}")
    try:
        return Review(
            title=str(record["title"]),
            body=str(record["body"]),
            rating=record["rating"],
            date=parse_review_date(str(record["date"])),
            venue_id=str(record["venue_id"]),
            reviewer_location=record.get("reviewer_location"),
        )
    except ValueError as exc:
        raise ValueError(f"{where}: {exc}") from None


def load_reviews(path: str | Path) -> Corpus:
    """Reads one JSON review per line, preserving file order."""
    path = Path(path)
    reviews = []
    with path.open(encoding="utf-8") as handle:
        for number, line in enumerate(handle, start=1):
            if not line.strip():
                continue
            try:
                record = json.loads(line)
            except json.JSONDecodeError as exc:
                raise ValueError(f"{path}: line {number}: invalid JSON ({exc})") from None
            reviews.append(_review_from_record(record, f"{path}: line {number}"))
    if not reviews:
        raise ValueError(f"{path}: empty corpus")
    return Corpus(reviews=tuple(reviews), source_label=path.stem)


def save_reviews(corpus: Corpus, path: str | Path) -> None:
    path = Path(path)
    with path.open("w", encoding="utf-8") as handle:
        for review in corpus.reviews:
            record = {
                "title": review.title,
                "body": review.body,
                "rating": review.rating,
                "reviewer_location": review.reviewer_location,
                "date": review.date.isoformat(),
                "venue_id": review.venue_id,
            }
            handle.write(json.dumps(record, sort_keys=True) + "\n")


def filter_reviews(
    corpus: Corpus,
    *,
    after: dt.date | None = None,
    before: dt.date | None = None,
) -> Corpus:
    """Keeps reviews with after <= date <= before; either bound may be open."""
    kept = tuple(
        review
        for review in corpus.reviews
        if (after is None or review.date >= after)
        and (before is None or review.date <= before)
    )
    return Corpus(reviews=kept, source_label=corpus.source_label)
