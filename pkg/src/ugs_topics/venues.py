"""Venue search, like counts, and district popularity aggregation.

The client replays a canned fixture by default; live mode talks to a
venue-search endpoint with client-id/secret credentials read from the
environment. Fixture mode never opens a network connection.
"""

from __future__ import annotations

import json
import os
import time
from dataclasses import dataclass
from pathlib import Path

from .corpus import District, Venue

DEFAULT_RADIUS = 1200  # meters
DEFAULT_QUERY = "park"
ENV_CLIENT_ID = "VENUE_CLIENT_ID"
ENV_CLIENT_SECRET = "VENUE_CLIENT_SECRET"


class VenueApiError(RuntimeError):
    """Backend failure: transport error, unknown lookup, malformed response."""


class VenueConfigError(ValueError):
    """Client misconfiguration detected before any request is made."""


def search_key(latitude: float, longitude: float, radius: int, query: str) -> str:
    # coordinates rounded to 4 decimals so fixture keys are stable
    return f"{latitude:.4f},{longitude:.4f},{radius},{query}"


class VenueApiClient:
    """Either replays a fixture file or queries a live endpoint, never both."""

    def __init__(
        self,
        mode: str,
        *,
        fixture: dict | None = None,
        base_url: str = "",
        client_id: str = "",
        client_secret: str = "",
        min_request_interval: float = 1.0,
        query: str = DEFAULT_QUERY,
    ):
        if mode not in ("fixture", "live"):
            raise VenueConfigError(f"unknown client mode {mode!r}")
        if mode == "fixture":
            if not isinstance(fixture, dict) or not {"searches", "likes"} <= fixture.keys():
                raise VenueConfigError("fixture must contain 'searches' and 'likes' maps")
        else:
            if not (client_id and client_secret):
                raise VenueConfigError(
                    f"live mode needs {ENV_CLIENT_ID} and {ENV_CLIENT_SECRET}"
                )
            if not base_url:
                raise VenueConfigError("live mode needs a base URL")
        self.mode = mode
        self.fixture = fixture
        self.base_url = base_url.rstrip("/")
        self.client_id = client_id
        self.client_secret = client_secret
        self.min_request_interval = min_request_interval
        self.query = query
        self._last_request = 0.0

    @classmethod
    def from_fixture(cls, path: str | Path, *, query: str = DEFAULT_QUERY) -> "VenueApiClient":
        with open(path, encoding="utf-8") as handle:
            fixture = json.load(handle)
        return cls("fixture", fixture=fixture, query=query)

    @classmethod
    def live(
        cls,
        base_url: str,
        *,
        min_request_interval: float = 1.0,
        query: str = DEFAULT_QUERY,
        env=os.environ,
    ) -> "VenueApiClient":
        return cls(
            "live",
            base_url=base_url,
            client_id=env.get(ENV_CLIENT_ID, ""),
            client_secret=env.get(ENV_CLIENT_SECRET, ""),
            min_request_interval=min_request_interval,
            query=query,
        )

    def _throttle(self):
        wait = self._last_request + self.min_request_interval - time.monotonic()
        if wait > 0:
            time.sleep(wait)
        self._last_request = time.monotonic()

    def _get(self, path: str, params: dict) -> dict:
        import requests

        self._throttle()
        try:
            response = requests.get(
                f"{self.base_url}/{path}",
                params={
                    **params,
                    "client_id": self.client_id,
                    "client_secret": self.client_secret,
                },
                timeout=30,
            )
            response.raise_for_status()
            return response.json()
        except requests.RequestException as exc:
            raise VenueApiError(f"request to {path} failed: {exc}") from exc


def search_venues(
    district: District,
    radius: int,
    client: VenueApiClient,
    *,
    limit: int | None = None,
) -> list[Venue]:
    """One search query at the district's coordinates; likes still unset."""
    if radius <= 0:
        raise ValueError(f"radius must be positive, got {radius}")
    if limit is not None and limit < 1:
        raise ValueError(f"limit must be at least 1, got {limit}")
    if client.mode == "fixture":
        key = search_key(district.latitude, district.longitude, radius, client.query)
        try:
            records = client.fixture["searches"][key]
        except KeyError:
            raise VenueApiError(f"no fixture entry for search {key!r}") from None
    else:
        params = {
            "ll": f"{district.latitude},{district.longitude}",
            "radius": radius,
            "query": client.query,
        }
        if limit is not None:
            params["limit"] = limit
        records = client._get("venues/search", params).get("venues")
    if not isinstance(records, list):
        raise VenueApiError(f"malformed search response for {district.name}")
    if limit is not None:
        records = records[:limit]
    venues = []
    for record in records:
        try:
            venues.append(Venue(id=record["id"], name=record["name"], district=district.name))
        except (TypeError, KeyError, ValueError) as exc:
            raise VenueApiError(f"malformed venue record for {district.name}: {exc}") from None
    return venues


def fetch_likes(venue_id: str, client: VenueApiClient) -> int:
    if client.mode == "fixture":
        try:
            count = client.fixture["likes"][venue_id]
        except KeyError:
            raise VenueApiError(f"venue not found: {venue_id}") from None
    else:
        count = client._get(f"venues/{venue_id}/likes", {}).get("count")
    if not isinstance(count, int) or isinstance(count, bool) or count < 0:
        raise VenueApiError(f"malformed like count for {venue_id}: {count!r}")
    return count


def collect_venues(
    districts: list[District],
    client: VenueApiClient,
    *,
    radius: int = DEFAULT_RADIUS,
    limit: int | None = None,
) -> list[Venue]:
    """Sequential per-district search + like fetch; first query wins duplicates."""
    venues: list[Venue] = []
    seen: set[str] = set()
    for district in districts:
        try:
            found = search_venues(district, radius, client, limit=limit)
            for venue in found:
                if venue.id in seen:
                    continue
                seen.add(venue.id)
                likes = fetch_likes(venue.id, client)
                venues.append(Venue(venue.id, venue.name, venue.district, likes))
        except VenueApiError as exc:
            raise VenueApiError(f"district {district.name}: {exc}") from exc
    return venues


@dataclass(frozen=True)
class PopularityRanking:
    entries: tuple[tuple[str, int, int], ...]  # (district, total likes, venue count)
    metric: str = "sum"

    def __post_init__(self):
        object.__setattr__(self, "entries", tuple(tuple(e) for e in self.entries))
        if self.metric not in ("sum", "mean"):
            raise ValueError(f"unknown metric {self.metric!r}")
        keys = [self._sort_key(e) for e in self.entries]
        if keys != sorted(keys):
            raise ValueError("entries out of order")
        for name, total, count in self.entries:
            if count < 1 or total < 0:
                raise ValueError(f"bad entry for {name}")

    def _sort_key(self, entry):
        name, total, count = entry
        score = total / count if self.metric == "mean" else total
        return (-score, name)


def aggregate_popularity(venues: list[Venue], *, by_mean: bool = False) -> PopularityRanking:
    """Likes summed per district, most liked first, names break ties."""
    totals: dict[str, int] = {}
    counts: dict[str, int] = {}
    for venue in venues:
        totals[venue.district] = totals.get(venue.district, 0) + venue.likes
        counts[venue.district] = counts.get(venue.district, 0) + 1
    metric = "mean" if by_mean else "sum"
    entries = [(name, totals[name], counts[name]) for name in totals]
    if by_mean:
        entries.sort(key=lambda e: (-(e[1] / e[2]), e[0]))
    else:
        entries.sort(key=lambda e: (-e[1], e[0]))
    return PopularityRanking(entries=tuple(entries), metric=metric)
