"""Venue client (fixture mode), aggregation, and ranking."""

import pytest

from ugs_topics import data_path
from ugs_topics.corpus import District, Venue, load_districts
from ugs_topics.venues import (
    VenueApiClient,
    VenueApiError,
    VenueConfigError,
    aggregate_popularity,
    collect_venues,
    fetch_likes,
    PopularityRanking,
    search_key,
    search_venues,
)


@pytest.fixture(scope="module")
def client():
    return VenueApiClient.from_fixture(str(data_path("venue_fixture.json")))


@pytest.fixture(scope="module")
def districts():
    return load_districts(str(data_path("districts.csv")))


def district_named(districts, name):
    return next(d for d in districts if d.name == name)


class TestSearchKey:
    def test_rounds_to_four_decimals(self):
        assert search_key(53.352488, -6.256646, 1200, "park") == "53.3525,-6.2566,1200,park"


class TestSearch:
    def test_dublin_2_parks(self, client, districts):
        venues = search_venues(district_named(districts, "Dublin 2"), 1200, client)
        names = {v.name for v in venues}
        assert "St Stephen's Green" in names
        assert len(venues) == 3
        assert all(v.district == "Dublin 2" for v in venues)

    def test_district_with_no_parks(self, client, districts):
        assert search_venues(district_named(districts, "Dublin 3"), 1200, client) == []

    def test_unknown_district_is_fixture_miss(self, client):
        ballymun = District("Dublin 11", "Northside", 53.3983, -6.2646)
        with pytest.raises(VenueApiError, match="no fixture entry"):
            search_venues(ballymun, 1200, client)

    def test_limit_truncates(self, client, districts):
        venues = search_venues(district_named(districts, "Dublin 2"), 1200, client, limit=1)
        assert len(venues) == 1

    def test_bad_radius_and_limit(self, client, districts):
        d2 = district_named(districts, "Dublin 2")
        with pytest.raises(ValueError):
            search_venues(d2, 0, client)
        with pytest.raises(ValueError):
            search_venues(d2, 1200, client, limit=0)


class TestLikes:
    def test_recorded_counts(self, client):
        assert fetch_likes("ssg", client) == 1191
        assert fetch_likes("phoenix", client) == 696

    def test_unknown_venue(self, client):
        with pytest.raises(VenueApiError, match="venue not found"):
            fetch_likes("narnia", client)


class TestClientConfig:
    def test_live_without_credentials(self):
        with pytest.raises(VenueConfigError):
            VenueApiClient.live("https://api.example.test", env={})

    def test_fixture_shape_checked(self):
        with pytest.raises(VenueConfigError):
            VenueApiClient("fixture", fixture={"searches": {}})

    def test_unknown_mode(self):
        with pytest.raises(VenueConfigError):
            VenueApiClient("cached")


class TestCollect:
    def test_bundled_fixture_full_run(self, client, districts):
        venues = collect_venues(districts, client)
        assert len(venues) == 8
        likes = {v.id: v.likes for v in venues}
        assert likes["ssg"] == 1191 and likes["bushy"] == 48

    def test_duplicate_id_first_district_wins(self):
        a = District("A", "Northside", 10.0, 20.0)
        b = District("B", "Northside", 30.0, 40.0)
        fixture = {
            "searches": {
                search_key(10.0, 20.0, 1200, "park"): [{"id": "shared", "name": "Shared Park"}],
                search_key(30.0, 40.0, 1200, "park"): [{"id": "shared", "name": "Shared Park"}],
            },
            "likes": {"shared": 7},
        }
        venues = collect_venues([a, b], VenueApiClient("fixture", fixture=fixture))
        assert venues == [Venue("shared", "Shared Park", "A", 7)]

    def test_error_names_district(self, districts):
        fixture = {"searches": {}, "likes": {}}
        with pytest.raises(VenueApiError, match="district Dublin 1"):
            collect_venues(districts[:1], VenueApiClient("fixture", fixture=fixture))


class TestAggregate:
    def test_bundled_totals_and_order(self, client, districts):
        ranking = aggregate_popularity(collect_venues(districts, client))
        assert ranking.entries[0] == ("Dublin 2", 1776, 3)
        assert ranking.entries[1] == ("Dublin 8", 696, 1)
        # equal 48-like districts tie-break by name
        tail = [e[0] for e in ranking.entries[-2:]]
        assert tail == ["Dublin 1", "Dublin 6W"]
        # no entry for districts without venues
        names = {e[0] for e in ranking.entries}
        assert "Dublin 3" not in names and "Dublin 6" not in names

    def test_sum_invariant(self, client, districts):
        venues = collect_venues(districts, client)
        ranking = aggregate_popularity(venues)
        assert sum(e[1] for e in ranking.entries) == sum(v.likes for v in venues)

    def test_permutation_invariant(self, client, districts):
        venues = collect_venues(districts, client)
        assert aggregate_popularity(venues) == aggregate_popularity(venues[::-1])

    def test_empty_input(self):
        assert aggregate_popularity([]).entries == ()

    def test_mean_mode_can_flip_order(self):
        venues = [
            Venue("a1", "A One", "A", 100),
            Venue("a2", "A Two", "A", 0),
            Venue("b1", "B One", "B", 60),
        ]
        by_sum = aggregate_popularity(venues)
        by_mean = aggregate_popularity(venues, by_mean=True)
        assert [e[0] for e in by_sum.entries] == ["A", "B"]
        assert [e[0] for e in by_mean.entries] == ["B", "A"]

    def test_ranking_rejects_misordered_entries(self):
        with pytest.raises(ValueError, match="out of order"):
            PopularityRanking(entries=(("B", 1, 1), ("A", 5, 1)))
