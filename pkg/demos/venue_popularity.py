"""
Rank green spaces by like counts
================================

Replays recorded API responses from the bundled fixture, so it runs
offline and produces the same table every time.
"""

from ugs_topics import data_path
from ugs_topics.corpus import load_districts
from ugs_topics.venues import VenueApiClient, aggregate_popularity, collect_venues

districts = load_districts(str(data_path("districts.csv")))
print(f"{len(districts)} districts loaded")
for d in districts[:3]:
    print(f"  {d.name}: {d.area}, ({d.latitude}, {d.longitude})")

client = VenueApiClient.from_fixture(str(data_path("venue_fixture.json")))
venues = collect_venues(districts, client)
print(f"\n{len(venues)} venues found within 1200 m of the district centres")

# total likes per district, most popular first
ranking = aggregate_popularity(venues)
print("\ndistrict          total_likes  venues")
for name, total, count in ranking.entries:
    print(f"{name:<18}{total:>11}{count:>8}")

# the same venues averaged per park instead of summed per district
mean_ranking = aggregate_popularity(venues, by_mean=True)
print("\nby mean likes per venue:", [name for name, _, _ in mean_ranking.entries[:3]])
