import pytest

from quivlat.quiverfile import fixtures_dir, load_quiver_file
from quivlat.reports import catalog_for

CATALOGABLE = ("a2", "a3-linear", "a3-sink", "a3-source", "loop-eps2",
               "loop-plus-arrow", "d4-subspace", "d4-source", "twocycle-exit")
REFUSING = ("kronecker", "two-loops", "loop-exit-norel")
ALL_FIXTURES = tuple(sorted(CATALOGABLE + REFUSING))


@pytest.fixture(scope="session")
def fixture_file():
    cache = {}

    def get(name):
        if name not in cache:
            cache[name] = load_quiver_file(fixtures_dir() / f"{name}.toml")
        return cache[name]

    return get


@pytest.fixture(scope="session")
def catalog(fixture_file):
    # catalogs are costly (twocycle-exit takes a minute) and carry the
    # lattice memos, so every test shares one per fixture
    cache = {}

    def get(name):
        if name not in cache:
            cache[name] = catalog_for(fixture_file(name))
        return cache[name]

    return get
