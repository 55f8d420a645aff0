import pytest

from drinfeld2 import build_tower
from drinfeld2.census import default_prime, run_census

Q_TO_PS = {2: (2, 1), 3: (3, 1), 4: (2, 2), 5: (5, 1)}

# every (d, m) with d*m <= 3, for q in {2, 3, 4, 5}
GRID_DM = [(1, 1), (1, 2), (2, 1), (1, 3), (3, 1)]
GRID = [(q, d, m) for q in (2, 3, 4, 5) for d, m in GRID_DM]
STRETCH = [(3, 1, 4), (3, 2, 2), (3, 4, 1)]


@pytest.fixture(scope="session")
def census_cache():
    """One verified census per (q, d, m), shared across the whole run."""
    cache = {}

    def get(q, d, m):
        key = (q, d, m)
        if key not in cache:
            p, s = Q_TO_PS[q]
            tower = build_tower(p, s, d * m)
            prime = default_prime(tower.fq, d)
            cache[key] = run_census(tower, prime, m, verify_members=True)
        return cache[key]

    return get


def tower_for(q, n):
    p, s = Q_TO_PS[q]
    return build_tower(p, s, n)
