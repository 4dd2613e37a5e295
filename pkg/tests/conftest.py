import random

import pytest

from revsort import SignedPermutation, bfs_distance_table


@pytest.fixture(scope="session")
def table_cache(tmp_path_factory):
    return tmp_path_factory.mktemp("tables")


@pytest.fixture(scope="session")
def table3(table_cache):
    return bfs_distance_table(3, cache_dir=table_cache)


@pytest.fixture(scope="session")
def table5(table_cache):
    return bfs_distance_table(5, cache_dir=table_cache)


@pytest.fixture(scope="session")
def table7(table_cache):
    return bfs_distance_table(7, cache_dir=table_cache)


def random_signed(rng: random.Random, n: int) -> SignedPermutation:
    perm = list(range(1, n + 1))
    rng.shuffle(perm)
    return SignedPermutation.from_interior([v if rng.random() < 0.5 else -v for v in perm])


def all_signed(n: int):
    import itertools

    for perm in itertools.permutations(range(1, n + 1)):
        for mask in range(1 << n):
            yield SignedPermutation.from_interior(
                [v if not (mask >> k) & 1 else -v for k, v in enumerate(perm)]
            )
