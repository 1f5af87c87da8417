import numpy as np
import pytest

from submax import FacilityLocationInstance, gen_cov, gen_loc
from submax.sets import mask_from_ids

TINY_G = np.array([[0.5, 0.2, 0.4], [0.1, 0.6, 0.3]])


@pytest.fixture
def tiny_loc():
    return FacilityLocationInstance(n=3, m=2, k=2, g=TINY_G)


@pytest.fixture
def tiny_oracle(tiny_loc):
    return tiny_loc.oracle()


def mk(*ids):
    return mask_from_ids(ids)


def small_instances(count, n_range=(8, 14), k_range=(3, 4), base_seed=0):
    """Seeded LOC and COV instances alternating, with m = n + 1."""
    out = []
    rng = np.random.default_rng(base_seed)
    for i in range(count):
        n = int(rng.integers(n_range[0], n_range[1] + 1))
        k = int(rng.integers(k_range[0], k_range[1] + 1))
        seed = int(rng.integers(1 << 30))
        if i % 2 == 0:
            out.append(gen_loc(n, n + 1, k, seed))
        else:
            out.append(gen_cov(n, n + 1, k, 0.2, seed))
    return out
