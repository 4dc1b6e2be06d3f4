from __future__ import annotations

import numpy as np
import pytest

import skewhad as sh

PAPER_I0 = tuple(range(4, 12))
PAPER_I1 = tuple(range(0, 8))


@pytest.fixture(scope="session")
def instance625():
    """The certified v=625 block pair: (tables, partition, pair, certificate)."""
    return sh.find_valid_generator(sh.FieldConfig(5, 4), 16, PAPER_I0, PAPER_I1)


@pytest.fixture(scope="session")
def matrix1252(instance625):
    _, _, pair, _ = instance625
    return sh.build_bordered_from_blocks(pair.group, pair.d0, pair.d1)


@pytest.fixture(scope="session")
def matrix8():
    """Order-8 desk instance from Z_3 with D0 = D1 = {1}."""
    g = sh.GroupSpec.cyclic(3)
    d = sh.subset_from_indices(g, [1])
    return sh.build_bordered_from_blocks(g, d, d)


@pytest.fixture(scope="session")
def matrix12():
    """Order-12 desk instance from Z_5 with D0 = {1,2}, D1 = {1,4}."""
    g = sh.GroupSpec.cyclic(5)
    d0 = sh.subset_from_indices(g, [1, 2])
    d1 = sh.subset_from_indices(g, [1, 4])
    return sh.build_bordered_from_blocks(g, d0, d1)


def random_signs(n, seed):
    rng = np.random.default_rng(seed)
    return rng.choice(np.array([-1, 1], dtype=np.int8), size=(n, n))
