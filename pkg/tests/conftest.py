import random

import pytest

from bglab.instances import UNIT, WEIGHTED, BigraphInstance

# weights that exercise fractional values, including ones that only
# round-trip at full double precision
WEIGHT_POOL = [0.2, 0.25, 1 / 3, 0.5, 1.0, 1.1, 2.0, 3.5]


def random_instance(rs: random.Random, n_max: int = 10, m_max: int = 10,
                    weighted: bool = False, deg_max: int = 3,
                    n_min: int = 1) -> BigraphInstance:
    """Small random instance built with plain `random` (independent of the
    library's own generators)."""
    n = rs.randint(n_min, n_max)
    m = rs.randint(1, m_max)
    rows = []
    for _ in range(m):
        deg = rs.randint(1, min(deg_max, n))
        rows.append(tuple(sorted(rs.sample(range(1, n + 1), deg))))
    if weighted:
        weights = tuple(rs.choice(WEIGHT_POOL) for _ in range(n))
        kind = WEIGHTED
    else:
        weights = (1.0,) * n
        kind = UNIT
    return BigraphInstance(name=f"rand_{n}_{m}", n_cols=n, m_rows=m,
                           rows=tuple(rows), col_weights=weights,
                           weight_kind=kind)


@pytest.fixture
def rs() -> random.Random:
    return random.Random(0xBEEF)
