import pytest

from bglab.instances import (UNIT, BigraphInstance, UnateRequiredError,
                             parse_cnf)
from bglab.library import chvatal_6_5, school_9_11
from bglab.matching import brute_force_matching, max_matching

from conftest import random_instance

TINY = parse_cnf("p cnf 1 1\n1 0\n")


def unit_instance(rows, n):
    return BigraphInstance(name="t", n_cols=n, m_rows=len(rows),
                           rows=tuple(rows), col_weights=(1.0,) * n,
                           weight_kind=UNIT)


def no_augmenting_path(instance, pairs):
    """Independent optimality certificate: BFS over alternating paths from
    every unmatched column must not reach a free row."""
    row_to_col = {r - 1: c - 1 for r, c in pairs}
    col_matched = set(row_to_col.values())
    rows_of_col = [[] for _ in range(instance.n_cols)]
    for r, clause in enumerate(instance.rows):
        for lit in clause:
            rows_of_col[lit - 1].append(r)
    for start in range(instance.n_cols):
        if start in col_matched:
            continue
        frontier = [start]
        seen_rows = set()
        while frontier:
            nxt = []
            for col in frontier:
                for r in rows_of_col[col]:
                    if r in seen_rows:
                        continue
                    seen_rows.add(r)
                    if r not in row_to_col:
                        return False  # augmenting path exists
                    nxt.append(row_to_col[r])
            frontier = nxt
    return True


def test_chvatal_matching():
    result = max_matching(chvatal_6_5())
    assert result.size == 5
    assert result.m_p == pytest.approx(5 / 6)
    assert brute_force_matching(chvatal_6_5()) == 5


def test_tiny_matching():
    result = max_matching(TINY)
    assert result.size == 1
    assert result.m_p == 1.0
    assert result.pairs == ((1, 1),)
    assert brute_force_matching(TINY) == 1


def test_complete_2x2():
    inst = unit_instance([(1, 2), (1, 2)], 2)
    assert max_matching(inst).size == 2
    assert brute_force_matching(inst) == 2


def test_school_9_11_saturates_columns():
    result = max_matching(school_9_11())
    assert result.size == 9
    assert result.m_p == 1.0


def test_pairs_are_disjoint_edges(rs):
    for _ in range(100):
        inst = random_instance(rs, n_max=8, m_max=8)
        result = max_matching(inst)
        rows_seen = set()
        cols_seen = set()
        for r, c in result.pairs:
            assert r not in rows_seen
            assert c not in cols_seen
            rows_seen.add(r)
            cols_seen.add(c)
            assert c in inst.rows[r - 1]
        assert len(result.pairs) == result.size
        assert result.m_p == result.size / inst.n_cols
        assert result.size <= min(inst.n_cols, inst.m_rows)


def test_matching_equals_oracle(rs):
    for _ in range(150):
        inst = random_instance(rs, n_max=7, m_max=7)
        if inst.num_edges > 24:
            continue
        assert max_matching(inst).size == brute_force_matching(inst)


def test_no_augmenting_path_certificate(rs):
    for _ in range(60):
        inst = random_instance(rs, n_max=8, m_max=8)
        result = max_matching(inst)
        assert no_augmenting_path(inst, result.pairs)


def test_column_saturating_family(rs):
    # every column gets a private row, so all columns can be matched
    for _ in range(20):
        n = rs.randint(2, 8)
        rows = [(c,) for c in range(1, n + 1)]
        for _ in range(rs.randint(0, 5)):
            deg = rs.randint(1, min(3, n))
            rows.append(tuple(sorted(rs.sample(range(1, n + 1), deg))))
        inst = unit_instance(rows, n)
        assert max_matching(inst).m_p == 1.0


def test_matching_deterministic():
    inst = school_9_11()
    assert max_matching(inst) == max_matching(inst)


def test_matching_rejects_binate():
    binate = parse_cnf("p cnf 2 1\n1 -2 0\n")
    with pytest.raises(UnateRequiredError):
        max_matching(binate)
    with pytest.raises(UnateRequiredError):
        brute_force_matching(binate)


def test_brute_force_edge_limit():
    inst = unit_instance([tuple(range(1, 6))] * 5, 5)  # 25 edges
    with pytest.raises(ValueError, match="24-edge"):
        brute_force_matching(inst)


def test_deep_augmenting_chain():
    # chain forces reassignment cascades and deep alternating paths
    n = 400
    rows = [(1,)] + [(c, c + 1) for c in range(1, n)]
    inst = unit_instance(rows, n)
    assert max_matching(inst).size == n
