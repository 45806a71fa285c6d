"""Maximum-cardinality bipartite matching via augmenting paths.

Columns form the side the search augments from; ties are broken by ascending
row index, columns are scanned in ascending index order, so results are
deterministic for a fixed instance. A brute-force oracle over tiny instances
backs the correctness tests.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .instances import BigraphInstance, UnateRequiredError


@dataclass(frozen=True)
class MatchingResult:
    """Matching size, the matched (row, column) pairs, and size / n_cols."""

    size: int
    pairs: tuple[tuple[int, int], ...]
    m_p: float


def _column_adjacency(instance: BigraphInstance) -> list[list[int]]:
    if not instance.is_unate:
        raise UnateRequiredError(f"{instance.name}: unate required")
    adj: list[list[int]] = [[] for _ in range(instance.n_cols)]
    for r, clause in enumerate(instance.rows):
        for lit in clause:
            adj[lit - 1].append(r)
    return adj


def _augment(start: int, adj: list[list[int]], match_row: list[int],
             seen: list[bool]) -> bool:
    # Iterative alternating-path DFS; frames are (column, row-iterator,
    # row used to enter the column).
    stack = [(start, iter(adj[start]), -1)]
    while stack:
        col, row_iter, _ = stack[-1]
        advanced = False
        for r in row_iter:
            if seen[r]:
                continue
            seen[r] = True
            owner = match_row[r]
            if owner == -1:
                # free row found: flip matches along the stack
                match_row[r] = col
                for k in range(len(stack) - 1, 0, -1):
                    match_row[stack[k][2]] = stack[k - 1][0]
                return True
            stack.append((owner, iter(adj[owner]), r))
            advanced = True
            break
        if not advanced:
            stack.pop()
    return False


def max_matching(instance: BigraphInstance) -> MatchingResult:
    """Maximum matching of rows to columns for a unate instance."""
    adj = _column_adjacency(instance)
    match_row = [-1] * instance.m_rows
    size = 0
    for c in range(instance.n_cols):
        seen = [False] * instance.m_rows
        if _augment(c, adj, match_row, seen):
            size += 1
    pairs = tuple((r + 1, c + 1) for r, c in enumerate(match_row) if c != -1)
    return MatchingResult(size=size, pairs=pairs,
                          m_p=size / instance.n_cols)


def brute_force_matching(instance: BigraphInstance) -> int:
    """Exact maximum matching size by exhaustive search; needs <= 24 edges."""
    if not instance.is_unate:
        raise UnateRequiredError(f"{instance.name}: unate required")
    if instance.num_edges > 24:
        raise ValueError(
            f"{instance.name}: {instance.num_edges} edges exceed the "
            f"24-edge oracle limit")
    rows = [tuple(lit - 1 for lit in clause) for clause in instance.rows]
    m = len(rows)

    @lru_cache(maxsize=None)
    def best(r: int, used_cols: int) -> int:
        if r == m:
            return 0
        top = best(r + 1, used_cols)  # leave row r unmatched
        for c in rows[r]:
            if not used_cols >> c & 1:
                top = max(top, 1 + best(r + 1, used_cols | 1 << c))
        return top

    return best(0, 0)
