"""Slow, independent reference implementations used only by tests.

Exhaustive small-instance Heffter search, naive partial-sum checking and
naive permutation composition.  Deliberately unoptimized and sharing no code
with the primary implementations they cross-check.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from itertools import combinations

from .core import HeffterError, ParameterError, SparseSquareArray


class BudgetExceeded(HeffterError):
    """The search budget ran out before the search space was exhausted."""


@dataclass(frozen=True)
class SearchBudget:
    node_limit: int = 5_000_000
    time_limit: float = 120.0


def naive_distinct_partial_sums(entries, modulus: int) -> bool:
    """All-pairs comparison of the prefix sums of `entries` mod `modulus`."""
    prefixes = []
    total = 0
    for e in entries:
        total += e
        prefixes.append(total % modulus)
    for i in range(len(prefixes)):
        for j in range(i + 1, len(prefixes)):
            if prefixes[i] == prefixes[j]:
                return False
    return True


def naive_compose_cycles(perm_a: dict, perm_b: dict) -> tuple[int, ...]:
    """Cycle type of the composition 'a then b' by direct tabulation."""
    if set(perm_a) != set(perm_b):
        raise ParameterError("permutations must act on the same ground set")
    composed = {x: perm_b[perm_a[x]] for x in perm_a}
    lengths = []
    seen = set()
    for start in composed:
        if start in seen:
            continue
        length = 0
        cur = start
        while cur not in seen:
            seen.add(cur)
            cur = composed[cur]
            length += 1
        lengths.append(length)
    return tuple(sorted(lengths))


def brute_force_heffter(
    n: int, k: int, budget: SearchBudget | None = None
) -> SparseSquareArray | None:
    """Exhaustive search for an H(n;k) at desk scale (n <= 5).

    Enumerates fill patterns with k cells per row and column, then assigns
    signed support values by backtracking; the last cell of a row or column
    is forced by the zero-sum requirement mod 2nk+1.  Returns the first
    array found, or None after exhausting the space.
    """
    if not 3 <= k <= n:
        raise ParameterError(f"need 3 <= k <= n, got k={k}, n={n}")
    if n > 5:
        raise ParameterError(f"brute force is desk-scale only (n <= 5), got n={n}")
    budget = budget or SearchBudget()
    modulus = 2 * n * k + 1
    deadline = time.monotonic() + budget.time_limit
    state = {"nodes": 0}

    for pattern in _fill_patterns(n, k):
        result = _assign_values(n, k, modulus, pattern, budget, deadline, state)
        if result is not None:
            return result
    return None


def _fill_patterns(n: int, k: int):
    """All 0/1 patterns with k ones per row and per column, row by row."""
    rows: list[tuple[int, ...]] = []
    col_counts = [0] * n

    def rec(r: int):
        if r == n:
            yield [list(row) for row in rows]
            return
        remaining = n - r
        for cols in combinations(range(n), k):
            if any(col_counts[c] + 1 > k for c in cols):
                continue
            # each column still needs k - count ones from `remaining` rows
            feasible = all(
                k - (col_counts[c] + (1 if c in cols else 0)) <= remaining - 1
                for c in range(n)
            )
            if not feasible:
                continue
            rows.append(cols)
            for c in cols:
                col_counts[c] += 1
            yield from rec(r + 1)
            for c in cols:
                col_counts[c] -= 1
            rows.pop()

    yield from rec(0)


def _assign_values(n, k, modulus, pattern, budget, deadline, state):
    cells = [(r, c) for r in range(n) for c in pattern[r]]
    row_left = [len(pattern[r]) for r in range(n)]
    col_left = [0] * n
    for r in range(n):
        for c in pattern[r]:
            col_left[c] += 1
    row_sum = [0] * n
    col_sum = [0] * n
    values: dict[tuple[int, int], int] = {}
    used = set()

    def candidates(r, c):
        # forced residue when this cell completes its row or column
        forced = set()
        if row_left[r] == 1:
            forced.add((-row_sum[r]) % modulus)
        if col_left[c] == 1:
            forced.add((-col_sum[c]) % modulus)
        for x in range(1, n * k + 1):
            if x in used:
                continue
            for v in (x, -x):
                if forced and any((v - f) % modulus != 0 for f in forced):
                    continue
                yield v

    def rec(idx):
        state["nodes"] += 1
        if state["nodes"] > budget.node_limit or time.monotonic() > deadline:
            raise BudgetExceeded(f"exhausted after {state['nodes']} nodes")
        if idx == len(cells):
            return all(s % modulus == 0 for s in row_sum + col_sum)
        r, c = cells[idx]
        for v in candidates(r, c):
            values[(r, c)] = v
            used.add(abs(v))
            row_sum[r] += v
            col_sum[c] += v
            row_left[r] -= 1
            col_left[c] -= 1
            complete_ok = (row_left[r] > 0 or row_sum[r] % modulus == 0) and (
                col_left[c] > 0 or col_sum[c] % modulus == 0
            )
            if complete_ok and rec(idx + 1):
                return True
            row_left[r] += 1
            col_left[c] += 1
            row_sum[r] -= v
            col_sum[c] -= v
            used.discard(abs(v))
            del values[(r, c)]
        return False

    if rec(0):
        return SparseSquareArray(n, dict(values))
    return None
