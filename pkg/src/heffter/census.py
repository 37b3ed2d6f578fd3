"""Census of the construction's degrees of freedom.

Enumerates the admissible column-map pairs and companion shifts, verifies
every generated array, decides pairwise equivalence under row/column
permutation, global negation and transposition, and reports the counting
bounds (derangement bound, biembedding lower bound).
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations

from .core import SparseSquareArray
from .construct import (
    ExclusionError,
    Params,
    build_support_shifted,
    build_three_diagonal,
    construct_full,
    f_i_allowed,
    f_j_allowed,
    find_alpha,
    merge,
    shift_three_diagonal,
)
from .core import ParameterError
from .verify import (
    check_compatible,
    check_heffter,
    check_simple,
    compose_cycle,
    natural_orderings,
)


@dataclass(frozen=True)
class EquivalenceWitness:
    """A transformation taking one array exactly onto another.

    Applied in order: transpose, negate, then move row i to row_perm[i] and
    column j to col_perm[j].
    """

    row_perm: tuple[int, ...]
    col_perm: tuple[int, ...]
    negate: bool
    transpose: bool

    def apply(self, array: SparseSquareArray) -> SparseSquareArray:
        out = array
        if self.transpose:
            out = out.transposed()
        if self.negate:
            out = out.negated()
        return out.permuted(list(self.row_perm), list(self.col_perm))


def derangements(m: int) -> int:
    """Exact derangement count D(m) via the standard recurrence."""
    if m < 0:
        raise ParameterError("derangements undefined for negative m")
    if m == 0:
        return 1
    if m == 1:
        return 0
    d0, d1 = 1, 0
    for i in range(2, m + 1):
        d0, d1 = d1, (i - 1) * (d0 + d1)
    return d1


def enumerate_maps(p: int) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
    """All admissible (f_I, f_J) pairs for the merged construction, in
    lexicographic order."""
    if p < 1:
        raise ParameterError("p must be at least 1")
    fis = [
        f
        for f in permutations(range(p))
        if all(f_i_allowed(p, i, v) for i, v in enumerate(f))
    ]
    fjs = [
        f
        for f in permutations(range(p - 1))
        if all(f_j_allowed(p, j, v) for j, v in enumerate(f))
    ]
    return [(fi, fj) for fi in fis for fj in fjs]


def equivalent(a: SparseSquareArray, b: SparseSquareArray) -> EquivalenceWitness | None:
    """Witness taking `a` to `b` under the equivalence moves, or None.

    Entries of a Heffter array are pairwise distinct, so once negation and
    transposition are fixed, each value's position in `a` must map to that
    value's position in `b`; it only remains to check the forced cell map
    splits into a row permutation and a column permutation.
    """
    if a.n != b.n:
        return None
    n = a.n
    b_vals = sorted(b.entries.values())
    pos_b = {v: cell for cell, v in b.entries.items()}
    if len(pos_b) != len(b.entries):
        raise ParameterError("equivalence search requires pairwise distinct entries")
    for transpose in (False, True):
        for negate in (False, True):
            cand = a.transposed() if transpose else a
            if negate:
                cand = cand.negated()
            if sorted(cand.entries.values()) != b_vals:
                continue
            row_map: dict[int, int] = {}
            col_map: dict[int, int] = {}
            ok = True
            for (i, j), v in cand.entries.items():
                ti, tj = pos_b[v]
                if row_map.setdefault(i, ti) != ti or col_map.setdefault(j, tj) != tj:
                    ok = False
                    break
            if not ok:
                continue
            if len(set(row_map.values())) != len(row_map) or len(set(col_map.values())) != len(col_map):
                continue
            # lines without filled cells (impossible for Heffter arrays, but be
            # total): map them in index order onto the unused targets
            row_perm = _complete_perm(row_map, n)
            col_perm = _complete_perm(col_map, n)
            witness = EquivalenceWitness(
                row_perm=row_perm, col_perm=col_perm, negate=negate, transpose=transpose
            )
            if witness.apply(a).entries == b.entries:
                return witness
    return None


def _complete_perm(partial: dict[int, int], n: int) -> tuple[int, ...]:
    unused = sorted(set(range(n)) - set(partial.values()))
    out = []
    it = iter(unused)
    for i in range(n):
        out.append(partial[i] if i in partial else next(it))
    return tuple(out)


@dataclass
class CensusEntry:
    f_I: tuple[int, ...]
    f_J: tuple[int, ...]
    shift: int
    verified: bool
    class_id: int


@dataclass
class CensusReport:
    n: int
    p: int
    alpha: int
    generated: int
    distinct: int
    valid_shifts: int
    bound_paper: int
    embedding_bound: Fraction
    entries: list[CensusEntry] = field(default_factory=list)


def run_census(n: int, p: int, max_pairs: int | None = None, seed: int = 0) -> CensusReport:
    """Build every (f_I, f_J, shift) variant, verify each, count classes.

    One searched companion per n supplies the shifts; only shifts passing
    the merge exclusion are used.  Pairwise equivalence over all generated
    arrays yields the distinct-class count; `max_pairs` bounds the number of
    pairwise tests and raises when exceeded.
    """
    alpha = find_alpha(n, p)
    if alpha is None:
        raise ParameterError(f"no valid alpha for (n={n}, p={p})")
    k = 4 * p + 3
    modulus = 2 * n * k + 1
    maps = enumerate_maps(p)

    beta = 2 * p + alpha - 3
    ladder0 = build_three_diagonal(n, beta, seed=seed)

    arrays: list[SparseSquareArray] = []
    entries: list[CensusEntry] = []
    valid_shifts = 0
    shift_ladders = []
    for t in range(n):
        shift_ladders.append(shift_three_diagonal(ladder0, t))

    for f_I, f_J in maps:
        params = Params(n=n, p=p, gamma=3, alpha=alpha, f_I=f_I, f_J=f_J)
        aprime = build_support_shifted(params)
        for t, ladder in enumerate(shift_ladders):
            try:
                merged = merge(aprime, ladder, params)
            except ExclusionError:
                continue
            verified = _verify_census_array(merged, k, modulus)
            arrays.append(merged)
            entries.append(
                CensusEntry(f_I=f_I, f_J=f_J, shift=t, verified=verified, class_id=-1)
            )
    valid_shifts = len(arrays) // len(maps)

    total_pairs = len(arrays) * (len(arrays) - 1) // 2
    if max_pairs is not None and total_pairs > max_pairs:
        from .oracle import BudgetExceeded

        raise BudgetExceeded(
            f"census needs {total_pairs} pairwise tests, budget is {max_pairs}"
        )

    parent = list(range(len(arrays)))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i in range(len(arrays)):
        for j in range(i + 1, len(arrays)):
            if find(i) == find(j):
                continue
            if equivalent(arrays[i], arrays[j]) is not None:
                parent[find(j)] = find(i)

    class_ids: dict[int, int] = {}
    for idx, entry in enumerate(entries):
        root = find(idx)
        entry.class_id = class_ids.setdefault(root, len(class_ids))

    distinct = len(class_ids)
    return CensusReport(
        n=n,
        p=p,
        alpha=alpha,
        generated=len(arrays),
        distinct=distinct,
        valid_shifts=valid_shifts,
        bound_paper=(n - 2) * derangements(p - 2) ** 2 if p >= 2 else 0,
        embedding_bound=embedding_lower_bound(distinct, n, k),
        entries=entries,
    )


def _verify_census_array(array: SparseSquareArray, k: int, modulus: int) -> bool:
    if not check_heffter(array, k, modulus, integer=True).ok:
        return False
    plain = natural_orderings(array, reverse_last_row=False)
    if not check_simple(array, plain, modulus).ok:
        return False
    scheme = natural_orderings(array)
    if not check_simple(array, scheme, modulus).ok:
        return False
    return check_compatible(compose_cycle(array, scheme), array.n * k)


def embedding_lower_bound(distinct: int, n: int, k: int) -> Fraction:
    """Distinct arrays divided by the nk isomorphism choices per embedding."""
    if k % 4 != 3:
        raise ParameterError(f"k must be 3 (mod 4), got {k}")
    return Fraction(distinct, n * k)


def write_census_csv(report: CensusReport, path) -> None:
    """CSV rows: fI, fJ, shift, verified, class_id."""
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["fI", "fJ", "shift", "verified", "class_id"])
        for e in report.entries:
            writer.writerow(
                [
                    ",".join(map(str, e.f_I)),
                    ",".join(map(str, e.f_J)),
                    e.shift,
                    int(e.verified),
                    e.class_id,
                ]
            )
