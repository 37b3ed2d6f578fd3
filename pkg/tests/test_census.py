"""Unit tests for equivalence testing and the census."""

import csv
import random

import pytest

from heffter.core import ParameterError, SparseSquareArray
from heffter.census import (
    EquivalenceWitness,
    derangements,
    embedding_lower_bound,
    enumerate_maps,
    equivalent,
    run_census,
    write_census_csv,
)
from heffter.construct import construct_full
from heffter.oracle import BudgetExceeded


def test_derangements_recurrence_and_values():
    assert [derangements(m) for m in range(8)] == [1, 0, 1, 2, 9, 44, 265, 1854]
    with pytest.raises(ParameterError):
        derangements(-1)


def test_enumerate_maps_counts():
    assert len(enumerate_maps(1)) == 1
    assert len(enumerate_maps(3)) == 4
    assert len(enumerate_maps(4)) == 16
    # pairs come in lexicographic order and satisfy the fixed-point constraint
    maps = enumerate_maps(3)
    assert maps == sorted(maps)
    assert all(fi[0] == 0 for fi, _ in maps)


def random_distinct_array(rng, n=7, fill=3):
    arr = SparseSquareArray(n)
    cells = rng.sample([(r, c) for r in range(n) for c in range(n)], n * fill)
    values = rng.sample(range(1, 200), n * fill)
    for cell, v in zip(cells, values):
        arr.put(*cell, v * rng.choice([-1, 1]))
    return arr


def test_equivalent_finds_planted_witnesses():
    rng = random.Random(5)
    for _ in range(50):
        arr = random_distinct_array(rng)
        row_perm = tuple(rng.sample(range(7), 7))
        col_perm = tuple(rng.sample(range(7), 7))
        witness = EquivalenceWitness(
            row_perm=row_perm,
            col_perm=col_perm,
            negate=rng.random() < 0.5,
            transpose=rng.random() < 0.5,
        )
        other = witness.apply(arr)
        found = equivalent(arr, other)
        assert found is not None
        assert found.apply(arr).entries == other.entries


def test_equivalent_rejects_unrelated_arrays():
    rng = random.Random(6)
    a = random_distinct_array(rng)
    b = random_distinct_array(rng)
    assert equivalent(a, b) is None
    assert equivalent(a, SparseSquareArray(5, {(0, 0): 1})) is None


def test_equivalent_is_symmetric_and_reflexive():
    rng = random.Random(7)
    a = random_distinct_array(rng)
    assert equivalent(a, a) is not None
    b = a.negated().transposed()
    assert equivalent(a, b) is not None
    assert equivalent(b, a) is not None


def test_equivalent_requires_distinct_entries():
    a = SparseSquareArray(2, {(0, 0): 1, (1, 1): 1})
    with pytest.raises(ParameterError):
        equivalent(a, a)


def test_census_13_2():
    report = run_census(13, 2)
    assert report.alpha == 6
    assert len(enumerate_maps(2)) == 1
    assert report.generated == report.valid_shifts * len(enumerate_maps(2))
    assert all(e.verified for e in report.entries)
    assert report.distinct == report.generated  # all shifts give distinct arrays
    assert report.bound_paper == 11 * derangements(0) ** 2 == 11
    assert report.embedding_bound.denominator == 13 * 11


def test_census_shift_variants_match_construct():
    report = run_census(13, 1)
    shifts = {e.shift for e in report.entries}
    built = construct_full(13, 1)
    assert built.shift in shifts
    assert all(t not in shifts for t in built.rejected_shifts)


def test_census_budget():
    with pytest.raises(BudgetExceeded):
        run_census(13, 2, max_pairs=3)


def test_write_census_csv(tmp_path):
    report = run_census(13, 2)
    path = tmp_path / "census.csv"
    write_census_csv(report, path)
    with open(path, newline="") as fh:
        rows = list(csv.DictReader(fh))
    assert len(rows) == report.generated
    assert set(rows[0]) == {"fI", "fJ", "shift", "verified", "class_id"}
    assert {int(r["class_id"]) for r in rows} == set(range(report.distinct))


def test_embedding_lower_bound():
    bound = embedding_lower_bound(64, 17, 15)
    assert bound.numerator == 64 and bound.denominator == 255
    with pytest.raises(ParameterError):
        embedding_lower_bound(10, 9, 5)  # k must be 3 mod 4
