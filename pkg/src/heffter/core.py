"""Exact integer substrate for partially filled square arrays.

Cells, diagonals, supports and modular partial-sum machinery shared by the
construction, verification, embedding and census layers.  Everything here is
pure and operates on exact Python integers.
"""

from __future__ import annotations

from dataclasses import dataclass, field

Cell = tuple[int, int]

# Desk-scale sanity bound: every modulus and entry we ever handle fits easily
# in 64 bits; anything larger signals corrupted input.
_MAX_MAGNITUDE = 2**62


class HeffterError(Exception):
    """Base class for all errors raised by this package."""


class ParameterError(HeffterError):
    """Invalid construction parameters (bad n, p, alpha, maps, ...)."""


@dataclass
class SparseSquareArray:
    """An n x n array with a sparse map of nonzero integer entries.

    Row and column indices are reduced modulo n on every access, so callers
    may address cells with raw index arithmetic.
    """

    n: int
    entries: dict[Cell, int] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.n <= 0:
            raise ParameterError(f"side length must be positive, got {self.n}")
        for (r, c), v in self.entries.items():
            self._check_entry(r, c, v)

    def _check_entry(self, r: int, c: int, v: int) -> None:
        if v == 0:
            raise ParameterError(f"zero entry at cell ({r}, {c})")
        if not (0 <= r < self.n and 0 <= c < self.n):
            raise ParameterError(f"cell ({r}, {c}) out of range for n={self.n}")
        if abs(v) >= _MAX_MAGNITUDE:
            raise ParameterError(f"entry magnitude {v} exceeds sanity bound")

    def put(self, row: int, col: int, value: int) -> None:
        """Place `value` at (row, col) mod n; placing on a filled cell is an error."""
        key = (row % self.n, col % self.n)
        self._check_entry(key[0], key[1], value)
        if key in self.entries:
            raise HeffterError(
                f"cell {key} already holds {self.entries[key]}, refusing {value}"
            )
        self.entries[key] = value

    def get(self, row: int, col: int, default: int = 0) -> int:
        """Entry at (row, col) mod n, or `default` when the cell is empty."""
        return self.entries.get((row % self.n, col % self.n), default)

    def __contains__(self, cell: Cell) -> bool:
        return (cell[0] % self.n, cell[1] % self.n) in self.entries

    def __len__(self) -> int:
        return len(self.entries)

    def row_cells(self, row: int) -> list[Cell]:
        """Filled cells of a row, left to right."""
        r = row % self.n
        return sorted(c for c in self.entries if c[0] == r)

    def col_cells(self, col: int) -> list[Cell]:
        """Filled cells of a column, top to bottom."""
        c = col % self.n
        return sorted((cell for cell in self.entries if cell[1] == c))

    def support(self) -> set[int]:
        """Set of absolute values of the entries."""
        return {abs(v) for v in self.entries.values()}

    def values(self) -> list[int]:
        return list(self.entries.values())

    def transposed(self) -> "SparseSquareArray":
        return SparseSquareArray(
            self.n, {(c, r): v for (r, c), v in self.entries.items()}
        )

    def negated(self) -> "SparseSquareArray":
        return SparseSquareArray(
            self.n, {cell: -v for cell, v in self.entries.items()}
        )

    def permuted(self, row_perm: list[int], col_perm: list[int]) -> "SparseSquareArray":
        """Move row i to row_perm[i] and column j to col_perm[j]."""
        if sorted(row_perm) != list(range(self.n)) or sorted(col_perm) != list(range(self.n)):
            raise ParameterError("row/column permutations must be permutations of [n]")
        return SparseSquareArray(
            self.n,
            {(row_perm[r], col_perm[c]): v for (r, c), v in self.entries.items()},
        )

    def copy(self) -> "SparseSquareArray":
        return SparseSquareArray(self.n, dict(self.entries))


@dataclass(frozen=True)
class DiagonalSet:
    """Occupied diagonal indices of an n x n array together with their cyclic gaps."""

    n: int
    indices: tuple[int, ...]
    gaps: tuple[int, ...]


@dataclass(frozen=True)
class PartialSumProfile:
    """Residues of the running sums along one line, in ordering sequence."""

    line: tuple[str, int]
    sums: tuple[int, ...]
    modulus: int

    def distinct(self) -> bool:
        return len(set(self.sums)) == len(self.sums)


def diagonal_cells(n: int, d: int) -> list[Cell]:
    """Cells (i+d mod n, i) of diagonal d, in column order."""
    if not 0 <= d < n:
        raise ParameterError(f"diagonal index {d} out of range for n={n}")
    return [((i + d) % n, i) for i in range(n)]


def gaps_of(n: int, indices: list[int]) -> DiagonalSet:
    """Cyclic gaps between consecutive occupied diagonals.

    The first gap wraps: it is the step from the last index back around to the
    first.  Gaps always sum to 0 mod n.
    """
    if not indices:
        raise ParameterError("diagonal index list must be nonempty")
    if any(not 0 <= d < n for d in indices):
        raise ParameterError(f"diagonal indices must lie in [0, {n})")
    if list(indices) != sorted(set(indices)):
        raise ParameterError("diagonal indices must be strictly increasing")
    idx = tuple(indices)
    gaps = [(idx[0] - idx[-1]) % n]
    gaps += [(idx[h] - idx[h - 1]) % n for h in range(1, len(idx))]
    return DiagonalSet(n=n, indices=idx, gaps=tuple(gaps))


def occupied_diagonals(array: SparseSquareArray) -> DiagonalSet:
    """DiagonalSet of all diagonals holding at least one entry."""
    n = array.n
    ds = sorted({(r - c) % n for (r, c) in array.entries})
    return gaps_of(n, ds)


def partial_sums(
    array: SparseSquareArray,
    line: tuple[str, int],
    order: list[Cell],
    modulus: int,
) -> PartialSumProfile:
    """Running sums (mod `modulus`) of a line's entries visited in `order`.

    `line` is ("row", index) or ("col", index).  The order must visit exactly
    the filled cells of that line, each once.
    """
    kind, index = line
    if kind == "row":
        expected = set(array.row_cells(index))
    elif kind == "col":
        expected = set(array.col_cells(index))
    else:
        raise ParameterError(f"unknown line kind {kind!r}")
    norm = [(r % array.n, c % array.n) for (r, c) in order]
    if set(norm) != expected or len(norm) != len(expected):
        raise ParameterError(
            f"order for {kind} {index} must be a permutation of its filled cells"
        )
    sums = []
    acc = 0
    for cell in norm:
        acc = (acc + array.entries[cell]) % modulus
        sums.append(acc)
    return PartialSumProfile(line=(kind, index % array.n), sums=tuple(sums), modulus=modulus)


def diagonal_prefix_sums(array: SparseSquareArray, line: tuple[str, int]) -> dict[int, int]:
    """Integer running sums of a line accumulated in diagonal-index order.

    Returns, for each occupied diagonal d of the line, the sum of the line's
    entries on diagonals 0..d.  Unlike `partial_sums` this is evaluated over
    the integers, which is what the construction's inequality bookkeeping
    needs.  For a row a the diagonal-d entry sits at column a-d; for a column
    a it sits at row a+d.
    """
    kind, a = line
    n = array.n
    out: dict[int, int] = {}
    acc = 0
    for d in range(n):
        if kind == "row":
            v = array.get(a, a - d)
        elif kind == "col":
            v = array.get(a + d, a)
        else:
            raise ParameterError(f"unknown line kind {kind!r}")
        if v != 0:
            acc += v
            out[d] = acc
    return out
