"""Independent checkers for the defining array properties.

Heffter axioms, support-shifted properties P1-P4, simplicity of orderings,
compatibility via direct permutation tracing, the diagonal-gap gcd criterion
and the parity necessary condition.  Nothing in here trusts the construction:
every check recomputes from the raw entries.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .core import (
    Cell,
    DiagonalSet,
    ParameterError,
    SparseSquareArray,
    partial_sums,
)


@dataclass(frozen=True)
class CheckResult:
    passed: bool
    detail: str = ""
    required: bool = True


@dataclass
class VerificationReport:
    """Named verdicts with diagnostic payloads; total over the requested checks."""

    checks: dict[str, CheckResult] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks.values() if c.required)

    def failed(self) -> list[str]:
        return [name for name, c in self.checks.items() if c.required and not c.passed]

    def add(self, name: str, passed: bool, detail: str = "", required: bool = True) -> None:
        self.checks[name] = CheckResult(passed=passed, detail=detail, required=required)


@dataclass
class OrderingScheme:
    """Per-line cell sequences: one cyclic ordering for each row and column."""

    row_orders: list[list[Cell]]
    col_orders: list[list[Cell]]
    reversed_rows: frozenset[int] = frozenset()


@dataclass(frozen=True)
class CellCycle:
    """Cycle decomposition of the composed row/column successor permutation."""

    cycles: tuple[tuple[Cell, ...], ...]

    @property
    def lengths(self) -> tuple[int, ...]:
        return tuple(sorted(len(c) for c in self.cycles))


def natural_orderings(array: SparseSquareArray, reverse_last_row: bool = True) -> OrderingScheme:
    """Left-to-right row orders and top-to-bottom column orders.

    With `reverse_last_row` (the default) the last row is traversed right to
    left; this is the variant whose row/column composition is a single cycle
    on the diagonal constructions.  Reversal does not affect simplicity.
    """
    n = array.n
    rows = [array.row_cells(r) for r in range(n)]
    reversed_rows: frozenset[int] = frozenset()
    if reverse_last_row:
        rows[n - 1] = list(reversed(rows[n - 1]))
        reversed_rows = frozenset({n - 1})
    cols = [array.col_cells(c) for c in range(n)]
    return OrderingScheme(row_orders=rows, col_orders=cols, reversed_rows=reversed_rows)


def check_heffter(
    array: SparseSquareArray, k: int, modulus: int, integer: bool = False
) -> VerificationReport:
    """Verdicts for the Heffter axioms of an H(n;k) candidate.

    Checks fill counts, zero line sums mod `modulus`, and the one-of-{x,-x}
    support condition on {1..nk}.  Integer (sum-over-Z) line sums are always
    reported; they are only required when `integer` is set.
    """
    n = array.n
    report = VerificationReport()

    bad = [("row", r) for r in range(n) if len(array.row_cells(r)) != k]
    bad += [("col", c) for c in range(n) if len(array.col_cells(c)) != k]
    report.add("fill_counts", not bad, f"lines with wrong fill count: {bad[:3]}" if bad else "")

    bad_mod: list[tuple[str, int, int]] = []
    bad_int: list[tuple[str, int, int]] = []
    for kind in ("row", "col"):
        for a in range(n):
            cells = array.row_cells(a) if kind == "row" else array.col_cells(a)
            s = sum(array.entries[c] for c in cells)
            if s % modulus != 0:
                bad_mod.append((kind, a, s))
            if s != 0:
                bad_int.append((kind, a, s))
    report.add("zero_sums_mod", not bad_mod, f"nonzero line sums mod {modulus}: {bad_mod[:3]}" if bad_mod else "")
    report.add(
        "zero_sums_integer",
        not bad_int,
        f"lines not summing to zero over Z: {bad_int[:3]}" if bad_int else "",
        required=integer,
    )

    values = array.values()
    want = set(range(1, n * k + 1))
    got = {abs(v) for v in values}
    support_ok = len(values) == n * k and got == want and len(set(values)) == len(values)
    detail = ""
    if not support_ok:
        missing = sorted(want - got)[:5]
        extra = sorted(got - want)[:5]
        detail = f"support mismatch; missing {missing}, extra {extra}"
    report.add("support", support_ok, detail)
    return report


def check_support_shifted(
    array: SparseSquareArray, n: int, p: int, gamma: int
) -> VerificationReport:
    """Properties P1-P4 of a support-shifted array with window {gamma*n+1 .. (4p+gamma)*n}."""
    report = VerificationReport()
    k = 4 * p
    modulus = 2 * (4 * p + gamma) * n + 1

    bad = [("row", r) for r in range(n) if len(array.row_cells(r)) != k]
    bad += [("col", c) for c in range(n) if len(array.col_cells(c)) != k]
    report.add("P1_fill_counts", not bad, f"bad lines: {bad[:3]}" if bad else "")

    values = array.values()
    want = set(range(gamma * n + 1, (4 * p + gamma) * n + 1))
    got = {abs(v) for v in values}
    ok = len(values) == n * k and got == want and len(set(values)) == len(values)
    report.add("P2_shifted_support", ok, "" if ok else f"window mismatch, e.g. missing {sorted(want - got)[:5]}")

    bad_int = []
    for kind in ("row", "col"):
        for a in range(n):
            cells = array.row_cells(a) if kind == "row" else array.col_cells(a)
            s = sum(array.entries[c] for c in cells)
            if s != 0:
                bad_int.append((kind, a, s))
    report.add("P3_integer_sums", not bad_int, f"nonzero sums: {bad_int[:3]}" if bad_int else "")

    scheme = natural_orderings(array, reverse_last_row=False)
    simple = check_simple(array, scheme, modulus)
    report.add(
        "P4_partial_sums_distinct",
        simple.ok,
        "" if simple.ok else f"collisions in {simple.failed()[:3]}",
    )
    return report


def check_simple(
    array: SparseSquareArray, scheme: OrderingScheme, modulus: int
) -> VerificationReport:
    """Per-line distinctness of partial sums along the scheme's orders."""
    report = VerificationReport()
    for kind, orders in (("row", scheme.row_orders), ("col", scheme.col_orders)):
        for a, order in enumerate(orders):
            if not order:
                report.add(f"{kind}_{a}", True)
                continue
            profile = partial_sums(array, (kind, a), order, modulus)
            seen: dict[int, int] = {}
            collision = ""
            ok = True
            for pos, s in enumerate(profile.sums):
                if s in seen:
                    ok = False
                    collision = f"residue {s} repeats at positions {seen[s]} and {pos}"
                    break
                seen[s] = pos
            report.add(f"{kind}_{a}", ok, collision)
    return report


def _successor_map(orders: list[list[Cell]]) -> dict[Cell, Cell]:
    succ: dict[Cell, Cell] = {}
    for order in orders:
        for i, cell in enumerate(order):
            succ[cell] = order[(i + 1) % len(order)]
    return succ


def compose_cycle(array: SparseSquareArray, scheme: OrderingScheme) -> CellCycle:
    """Cycle decomposition of the composed cell permutation.

    The row successor map and the column successor map are composed with the
    convention that the row step is applied first.
    """
    row_succ = _successor_map(scheme.row_orders)
    col_succ = _successor_map(scheme.col_orders)
    cells = set(array.entries)
    if set(row_succ) != cells or set(col_succ) != cells:
        raise ParameterError("ordering scheme does not cover the filled cells")
    composed = {cell: col_succ[row_succ[cell]] for cell in cells}
    return CellCycle(cycles=cycle_decomposition(composed))


def cycle_decomposition(mapping: dict[Cell, Cell]) -> tuple[tuple[Cell, ...], ...]:
    """Cycles of a permutation given as an explicit mapping."""
    seen: set[Cell] = set()
    cycles: list[tuple[Cell, ...]] = []
    for start in sorted(mapping):
        if start in seen:
            continue
        cyc = [start]
        seen.add(start)
        cur = mapping[start]
        while cur != start:
            cyc.append(cur)
            seen.add(cur)
            cur = mapping[cur]
        cycles.append(tuple(cyc))
    return tuple(cycles)


def check_compatible(cycle: CellCycle, nk: int) -> bool:
    """True iff the composition is a single cycle through all nk cells."""
    return cycle.lengths == (nk,)


def check_gap_criterion(n: int, diagonals: DiagonalSet) -> bool:
    """True iff every cyclic diagonal gap is coprime to n."""
    import math

    return all(math.gcd(n, s) == 1 for s in diagonals.gaps)


def check_parity_necessary(m: int, n: int, s: int, t: int) -> bool:
    """Necessary parity condition for compatible orderings of an m x n array.

    Requires m*s == n*t.  True iff one of: all four odd; m odd, n even, s
    even; m even, n odd, t even.
    """
    if m * s != n * t:
        raise ParameterError(f"m*s != n*t ({m}*{s} != {n}*{t})")
    if m % 2 == 1 and n % 2 == 1 and s % 2 == 1 and t % 2 == 1:
        return True
    if m % 2 == 1 and n % 2 == 0 and s % 2 == 0:
        return True
    if m % 2 == 0 and n % 2 == 1 and t % 2 == 0:
        return True
    return False
