"""Constructions: the support-shifted array, its three-diagonal companion,
the merged H(n;4p+3), and the alpha search.

The support-shifted array places six entry families on 4p diagonals; the
three-diagonal companion is an H(n;3) found by constraint search and cached
per side length; merging the two yields an H(n;4p+3) on 4p+3 diagonals whose
gaps are all coprime to n, which is what makes the natural orderings
compatible.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations

from .core import HeffterError, ParameterError, SparseSquareArray, occupied_diagonals
from .verify import (
    OrderingScheme,
    check_compatible,
    check_heffter,
    check_simple,
    compose_cycle,
    natural_orderings,
)


class ConstructionError(HeffterError):
    """Internal inconsistency while building an array (signals a bug)."""


class ExclusionError(HeffterError):
    """The three-diagonal companion's column-0 entries clash with the merge
    exclusion set; the caller should try another shift."""


class SearchExhausted(HeffterError):
    """The three-diagonal constraint search ran out of restarts."""


def identity_map(size: int) -> tuple[int, ...]:
    return tuple(range(size))


def f_i_allowed(p: int, i: int, value: int) -> bool:
    """Merged-array constraint on the first column-reordering map.

    Position 0 must be fixed, and position i must avoid (2p-i+1)/2 whenever
    that is an integer in range.
    """
    if i == 0:
        return value == 0
    return 2 * value != 2 * p - i + 1


def f_j_allowed(p: int, j: int, value: int) -> bool:
    """Merged-array constraint on the second column-reordering map.

    Both (p-j-4)/4 and (p-j-4)/2 are excluded whenever integral; the two
    candidate exclusions are kept together so every partial-sum separation
    argument stays satisfied.
    """
    if 4 * value == p - j - 4:
        return False
    if 2 * value == p - j - 4:
        return False
    return True


def _is_bijection(f: tuple[int, ...], size: int) -> bool:
    return sorted(f) == list(range(size))


@dataclass(frozen=True)
class Params:
    """Construction parameters (n, p, gamma, alpha) plus the two column maps."""

    n: int
    p: int
    gamma: int
    alpha: int
    f_I: tuple[int, ...]
    f_J: tuple[int, ...]

    @property
    def k(self) -> int:
        return 4 * self.p + 3

    @property
    def shifted_modulus(self) -> int:
        return 2 * (4 * self.p + self.gamma) * self.n + 1

    @property
    def full_modulus(self) -> int:
        return 2 * self.n * (4 * self.p + 3) + 1

    @property
    def beta(self) -> int:
        return 2 * self.p + self.alpha - 3

    def validate_shifted(self) -> None:
        n, p, gamma, alpha = self.n, self.p, self.gamma, self.alpha
        if p <= 0:
            raise ParameterError(f"p must be positive, got {p}")
        if gamma <= 0:
            raise ParameterError(f"gamma must be positive, got {gamma}")
        if n < 4 * p:
            raise ParameterError(f"need n >= 4p ({n} < {4 * p})")
        if not 2 * p - 1 <= alpha <= n - 2 * p - 1:
            raise ParameterError(
                f"alpha={alpha} outside [{2 * p - 1}, {n - 2 * p - 1}]"
            )
        if math.gcd(n, alpha) != 1:
            raise ParameterError(f"gcd(n, alpha) = {math.gcd(n, alpha)} != 1")
        if not _is_bijection(self.f_I, p):
            raise ParameterError(f"f_I={self.f_I} is not a bijection on [{p}]")
        if not _is_bijection(self.f_J, p - 1):
            raise ParameterError(f"f_J={self.f_J} is not a bijection on [{p - 1}]")

    def validate_merged(self) -> None:
        n, p, alpha = self.n, self.p, self.alpha
        if self.gamma != 3:
            raise ParameterError("merged arrays require gamma = 3")
        if n % 4 != 1:
            raise ParameterError(f"need n = 1 (mod 4), got n = {n}")
        if n <= 4 * p + 3:
            raise ParameterError(f"need n > 4p+3 ({n} <= {4 * p + 3})")
        if not alpha_conditions(n, p, alpha):
            raise ParameterError(
                f"alpha={alpha} fails the merged-range gcd conditions for (n={n}, p={p})"
            )
        self.validate_shifted()
        for i, v in enumerate(self.f_I):
            if not f_i_allowed(p, i, v):
                raise ParameterError(f"f_I({i}) = {v} is excluded for p={p}")
        for j, v in enumerate(self.f_J):
            if not f_j_allowed(p, j, v):
                raise ParameterError(f"f_J({j}) = {v} is excluded for p={p}")


def alpha_conditions(n: int, p: int, alpha: int) -> bool:
    """Range and gcd conditions on alpha for the merged construction."""
    return (
        2 * p + 2 <= alpha <= n - 2 - 2 * p
        and math.gcd(n, alpha) == 1
        and math.gcd(n, alpha - 2 * p - 1) == 1
        and math.gcd(n, n - 1 - alpha - 2 * p) == 1
    )


def find_alpha(n: int, p: int) -> int | None:
    """Least alpha meeting the merged-construction conditions, or None.

    The scan is exhaustive over [2p+2, n-2-2p].  In particular the result is
    always None when n = 0 (mod 3) and p != 1 (mod 3): the three conditions
    then exclude every residue class mod 3.
    """
    if n % 4 != 1:
        raise ParameterError(f"need n = 1 (mod 4), got n = {n}")
    if n <= 4 * p + 3:
        raise ParameterError(f"need n > 4p+3 ({n} <= {4 * p + 3})")
    for alpha in range(2 * p + 2, n - 1 - 2 * p):
        if alpha_conditions(n, p, alpha):
            return alpha
    return None


def build_support_shifted(params: Params) -> SparseSquareArray:
    """The support-shifted array on 4p diagonals with window {gamma*n+1..(4p+gamma)*n}.

    Six entry families, indexed by x in [n]; the two coupled pairs of
    families are reordered by the column maps f_I and f_J.  A cell collision
    means the parameters are invalid or the formulas were misapplied, and is
    reported as a construction error.
    """
    params.validate_shifted()
    n, p, g, alpha = params.n, params.p, params.gamma, params.alpha
    fI, fJ = params.f_I, params.f_J
    arr = SparseSquareArray(n)
    try:
        for x in range(n):
            for i in range(p):
                arr.put(2 * i - x, -x, (g + 2) * n + 4 * fI[i] * n - 2 * x)
                arr.put(2 * i + 1 + x, x, -g * n - 4 * fI[i] * n - 1 - 2 * x)
            arr.put(2 * p - alpha * x, -alpha * x, -(4 * p + g) * n + 2 * x)
            for j in range(p - 1):
                arr.put(2 * p + 1 + 2 * j - x, -x, (4 * p + g - 6) * n - 4 * fJ[j] * n + 1 + 2 * x)
                arr.put(2 * p + 2 + 2 * j + x, x, -(4 * p + g - 4) * n + 4 * fJ[j] * n + 2 * x)
            arr.put(2 * p + alpha + alpha * x, alpha * x, (4 * p + g - 2) * n + 1 + 2 * x)
    except HeffterError as exc:
        raise ConstructionError(f"entry families collide: {exc}") from exc
    return arr


@dataclass
class ThreeDiagonalArray:
    """An H(n;3) whose entries sit on diagonals beta, beta+2, beta+4.

    The middle diagonal carries support {1..n}; the outer diagonals are
    positive (beta) and negative (beta+4) and together carry {n+1..3n}.
    `shift` records how many diagonal steps separate this array from the
    searched representative.
    """

    base: SparseSquareArray
    beta: int
    shift: int = 0

    @property
    def n(self) -> int:
        return self.base.n


# The column vectors of the three-diagonal array: positive outer entries P,
# middle entries Q, negative outer entries N, satisfying for every column c
#   P(c) + Q(c) + N(c) = 0            (column sums)
#   P(c) + Q(c-2) + N(c-4) = 0        (row sums)
# with {|Q|} = {1..n} and {P} u {-N} = {n+1..3n}.
#
# Visiting columns along the stride -2 chain makes the row constraint couple
# three consecutive chain positions, so N is forced everywhere after the
# first two steps.  Success nodes are heavy-tailed, so the search restarts
# with a small node cap and a fresh deterministic shuffle each time.
_LADDER_NODE_CAP = 4000
_LADDER_RESTARTS = 50000


@lru_cache(maxsize=None)
def _ladder_columns(n: int, seed: int = 0) -> tuple[tuple[int, ...], tuple[int, ...], tuple[int, ...]]:
    chain = [(-2 * t) % n for t in range(n)]
    lo, hi = n + 1, 3 * n
    rng = random.Random(seed)

    class _Cap(Exception):
        pass

    for _attempt in range(_LADDER_RESTARTS):
        P: dict[int, int] = {}
        Q: dict[int, int] = {}
        N: dict[int, int] = {}
        used_big: set[int] = set()
        used_small: set[int] = set()
        nodes = 0

        def candidates() -> list[int]:
            vals = [v for v in range(lo, hi + 1) if v not in used_big]
            rng.shuffle(vals)
            return vals

        def extend(s: int) -> bool:
            nonlocal nodes
            nodes += 1
            if nodes > _LADDER_NODE_CAP:
                raise _Cap
            if s == n:
                for t in (n - 2, n - 1):
                    c_p, c_q, c_n = chain[t], chain[(t + 1) % n], chain[(t + 2) % n]
                    if P[c_p] + Q[c_q] + N[c_n] != 0:
                        return False
                return True
            c = chain[s]
            if s >= 2:
                forced = -P[chain[s - 2]] - Q[chain[s - 1]]
                if not lo <= -forced <= hi or -forced in used_big:
                    return False
                for pv in candidates():
                    q = -pv - forced
                    if q == 0 or abs(q) > n or abs(q) in used_small:
                        continue
                    used_big.update((pv, -forced))
                    used_small.add(abs(q))
                    P[c], Q[c], N[c] = pv, q, forced
                    if extend(s + 1):
                        return True
                    used_big.difference_update((pv, -forced))
                    used_small.discard(abs(q))
                    del P[c], Q[c], N[c]
                return False
            for pv in candidates():
                used_big.add(pv)
                for nv in candidates():
                    q = nv - pv
                    if q == 0 or abs(q) > n or abs(q) in used_small:
                        continue
                    used_big.add(nv)
                    used_small.add(abs(q))
                    P[c], Q[c], N[c] = pv, q, -nv
                    if extend(s + 1):
                        return True
                    used_big.discard(nv)
                    used_small.discard(abs(q))
                    del P[c], Q[c], N[c]
                used_big.discard(pv)
            return False

        try:
            if extend(0):
                return (
                    tuple(P[c] for c in range(n)),
                    tuple(Q[c] for c in range(n)),
                    tuple(N[c] for c in range(n)),
                )
        except _Cap:
            continue
    raise SearchExhausted(
        f"no three-diagonal H({n};3) found within the restart budget"
    )


def build_three_diagonal(n: int, beta: int, seed: int = 0) -> ThreeDiagonalArray:
    """Search (with per-n caching) for an H(n;3) anchored at diagonal beta."""
    if n % 4 != 1:
        raise ParameterError(f"need n = 1 (mod 4), got n = {n}")
    if not 0 <= beta <= n - 5:
        raise ParameterError(f"beta={beta} outside [0, {n - 5}]")
    P, Q, N = _ladder_columns(n, seed)
    arr = SparseSquareArray(n)
    for c in range(n):
        arr.put(beta + c, c, P[c])
        arr.put(beta + 2 + c, c, Q[c])
        arr.put(beta + 4 + c, c, N[c])
    return ThreeDiagonalArray(base=arr, beta=beta, shift=0)


def shift_three_diagonal(ladder: ThreeDiagonalArray, t: int) -> ThreeDiagonalArray:
    """Translate every entry t steps along its diagonal: (i, j) <- (i+t, j+t)."""
    n = ladder.n
    t %= n
    arr = SparseSquareArray(n)
    for (i, j), v in ladder.base.entries.items():
        arr.put(i - t, j - t, v)
    return ThreeDiagonalArray(base=arr, beta=ladder.beta, shift=(ladder.shift + t) % n)


def merge_exclusion_set(n: int, p: int, strict: bool = False) -> frozenset[int]:
    """Column-0 values of the companion that the merge must avoid.

    The strict variant additionally excludes 2n-(2p+1)/3, and only when that
    is an integer; it applies to identity-map merges.
    """
    excl = {2 * n - 1}
    if strict and (2 * p + 1) % 3 == 0:
        excl.add(2 * n - (2 * p + 1) // 3)
    return frozenset(excl)


def merge(
    aprime: SparseSquareArray,
    ladder: ThreeDiagonalArray,
    params: Params,
    strict: bool = False,
) -> SparseSquareArray:
    """Overlay the three-diagonal companion onto the support-shifted array.

    Cells on the companion's three diagonals take its values; every other
    cell keeps the support-shifted entry.  The companion's column-0 outer
    entries must avoid the exclusion set, otherwise the caller should retry
    with a different shift.
    """
    params.validate_merged()
    n, p = params.n, params.p
    beta = params.beta
    if ladder.beta != beta or ladder.n != n:
        raise ParameterError(
            f"companion anchored at beta={ladder.beta} (n={ladder.n}), "
            f"expected beta={beta} (n={n})"
        )
    excl = merge_exclusion_set(n, p, strict=strict)
    col0 = {ladder.base.get(beta, 0), -ladder.base.get(beta + 4, 0)}
    if col0 & excl:
        raise ExclusionError(
            f"companion column-0 values {sorted(col0)} meet exclusion set {sorted(excl)}"
        )
    ladder_diags = {beta % n, (beta + 2) % n, (beta + 4) % n}
    merged = SparseSquareArray(n)
    for (i, j), v in aprime.entries.items():
        if (i - j) % n in ladder_diags:
            raise ConstructionError(
                f"support-shifted array occupies companion diagonal at cell ({i}, {j})"
            )
        merged.put(i, j, v)
    for (i, j), v in ladder.base.entries.items():
        merged.put(i, j, v)
    return merged


def default_maps(p: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Lexicographically first (f_I, f_J) pair satisfying the merge constraints."""
    f_I = next(
        (f for f in permutations(range(p)) if all(f_i_allowed(p, i, v) for i, v in enumerate(f))),
        None,
    )
    f_J = next(
        (f for f in permutations(range(p - 1)) if all(f_j_allowed(p, j, v) for j, v in enumerate(f))),
        None,
    )
    if f_I is None or f_J is None:
        raise ParameterError(f"no column maps satisfy the merge constraints for p={p}")
    return f_I, f_J


@dataclass
class FullConstruction:
    """A verified H(n;4p+3) with its compatible ordering scheme and provenance."""

    array: SparseSquareArray
    scheme: OrderingScheme
    params: Params
    shift: int
    rejected_shifts: tuple[int, ...]


def construct_full(
    n: int,
    p: int,
    f_I: tuple[int, ...] | None = None,
    f_J: tuple[int, ...] | None = None,
    shift: int | None = None,
    alpha: int | None = None,
    seed: int = 0,
) -> FullConstruction:
    """Full pipeline: alpha search, support-shifted build, companion, merge, verify.

    When `shift` is given, only that companion shift is tried and an
    exclusion clash is an error; otherwise shifts 0, 1, ... are tried until
    one passes (at most two can fail).  The result is re-verified from
    scratch before being returned.
    """
    if alpha is None:
        alpha = find_alpha(n, p)
        if alpha is None:
            raise ParameterError(
                f"no valid alpha for (n={n}, p={p}): every candidate in "
                f"[{2 * p + 2}, {n - 2 - 2 * p}] fails a gcd condition"
                + (
                    " (forced: n divisible by 3 with p % 3 != 1)"
                    if n % 3 == 0 and p % 3 != 1
                    else ""
                )
            )
    if f_I is None or f_J is None:
        di, dj = default_maps(p)
        f_I = di if f_I is None else f_I
        f_J = dj if f_J is None else f_J
    params = Params(n=n, p=p, gamma=3, alpha=alpha, f_I=tuple(f_I), f_J=tuple(f_J))
    params.validate_merged()

    aprime = build_support_shifted(params)
    ladder0 = build_three_diagonal(n, params.beta, seed=seed)

    rejected: list[int] = []
    merged: SparseSquareArray | None = None
    used_shift = 0
    trial_shifts = [shift] if shift is not None else list(range(n))
    for t in trial_shifts:
        ladder = shift_three_diagonal(ladder0, t)
        try:
            merged = merge(aprime, ladder, params)
            used_shift = t
            break
        except ExclusionError:
            if shift is not None:
                raise
            rejected.append(t)
    if merged is None:
        raise ConstructionError(
            f"every companion shift violates the exclusion constraint for (n={n}, p={p})"
        )

    scheme = natural_orderings(merged)
    _verify_full(merged, scheme, params)
    return FullConstruction(
        array=merged,
        scheme=scheme,
        params=params,
        shift=used_shift,
        rejected_shifts=tuple(rejected),
    )


def _verify_full(array: SparseSquareArray, scheme: OrderingScheme, params: Params) -> None:
    modulus = params.full_modulus
    k = params.k
    heffter = check_heffter(array, k, modulus, integer=True)
    if not heffter.ok:
        raise ConstructionError(f"merged array fails Heffter axioms: {heffter.failed()}")
    plain = natural_orderings(array, reverse_last_row=False)
    if not check_simple(array, plain, modulus).ok:
        raise ConstructionError("merged array is not globally simple")
    if not check_simple(array, scheme, modulus).ok:
        raise ConstructionError("compatible scheme is not simple")
    cycle = compose_cycle(array, scheme)
    if not check_compatible(cycle, array.n * k):
        raise ConstructionError(
            f"row/column composition is not a single cycle: lengths {cycle.lengths}"
        )
    diags = occupied_diagonals(array)
    if len(diags.indices) != k:
        raise ConstructionError(f"expected {k} occupied diagonals, got {len(diags.indices)}")
