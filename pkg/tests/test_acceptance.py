"""Acceptance gate: one test per release criterion.

Each test prints a single `ACCEPTANCE <id> ... PASS/FAIL` line (visible with
`pytest -s` and in captured output on failure) and enforces its runtime
budget.  The criteria exercise the whole stack end to end: fixture
reproduction, the shifted-array property sweep, the full construction
pipeline, the embedding certificate, the alpha law, the census, the parity
theorem and the differential oracles.
"""

from __future__ import annotations

import math
import random
import time
from itertools import permutations

from heffter import (
    Params,
    alpha_conditions,
    brute_force_heffter,
    build_support_shifted,
    base_faces,
    check_compatible,
    check_heffter,
    check_parity_necessary,
    check_simple,
    check_support_shifted,
    compose_cycle,
    construct_full,
    derangements,
    develop,
    enumerate_maps,
    equivalent,
    find_alpha,
    natural_orderings,
    naive_compose_cycles,
    naive_distinct_partial_sums,
    partial_sums,
    run_census,
    verify_surface,
)
from heffter.core import SparseSquareArray, diagonal_prefix_sums
from heffter.verify import cycle_decomposition

SEED = 20260823

# Reference H(17;12,3) fixture: n=17, p=3, gamma=3, alpha=6, f_I=(0,2,1),
# f_J=(1,0).  Transcribed from the published example with one corrected
# typographical cell: position (9,1) reads -117 (the printed -153 duplicates
# the entry at (4,0), breaks the column-1 zero sum by -36, and leaves 117
# missing from the support window).
FIXTURE_17 = [
    "85 . . . . 252 . -173 172 -101 100 -253 -144 145 -216 217 -84",
    "-52 53 . . . . 224 . -171 170 -99 98 -225 -146 147 -218 219",
    "221 -54 55 . . . . 230 . -169 168 -97 96 -231 -148 149 -220",
    "-188 189 -56 57 . . . . 236 . -167 166 -95 94 -237 -150 151",
    "153 -190 191 -58 59 . . . . 242 . -165 164 -93 92 -243 -152",
    "-120 121 -192 193 -60 61 . . . . 248 . -163 162 -91 90 -249",
    "-255 -122 123 -194 195 -62 63 . . . . 254 . -161 160 -89 88",
    "86 -227 -124 125 -196 197 -64 65 . . . . 226 . -159 158 -87",
    "-119 118 -233 -126 127 -198 199 -66 67 . . . . 232 . -157 156",
    "154 -117 116 -239 -128 129 -200 201 -68 69 . . . . 238 . -155",
    "-187 186 -115 114 -245 -130 131 -202 203 -70 71 . . . . 244 .",
    ". -185 184 -113 112 -251 -132 133 -204 205 -72 73 . . . . 250",
    "222 . -183 182 -111 110 -223 -134 135 -206 207 -74 75 . . . .",
    ". 228 . -181 180 -109 108 -229 -136 137 -208 209 -76 77 . . .",
    ". . 234 . -179 178 -107 106 -235 -138 139 -210 211 -78 79 . .",
    ". . . 240 . -177 176 -105 104 -241 -140 141 -212 213 -80 81 .",
    ". . . . 246 . -175 174 -103 102 -247 -142 143 -214 215 -82 83",
]


def _report(criterion: str, passed: bool, elapsed: float, budget: float) -> None:
    verdict = "PASS" if passed and elapsed < budget else "FAIL"
    print(
        f"ACCEPTANCE {criterion}: {verdict} ({elapsed:.2f}s, budget {budget:.0f}s)"
    )
    assert passed
    assert elapsed < budget


def _parse_fixture(rows: list[str]) -> dict[tuple[int, int], int]:
    out = {}
    for r, line in enumerate(rows):
        for c, tok in enumerate(line.split()):
            if tok != ".":
                out[(r, c)] = int(tok)
    return out


def test_criterion_1_fixture_reproduction():
    t0 = time.monotonic()
    params = Params(n=17, p=3, gamma=3, alpha=6, f_I=(0, 2, 1), f_J=(1, 0))
    arr = build_support_shifted(params)
    expected = _parse_fixture(FIXTURE_17)
    ok = arr.entries == expected and len(expected) == 17 * 12
    _report("1 fixture reproduction (17x17)", ok, time.monotonic() - t0, 1.0)


def _diag_entry(arr, a, x, kind):
    return arr.get(a, a - x) if kind == "r" else arr.get(a + x, a)


def _ledger_violations(arr, params) -> list:
    """Per-line sum identities and partial-sum inequality ledger."""
    n, p, g, alpha = params.n, params.p, params.gamma, params.alpha
    bad = []
    for a in range(n):
        for i in range(p):
            if _diag_entry(arr, a, 2 * i, "r") + _diag_entry(arr, a, 2 * i + 1, "r") != 1:
                bad.append(("row-i", a, i))
        for j in range(p - 1):
            if (
                _diag_entry(arr, a, 2 * p + 2 * j + 1, "r")
                + _diag_entry(arr, a, 2 * p + 2 * j + 2, "r")
                != -1
            ):
                bad.append(("row-j", a, j))
        if _diag_entry(arr, a, 2 * p, "r") + _diag_entry(arr, a, 2 * p + alpha, "r") != -1:
            bad.append(("row-alpha", a))
        ci, cj, ca = (2 * n - 1, -2 * n + 1, -2 * n + 1) if a == 0 else (-1, 1, 1)
        for i in range(p):
            if _diag_entry(arr, a, 2 * i, "c") + _diag_entry(arr, a, 2 * i + 1, "c") != ci:
                bad.append(("col-i", a, i))
        for j in range(p - 1):
            if (
                _diag_entry(arr, a, 2 * p + 2 * j + 1, "c")
                + _diag_entry(arr, a, 2 * p + 2 * j + 2, "c")
                != cj
            ):
                bad.append(("col-j", a, j))
        if _diag_entry(arr, a, 2 * p, "c") + _diag_entry(arr, a, 2 * p + alpha, "c") != ca:
            bad.append(("col-alpha", a))

        rs = diagonal_prefix_sums(arr, ("row", a))
        cs = diagonal_prefix_sums(arr, ("col", a))
        for i in range(p):
            if not (4 * p + g) * n > rs[2 * i] >= g * n + 2:
                bad.append(("Range2i", a, i))
        for j in range(p - 1):
            if not 0 > -n > rs[2 * p + 2 * j + 1] > rs[2 * p] + (g + 1) * n:
                bad.append(("Range2j+1", a, j))
        if a != 0:
            for i in range(p):
                if not (4 * p + g) * n > cs[2 * i] >= g * n + 2 - i > 0:
                    bad.append(("Col2i", a, i))
            for j in range(p - 1):
                if not cs[2 * p - 1] > cs[2 * p + 2 * j + 1] > cs[2 * p] + (g + 2) * n:
                    bad.append(("Col2j+1", a, j))
    return bad


def _invariant_prefix_sums_match(arr, base, params) -> bool:
    """Prefix sums at odd, even-j, 2p and 2p+alpha diagonals must not depend
    on the column maps (they equal the identity-map array's sums)."""
    n, p, alpha = params.n, params.p, params.alpha
    idx = (
        [2 * i + 1 for i in range(p)]
        + [2 * p + 2 * j + 2 for j in range(p - 1)]
        + [2 * p, 2 * p + alpha]
    )
    for a in range(n):
        for kind in ("row", "col"):
            sa = diagonal_prefix_sums(arr, (kind, a))
            sb = diagonal_prefix_sums(base, (kind, a))
            if any(sa[x] != sb[x] for x in idx):
                return False
    return True


def test_criterion_2_shifted_property_sweep():
    t0 = time.monotonic()
    rng = random.Random(SEED)
    failures = []
    checked = 0
    for n in range(12, 26):
        for p in (1, 2, 3):
            if 4 * p > n:
                continue
            fis = list(permutations(range(p)))
            fjs = list(permutations(range(p - 1)))
            for gamma in (1, 3):
                for alpha in range(2 * p - 1, n - 2 * p):
                    if math.gcd(n, alpha) != 1:
                        continue
                    pairs = {(rng.choice(fis), rng.choice(fjs)) for _ in range(20)}
                    base = build_support_shifted(
                        Params(
                            n=n, p=p, gamma=gamma, alpha=alpha,
                            f_I=tuple(range(p)), f_J=tuple(range(p - 1)),
                        )
                    )
                    for f_I, f_J in pairs:
                        params = Params(
                            n=n, p=p, gamma=gamma, alpha=alpha, f_I=f_I, f_J=f_J
                        )
                        arr = build_support_shifted(params)
                        checked += 1
                        report = check_support_shifted(arr, n, p, gamma)
                        if not report.ok:
                            failures.append((n, p, gamma, alpha, report.failed()))
                            continue
                        if not _invariant_prefix_sums_match(arr, base, params):
                            failures.append((n, p, gamma, alpha, "prefix-sum invariance"))
                        failures.extend(
                            (n, p, gamma, alpha, v) for v in _ledger_violations(arr, params)
                        )
    ok = not failures and checked > 1000
    if failures:
        print("first failures:", failures[:5])
    _report(
        f"2 shifted property sweep ({checked} arrays)", ok, time.monotonic() - t0, 60.0
    )


def test_criterion_3_full_pipeline():
    t0 = time.monotonic()
    failures = []
    for n, p in [(9, 1), (13, 1), (13, 2), (17, 1), (17, 2), (17, 3), (21, 4)]:
        result = construct_full(n, p)
        arr = result.array
        k = result.params.k
        modulus = result.params.full_modulus
        if not check_heffter(arr, k, modulus, integer=True).ok:
            failures.append((n, p, "heffter"))
        if not check_simple(arr, natural_orderings(arr, reverse_last_row=False), modulus).ok:
            failures.append((n, p, "globally simple"))
        if not check_simple(arr, result.scheme, modulus).ok:
            failures.append((n, p, "scheme simple"))
        if not check_compatible(compose_cycle(arr, result.scheme), n * k):
            failures.append((n, p, "compatible"))
    _report("3 full pipeline (7 parameter sets)", not failures, time.monotonic() - t0, 60.0)


def test_criterion_4_embedding_certificate():
    t0 = time.monotonic()
    result = construct_full(9, 1)
    modulus = result.params.full_modulus
    emb = develop(base_faces(result.array, result.scheme, modulus), modulus)
    cert = verify_surface(emb)
    ok = (
        cert.ok
        and modulus == 127
        and (cert.V, cert.E, cert.F) == (127, 8001, 2286)
        and cert.V - cert.E + cert.F == -5588
        and cert.genus == 2795
    )
    _report("4 embedding certificate (9,1)", ok, time.monotonic() - t0, 30.0)


def _is_prime(n: int) -> bool:
    return n > 1 and all(n % d for d in range(2, int(n**0.5) + 1))


def test_criterion_5_alpha_law():
    t0 = time.monotonic()
    failures = []
    for n in range(9, 202, 4):
        p = 1
        while 4 * p + 3 < n:
            got = find_alpha(n, p)
            # independent exhaustive scan of the defining conditions
            want = next(
                (
                    a
                    for a in range(2 * p + 2, n - 1 - 2 * p)
                    if math.gcd(n, a) == 1
                    and math.gcd(n, a - 2 * p - 1) == 1
                    and math.gcd(n, n - 1 - a - 2 * p) == 1
                ),
                None,
            )
            if got != want:
                failures.append((n, p, "scan", got, want))
            if n % 3 == 0 and p % 3 != 1 and got is not None:
                failures.append((n, p, "mod-3 exclusion"))
            if n == 4 * p + 5 and got != 2 * p + 2:
                failures.append((n, p, "n=4p+5"))
            if _is_prime(n) and got is None:
                failures.append((n, p, "prime"))
            if got is not None and not alpha_conditions(n, p, got):
                failures.append((n, p, "conditions"))
            p += 1
    _report("5 alpha law (n <= 201)", not failures, time.monotonic() - t0, 60.0)


def test_criterion_6_census_17_3():
    t0 = time.monotonic()
    report = run_census(17, 3)
    all_pairs_distinct = report.distinct == report.generated
    ok = (
        len(enumerate_maps(3)) == 4
        and report.valid_shifts >= 15
        and all(e.verified for e in report.entries)
        and all_pairs_distinct
        and report.distinct >= 60
        and report.bound_paper == 15 * derangements(1) ** 2 == 0
        and report.distinct > report.bound_paper
    )
    _report("6 census (17,3)", ok, time.monotonic() - t0, 300.0)


def test_criterion_7_parity_truth_table():
    t0 = time.monotonic()
    failures = []
    for m in range(1, 37):
        for s in range(1, 37 // m + 1):
            ms = m * s
            for n in range(1, 37):
                if ms % n:
                    continue
                t = ms // n
                got = check_parity_necessary(m, n, s, t)
                want = (
                    (m % 2 and n % 2 and s % 2 and t % 2)
                    or (m % 2 and n % 2 == 0 and s % 2 == 0)
                    or (m % 2 == 0 and n % 2 and t % 2 == 0)
                )
                if got != bool(want):
                    failures.append((m, n, s, t))
    # every compatible array the suite constructs satisfies the condition
    for n, p in [(9, 1), (13, 2), (17, 3)]:
        k = 4 * p + 3
        if not check_parity_necessary(n, n, k, k):
            failures.append(("constructed", n, p))
    _report("7 parity truth table (ms=nt<=36)", not failures, time.monotonic() - t0, 60.0)


def test_criterion_8_oracle_agreement():
    t0 = time.monotonic()
    rng = random.Random(SEED)
    failures = 0
    # 10^4 random lines: naive partial-sum distinctness vs the verify module
    for _ in range(10_000):
        length = rng.randint(1, 12)
        modulus = rng.randrange(3, 60, 2)
        entries = [rng.choice([-1, 1]) * rng.randint(1, modulus - 1) for _ in range(length)]
        arr = SparseSquareArray(length)
        for idx, e in enumerate(entries):
            arr.put(0, idx, e)
        order = arr.row_cells(0)
        profile = partial_sums(arr, ("row", 0), order, modulus)
        if profile.distinct() != naive_distinct_partial_sums(entries, modulus):
            failures += 1
    # 10^3 random permutation pairs: naive composition vs cycle decomposition
    for _ in range(1_000):
        size = rng.randint(1, 40)
        ground = list(range(size))
        pa = dict(zip(ground, rng.sample(ground, size)))
        pb = dict(zip(ground, rng.sample(ground, size)))
        composed = {x: pb[pa[x]] for x in ground}
        fast = tuple(sorted(len(c) for c in cycle_decomposition(composed)))
        if fast != naive_compose_cycles(pa, pb):
            failures += 1
    for n, k in [(3, 3), (4, 3)]:
        arr = brute_force_heffter(n, k)
        if arr is None or not check_heffter(arr, k, 2 * n * k + 1).ok:
            failures += 1
    _report("8 oracle agreement", failures == 0, time.monotonic() - t0, 120.0)
