"""Command-line front door: construct, verify, embed and census subcommands.

Array files are line-based structured text so third-party tools can produce
them: a `heffter-array 1` magic line, `key value` header lines (n, k,
modulus, optional provenance keys) and one `cell ROW COL VALUE` line per
filled cell, sorted by (row, col).

Exit codes: 0 success, 1 verification failure, 2 invalid parameters,
3 budget or guardrail exceeded.
"""

from __future__ import annotations

import argparse
import os
import sys
from dataclasses import dataclass

from .census import run_census, write_census_csv
from .construct import (
    ConstructionError,
    construct_full,
)
from .core import HeffterError, ParameterError, SparseSquareArray
from .embed import GuardrailError, base_faces, develop, verify_surface, write_faces
from .oracle import BudgetExceeded
from .verify import (
    check_compatible,
    check_heffter,
    check_simple,
    compose_cycle,
    natural_orderings,
)

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_BAD_PARAMS = 2
EXIT_BUDGET = 3

MAGIC = "heffter-array 1"


@dataclass
class ArrayDocument:
    """Serialized form of a constructed array plus optional provenance."""

    n: int
    k: int
    modulus: int
    cells: list[tuple[int, int, int]]
    provenance: dict[str, str] | None = None

    @classmethod
    def from_array(
        cls, array: SparseSquareArray, k: int, modulus: int, provenance: dict | None = None
    ) -> "ArrayDocument":
        cells = sorted((r, c, v) for (r, c), v in array.entries.items())
        prov = {key: str(val) for key, val in provenance.items()} if provenance else None
        return cls(n=array.n, k=k, modulus=modulus, cells=cells, provenance=prov)

    def to_array(self) -> SparseSquareArray:
        arr = SparseSquareArray(self.n)
        for r, c, v in self.cells:
            arr.put(r, c, v)
        return arr

    def dump(self) -> str:
        lines = [MAGIC, f"n {self.n}", f"k {self.k}", f"modulus {self.modulus}"]
        for key, val in (self.provenance or {}).items():
            lines.append(f"provenance.{key} {val}")
        for r, c, v in self.cells:
            lines.append(f"cell {r} {c} {v}")
        return "\n".join(lines) + "\n"

    @classmethod
    def parse(cls, text: str) -> "ArrayDocument":
        lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
        if not lines or lines[0] != MAGIC:
            raise ParameterError(f"not an array document (missing '{MAGIC}' header)")
        header: dict[str, int] = {}
        provenance: dict[str, str] = {}
        cells: list[tuple[int, int, int]] = []
        for ln in lines[1:]:
            parts = ln.split()
            if parts[0] == "cell":
                if len(parts) != 4:
                    raise ParameterError(f"malformed cell line: {ln!r}")
                cells.append((int(parts[1]), int(parts[2]), int(parts[3])))
            elif parts[0].startswith("provenance."):
                provenance[parts[0][len("provenance.") :]] = " ".join(parts[1:])
            elif parts[0] in ("n", "k", "modulus") and len(parts) == 2:
                header[parts[0]] = int(parts[1])
            else:
                raise ParameterError(f"unrecognized line: {ln!r}")
        for key in ("n", "k", "modulus"):
            if key not in header:
                raise ParameterError(f"array document missing '{key}' header")
        return cls(
            n=header["n"],
            k=header["k"],
            modulus=header["modulus"],
            cells=sorted(cells),
            provenance=provenance or None,
        )


def _parse_map(text: str) -> tuple[int, ...]:
    text = text.strip()
    if not text or text == "-":
        return ()
    return tuple(int(x) for x in text.split(","))


def worker_count(requested: int = 1) -> int:
    """Requested worker count capped by the HEFFTER_THREADS environment variable."""
    cap = os.environ.get("HEFFTER_THREADS")
    if cap is None:
        return requested
    try:
        cap_val = int(cap)
    except ValueError:
        raise ParameterError(f"HEFFTER_THREADS must be an integer, got {cap!r}")
    if cap_val < 1:
        raise ParameterError("HEFFTER_THREADS must be at least 1")
    return min(requested, cap_val)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="heffter",
        description="Construct, verify, count and embed square Heffter arrays.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_con = sub.add_parser("construct", help="build an H(n;4p+3) with compatible orderings")
    p_con.add_argument("--n", type=int, required=True)
    p_con.add_argument("--p", type=int, required=True)
    p_con.add_argument("--alpha", type=int, default=None)
    p_con.add_argument("--shift", type=int, default=None)
    p_con.add_argument("--fi", type=str, default=None, help="comma-separated images, e.g. 0,2,1")
    p_con.add_argument("--fj", type=str, default=None)
    p_con.add_argument("--out", type=str, default=None, help="output file (default stdout)")

    p_ver = sub.add_parser("verify", help="verify an array document")
    p_ver.add_argument("array_file")
    p_ver.add_argument("--modulus", type=int, default=None)

    p_emb = sub.add_parser("embed", help="develop an array into faces and certify the surface")
    p_emb.add_argument("array_file")
    p_emb.add_argument("--out", required=True, help="faces output file")
    p_emb.add_argument("--force-large", action="store_true")

    p_cen = sub.add_parser("census", help="enumerate, verify and classify construction variants")
    p_cen.add_argument("--n", type=int, required=True)
    p_cen.add_argument("--p", type=int, required=True)
    p_cen.add_argument("--max-pairs", type=int, default=None)
    p_cen.add_argument("--out", type=str, default=None, help="CSV output file (default stdout)")
    return parser


def _cmd_construct(args) -> int:
    f_I = _parse_map(args.fi) if args.fi is not None else None
    f_J = _parse_map(args.fj) if args.fj is not None else None
    result = construct_full(
        args.n, args.p, f_I=f_I, f_J=f_J, shift=args.shift, alpha=args.alpha
    )
    params = result.params
    doc = ArrayDocument.from_array(
        result.array,
        k=params.k,
        modulus=params.full_modulus,
        provenance={
            "p": params.p,
            "gamma": params.gamma,
            "alpha": params.alpha,
            "fi": ",".join(map(str, params.f_I)) or "-",
            "fj": ",".join(map(str, params.f_J)) or "-",
            "shift": result.shift,
        },
    )
    text = doc.dump()
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _cmd_verify(args) -> int:
    with open(args.array_file, encoding="utf-8") as fh:
        doc = ArrayDocument.parse(fh.read())
    modulus = args.modulus if args.modulus is not None else doc.modulus
    array = doc.to_array()
    failures = []

    heffter = check_heffter(array, doc.k, modulus)
    for name, res in heffter.checks.items():
        verdict = "PASS" if res.passed else "FAIL"
        print(f"{verdict} heffter.{name}" + (f"  ({res.detail})" if res.detail else ""))
        if res.required and not res.passed:
            failures.append(name)

    plain = natural_orderings(array, reverse_last_row=False)
    simple_plain = check_simple(array, plain, modulus)
    print(f"{'PASS' if simple_plain.ok else 'FAIL'} globally_simple"
          + (f"  (first failing line: {simple_plain.failed()[0]})" if not simple_plain.ok else ""))
    if not simple_plain.ok:
        failures.append("globally_simple")

    scheme = natural_orderings(array)
    simple_compat = check_simple(array, scheme, modulus)
    print(f"{'PASS' if simple_compat.ok else 'FAIL'} compat_scheme_simple")
    if not simple_compat.ok:
        failures.append("compat_scheme_simple")

    cycle = compose_cycle(array, scheme)
    compat = check_compatible(cycle, len(array))
    print(f"{'PASS' if compat else 'FAIL'} compatible"
          + ("" if compat else f"  (cycle lengths {cycle.lengths})"))
    if not compat:
        failures.append("compatible")

    return EXIT_VERIFY_FAILED if failures else EXIT_OK


def _cmd_embed(args) -> int:
    with open(args.array_file, encoding="utf-8") as fh:
        doc = ArrayDocument.parse(fh.read())
    array = doc.to_array()
    scheme = natural_orderings(array)
    faces = base_faces(array, scheme, doc.modulus)
    emb = develop(faces, doc.modulus)
    emb.provenance = doc.provenance
    cert = verify_surface(emb, force_large=args.force_large)
    write_faces(emb, args.out)
    print(f"edge_cover_ok {cert.edge_cover_ok}")
    print(f"vertex_links_single_cycle {cert.vertex_links_single_cycle}")
    print(f"orientable {cert.orientable}")
    print(f"V {cert.V}")
    print(f"E {cert.E}")
    print(f"F {cert.F}")
    print(f"genus {cert.genus}")
    if cert.detail:
        print(f"detail {cert.detail}")
    return EXIT_OK if cert.ok else EXIT_VERIFY_FAILED


def _cmd_census(args) -> int:
    report = run_census(args.n, args.p, max_pairs=args.max_pairs)
    target = args.out or "/dev/stdout"
    write_census_csv(report, target)
    print(
        f"# generated={report.generated} distinct={report.distinct} "
        f"valid_shifts={report.valid_shifts} bound_paper={report.bound_paper} "
        f"embedding_bound={report.embedding_bound}",
        file=sys.stderr,
    )
    return EXIT_OK


def run(argv: list[str]) -> int:
    """Parse argv, dispatch, and map errors to exit codes."""
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "construct":
            return _cmd_construct(args)
        if args.command == "verify":
            return _cmd_verify(args)
        if args.command == "embed":
            return _cmd_embed(args)
        if args.command == "census":
            return _cmd_census(args)
        raise AssertionError(f"unhandled command {args.command}")
    except (BudgetExceeded, GuardrailError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (ParameterError, ConstructionError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_PARAMS
    except HeffterError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_PARAMS


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
