"""Command-line front end.

Subcommands:
    exclude    one exclusion run for a Weil polynomial or dataset file
    reproduce  recompute a whole table and compare to the published values
    oracle     enumerate a curve file: count / zeta / soundness
    ingest     convert a Hecke dataset file into a Weil polynomial file
    count      point counts / new-point sequences from a Weil polynomial

All output is TSV with fixed integer formatting; rows are emitted in a
fixed order regardless of --jobs, so runs are byte-identical.  Exit codes:
0 success (Excluded for `exclude`), 10 Inconclusive, 11 table had skipped
rows, 1 table mismatch or failed soundness, 2 bad input.
"""

from __future__ import annotations

import argparse
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

from .criterion import bound as criterion_bound
from .criterion import exclude as run_exclude
from .ingest import DatasetError, assemble, load_dataset
from .oracle import (
    BudgetExceededError,
    HyperellipticCurve,
    InvalidMapError,
    SingularModelError,
    ValidationMismatchError,
    canonical_involution,
    charpoly_from_curve,
    count_points,
    parse_curve_file,
    verify_map,
)
from .tables import TABLES, TableRow
from .weil import IntPolynomial, PrimePower, WeilPolynomial, weil_validate
from .zeta import new_points, p_sequence, point_count_series

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_USAGE = 2
EXIT_INCONCLUSIVE = 10
EXIT_SKIPPED = 11


class CliError(Exception):
    """Input problem reportable to the user (exit 2)."""


def _write_row(*cells) -> None:
    sys.stdout.write("\t".join(str(c) for c in cells) + "\n")


def format_weil_line(W: WeilPolynomial) -> str:
    coeffs = ",".join(str(c) for c in W.poly.coeffs)
    return f"weil q={W.q} g={W.genus} coeffs={coeffs}"


def parse_weil_line(text: str) -> WeilPolynomial:
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        if tokens[0] != "weil":
            raise CliError(f"line {lineno}: expected a 'weil ...' line")
        kv = dict(tok.split("=", 1) for tok in tokens[1:])
        try:
            q = int(kv["q"])
            g = int(kv["g"])
            coeffs = tuple(int(c) for c in kv["coeffs"].split(","))
        except (KeyError, ValueError) as exc:
            raise CliError(f"line {lineno}: bad weil line: {exc}") from exc
        return WeilPolynomial(q=q, genus=g, poly=IntPolynomial(coeffs))
    raise CliError("no weil line found")


def _load_weil_input(args) -> tuple[str, WeilPolynomial]:
    sources = [s for s in (args.dataset, args.weil, args.coeffs) if s is not None]
    if len(sources) != 1:
        raise CliError("supply exactly one of --dataset, --weil, --coeffs")
    if args.dataset is not None:
        path = Path(args.dataset)
        if not path.exists():
            raise CliError(f"dataset file not found: {path}")
        ds = load_dataset(path)
        return args.curve_id or ds.curve_id, assemble(ds)
    if args.weil is not None:
        path = Path(args.weil)
        if not path.exists():
            raise CliError(f"weil file not found: {path}")
        W = parse_weil_line(path.read_text(encoding="utf-8"))
        return args.curve_id or path.stem, W
    if args.q is None:
        raise CliError("--coeffs needs --q")
    coeffs = tuple(int(c) for c in args.coeffs.split(","))
    poly = IntPolynomial(coeffs)
    if poly.degree < 2 or poly.degree % 2:
        raise CliError(f"coefficients give degree {poly.degree}; need even degree >= 4")
    W = WeilPolynomial(q=args.q, genus=poly.degree // 2, poly=poly)
    problem = weil_validate(W)
    if problem is not None:
        raise CliError(f"not a Weil polynomial: {problem}")
    return args.curve_id or "inline", W


def _exact_partial_scan(W: WeilPolynomial, pp: PrimePower, n_max: int, B: int):
    """Arbitrary-precision path: exact counts, exact R(n), reduced at the end."""
    series = point_count_series(W, n_max)
    total = 0
    sums = []
    crossing = None
    for n in range(1, n_max + 1):
        total += new_points(series, n) % pp.modulus
        sums.append(total)
        if total > B:
            crossing = n
            break
    return sums, crossing


def cmd_exclude(args) -> int:
    curve_id, W = _load_weil_input(args)
    pp = PrimePower.parse(args.prime_power)
    report = run_exclude(W, pp, n_max=args.nmax, override_bound=args.bound_override)
    if args.exact:
        B = report.bound
        sums, crossing = _exact_partial_scan(W, pp, args.nmax, B)
        if tuple(sums) != report.partial_sums or crossing != report.crossing_index:
            raise CliError("exact and modular paths disagree (corrupt input?)")
    n_star = report.crossing_index if report.excluded else "-"
    total = report.sum_at_crossing if report.excluded else report.final_sum
    _write_row(curve_id, W.genus, W.q, pp, report.verdict, n_star, total, report.bound)
    return EXIT_OK if report.excluded else EXIT_INCONCLUSIVE


def _fixtures_dir(args) -> Path:
    if args.fixtures is not None:
        return Path(args.fixtures)
    env = os.environ.get("AUTEXCL_FIXTURES")
    if env:
        return Path(env)
    local = Path("fixtures")
    if local.is_dir():
        return local
    packaged = Path(__file__).resolve().parents[2] / "fixtures"
    return packaged if packaged.is_dir() else local


def _reproduce_row(row: TableRow, fixtures: Path, n_max: int):
    """Compute one table row; returns the cells of the output line plus a flag."""
    pp = row.prime_power
    path = fixtures / row.fixture_name
    if not path.exists():
        return (row.curve_id, row.q, str(pp), "-", "-", "-",
                row.expected_n_star or "-", row.expected_sum or "-", "SKIPPED")
    ds = load_dataset(path)
    W = assemble(ds)
    if row.expected_genus is not None and W.genus != row.expected_genus:
        return (row.curve_id, row.q, str(pp), W.genus, "-", "-",
                row.expected_n_star or "-", row.expected_sum or "-",
                f"GENUS_MISMATCH({W.genus}!={row.expected_genus})")
    if row.zero_range is not None:
        lo, hi = row.zero_range
        seq = p_sequence(W, pp, hi)
        bad = [n for n in range(lo, hi + 1) if seq.values[n - 1] != 0]
        status = "ZERO_OK" if not bad else f"ZERO_FAIL(first at n={bad[0]})"
        return (row.curve_id, row.q, str(pp), W.genus, "-", "-",
                f"P{pp.modulus}(n)=0", f"{lo}..{hi}", status)
    report = run_exclude(W, pp, n_max=n_max, override_bound=row.override_bound)
    n_star = report.crossing_index if report.excluded else "-"
    total = report.sum_at_crossing if report.excluded else report.final_sum
    if row.expected_n_star is None:
        status = "REPORTED" if report.excluded else "INCONCLUSIVE"
    elif report.excluded and (n_star, total) == (row.expected_n_star, row.expected_sum):
        status = "OK"
    else:
        status = "MISMATCH"
    return (row.curve_id, row.q, str(pp), W.genus, n_star, total,
            row.expected_n_star if row.expected_n_star is not None else "-",
            row.expected_sum if row.expected_sum is not None else "-", status)


def cmd_reproduce(args) -> int:
    if args.table not in TABLES:
        raise CliError(f"unknown table {args.table!r}; choose from {sorted(TABLES)}")
    spec = TABLES[args.table]
    fixtures = _fixtures_dir(args)
    n_max = args.nmax or spec.n_max
    if args.jobs > 1:
        with ThreadPoolExecutor(max_workers=args.jobs) as pool:
            results = list(pool.map(lambda r: _reproduce_row(r, fixtures, n_max), spec.rows))
    else:
        results = [_reproduce_row(r, fixtures, n_max) for r in spec.rows]
    skipped = mismatched = 0
    for cells in results:
        status = cells[-1]
        if status == "SKIPPED":
            skipped += 1
        elif status not in ("OK", "REPORTED", "ZERO_OK", "INCONCLUSIVE"):
            mismatched += 1
        _write_row(*cells)
    if mismatched:
        return EXIT_MISMATCH
    if skipped:
        return EXIT_SKIPPED
    return EXIT_OK


def cmd_oracle(args) -> int:
    path = Path(args.curve)
    if not path.exists():
        raise CliError(f"curve file not found: {path}")
    curve, cmap = parse_curve_file(path.read_text(encoding="utf-8"))
    if args.action == "count":
        for n in range(1, args.nmax + 1):
            _write_row(n, count_points(curve, n))
        return EXIT_OK
    if args.action == "zeta":
        W = charpoly_from_curve(curve)
        sys.stdout.write(format_weil_line(W) + "\n")
        return EXIT_OK
    # soundness: a verified automorphism of order N^m must leave the
    # criterion inconclusive with all partial sums below the bound
    if args.prime_power is None:
        raise CliError("soundness needs --prime-power")
    pp = PrimePower.parse(args.prime_power)
    if cmap is None:
        if not isinstance(curve, HyperellipticCurve):
            raise CliError("soundness on a quartic needs a map line in the curve file")
        cmap = canonical_involution(curve)
    order = verify_map(curve, cmap)
    _write_row("map_order", order)
    if order != pp.modulus:
        _write_row("FAIL", f"map order {order} != {pp.modulus}")
        return EXIT_MISMATCH
    W = charpoly_from_curve(curve)
    report = run_exclude(W, pp, n_max=args.nmax)
    _write_row("verdict", report.verdict)
    _write_row("max_partial_sum", report.final_sum)
    _write_row("bound", report.bound)
    ok = not report.excluded and all(s <= report.bound for s in report.partial_sums)
    _write_row("PASS" if ok else "FAIL")
    return EXIT_OK if ok else EXIT_MISMATCH


def cmd_ingest(args) -> int:
    path = Path(args.dataset)
    if not path.exists():
        raise CliError(f"dataset file not found: {path}")
    ds = load_dataset(path)
    W = assemble(ds)
    line = format_weil_line(W) + "\n"
    if args.out:
        Path(args.out).write_text(line, encoding="utf-8")
    else:
        sys.stdout.write(line)
    return EXIT_OK


def cmd_count(args) -> int:
    _, W = _load_weil_input(args)
    if args.prime_power and not args.exact:
        pp = PrimePower.parse(args.prime_power)
        M = pp.modulus
        series = point_count_series(W, args.nmax, modulus=M)
        for n in range(1, args.nmax + 1):
            _write_row(n, series.count(n), new_points(series, n))
    else:
        series = point_count_series(W, args.nmax)
        M = PrimePower.parse(args.prime_power).modulus if args.prime_power else None
        for n in range(1, args.nmax + 1):
            r = new_points(series, n)
            if M is None:
                _write_row(n, series.count(n), r)
            else:
                _write_row(n, series.count(n) % M, r % M)
    return EXIT_OK


def _add_weil_input_options(p: argparse.ArgumentParser) -> None:
    p.add_argument("--dataset", help="Hecke dataset file to assemble")
    p.add_argument("--weil", help="file with a 'weil q=.. g=.. coeffs=..' line")
    p.add_argument("--coeffs", help="inline coefficients, ascending, comma-separated")
    p.add_argument("--q", type=int, help="base field size for --coeffs")
    p.add_argument("--curve-id", help="label used in the output row")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="autexcl",
        description="rule out curve automorphism orders from point counts",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("exclude", help="run the order-N^m exclusion test")
    _add_weil_input_options(p)
    p.add_argument("--prime-power", required=True, metavar="N^m")
    p.add_argument("--nmax", type=int, default=300)
    p.add_argument("--bound-override", type=int, default=None, metavar="r")
    group = p.add_mutually_exclusive_group()
    group.add_argument("--mod-only", dest="exact", action="store_false", default=False)
    group.add_argument("--exact", dest="exact", action="store_true",
                       help="cross-check with the arbitrary-precision path")
    p.set_defaults(func=cmd_exclude)

    p = sub.add_parser("reproduce", help="recompute a published table")
    p.add_argument("table", choices=sorted(TABLES))
    p.add_argument("--fixtures", default=None, metavar="DIR")
    p.add_argument("--nmax", type=int, default=None)
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_reproduce)

    p = sub.add_parser("oracle", help="exhaustive counts for a curve file")
    p.add_argument("action", choices=["count", "zeta", "soundness"])
    p.add_argument("--curve", required=True, metavar="FILE")
    p.add_argument("--nmax", type=int, default=None)
    p.add_argument("--prime-power", default=None, metavar="N^m")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("ingest", help="dataset file -> weil polynomial file")
    p.add_argument("dataset")
    p.add_argument("--out", default=None, metavar="FILE")
    p.set_defaults(func=cmd_ingest)

    p = sub.add_parser("count", help="point counts from a Weil polynomial")
    _add_weil_input_options(p)
    p.add_argument("--nmax", type=int, default=20)
    p.add_argument("--prime-power", default=None, metavar="N^m")
    group = p.add_mutually_exclusive_group()
    group.add_argument("--mod-only", dest="exact", action="store_false", default=False)
    group.add_argument("--exact", dest="exact", action="store_true")
    p.set_defaults(func=cmd_count)

    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "command", None) == "oracle" and args.nmax is None:
        args.nmax = 40 if args.action == "soundness" else 4
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (DatasetError, SingularModelError, InvalidMapError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (BudgetExceededError, ValidationMismatchError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def entrypoint() -> None:
    raise SystemExit(main())


if __name__ == "__main__":
    entrypoint()
