"""Command line interface.

Exit status: 0 when everything ran and every check passed, 1 when a
verification failed, 2 on usage errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass
from pathlib import Path

from . import moments, newton, norms, polyring, search, theorems
from .polyring import ExponentSequence, IntPolynomial

FORMATS = ("json", "jsonl", "csv", "text")


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    grid_size: int | None
    s_max: int
    seed: int
    jobs: int
    output_path: Path | None
    format: str

    def __post_init__(self):
        if self.grid_size is not None and self.grid_size < 2:
            raise UsageError(f"--grid must be at least 2, got {self.grid_size}")
        if self.jobs < 1:
            raise UsageError(f"--jobs must be at least 1, got {self.jobs}")
        if self.format not in FORMATS:
            raise UsageError(f"unknown format {self.format!r}")


def _sequence(text: str) -> ExponentSequence:
    try:
        return ExponentSequence.parse(text)
    except (TypeError, ValueError) as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not a comma separated integer list") from None


def _add_common(p: argparse.ArgumentParser, grid_default=None):
    p.add_argument("--grid", type=int, default=grid_default, help="grid size M")
    p.add_argument("--s-max", type=int, default=8)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--output", type=Path, default=None)
    p.add_argument("--format", choices=FORMATS, default="json")


def _add_poly_input(p: argparse.ArgumentParser):
    p.add_argument("--s", type=_sequence, help="exponents, e.g. 1,2,4")
    p.add_argument("--coeffs", type=_int_list, help="coefficients a_0,a_1,... (lowest first)")
    p.add_argument("--poly", help='JSON file with {"coeffs": [...]}, or - for stdin')


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="erdos-szekeres",
        description="Exact checks and searches for products prod (1 - z^s_j).",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("expand", help="expand a product")
    p.add_argument("--s", type=_sequence, required=True)
    _add_common(p)

    for name, helptext in (
        ("norms", "exact coefficient norms"),
        ("moments", "power/factorial moments and order of vanishing at 1"),
        ("pte", "Prouhet-Tarry-Escott witness from a +-1 polynomial"),
    ):
        p = sub.add_parser(name, help=helptext)
        _add_poly_input(p)
        _add_common(p)
        if name == "moments":
            p.add_argument("--r-max", type=int, default=None)

    p = sub.add_parser("supnorm", help="certified enclosure of max |p| on |z| = 1")
    _add_poly_input(p)
    _add_common(p)
    p.add_argument("--width", type=float, default=None, help="refine to this width")

    p = sub.add_parser("newton", help="reconstruct an integer multiset from power sums")
    p.add_argument("--power-sums", type=_int_list, required=True)
    _add_common(p)

    p = sub.add_parser("verify", help="check the bounds on one product or a family")
    p.add_argument("--s", type=_sequence)
    p.add_argument("--family", choices=("exhaustive", "random"))
    p.add_argument("--n", type=int, default=3, help="n_max (exhaustive) or n (random)")
    p.add_argument("--count", type=int, default=1000)
    _add_common(p, grid_default=theorems.DEFAULT_GRID)

    p = sub.add_parser("or-check", help="sup-norm squared against twice the l2 norm squared")
    _add_poly_input(p)
    _add_common(p, grid_default=theorems.DEFAULT_GRID)

    p = sub.add_parser("search", help="minimise the sup-norm over exponent sequences")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--strategy", choices=("exhaustive", "local"), default="exhaustive")
    p.add_argument("--iters", type=int, default=2000)
    p.add_argument("--cache", nargs="?", const="", default=None,
                   help="JSONL cache file (default location if no path is given)")
    _add_common(p, grid_default=search.FINE_GRID)

    p = sub.add_parser("sweep", help="search for each n in a range")
    p.add_argument("--n", required=True, help="range such as 1-6, or a single n")
    p.add_argument("--iters", type=int, default=2000)
    p.add_argument("--cache", nargs="?", const="", default=None)
    _add_common(p, grid_default=search.FINE_GRID)
    return parser


def _read_poly(args) -> IntPolynomial:
    given = [x is not None for x in (args.s, args.coeffs, args.poly)]
    if sum(given) != 1:
        raise UsageError("give exactly one of --s, --coeffs, --poly")
    if args.s is not None:
        return polyring.expand_product(args.s)
    if args.coeffs is not None:
        p = IntPolynomial(tuple(args.coeffs))
    else:
        text = sys.stdin.read() if args.poly == "-" else Path(args.poly).read_text()
        try:
            p = IntPolynomial.from_dict(json.loads(text))
        except (ValueError, KeyError, TypeError) as exc:
            raise UsageError(f"cannot read polynomial: {exc}") from None
    if p.is_zero():
        raise UsageError("the zero polynomial is not accepted")
    return p


def _text(obj, indent="") -> str:
    lines = []
    for k, v in obj.items():
        if isinstance(v, dict):
            lines.append(f"{indent}{k}:")
            lines.append(_text(v, indent + "  "))
        else:
            lines.append(f"{indent}{k}: {v}")
    return "\n".join(lines)


def _render(rows: list[dict], fmt: str) -> str:
    if fmt == "json":
        body = rows[0] if len(rows) == 1 else rows
        return json.dumps(body) + "\n"
    if fmt == "jsonl":
        return "".join(json.dumps(r) + "\n" for r in rows)
    if fmt == "csv":
        buf = io.StringIO()
        flat = [{k: json.dumps(v) if isinstance(v, (dict, list)) else v for k, v in r.items()}
                for r in rows]
        writer = csv.DictWriter(buf, fieldnames=list(flat[0]), lineterminator="\n")
        writer.writeheader()
        writer.writerows(flat)
        return buf.getvalue()
    return "\n\n".join(_text(r) for r in rows) + "\n"


def _emit(rows, args, out):
    text = _render(rows, args.format)
    if args.output is not None:
        args.output.parent.mkdir(parents=True, exist_ok=True)
        args.output.write_text(text)
    else:
        out.write(text)


def _parse_range(text: str) -> range:
    try:
        if "-" in text:
            lo, hi = text.split("-", 1)
            return range(int(lo), int(hi) + 1)
        return range(int(text), int(text) + 1)
    except ValueError:
        raise UsageError(f"bad n range {text!r}") from None


def _cache(args):
    if args.cache is None:
        return None
    return search.ResultCache(args.cache or None)


def _dispatch(args, out) -> int:
    cmd = args.command
    if cmd == "expand":
        _emit([expand_dict(args.s)], args, out)
        return 0
    if cmd == "norms":
        _emit([norms.coeff_norms(_read_poly(args)).to_dict()], args, out)
        return 0
    if cmd == "moments":
        _emit([moments_dict(_read_poly(args), args.r_max)], args, out)
        return 0
    if cmd == "supnorm":
        p = _read_poly(args)
        enc = norms.sup_norm_enclosure(p, args.grid)
        status = 0
        if args.width is not None:
            try:
                enc = norms.refine_enclosure(p, enc, args.width)
            except norms.RefinementCapReached as exc:
                print(f"refinement cap reached: {exc}", file=sys.stderr)
                enc, status = exc.enclosure, 1
        _emit([enc.to_dict()], args, out)
        return status
    if cmd == "newton":
        try:
            ms = newton.reconstruct_multiset(args.power_sums)
        except (newton.NotRealizable, newton.TooLargeToFactor) as exc:
            _emit([{"realizable": False, "reason": str(exc)}], args, out)
            return 1
        _emit([{"realizable": True, **ms.to_dict()}], args, out)
        return 0
    if cmd == "pte":
        p = _read_poly(args)
        try:
            w = moments.pte_witness(p)
        except moments.NotPlusMinusOne as exc:
            _emit([{"rejected": True, "reason": str(exc)}], args, out)
            return 0
        _emit([w.to_dict()], args, out)
        return 0
    if cmd == "verify":
        return _verify(args, out)
    if cmd == "or-check":
        p = _read_poly(args)
        report = theorems.verify_or_inequality(args.s if args.s is not None else p, args.grid)
        _emit([report.to_dict()], args, out)
        return 0 if report.upper_ok else 1
    if cmd == "search":
        return _search(args, out)
    if cmd == "sweep":
        records = search.sweep(
            _parse_range(args.n), args.s_max, args.grid, seed=args.seed,
            iters=args.iters, jobs=args.jobs, cache=_cache(args),
        )
        if args.format == "csv":
            rows = list(search.sweep_rows(records))
        else:
            rows = [r.to_dict() for r in records]
        _emit(rows, args, out)
        return 0
    raise UsageError(f"unknown command {cmd}")


def expand_dict(s: ExponentSequence) -> dict:
    return polyring.expand_product(s).to_dict()


def moments_dict(p: IntPolynomial, r_max: int | None = None) -> dict:
    order = moments.vanishing_order_by_moments(p)
    if r_max is None:
        r_max = order
    return {
        "power_moments": [str(x) for x in moments.power_moments(p, r_max)],
        "factorial_moments": [str(x) for x in moments.factorial_moments(p, r_max)],
        "vanishing_order": str(order),
    }


def _verify(args, out) -> int:
    if (args.s is None) == (args.family is None):
        raise UsageError("give exactly one of --s or --family")
    if args.s is not None:
        if args.s.n < 1:
            raise UsageError("--s must contain at least one exponent")
        report = theorems.verify_main_bound(args.s, args.grid)
        _emit([report.to_dict()], args, out)
        return 0 if report.consistent else 1
    if args.family == "exhaustive":
        family = theorems.ExhaustiveFamily(n_max=args.n, s_max=args.s_max)
    else:
        family = theorems.RandomFamily(count=args.count, n=args.n, s_max=args.s_max, seed=args.seed)
    summary = theorems.batch_verify(family, args.grid, jobs=args.jobs)
    rows = [r.to_dict() for r in summary.reports]
    if args.format == "json":
        rows = [summary.to_dict()]
    _emit(rows, args, out)
    print(json.dumps(summary.to_dict()), file=sys.stderr)
    return 0 if summary.ok else 1


def _search(args, out) -> int:
    if args.strategy == "exhaustive":
        key = dict(n=args.n, s_max=args.s_max, M=args.grid, strategy="exhaustive", seed=None)
        run = lambda: search.exhaustive_search(args.n, args.s_max, args.grid, jobs=args.jobs)  # noqa: E731
    else:
        key = dict(n=args.n, s_max=args.s_max, M=args.grid, strategy="local", seed=args.seed)
        run = lambda: search.local_search(  # noqa: E731
            args.n, args.s_max, args.grid, seed=args.seed, iters=args.iters
        )
    try:
        cache = _cache(args)
        record = cache.get_or_run(key, run) if cache is not None else run()
    except search.SearchSpaceTooLarge as exc:
        raise UsageError(str(exc)) from None
    _emit([record.to_dict()], args, out)
    report = theorems.verify_main_bound(record.best_s, args.grid)
    return 0 if report.consistent else 1


def main(argv=None, out=None) -> int:
    out = out if out is not None else sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        RunConfig(
            grid_size=args.grid,
            s_max=args.s_max,
            seed=args.seed,
            jobs=args.jobs,
            output_path=args.output,
            format=args.format,
        )
        return _dispatch(args, out)
    except UsageError as exc:
        print(f"{parser.prog}: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
