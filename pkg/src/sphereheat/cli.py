"""Command-line interface: ``sphereheat {verify,eval,heat,quad,bench}``.

Exit codes: 0 success (all checks pass), 1 verification failures present,
2 usage or computation error.
"""

from __future__ import annotations

import argparse
import csv
import io
import math
import re
import statistics
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from decimal import Decimal, InvalidOperation
from typing import Sequence

from ._common import SphereHeatError, worker_count
from .heatkernel import (
    HeatConfig,
    distance,
    heat_integral,
    heat_series,
    kernel_K,
    truncation_order,
)
from .identities import (
    PARAM_ORDER,
    IdentityId,
    default_grid,
    reports_to_csv,
    reports_to_json,
    verify_grid,
)
from .orthopoly import gegenbauer_eval, jacobi_eval, legendre_eval
from .quadrature import gauss_jacobi_rule

EXIT_OK, EXIT_FAIL, EXIT_ERROR = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def __init__(self, *args, **kwargs):
        super().__init__(*args, **kwargs)
        # let "-1:1:0.5" and "-0.4,0,2" through as values, not flags
        self._negative_number_matcher = re.compile(r"^-\.?\d")

    def error(self, message):
        # one-line diagnostic instead of usage + message
        self.exit(EXIT_ERROR, f"{self.prog}: error: {message}\n")


def _decimal(text: str) -> Decimal:
    try:
        value = Decimal(text.strip())
    except InvalidOperation:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not value.is_finite():
        raise argparse.ArgumentTypeError(f"not a finite number: {text!r}")
    return value


def parse_range(text: str, integer: bool = False) -> list:
    """Parse ``a..b`` (integer, inclusive), ``a:b:step`` (real) or comma lists of either.

    Real ranges are generated in decimal arithmetic, so ``0.1:1.5:0.1``
    yields exactly the 15 decimals 0.1, 0.2, ..., 1.5.
    """
    out: list = []
    for part in text.split(","):
        part = part.strip()
        if not part:
            raise argparse.ArgumentTypeError(f"empty item in {text!r}")
        if ".." in part:
            lo, _, hi = part.partition("..")
            a, b = _decimal(lo), _decimal(hi)
            if a != a.to_integral_value() or b != b.to_integral_value() or b < a:
                raise argparse.ArgumentTypeError(f"malformed integer range {part!r}")
            out.extend(range(int(a), int(b) + 1))
        elif ":" in part:
            pieces = part.split(":")
            if len(pieces) != 3:
                raise argparse.ArgumentTypeError(f"real range needs a:b:step, got {part!r}")
            a, b, step = (_decimal(p) for p in pieces)
            if step <= 0 or b < a:
                raise argparse.ArgumentTypeError(f"malformed real range {part!r}")
            count = int((b - a) / step + Decimal("1e-9")) + 1
            out.extend(float(a + i * step) for i in range(count))
        else:
            out.append(float(_decimal(part)))
    if integer:
        if any(float(v) != int(v) for v in out):
            raise argparse.ArgumentTypeError(f"expected integers in {text!r}")
        out = [int(v) for v in out]
    return out


def _int_range(text):
    return parse_range(text, integer=True)


def _real_range(text):
    return parse_range(text)


def _number(text):
    return float(_decimal(text))


def _count(text):
    value = _decimal(text)
    if value != value.to_integral_value() or value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}")
    return int(value)


def _complex_literal(text: str) -> complex:
    try:
        return complex(text.strip().replace(" ", "").replace("i", "j"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a complex literal: {text!r}") from None


def _point_pairs(text: str) -> list[tuple[complex, complex]]:
    pairs = []
    for chunk in text.split(";"):
        items = chunk.split(",")
        if len(items) != 2:
            raise argparse.ArgumentTypeError(f"expected 'z,w' pairs separated by ';', got {chunk!r}")
        pairs.append((_complex_literal(items[0]), _complex_literal(items[1])))
    return pairs


def _emit(text: str, out: str | None) -> None:
    if out is None or out == "-":
        sys.stdout.write(text)
        sys.stdout.flush()
        return
    with open(out, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)


def _csv_text(header: Sequence[str], rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([repr(v) if isinstance(v, float) else v for v in row])
    return buf.getvalue()


def write_report(reports, fmt: str, destination: str | None) -> None:
    """Write reports as JSON or CSV; identical input gives identical bytes."""
    if not reports:
        raise SphereHeatError("no reports to write")
    if fmt == "json":
        text = reports_to_json(reports)
    elif fmt == "csv":
        text = reports_to_csv(reports)
    else:
        raise SphereHeatError(f"unknown report format {fmt!r}")
    _emit(text, destination)


# --- subcommands -----------------------------------------------------------

GRID_FLAGS = {
    "ell": _int_range,
    "n": _int_range,
    "m": _int_range,
    "theta": _real_range,
    "t": _real_range,
    "s": _real_range,
    "x": _real_range,
    "alpha": _real_range,
    "beta": _real_range,
}


def _cmd_verify(args) -> int:
    identity = IdentityId(args.identity)
    grid = default_grid(identity)
    names = PARAM_ORDER[identity]
    for name in GRID_FLAGS:
        value = getattr(args, name)
        if value is None:
            continue
        if name not in names:
            raise SphereHeatError(f"--{name} does not apply to {identity.value} (parameters: {', '.join(names)})")
        grid[name] = value
    fmt = args.format
    if fmt is None:
        fmt = "csv" if args.out and args.out.lower().endswith(".csv") else "json"
    scale = 2.0 if args.self_test == "perturb" else 1.0
    reports = verify_grid(identity, grid, args.nodes, args.tol_abs, args.tol_rel, prefactor_scale=scale)
    write_report(reports, fmt, args.out)
    failed = sum(not r.pass_ for r in reports)
    print(f"{identity.value}: {len(reports) - failed}/{len(reports)} passed", file=sys.stderr)
    return EXIT_OK if failed == 0 else EXIT_FAIL


def _cmd_eval(args) -> int:
    if args.family == "kernel":
        rows = []
        for d in args.distance:
            k = kernel_K(args.nu, args.degree, 0, math.tan(d))
            rows.append((d, k.real, k.imag))
        _emit(_csv_text(("d", "re", "im"), rows), args.out)
        return EXIT_OK
    xs = args.x if args.x is not None else parse_range("-1:1:0.1")
    if args.family == "jacobi":
        values = [jacobi_eval(args.degree, args.alpha, args.beta, x) for x in xs]
    elif args.family == "gegenbauer":
        values = [gegenbauer_eval(args.degree, args.lam, x) for x in xs]
    else:
        values = [legendre_eval(args.degree, x) for x in xs]
    _emit(_csv_text(("x", "value"), zip(xs, values)), args.out)
    return EXIT_OK


HEAT_HEADER = ("t", "d", "nu", "L", "series_re", "series_im", "integral_re", "integral_im", "abs_diff")


def _heat_row(nu, t, d, z, w, eps, nodes, paper_sign):
    cfg = HeatConfig(nu, t, epsilon=eps, paper_sign=paper_sign)
    L = truncation_order(nu, t, eps, cfg.max_terms)
    series = heat_series(cfg, z, w, L=L)
    integral = heat_integral(cfg, z, w, n_nodes=nodes, L=L)
    return (t, d, nu, L, series.real, series.imag, integral.real, integral.imag, abs(series - integral))


def _cmd_heat(args) -> int:
    if args.points is not None:
        placements = [(distance(z, w), z, w) for z, w in args.points]
    else:
        # z = 0, w = tan d sits at distance exactly d
        placements = [(d, 0j, complex(math.tan(d))) for d in args.distance]
    jobs = [(nu, t, d, z, w) for nu in args.nu for t in args.t for d, z, w in placements]

    def run(job):
        return _heat_row(*job, args.eps, args.nodes, args.paper_sign)

    workers = worker_count()
    if workers > 1 and len(jobs) > 8:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(run, jobs))
    else:
        rows = [run(j) for j in jobs]
    _emit(_csv_text(HEAT_HEADER, rows), args.out)
    return EXIT_OK


def _cmd_quad(args) -> int:
    rule = gauss_jacobi_rule(args.nodes, args.weight)
    rows = [(i, float(x), float(w)) for i, (x, w) in enumerate(zip(rule.nodes, rule.weights))]
    _emit(_csv_text(("index", "node", "weight"), rows), args.out)
    return EXIT_OK


def _cmd_bench(args) -> int:
    rows = []
    for nu in (0, 1, 2):
        for t in (0.1, 0.5):
            d = 0.5
            w = math.tan(d)
            cfg = HeatConfig(nu, t)
            for method, fn in (("heat_series", heat_series), ("heat_integral", heat_integral)):
                fn(cfg, 0, w)
                samples = []
                for _ in range(args.repeats):
                    start = time.perf_counter_ns()
                    fn(cfg, 0, w)
                    samples.append(time.perf_counter_ns() - start)
                stdev = statistics.stdev(samples) if len(samples) > 1 else 0.0
                rows.append((method, f"nu={nu};t={t!r};d={d!r}", statistics.fmean(samples), stdev))
    _emit(_csv_text(("method", "params", "mean_ns", "stddev_ns"), rows), args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="sphereheat", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("verify", help="verify an integral representation over a parameter grid")
    p.add_argument("--identity", required=True, choices=[i.value for i in IdentityId])
    for name, kind in GRID_FLAGS.items():
        p.add_argument(f"--{name}", type=kind, default=None, help="range a..b, a:b:step or comma list")
    p.add_argument("--nodes", type=_count, default=None, help="fixed node count (default: oscillation rule)")
    p.add_argument("--tol-abs", type=_number, default=1e-10)
    p.add_argument("--tol-rel", type=_number, default=1e-9)
    p.add_argument("--format", choices=["json", "csv"], default=None)
    p.add_argument("--self-test", choices=["perturb"], default=None, help="double the Gamma prefactor; must fail")
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("eval", help="tabulate a polynomial family or reproducing kernel")
    p.add_argument("--family", required=True, choices=["jacobi", "gegenbauer", "legendre", "kernel"])
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--alpha", type=_number, default=0.0)
    p.add_argument("--beta", type=_number, default=0.0)
    p.add_argument("--lam", type=_number, default=1.0)
    p.add_argument("--nu", type=int, default=0)
    p.add_argument("--x", type=_real_range, default=None)
    p.add_argument("--distance", type=_real_range, default=[0.2, 0.5, 0.9, 1.2])
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_eval)

    p = sub.add_parser("heat", help="heat kernel table, series vs integral form")
    p.add_argument("--nu", type=_int_range, default=[0, 1, 2, 3])
    p.add_argument("--t", type=_real_range, default=[0.05, 0.1, 0.25, 0.5, 1.0])
    where = p.add_mutually_exclusive_group()
    where.add_argument("--distance", type=_real_range, default=[0.2, 0.5, 0.9, 1.2])
    where.add_argument("--points", type=_point_pairs, default=None, help="'z0,w0;z1,w1' with x+yi literals")
    p.add_argument("--eps", type=_number, default=1e-12)
    p.add_argument("--nodes", type=_count, default=None)
    p.add_argument("--paper-sign", action="store_true", help="use the printed exp(+nu t) factor")
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_heat)

    p = sub.add_parser("quad", help="dump a Gauss rule for (1 - v^2)^a as CSV")
    p.add_argument("--weight", type=_number, required=True)
    p.add_argument("--nodes", type=_count, required=True)
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_quad)

    p = sub.add_parser("bench", help="time series vs integral heat kernel evaluation")
    p.add_argument("--repeats", type=_count, default=30)
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_bench)
    return parser


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (SphereHeatError, ValueError, ArithmeticError, OSError) as exc:
        print(f"sphereheat {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_ERROR


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()

