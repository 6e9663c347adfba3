"""Command-line front end: ``tubekernels {kernel,symbol,verify,transform}``.

Exit codes: 0 success, 1 verification or accuracy failure, 2 domain error,
3 unsupported operation, 64 usage or parse error.

Input grids are CSV files whose header names the columns:

* kernel / transform points: ``z1_re, z1_im, ..., zn_re, zn_im, w1_re, ..., wn_im``
* symbol grid: ``t1, ..., tn``

Outputs are CSV (grids) or a JSON array of check reports (verify). Unless
``--no-timestamp`` is given, the first line is ``# generated_at: <UTC time>``.
"""

from __future__ import annotations

import argparse
import csv
import datetime as _dt
import io
import json
import math
import sys
from typing import Optional, Sequence

import numpy as np

from .errors import ConvergenceError, DomainError, KernelError, UnsupportedFamilyError
from .kernels import kernel_closed, kernel_integral, paraboloid_kernel_formula
from .quadrature import QuadratureConfig
from .transforms import cayley_ball_to_siegel, phi_siegel_to_paraboloid_tube, pullback_kernel
from .verify import SUITES, run_space, run_suite
from .weights import _PARAM_NAME, Family, SpaceSpec, symbol_closed, symbol_integral

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_DOMAIN = 2
EXIT_UNSUPPORTED = 3
EXIT_USAGE = 64

_QUAD_FIELDS = ("rel_tol", "abs_tol", "max_evals", "mc_samples", "seed")


class UsageError(Exception):
    """Bad command line, config or input file; maps to exit code 64."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


# -- config -------------------------------------------------------------------


def parse_config(text: str, source: str = "<config>") -> tuple[SpaceSpec, dict]:
    """Parse a space config; returns the space and the quadrature overrides."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"{source}: line {exc.lineno}, column {exc.colno}: invalid JSON ({exc.msg})") from None
    if not isinstance(data, dict):
        raise UsageError(f"{source}: top level must be a JSON object")
    fam_name = data.get("family")
    valid = [f.value for f in Family]
    if fam_name not in valid:
        raise UsageError(f"{source}: field 'family': expected one of {valid}, got {fam_name!r}")
    fam = Family(fam_name)
    dim = data.get("dim", 1)
    if isinstance(dim, bool) or not isinstance(dim, int):
        raise UsageError(f"{source}: field 'dim': expected an integer, got {dim!r}")
    pname = _PARAM_NAME[fam]
    param = None
    if pname is not None:
        if pname not in data:
            raise UsageError(f"{source}: field '{pname}': required for family {fam_name}")
        param = data[pname]
        if isinstance(param, bool) or not isinstance(param, (int, float)):
            raise UsageError(f"{source}: field '{pname}': expected a number, got {param!r}")
    extra = set(data) - {"family", "dim", "quadrature"} - ({pname} if pname else set())
    if extra:
        raise UsageError(f"{source}: field '{sorted(extra)[0]}': not recognised")
    try:
        space = SpaceSpec(fam, dim, param)
    except ValueError as exc:
        field = pname if pname and pname in str(exc) else "dim"
        raise UsageError(f"{source}: field '{field}': {exc}") from None
    quad = data.get("quadrature", {})
    if not isinstance(quad, dict):
        raise UsageError(f"{source}: field 'quadrature': expected an object")
    for key, val in quad.items():
        if key not in _QUAD_FIELDS:
            raise UsageError(f"{source}: field 'quadrature.{key}': not recognised")
        if isinstance(val, bool) or not isinstance(val, (int, float)):
            raise UsageError(f"{source}: field 'quadrature.{key}': expected a number")
    return space, dict(quad)


def _load_config(path: str) -> tuple[SpaceSpec, dict]:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read config {path}: {exc.strerror}") from None
    return parse_config(text, path)


def _quad_config(overrides: dict, args) -> QuadratureConfig:
    values = dict(overrides)
    if args.tol is not None:
        values["rel_tol"] = args.tol
    if args.seed is not None:
        values["seed"] = args.seed
    for key in ("max_evals", "mc_samples", "seed"):
        if key in values:
            if float(values[key]) != int(values[key]):
                raise UsageError(f"field 'quadrature.{key}': expected an integer")
            values[key] = int(values[key])
    try:
        return QuadratureConfig(**values)
    except ValueError as exc:
        raise UsageError(f"field 'quadrature': {exc}") from None


# -- grid files ---------------------------------------------------------------


def _read_rows(path: str) -> tuple[list[str], list[list[float]]]:
    try:
        with open(path, newline="", encoding="utf-8") as fh:
            lines = [ln for ln in fh if ln.strip() and not ln.startswith("#")]
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    reader = csv.reader(lines)
    try:
        header = [h.strip() for h in next(reader)]
    except StopIteration:
        raise UsageError(f"{path}: empty file") from None
    rows = []
    for i, rec in enumerate(reader, start=2):
        if len(rec) != len(header):
            raise UsageError(f"{path}: line {i}: expected {len(header)} fields, got {len(rec)}")
        try:
            rows.append([float(x) for x in rec])
        except ValueError:
            raise UsageError(f"{path}: line {i}: non-numeric field") from None
    return header, rows


def point_columns(prefix: str, n: int) -> list[str]:
    return [f"{prefix}{k}_{part}" for k in range(1, n + 1) for part in ("re", "im")]


def _read_pairs(path: str, n: int) -> list[tuple[np.ndarray, np.ndarray]]:
    header, rows = _read_rows(path)
    want = point_columns("z", n) + point_columns("w", n)
    missing = [c for c in want if c not in header]
    if missing:
        raise UsageError(f"{path}: missing column '{missing[0]}'")
    idx = [header.index(c) for c in want]
    out = []
    for row in rows:
        vals = np.array([row[i] for i in idx])
        pts = vals[0::2] + 1j * vals[1::2]
        out.append((pts[:n], pts[n:]))
    return out


def _fmt(x: float) -> str:
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return repr(float(x))


def _timestamp_line() -> str:
    now = _dt.datetime.now(_dt.timezone.utc).replace(microsecond=0)
    return f"# generated_at: {now.isoformat()}\n"


def _write(path: Optional[str], body: str, stamp: bool) -> None:
    text = (_timestamp_line() if stamp else "") + body
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def _csv_text(header: Sequence[str], rows: Sequence[Sequence[str]]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


# -- commands -----------------------------------------------------------------


def cmd_kernel(args) -> int:
    space, quad = _load_config(args.config)
    cfg = _quad_config(quad, args)
    pairs = _read_pairs(args.points, space.dim)
    if args.mode == "numeric" and not space.tube_eligible:
        print(f"{space.label()} is not tube-eligible; use the transform command", file=sys.stderr)
        return EXIT_UNSUPPORTED
    header = point_columns("z", space.dim) + point_columns("w", space.dim) + ["k_re", "k_im", "err_est"]
    rows = []
    status = EXIT_OK
    for i, (z, w) in enumerate(pairs):
        try:
            if args.mode == "closed":
                k, err = kernel_closed(space, z, w), None
            else:
                res = kernel_integral(space, z, w, cfg)
                k, err = complex(res.value), float(res.error_estimate)
                if space.dim <= 2 and not res.converged:
                    print(f"row {i}: quadrature missed the tolerance (error estimate {err:.3e})", file=sys.stderr)
                    status = EXIT_FAILED
        except DomainError as exc:
            print(f"row {i}: {exc}", file=sys.stderr)
            return EXIT_DOMAIN
        except UnsupportedFamilyError as exc:
            print(str(exc), file=sys.stderr)
            return EXIT_UNSUPPORTED
        coords = [_fmt(v) for p in (z, w) for c in p for v in (c.real, c.imag)]
        rows.append(coords + [_fmt(k.real), _fmt(k.imag), "" if err is None else _fmt(err)])
    _write(args.output, _csv_text(header, rows), not args.no_timestamp)
    return status


def cmd_symbol(args) -> int:
    space, quad = _load_config(args.config)
    if not space.tube_eligible:
        print(f"{space.family.value} is not tube-eligible; use pullback", file=sys.stderr)
        return EXIT_UNSUPPORTED
    cfg = _quad_config(quad, args)
    header, rows = _read_rows(args.grid)
    want = [f"t{k}" for k in range(1, space.dim + 1)]
    missing = [c for c in want if c not in header]
    if missing:
        raise UsageError(f"{args.grid}: missing column '{missing[0]}'")
    idx = [header.index(c) for c in want]
    out = []
    status = EXIT_OK
    for i, row in enumerate(rows):
        t = np.array([row[j] for j in idx])
        closed = symbol_closed(space, t)
        if math.isinf(closed):
            out.append([_fmt(x) for x in t] + ["inf", "inf", ""])
            continue
        res = symbol_integral(space, t, cfg)
        num = float(np.real(res.value))
        if space.dim <= 2 and not res.converged:
            print(f"row {i}: quadrature missed the tolerance", file=sys.stderr)
            status = EXIT_FAILED
        out.append([_fmt(x) for x in t] + [_fmt(closed), _fmt(num), _fmt(abs(num - closed) / closed)])
    _write(args.output, _csv_text(want + ["I_closed", "I_numeric", "rel_gap"], out), not args.no_timestamp)
    return status


def cmd_verify(args) -> int:
    seed = 0 if args.seed is None else args.seed
    if args.suite not in SUITES:
        raise UsageError(f"unknown suite {args.suite!r}; expected one of {list(SUITES)}")
    if args.config in (None, "all"):
        cfg = _quad_config({}, args)
        reports = run_suite(None, args.suite, seed, cfg)
    else:
        space, quad = _load_config(args.config)
        cfg = _quad_config(quad, args)
        reports = run_space(space, args.suite, seed, cfg)
    body = json.dumps([r.to_dict() for r in reports], indent=2) + "\n"
    _write(args.output, body, not args.no_timestamp)
    failed = [r for r in reports if not r.passed]
    for r in failed:
        print(f"FAILED {r.check_name} {r.space}: {r.max_rel_err:.3e} > {r.tolerance:.1e}", file=sys.stderr)
    return EXIT_FAILED if failed else EXIT_OK


def cmd_transform(args) -> int:
    """Evaluate the pulled-back kernel on the source domain next to its closed form."""
    space, _ = _load_config(args.config)
    n, a = space.dim, space.param
    if space.family is Family.SIEGEL:
        phi = phi_siegel_to_paraboloid_tube(n)

        def target(x, y):
            return paraboloid_kernel_formula(n, a, x, y)

    elif space.family is Family.BALL:
        phi = cayley_ball_to_siegel(n)
        siegel = SpaceSpec.siegel(n, a)

        def target(x, y):
            return kernel_closed(siegel, x, y)

    else:
        print("transform expects a siegel or ball config (the source domain)", file=sys.stderr)
        return EXIT_UNSUPPORTED
    pairs = _read_pairs(args.points, n)
    header = point_columns("z", n) + point_columns("w", n) + ["k_re", "k_im", "direct_re", "direct_im", "rel_gap"]
    rows = []
    for i, (z, w) in enumerate(pairs):
        try:
            k = pullback_kernel(phi, target, z, w)
            d = kernel_closed(space, z, w)
        except DomainError as exc:
            print(f"row {i}: {exc}", file=sys.stderr)
            return EXIT_DOMAIN
        coords = [_fmt(v) for p in (z, w) for c in p for v in (c.real, c.imag)]
        rows.append(coords + [_fmt(k.real), _fmt(k.imag), _fmt(d.real), _fmt(d.imag), _fmt(abs(k - d) / abs(d))])
    _write(args.output, _csv_text(header, rows), not args.no_timestamp)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="space config JSON (verify also accepts 'all')")
    common.add_argument("--tol", type=float, help="relative tolerance for quadrature")
    common.add_argument("--seed", type=int, help="seed for sampling and Monte Carlo")
    common.add_argument("--output", help="output path (stdout when omitted)")
    common.add_argument("--no-timestamp", action="store_true", help="omit the generated_at header line")

    parser = _Parser(prog="tubekernels", description="Weighted Bergman kernels on tube domains")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    k = sub.add_parser("kernel", parents=[common], help="evaluate K(z, w) on a list of point pairs")
    k.add_argument("--points", required=True, help="CSV with z*_re/z*_im/w*_re/w*_im columns")
    k.add_argument("--mode", choices=("closed", "numeric"), default="closed")
    s = sub.add_parser("symbol", parents=[common], help="closed and numeric symbol I(t) on a grid")
    s.add_argument("--grid", required=True, help="CSV with t1..tn columns")
    v = sub.add_parser("verify", parents=[common], help="run verification checks")
    v.add_argument("--suite", default="all", help=f"one of {', '.join(SUITES)}")
    t = sub.add_parser("transform", parents=[common], help="pull-back evaluation on the Siegel domain or ball")
    t.add_argument("--points", required=True, help="CSV with z*_re/z*_im/w*_re/w*_im columns")
    return parser


_COMMANDS = {"kernel": cmd_kernel, "symbol": cmd_symbol, "verify": cmd_verify, "transform": cmd_transform}


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command != "verify" and not args.config:
        parser.error("--config is required")
    try:
        return _COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"tubekernels: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except UnsupportedFamilyError as exc:
        print(f"tubekernels: {exc}", file=sys.stderr)
        return EXIT_UNSUPPORTED
    except DomainError as exc:
        print(f"tubekernels: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except (ConvergenceError, KernelError) as exc:
        print(f"tubekernels: {exc}", file=sys.stderr)
        return EXIT_FAILED


if __name__ == "__main__":
    sys.exit(main())
