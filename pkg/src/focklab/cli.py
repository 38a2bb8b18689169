"""``focklab`` command line: verification suites, kernel tables, evolution, uncertainty scans.

Exit codes: 0 all checks pass, 1 a check failed, 2 usage or input error,
3 a numerical guard aborted the run.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from pathlib import Path

import numpy as np

from . import symbols
from .basis import FockRep, HermiteRep, rep_from_json_dict
from .errors import NumericalGuardError
from .multipliers import fock_laplacian_residual, uncertainty_scan
from .report import Report
from .suites import DEFAULT_SEED, SUITES, SuiteConfig, UnsupportedConfig, default_pad, evolve_chain, run_suite
from .transforms import bargmann
from .weyl import (
    dirac_at_zero,
    gaussian_radial,
    kernel_bessel,
    kernel_series,
    laguerre_coeffs,
    laguerre_symbol,
    reproducing_kernel,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_GUARD = 0, 1, 2, 3


class UsageError(Exception):
    """Bad flags or malformed input files; maps to exit code 2."""


def _hex(text: str) -> int:
    try:
        value = int(text, 16)
    except ValueError:
        raise argparse.ArgumentTypeError(f"seed must be hexadecimal, got {text!r}") from None
    if value < 0:
        raise argparse.ArgumentTypeError("seed must be non-negative")
    return value


def _float_list(text: str) -> list[float]:
    try:
        return [float(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from None


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n", type=int, default=1, help="dimension (default 1)")
    common.add_argument("--degree", type=int, default=None, help="truncation degree N (suite default if omitted)")
    common.add_argument("--quad", type=int, default=None, help="quadrature order Q (suite default if omitted)")
    common.add_argument("--tol", type=float, default=None, help="replaces the default error-bound tolerances")
    common.add_argument("--seed", type=_hex, default=DEFAULT_SEED, help="hex seed (default 5EED)")
    common.add_argument("--out", type=Path, default=None, help="output file (default stdout)")
    common.add_argument("--json", action="store_true", help="print the effective settings as JSON first")

    p = argparse.ArgumentParser(
        prog="focklab",
        description="Verification suites, kernel tables, evolution and uncertainty scans.",
        epilog="exit codes: 0 pass, 1 check failure, 2 usage or input error, 3 numerical guard",
    )
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", parents=[common], help="run a named verification suite")
    v.add_argument("--suite", required=True, help="one of: " + ", ".join(SUITES))

    k = sub.add_parser("kernel", parents=[common], help="tabulate a radial Weyl kernel by two formulas")
    k.add_argument("--symbol", default="gaussian", help="gaussian, dirac or laguerre (default gaussian)")
    k.add_argument("--c", type=float, default=1.0, help="gaussian amplitude c in c exp(-a|z|^2)")
    k.add_argument("--a", type=float, default=0.5, help="gaussian rate a (default 0.5)")
    k.add_argument("--k", type=int, default=0, help="laguerre index")
    k.add_argument("--kmax", type=int, default=80, help="terms in the Laguerre series (default 80)")
    k.add_argument("--grid", type=Path, required=True, help="probe CSV with z_re,z_im,w_re,w_im")

    e = sub.add_parser("evolve", parents=[common], help="apply the free Schrodinger group to a Fock rep")
    e.add_argument("--input", type=Path, required=True, help="coefficient JSON file")
    e.add_argument("--t", type=_float_list, required=True, help="comma-separated times, applied in turn")
    e.add_argument("--pad", type=int, default=None, help="degree added per step (default 96 for n=1, 32 otherwise)")
    e.add_argument("--out-dir", type=Path, default=None, help="directory for evolved coefficient files")

    u = sub.add_parser("uncertainty", parents=[common], help="norm scans of S_phi and S~_phi")
    u.add_argument("--m", required=True, help="builtin symbol: " + ", ".join(symbols.BUILTIN_NAMES))
    u.add_argument("--degrees", type=_int_list, default=[8, 16, 32, 48], help="degree ladder (default 8,16,32,48)")
    u.add_argument("--t-param", type=float, default=0.5, help="time for the schrodinger symbol")
    return p


def _settings(args) -> dict:
    skip = {"out", "json", "grid", "input", "out_dir"}
    out = {}
    for key, val in sorted(vars(args).items()):
        if key in skip:
            continue
        out[key] = val
    return out


def _emit(text: str, path: Path | None) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def _finish(report: Report, args) -> int:
    _emit(report.to_json(), args.out)
    stream = sys.stdout if args.out is not None else sys.stderr
    for line in report.summary_lines():
        print(line, file=stream)
    return EXIT_OK if report.passed else EXIT_FAIL


# ------------------------------------------------------------ verify

def cmd_verify(args) -> int:
    if args.suite not in SUITES:
        raise UsageError(f"unknown suite {args.suite!r}; choose from {', '.join(SUITES)}")
    cfg = SuiteConfig(args.suite, args.n, args.degree, args.quad, args.tol, args.seed)
    try:
        report = run_suite(cfg)
    except UnsupportedConfig as exc:
        raise UsageError(str(exc)) from None
    return _finish(report, args)


# ------------------------------------------------------------ kernel

def _grid_columns(n: int) -> list[str]:
    if n == 1:
        return ["z_re", "z_im", "w_re", "w_im"]
    return [f"{v}{j}_{p}" for v in "zw" for j in range(1, n + 1) for p in ("re", "im")]


def read_probe_grid(path: Path, n: int) -> tuple[np.ndarray, np.ndarray]:
    """Read ``(z, w)`` probe pairs; raises UsageError listing every malformed line."""
    cols = _grid_columns(n)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read grid: {exc}") from None
    rows, errors = [], []
    for lineno, row in enumerate(csv.reader(io.StringIO(text)), start=1):
        if not row or all(not c.strip() for c in row):
            continue
        if [c.strip() for c in row] == cols:
            continue
        if len(row) != len(cols):
            errors.append(f"line {lineno}: expected {len(cols)} fields, got {len(row)}")
            continue
        try:
            vals = [float(c) for c in row]
        except ValueError:
            errors.append(f"line {lineno}: non-numeric field in {row!r}")
            continue
        if not all(math.isfinite(x) for x in vals):
            errors.append(f"line {lineno}: non-finite value")
            continue
        rows.append(vals)
    if errors:
        raise UsageError("malformed probe grid:\n  " + "\n  ".join(errors))
    data = np.array(rows, dtype=float).reshape(-1, 4 * n)
    z = data[:, 0:2 * n:2] + 1j * data[:, 1:2 * n:2]
    w = data[:, 2 * n::2] + 1j * data[:, 2 * n + 1::2]
    return z, w


def _fmt(x: float) -> str:
    return f"{x:.16e}"  # fixed scientific, 17 significant digits


def cmd_kernel(args) -> int:
    n = args.n
    if n < 1:
        raise UsageError("n must be positive")
    z, w = read_probe_grid(args.grid, n)
    if args.symbol == "gaussian":
        if args.a <= -0.25:
            raise UsageError("the gaussian rate must exceed -1/4")
        sigma = gaussian_radial(args.c, args.a, n)
    elif args.symbol == "laguerre":
        if args.k < 0:
            raise UsageError("laguerre index must be non-negative")
        sigma = laguerre_symbol(args.k, n)
    elif args.symbol == "dirac":
        sigma = dirac_at_zero(n)
    else:
        raise UsageError(f"unknown kernel symbol {args.symbol!r}; choose gaussian, laguerre or dirac")
    R = laguerre_coeffs(sigma, args.kmax)
    if z.shape[0]:
        series = np.atleast_1d(kernel_series(R, z, w))
        if sigma.kind == "dirac_at_zero":
            # a point mass has no Bessel integral; the second column is exp(z.w/2)
            second = np.atleast_1d(reproducing_kernel(z, w, n))
        else:
            second = np.atleast_1d(kernel_bessel(sigma, z, w, args.quad or 64))
    else:
        series = second = np.zeros(0, dtype=complex)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(_grid_columns(n) + ["K_series_re", "K_series_im", "K_bessel_re", "K_bessel_im"])
    for zi, wi, a, b in zip(z, w, series, second):
        coords = [v for c in zi for v in (c.real, c.imag)] + [v for c in wi for v in (c.real, c.imag)]
        writer.writerow([_fmt(x) for x in coords + [a.real, a.imag, b.real, b.imag]])
    _emit(buf.getvalue(), args.out)
    disc = float(np.max(np.abs(series - second))) if z.shape[0] else 0.0
    tol = args.tol if args.tol is not None else 1e-7
    stream = sys.stdout if args.out is not None else sys.stderr
    print(f"probes: {z.shape[0]}  max |K_series - K_bessel| = {disc:.3e}  (tolerance {tol:.1e})", file=stream)
    return EXIT_OK if disc <= tol else EXIT_FAIL


# ------------------------------------------------------------ evolve

def _load_fock(path: Path) -> FockRep:
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except OSError as exc:
        raise UsageError(f"cannot read input: {exc}") from None
    except json.JSONDecodeError as exc:
        raise UsageError(f"input is not valid JSON: {exc}") from None
    try:
        rep = rep_from_json_dict(data)
    except (ValueError, KeyError, TypeError) as exc:
        raise UsageError(f"invalid coefficient file: {exc}") from None
    if isinstance(rep, HermiteRep):
        if rep.measure != "lebesgue":
            raise UsageError("evolve needs a fock rep or a lebesgue hermite rep")
        rep = bargmann(rep)
    return rep


def cmd_evolve(args) -> int:
    F = _load_fock(args.input)
    if args.n != F.n and args.n != 1:
        raise UsageError(f"--n {args.n} does not match the input dimension {F.n}")
    ts = list(args.t)
    if not ts:
        raise UsageError("need at least one time")
    pad = default_pad(F.n) if args.pad is None else args.pad
    if pad < 0:
        raise UsageError("pad must be non-negative")
    tol = args.tol
    rng = np.random.default_rng(args.seed)
    r = np.sqrt(rng.uniform(0.0, 1.0, (10, F.n)))
    z = r * np.exp(2j * math.pi * rng.uniform(0.0, 1.0, (10, F.n)))
    states = evolve_chain(F, ts, pad)
    report = Report("evolve", args.seed)
    report.settings = _settings(args)
    total = 0.0
    for i, (t, G) in enumerate(zip(ts, states), start=1):
        total += t
        tag = f"step {i:03d} (t={t:g}, total={total:g})"
        if i > 1:
            direct = evolve_chain(F, [total], pad * i)[0]
            report.upper(f"{tag} group law vs single step", G.max_abs_diff(direct), tol or 1e-6)
        if abs(total) < 1e-15:
            report.upper(f"{tag} returns to the input", G.max_abs_diff(F), tol or 1e-7)
        else:
            res = fock_laplacian_residual(lambda s: evolve_chain(F, [s], pad)[0], total, z)
            report.upper(f"{tag} PDE residual", res, tol or 1e-6)
        if t == 0.0:
            prev = F if i == 1 else states[i - 2]
            report.upper(f"{tag} t = 0 leaves the state unchanged", G.max_abs_diff(prev), tol or 1e-12)
    out_dir = args.out_dir if args.out_dir is not None else (args.out.parent if args.out else Path("."))
    out_dir.mkdir(parents=True, exist_ok=True)
    for i, G in enumerate(states, start=1):
        path = out_dir / f"evolved_{i:03d}.json"
        path.write_text(json.dumps(G.to_json_dict(), sort_keys=True, indent=2) + "\n", encoding="utf-8")
    return _finish(report, args)


# ------------------------------------------------------------ uncertainty

def cmd_uncertainty(args) -> int:
    try:
        m = symbols.builtin(args.m, args.n, args.t_param)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if m.is_constant:
        raise UsageError("a constant symbol is the excluded case: both operators are bounded")
    degrees = list(args.degrees)
    if len(degrees) < 2 or any(b <= a for a, b in zip(degrees, degrees[1:])) or degrees[0] < 0:
        raise UsageError("degrees must be a strictly increasing ladder with at least two rungs")
    s_scan, t_scan = uncertainty_scan(m, degrees)
    report = Report("uncertainty", args.seed)
    report.settings = _settings(args)
    report.add_scan(s_scan)
    report.add_scan(t_scan)
    sup = m.sup_norm
    if sup is None:
        report.flag("S-scan within [0.5, 1.001] x sup|m| (sup|m| is infinite)", False, max(s_scan.norms))
    else:
        report.within("S-scan min within [0.5, 1.001] x sup|m|", min(s_scan.norms), 0.5 * sup, 1.001 * sup)
        report.within("S-scan max within [0.5, 1.001] x sup|m|", max(s_scan.norms), 0.5 * sup, 1.001 * sup)
    report.flag("S~-scan strictly increasing", t_scan.strictly_increasing(), t_scan.norms[-1])
    return _finish(report, args)


COMMANDS = {"verify": cmd_verify, "kernel": cmd_kernel, "evolve": cmd_evolve, "uncertainty": cmd_uncertainty}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if isinstance(exc.code, int) else EXIT_USAGE
    if args.json:
        print(json.dumps(_settings(args), sort_keys=True, default=str))
    try:
        return COMMANDS[args.command](args)
    except (UsageError, ValueError) as exc:
        # library ValueErrors here come from inconsistent settings (e.g. --quad too small)
        print(f"focklab: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except NumericalGuardError as exc:
        print(f"focklab: numerical guard: {exc}", file=sys.stderr)
        return EXIT_GUARD


if __name__ == "__main__":
    sys.exit(main())
