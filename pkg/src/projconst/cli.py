"""Command-line front end.

Usage:
    projconst lambda '{"h":[0.25,0.25,0.25,0.25],"gamma":0,"attains":true}'
    projconst norm FUNCTIONAL VECTOR
    projconst design --target 1.5 --out cert.json
    projconst verify cert.json
    projconst sweep --count 100 --seed 7
    projconst sweep --curve n=4
    projconst gaps '{"h":[],"gamma":1,"attains":false}' --levels 11,101,1001

FUNCTIONAL, VECTOR and certificates are inline JSON, a file path, or ``-``
for stdin.  Exit codes: 0 success, 1 malformed input, 2 domain or
hypothesis violation, 3 internal solver failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import logging
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import serialization as ser
from .closed_form import curve_g, mixed_lambda
from .designer import certificate_problems, design_for_target
from .errors import DomainError, HypothesisViolation, MalformedInput, SolverError
from .functional import HyperplaneFunctional, normalize
from .projection_norm import operator_norm
from .solver import DEFAULT_LEVELS, min_projection_norm, truncation_gaps

EXIT_OK = 0
EXIT_MALFORMED = 1
EXIT_DOMAIN = 2
EXIT_INTERNAL = 3

COMMANDS = ("lambda", "norm", "design", "verify", "sweep", "gaps")
FORMATS = ("json", "csv", "text")
SWEEP_HEADER = ("id", "h", "gamma", "closed_form", "solver", "delta", "attained")


@dataclass(frozen=True)
class RunConfig:
    command: str
    source: str | None = None
    tol: float = 1e-9
    levels: tuple = DEFAULT_LEVELS
    seed: int = 0
    fmt: str = "json"

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise DomainError(f"unknown command {self.command!r}")
        if not 1e-14 < self.tol < 1e-2:
            raise DomainError(f"--tol must lie in (1e-14, 1e-2), got {self.tol!r}")
        if self.fmt not in FORMATS:
            raise DomainError(f"--format must be one of {', '.join(FORMATS)}")


def read_source(source: str) -> str:
    """Inline JSON, ``-`` for stdin, or a path."""
    text = source.strip()
    if text.startswith("{") or text.startswith("["):
        return text
    if source == "-":
        return sys.stdin.read()
    try:
        return Path(source).read_text()
    except OSError as exc:
        raise MalformedInput(f"cannot read {source!r}: {exc}") from exc


def parse_levels(text: str) -> tuple:
    try:
        levels = tuple(int(part) for part in text.split(",") if part.strip())
    except ValueError as exc:
        raise MalformedInput(f"--levels must be comma-separated integers, got {text!r}") from exc
    if not levels:
        raise MalformedInput("--levels is empty")
    return levels


def _load_functional(source: str, renormalize: bool = False) -> HyperplaneFunctional:
    f = ser.functional_from_obj(ser.loads(read_source(source)))
    if renormalize:
        f = normalize(f.atomic, f.gamma, f.singular_attains)
    return f


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def cmd_lambda(args, config: RunConfig) -> int:
    f = _load_functional(args.functional, args.normalize)
    result = min_projection_norm(f, config.tol)
    violation = None
    try:
        closed = mixed_lambda(f)
    except HypothesisViolation as exc:
        closed, violation = None, str(exc)
    delta = None if closed is None else float(result.lam) - float(closed)
    report = {
        "lambda": result.lam,
        "closed_form": closed,
        "delta": delta,
        "attained": result.attained,
        "justification": result.justification,
        "solver": ser.solver_result_to_obj(result),
    }
    if config.fmt == "json":
        _emit(ser.dumps(report) + "\n", args.out)
    else:
        lines = [
            f"lambda (solver)      {ser.format_real(result.lam)}",
            f"lambda (closed form) {'n/a' if closed is None else ser.format_real(closed)}",
            f"delta                {'n/a' if delta is None else ser.format_real(delta)}",
            f"attained             {'yes' if result.attained else 'no'} ({result.justification})",
        ]
        _emit("\n".join(lines) + "\n", args.out)
    if violation:
        print(f"hypothesis violation: {violation}", file=sys.stderr)
        return EXIT_DOMAIN
    return EXIT_OK


def cmd_norm(args, config: RunConfig) -> int:
    f = _load_functional(args.functional)
    y = ser.vector_from_obj(ser.loads(read_source(args.vector)))
    report = operator_norm(f, y)
    if config.fmt == "json":
        _emit(ser.dumps(ser.norm_report_to_obj(report)) + "\n", args.out)
    else:
        coords = ", ".join(ser.format_real(v) for v in report.per_coord)
        _emit(f"norm {ser.format_real(report.norm)}\nper_coord [{coords}]\n"
              f"tail {ser.format_real(report.tail_value)}\n", args.out)
    return EXIT_OK


def _certificate_summary(c) -> str:
    if c.kind == "pure_singular":
        head = "pure singular functional, gamma = 1, g not norm-attaining"
    else:
        head = f"f_(n,a,b) with n = {c.n}, a = {ser.format_real(c.a)}, b = {ser.format_real(c.b)}"
    return (
        f"target {ser.format_real(c.target)}: {head}\n"
        f"  closed form {ser.format_real(c.lambda_closed_form)}, solver {ser.format_real(c.lambda_solver)}\n"
        f"  gaps {', '.join(ser.format_real(d) for d in c.gap_evidence.gaps)}"
        f" at levels {', '.join(map(str, c.gap_evidence.levels))}\n"
    )


def cmd_design(args, config: RunConfig) -> int:
    cert = design_for_target(args.target, config.tol, config.levels)
    text = ser.dumps(ser.certificate_to_obj(cert), indent=2) + "\n"
    if args.out:
        Path(args.out).write_text(text)
        print(_certificate_summary(cert), end="")
    else:
        sys.stdout.write(text)
        print(_certificate_summary(cert), end="", file=sys.stderr)
    return EXIT_OK


def cmd_verify(args, config: RunConfig) -> int:
    cert = ser.certificate_from_obj(ser.loads(read_source(args.certificate)))
    problems = certificate_problems(cert)
    if problems:
        for p in problems:
            print(f"FAIL {p}")
        return EXIT_DOMAIN
    print("certificate verified")
    return EXIT_OK


def random_instances(count: int, seed: int) -> list[HyperplaneFunctional]:
    """Seeded functionals with every ``|h_i| < 1/2`` and ``||h||_1 + gamma = 1``.

    Dimension uniform in 1..8, gamma uniform in [0, 1), coefficient
    magnitudes uniform then rescaled to ``1 - gamma``, random signs; draws
    violating ``|h_i| < 1/2`` are rejected whole.
    """
    rng = np.random.default_rng(seed)
    out = []
    while len(out) < count:
        m = int(rng.integers(1, 9))
        gamma = float(rng.random())
        w = rng.random(m) + 1e-3
        signs = rng.choice([-1.0, 1.0], size=m)
        h = (1 - gamma) * w / w.sum()
        if h.max() >= 0.5:
            continue
        out.append(HyperplaneFunctional(tuple(float(x) for x in signs * h), gamma, False))
    return out


def _sweep_row(job):
    idx, f, tol = job
    closed = mixed_lambda(f)
    result = min_projection_norm(f, tol)
    return idx, f, closed, result.lam, result.lam - closed, result.attained


def _workers() -> int:
    try:
        return max(1, int(os.environ.get("PROJCONST_THREADS", "1")))
    except ValueError:
        return 1


def sweep_rows(count: int, seed: int, tol: float) -> list[tuple]:
    jobs = [(i, f, tol) for i, f in enumerate(random_instances(count, seed))]
    workers = _workers()
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(_sweep_row, jobs, chunksize=16))
    return [_sweep_row(job) for job in jobs]


def curve_rows(n: int, points: int) -> list[tuple]:
    """Samples of ``a -> curve_g(n, a)`` on an even grid including both endpoints."""
    lo = Fraction(1, n - 1)
    rows = []
    for i in range(points):
        a = lo + (1 - lo) * Fraction(i, points - 1)
        rows.append((n, float(a), float(curve_g(n, a))))
    return rows


def _table(header, rows, fmt: str) -> str:
    if fmt == "json":
        return ser.dumps([dict(zip(header, row)) for row in rows]) + "\n"
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([_cell(v) for v in row])
    return buf.getvalue()


def _cell(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, (int, float, Fraction)):
        return ser.format_real(v)
    return str(v)


def cmd_sweep(args, config: RunConfig) -> int:
    fmt = "csv" if config.fmt == "text" else config.fmt
    if args.curve:
        key, _, value = args.curve.partition("=")
        try:
            n = int(value if key.strip() == "n" else key)
        except ValueError as exc:
            raise MalformedInput(f"--curve expects n=<int>, got {args.curve!r}") from exc
        if args.points < 2:
            raise DomainError("--points must be at least 2")
        rows = curve_rows(n, args.points)
        _emit(_table(("n", "a", "curve_g"), rows, fmt), args.out)
        return EXIT_OK
    if args.count < 0:
        raise DomainError("--count must be nonnegative")
    raw = sweep_rows(args.count, config.seed, config.tol)
    rows = [
        (idx, ";".join(ser.format_real(x) for x in f.atomic), f.gamma, closed, lam, delta, attained)
        for idx, f, closed, lam, delta, attained in raw
    ]
    if fmt == "json":
        records = [
            {"id": idx, "h": list(f.atomic), "gamma": f.gamma, "closed_form": closed,
             "solver": lam, "delta": delta, "attained": attained}
            for idx, f, closed, lam, delta, attained in raw
        ]
        _emit(ser.dumps(records) + "\n", args.out)
    else:
        _emit(_table(SWEEP_HEADER, rows, fmt), args.out)
    worst = max((abs(r[4]) for r in raw), default=0.0)
    print(f"{len(raw)} instances, max |delta| = {ser.format_real(worst)}", file=sys.stderr)
    return EXIT_OK


def cmd_gaps(args, config: RunConfig) -> int:
    f = _load_functional(args.functional)
    gaps = truncation_gaps(f, config.levels, exact=args.exact)
    if args.exact:
        gaps = type(gaps)(gaps.levels, tuple(float(d) for d in gaps.gaps))
    if config.fmt == "json":
        _emit(ser.dumps(ser.gaps_to_obj(gaps)) + "\n", args.out)
    else:
        _emit(_table(("level", "gap"), list(zip(gaps.levels, gaps.gaps)), "csv"), args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="projconst",
        description="Projection constants of hyperplanes in l_inf.",
    )
    parser.add_argument("-v", "--verbose", action="store_true", help="log solver notes to stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, default_fmt="json"):
        p.add_argument("--tol", type=float, default=None, help="solver tolerance (default 1e-9)")
        p.add_argument("--format", dest="fmt", choices=FORMATS, default=default_fmt)
        p.add_argument("--out", default=None, help="write output to this file")
        p.add_argument("--levels", default=None, help="comma-separated truncation levels")
        p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("lambda", help="projection constant of ker f")
    p.add_argument("functional")
    p.add_argument("--normalize", action="store_true", help="rescale f to norm one first")
    common(p)
    p.set_defaults(handler=cmd_lambda)

    p = sub.add_parser("norm", help="norm of the projection P_y onto ker f")
    p.add_argument("functional")
    p.add_argument("vector")
    common(p)
    p.set_defaults(handler=cmd_norm)

    p = sub.add_parser("design", help="functional with a prescribed constant and no minimal projection")
    p.add_argument("--target", type=float, required=True)
    common(p)
    p.set_defaults(handler=cmd_design)

    p = sub.add_parser("verify", help="recheck a certificate written by design")
    p.add_argument("certificate")
    common(p, "text")
    p.set_defaults(handler=cmd_verify)

    p = sub.add_parser("sweep", help="seeded closed-form vs solver sweep, or curve samples")
    p.add_argument("--count", type=int, default=100)
    p.add_argument("--curve", default=None, help="emit curve samples instead, e.g. n=4")
    p.add_argument("--points", type=int, default=21)
    common(p, "csv")
    p.set_defaults(handler=cmd_sweep)

    p = sub.add_parser("gaps", help="truncation gaps of a non-attaining functional")
    p.add_argument("functional")
    p.add_argument("--exact", action="store_true", help="use exact rational arithmetic")
    common(p)
    p.set_defaults(handler=cmd_gaps)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse uses 2 for usage errors; here that code means a domain error
        return EXIT_MALFORMED if exc.code == 2 else exc.code
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        levels = parse_levels(args.levels) if args.levels else DEFAULT_LEVELS
        config = RunConfig(
            command=args.command,
            source=getattr(args, "functional", None),
            tol=args.tol if args.tol is not None else 1e-9,
            levels=levels,
            seed=args.seed,
            fmt=args.fmt,
        )
        return args.handler(args, config)
    except MalformedInput as exc:
        print(f"malformed input: {exc}", file=sys.stderr)
        return EXIT_MALFORMED
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except SolverError as exc:
        print(f"solver failure: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
