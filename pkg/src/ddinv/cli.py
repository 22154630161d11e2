"""Command-line interface: ``ddinv {validate,bound,error,sweep,solve,generate}``.

Exit codes: 0 ok, 1 error (I/O, parse, bad parameters, numerical failure),
2 matrix violates the positivity/dominance conditions, 3 the explicit
error bound was applicable and exceeded (should never happen).
"""
from __future__ import annotations

import argparse
import csv
import io
import os
import sys
import tempfile
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, fields

import numpy as np

from .approx import error_report
from .bounds import corollary_limit, theorem1_bound
from .errors import DdinvError, InvalidMatrix, InvalidParams, MatrixFormatError
from .matrix import (
    DdpMatrix,
    dominance_params,
    format_matrix,
    is_positive_definite,
    parse_matrix,
    parse_vector,
    random_ddp,
    validate_ddp,
    worst_case_example,
)
from .solvers import jacobi_solve, pcg_solve

EXIT_OK, EXIT_ERROR, EXIT_INVALID, EXIT_VIOLATION = 0, 1, 2, 3
VIOLATION_SLACK = 1e-9

SWEEP_HEADER = ("family", "n", "m", "M", "c_value", "bound", "error", "scaled_error", "ratio", "seed")


def _num(x: float | None) -> str:
    return "" if x is None else f"{x:.17g}"


def _short(x: float | None) -> str:
    return "n/a" if x is None else f"{x:.6g}"


def _err(msg: str) -> None:
    print(f"error: {msg}", file=sys.stderr)


# -- matrix sources --------------------------------------------------------------------


def _add_source_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("path", nargs="?", help="matrix file in the text format")
    p.add_argument("--family", choices=["worstcase", "random"])
    p.add_argument("--n", type=int)
    p.add_argument("--m", type=float, default=1.0)
    p.add_argument("--M", type=float, default=2.0)
    p.add_argument("--slack", type=float, default=1.0, help="random family: max row slack")
    p.add_argument("--seed", type=int, default=0, help="random family: generator seed")


def _build_family(family: str, n: int, m: float, M: float, slack: float, seed: int) -> DdpMatrix:
    if family == "worstcase":
        return worst_case_example(n, m, M)
    return random_ddp(n, m, M, slack, seed)


def _load_matrix(args, require_symmetric: bool = True) -> DdpMatrix:
    if args.family:
        if args.n is None:
            raise InvalidParams("--family needs --n")
        return _build_family(args.family, args.n, args.m, args.M, args.slack, args.seed)
    if not args.path:
        raise InvalidParams("give a matrix file or --family")
    with open(args.path, encoding="utf-8") as fh:
        a = parse_matrix(fh)
    return validate_ddp(a, require_symmetric=require_symmetric)


# -- validate ------------------------------------------------------------------------------


def cmd_validate(args) -> int:
    try:
        t = _load_matrix(args, require_symmetric=args.require_symmetric)
    except InvalidMatrix as e:
        print(f"invalid: {e}")
        return EXIT_INVALID
    except (OSError, MatrixFormatError, InvalidParams) as e:
        _err(str(e))
        return EXIT_ERROR

    p = dominance_params(t)
    print(f"n={t.n}")
    print(f"m={p.m:.17g}")
    print(f"M={p.M:.17g}")
    print(f"delta_min={p.delta.min():.17g} delta_max={p.delta.max():.17g}")
    print(f"symmetric={str(t.symmetric).lower()}")
    if t.symmetric:
        print(f"positive_definite={str(is_positive_definite(t)).lower()}")
    else:
        print("positive_definite=n/a")
    outcome = theorem1_bound(t.n, p.m, p.M)
    print(f"C={outcome.c_value:.17g}")
    print(f"applicable={str(outcome.applicable and t.symmetric).lower()}")
    return EXIT_OK


# -- bound ---------------------------------------------------------------------------------


def cmd_bound(args) -> int:
    if args.n < 3:
        _err(f"n must be >= 3 for the error bound, got {args.n}")
        return EXIT_ERROR
    try:
        outcome = theorem1_bound(args.n, args.m, args.M)
    except InvalidParams as e:
        _err(str(e))
        return EXIT_ERROR
    print(f"{outcome} limit={corollary_limit(args.m, args.M):.6g}")
    return EXIT_OK


# -- error ---------------------------------------------------------------------------------


def cmd_error(args) -> int:
    try:
        t = _load_matrix(args)
        rep = error_report(t)
    except InvalidMatrix as e:
        print(f"invalid: {e}")
        return EXIT_INVALID
    except (OSError, DdinvError) as e:
        _err(str(e))
        return EXIT_ERROR
    p = dominance_params(t)
    print(
        f"n={t.n} m={p.m:.6g} M={p.M:.6g} C={rep.bound.c_value:.6g} "
        f"error={rep.max_norm:.6g} bound={_short(rep.bound.bound)} ratio={_short(rep.ratio)} "
        f"scaled_error={rep.max_norm * (t.n - 1) ** 2 * p.m:.6g} "
        f"inverse_offdiag_nonpositive={str(rep.inverse_nonpositive_offdiag).lower()}"
    )
    if rep.ratio is not None and rep.ratio > 1 + VIOLATION_SLACK:
        _err(f"bound violated: ratio {rep.ratio:.17g} > 1")
        return EXIT_VIOLATION
    return EXIT_OK


# -- sweep ---------------------------------------------------------------------------------


@dataclass
class SweepRow:
    family: str
    n: int
    m: float
    M: float
    c_value: float
    bound: float | None
    error: float
    scaled_error: float
    ratio: float | None
    seed: int | None

    def csv_fields(self) -> list[str]:
        return [
            self.family,
            str(self.n),
            _num(self.m),
            _num(self.M),
            _num(self.c_value),
            _num(self.bound),
            _num(self.error),
            _num(self.scaled_error),
            _num(self.ratio),
            "" if self.seed is None else str(self.seed),
        ]


assert tuple(f.name for f in fields(SweepRow)) == SWEEP_HEADER


def sweep_cell(family: str, n: int, m: float, M: float, slack: float, seed: int | None) -> SweepRow:
    t = _build_family(family, n, m, M, slack, seed if seed is not None else 0)
    rep = error_report(t)
    p = dominance_params(t)
    return SweepRow(
        family=family,
        n=n,
        m=p.m,
        M=p.M,
        c_value=rep.bound.c_value,
        bound=rep.bound.bound,
        error=rep.max_norm,
        scaled_error=rep.max_norm * (n - 1) ** 2 * p.m,
        ratio=rep.ratio,
        seed=seed,
    )


def _int_list(text: str) -> list[int]:
    try:
        values = [int(tok) for tok in text.split(",") if tok.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None
    if not values:
        raise argparse.ArgumentTypeError("list is empty")
    return values


def _thread_count(cells: int) -> int:
    cap = os.environ.get("DDINV_THREADS")
    limit = os.cpu_count() or 1
    if cap:
        try:
            limit = max(1, int(cap))
        except ValueError:
            pass
    return max(1, min(limit, cells))


def run_sweep(family: str, n_list: list[int], m: float, M: float, slack: float, seeds: list[int] | None):
    if any(n < 3 for n in n_list):
        raise InvalidParams("n must be >= 3 for the error bound")
    if family == "worstcase":
        cells = [(family, n, m, M, slack, None) for n in n_list]
    else:
        cells = [(family, n, m, M, slack, s) for n in n_list for s in (seeds or [0])]
    with ThreadPoolExecutor(max_workers=_thread_count(len(cells))) as pool:
        return list(pool.map(lambda c: sweep_cell(*c), cells))


def write_sweep_csv(rows: list[SweepRow], fh) -> None:
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(SWEEP_HEADER)
    for row in rows:
        w.writerow(row.csv_fields())


def cmd_sweep(args) -> int:
    try:
        rows = run_sweep(args.family, args.n_list, args.m, args.M, args.slack, args.seed)
    except (DdinvError, ValueError) as e:
        _err(str(e))
        return EXIT_ERROR
    if args.out:
        # write beside the target then rename, so failures never leave a partial file
        out_dir = os.path.dirname(os.path.abspath(args.out))
        fd, tmp = tempfile.mkstemp(dir=out_dir, suffix=".csv.tmp")
        try:
            with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
                write_sweep_csv(rows, fh)
            os.replace(tmp, args.out)
        except OSError as e:
            if os.path.exists(tmp):
                os.unlink(tmp)
            _err(str(e))
            return EXIT_ERROR
    else:
        buf = io.StringIO()
        write_sweep_csv(rows, buf)
        sys.stdout.write(buf.getvalue())
    if any(r.ratio is not None and r.ratio > 1 + VIOLATION_SLACK for r in rows):
        _err("bound violated in at least one sweep row")
        return EXIT_VIOLATION
    return EXIT_OK


# -- solve ---------------------------------------------------------------------------------


def _run_solver(method: str, t: DdpMatrix, b: np.ndarray, tol: float, max_iter: int):
    if method == "jacobi":
        return jacobi_solve(t, b, tol, max_iter)
    return pcg_solve(t, b, use_diag_precond=(method == "pcg"), tol=tol, max_iter=max_iter)


def cmd_solve(args) -> int:
    try:
        t = _load_matrix(args)
        if args.rhs:
            with open(args.rhs, encoding="utf-8") as fh:
                b = parse_vector(fh)
        else:
            b = t.entries @ np.ones(t.n)
        rep = _run_solver(args.method, t, b, args.tol, args.max_iter)
        compare = None
        if args.compare:
            compare = [_run_solver(meth, t, b, args.tol, args.max_iter) for meth in ("cg", "pcg")]
    except InvalidMatrix as e:
        print(f"invalid: {e}")
        return EXIT_INVALID
    except (OSError, DdinvError) as e:
        _err(str(e))
        return EXIT_ERROR
    print(
        f"method={rep.method} iterations={rep.iterations} converged={str(rep.converged).lower()} "
        f"residual={rep.final_residual:.6g} relative_residual={rep.relative_residual:.6g}"
    )
    if args.rhs is None:
        print(f"max_abs_error_vs_ones={np.max(np.abs(rep.solution - 1.0)):.6g}")
    if compare:
        cg, pcg = compare
        print(
            f"cg_iterations={cg.iterations} cg_converged={str(cg.converged).lower()} "
            f"pcg_iterations={pcg.iterations} pcg_converged={str(pcg.converged).lower()}"
        )
    return EXIT_OK


# -- generate ------------------------------------------------------------------------------


def cmd_generate(args) -> int:
    try:
        if args.n is None:
            raise InvalidParams("--n is required")
        t = _build_family(args.family, args.n, args.m, args.M, args.slack, args.seed)
    except DdinvError as e:
        _err(str(e))
        return EXIT_ERROR
    comment = f"family={args.family} n={args.n} m={args.m!r} M={args.M!r}"
    if args.family == "random":
        comment += f" slack={args.slack!r} seed={args.seed}"
    sys.stdout.write(format_matrix(t, comment=comment))
    return EXIT_OK


# -- parser --------------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ddinv",
        description="Diagonal approximate inverse of diagonally dominant positive matrices.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check a matrix and print its parameters")
    _add_source_args(p)
    p.add_argument(
        "--require-symmetric",
        action=argparse.BooleanOptionalAction,
        default=True,
        help="reject asymmetric matrices (default: on)",
    )
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("bound", help="evaluate C(m, M) and the error bound")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=float, required=True)
    p.add_argument("--M", type=float, required=True)
    p.set_defaults(func=cmd_bound)

    p = sub.add_parser("error", help="measure ||T^-1 - S|| against the bound")
    _add_source_args(p)
    p.set_defaults(func=cmd_error)

    p = sub.add_parser("sweep", help="error over a list of orders, as CSV")
    p.add_argument("--family", choices=["worstcase", "random"], required=True)
    p.add_argument("--n-list", type=_int_list, required=True)
    p.add_argument("--m", type=float, default=1.0)
    p.add_argument("--M", type=float, default=2.0)
    p.add_argument("--slack", type=float, default=1.0)
    p.add_argument("--seed", type=_int_list, default=None, help="random family: seed or comma-separated seeds")
    p.add_argument("--out", help="CSV path (default: stdout)")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("solve", help="solve T x = b iteratively with S as preconditioner")
    _add_source_args(p)
    rhs = p.add_mutually_exclusive_group()
    rhs.add_argument("--rhs", help="right-hand side vector file")
    rhs.add_argument("--rhs-ones", action="store_true", help="b = T @ ones (the default)")
    p.add_argument("--method", choices=["jacobi", "cg", "pcg"], default="pcg")
    p.add_argument("--tol", type=float, default=1e-10)
    p.add_argument("--max-iter", type=int, default=10_000)
    p.add_argument("--compare", action="store_true", help="also run cg and pcg and print both counts")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("generate", help="write a generated matrix in the text format")
    p.add_argument("--family", choices=["worstcase", "random"], required=True)
    p.add_argument("--n", type=int)
    p.add_argument("--m", type=float, default=1.0)
    p.add_argument("--M", type=float, default=2.0)
    p.add_argument("--slack", type=float, default=1.0)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_generate)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        # argparse exits 2 on usage errors; 2 is reserved for invalid matrices
        return EXIT_ERROR if e.code else EXIT_OK
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
