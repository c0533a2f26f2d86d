"""Command-line driver: single solves, resolution sweeps and plot scripts.

Exit codes: 0 success, 1 usage error, 2 an iterative solve did not
converge, 3 numerical failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import logging
import sys
from dataclasses import dataclass
from pathlib import Path

from pfsc.errors import AssemblyError, NumericalFailure, PFSCError, UsageError
from pfsc.problems import (
    Kind,
    ProblemSpec,
    Scheme,
    assemble,
    example1_a,
    example1_solution,
    example1_spec,
    example2_a,
    example2_b,
    example2_solution,
    example2_spec,
    manufactured_bvp,
    manufactured_ivp,
    solve,
)

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_NONCONVERGED = 2
EXIT_NUMERICAL = 3

CSV_HEADER = ("N", "cond_fsc", "cond_pfsc", "iters_fsc", "iters_pfsc", "err_fsc", "err_pfsc")
NOT_CONVERGED = "nc"
DEFAULT_N_LIST = "8:1024:x2"


# {{{ argument helpers

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def parse_n_list(text: str) -> list[int]:
    """Parse ``8,16,32``, ``8:1024:x2`` (geometric) or ``8:64:8`` (arithmetic)."""
    text = text.strip()
    try:
        if ":" in text:
            start, stop, step = text.split(":")
            start, stop = int(start), int(stop)
            values = []
            if step.startswith("x"):
                factor = int(step[1:])
                if factor < 2:
                    raise UsageError(f"geometric factor must be >= 2: {text!r}")
                n = start
                while n <= stop:
                    values.append(n)
                    n *= factor
            else:
                values = list(range(start, stop + 1, int(step)))
        else:
            values = [int(v) for v in text.split(",") if v.strip()]
    except ValueError as exc:
        raise UsageError(f"cannot parse N list {text!r}") from exc

    if not values or any(b <= a for a, b in zip(values, values[1:])) or values[0] < 1:
        raise UsageError(f"N list must be non-empty, positive and increasing: {text!r}")
    return values


def read_config(path: str) -> dict[str, str]:
    """Read a plain ``key=value`` file; ``#`` starts a comment."""
    out = {}
    try:
        lines = Path(path).read_text(encoding="utf-8").splitlines()
    except OSError as exc:
        raise UsageError(f"cannot read config {path!r}: {exc}") from exc

    for lineno, line in enumerate(lines, 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{lineno}: expected key=value")
        key, value = (s.strip() for s in line.split("=", 1))
        out[key.lstrip("-").replace("-", "_")] = value
    return out


def _add_problem_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", help="key=value file; command-line flags take precedence")
    p.add_argument("--example", type=int, choices=(1, 2))
    p.add_argument("--problem", choices=("ivp", "bvp"))
    p.add_argument("--nu", type=float)
    p.add_argument("--nodes", choices=("auto", "gauss-jacobi", "chebyshev"), default="auto")
    p.add_argument("--tol", type=float)
    p.add_argument("--maxit", type=int)
    p.add_argument("--out", default="-")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="pfsc", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    commands = {}
    p = commands["solve"] = sub.add_parser("solve", help="solve a single instance")
    _add_problem_args(p)
    p.add_argument("--N", dest="N", type=int)
    p.add_argument("--scheme", choices=("fsc", "pfsc", "both"), default="pfsc")
    p.add_argument("--solver", choices=("direct", "bicgstab"), default="direct")
    p.add_argument("--no-cond", dest="cond", action="store_false",
                   help="skip the condition number")

    p = commands["sweep"] = sub.add_parser("sweep", help="sweep N and write a CSV table")
    _add_problem_args(p)
    p.add_argument("--N-list", dest="N_list", default=DEFAULT_N_LIST)

    p = commands["plot"] = sub.add_parser("plot", help="write a gnuplot script for a sweep CSV")
    p.add_argument("csv", help="sweep CSV file")
    p.add_argument("--out", default="-")
    p.add_argument("--title", default="")

    parser.set_defaults(subparsers=commands)
    return parser


def parse_args(argv: list[str] | None) -> argparse.Namespace:
    parser = build_parser()
    args = parser.parse_args(argv)

    config = getattr(args, "config", None)
    if config:
        # re-parse with the file values as defaults so explicit flags win
        values = read_config(config)
        sub = args.subparsers[args.command]
        known = {a.dest: a for a in sub._actions}
        defaults = {}
        for key, value in values.items():
            action = known.get(key)
            if action is None or key in ("config", "help", "subparsers"):
                raise UsageError(f"unknown config key {key!r}")
            try:
                defaults[key] = action.type(value) if action.type else value
            except ValueError as exc:
                raise UsageError(f"invalid value for {key!r}: {value!r}") from exc
            if action.choices is not None and defaults[key] not in action.choices:
                raise UsageError(f"invalid value for {key!r}: {value!r}")
        sub.set_defaults(**defaults)
        args = parser.parse_args(argv)

    return args


def problem_from_args(args: argparse.Namespace) -> ProblemSpec:
    if args.example is not None:
        if args.problem is not None or args.nu is not None:
            raise UsageError("--example cannot be combined with --problem/--nu")
        return example1_spec() if args.example == 1 else example2_spec()

    if args.problem is None or args.nu is None:
        raise UsageError("give either --example or both --problem and --nu")
    if args.problem == "ivp":
        return manufactured_ivp(args.nu, example1_a, example1_solution())
    return manufactured_bvp(args.nu, example2_a, example2_b, example2_solution())


def default_tol(spec: ProblemSpec) -> float:
    return 1.0e-9 if spec.kind is Kind.IVP else 1.0e-11


def _open_out(path: str):
    if path == "-":
        return _StdoutWrapper()
    try:
        return open(path, "w", encoding="utf-8", newline="")
    except OSError as exc:
        raise UsageError(f"cannot write {path!r}: {exc}") from exc


class _StdoutWrapper(io.StringIO):
    def close(self):
        sys.stdout.write(self.getvalue())
        sys.stdout.flush()
        super().close()

# }}}


# {{{ solve

def _fmt(value) -> str:
    if value is None:
        return "-"
    return f"{value:.6e}"


def cmd_solve(args: argparse.Namespace) -> int:
    spec = problem_from_args(args)
    if args.N is None:
        raise UsageError("solve needs --N")
    tol = args.tol if args.tol is not None else default_tol(spec)
    schemes = [Scheme.FSC, Scheme.PFSC] if args.scheme == "both" else [Scheme(args.scheme)]

    code = EXIT_OK
    out = _open_out(args.out)
    try:
        for scheme in schemes:
            system = assemble(spec, args.N, scheme, nodes=args.nodes)
            report = solve(
                system, solver=args.solver, tol=tol, maxit=args.maxit,
                with_condition=args.cond, with_grid_error=True,
            )
            iters = "-" if report.iterations is None else f"{report.iterations:g}"
            out.write(
                f"N={args.N} scheme={scheme.value} solver={args.solver} "
                f"cond={_fmt(report.condition)} status={report.status.value} "
                f"iterations={iters} residual={_fmt(report.relative_residual)} "
                f"max_error={_fmt(report.error)} max_error_grid={_fmt(report.error_grid)}\n"
            )
            if not report.converged:
                code = EXIT_NONCONVERGED
    finally:
        out.close()
    return code

# }}}


# {{{ sweep

@dataclass(frozen=True)
class SweepRow:
    N: int
    cond_fsc: float
    cond_pfsc: float
    #: ``None`` when the iterative solve did not converge
    iters_fsc: float | None
    iters_pfsc: float | None
    err_fsc: float
    err_pfsc: float

    def cells(self) -> list[str]:
        def real(v):
            return NOT_CONVERGED if v is None else f"{v:.16e}"

        return [
            str(self.N), real(self.cond_fsc), real(self.cond_pfsc),
            real(self.iters_fsc), real(self.iters_pfsc),
            real(self.err_fsc), real(self.err_pfsc),
        ]


def sweep_row(spec: ProblemSpec, n: int, tol: float, maxit: int | None = None,
              nodes: str = "auto") -> tuple[SweepRow, bool]:
    """One table row; the flag is true when both iterative solves converged."""
    reports = {}
    for scheme in (Scheme.FSC, Scheme.PFSC):
        system = assemble(spec, n, scheme, nodes=nodes)
        reports[scheme] = solve(system, solver="bicgstab", tol=tol, maxit=maxit,
                                with_condition=True)

    fsc, pfsc = reports[Scheme.FSC], reports[Scheme.PFSC]
    row = SweepRow(
        N=n,
        cond_fsc=fsc.condition,
        cond_pfsc=pfsc.condition,
        iters_fsc=fsc.iterations if fsc.converged else None,
        iters_pfsc=pfsc.iterations if pfsc.converged else None,
        err_fsc=fsc.error,
        err_pfsc=pfsc.error,
    )
    return row, fsc.converged and pfsc.converged


def write_csv(rows: list[SweepRow], stream) -> None:
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for row in rows:
        writer.writerow(row.cells())


def cmd_sweep(args: argparse.Namespace) -> int:
    spec = problem_from_args(args)
    tol = args.tol if args.tol is not None else default_tol(spec)
    ns = parse_n_list(args.N_list)

    rows = []
    all_converged = True
    for n in ns:
        row, ok = sweep_row(spec, n, tol, maxit=args.maxit, nodes=args.nodes)
        logger.info("N=%d cond_fsc=%.3e cond_pfsc=%.3e", n, row.cond_fsc, row.cond_pfsc)
        rows.append(row)
        all_converged &= ok

    out = _open_out(args.out)
    try:
        write_csv(rows, out)
    finally:
        out.close()
    return EXIT_OK if all_converged else EXIT_NONCONVERGED

# }}}


# {{{ plot

GNUPLOT_TEMPLATE = """\
# gnuplot script generated by pfsc; run with: gnuplot {script}
set datafile separator ","
set datafile missing "{missing}"
set terminal pngcairo size 1500,450
set output "{png}"
set multiplot layout 1,3 title "{title}"
set key top left

set title "condition number"
set logscale xy
set xlabel "N"
plot "{csv}" using "N":"cond_fsc" with linespoints title "cond_fsc", \\
     "{csv}" using "N":"cond_pfsc" with linespoints title "cond_pfsc"

set title "iterations"
unset logscale y
plot "{csv}" using "N":"iters_fsc" with linespoints title "iters_fsc", \\
     "{csv}" using "N":"iters_pfsc" with linespoints title "iters_pfsc"

set title "maximum pointwise error"
set logscale y
plot "{csv}" using "N":"err_fsc" with linespoints title "err_fsc", \\
     "{csv}" using "N":"err_pfsc" with linespoints title "err_pfsc"

unset multiplot
"""


def read_sweep_csv(path: str) -> list[dict[str, str]]:
    try:
        with open(path, encoding="utf-8", newline="") as fd:
            rows = list(csv.reader(fd))
    except OSError as exc:
        raise UsageError(f"cannot read {path!r}: {exc}") from exc

    if not rows or tuple(rows[0]) != CSV_HEADER:
        raise UsageError(f"{path}: missing or unexpected header")
    if len(rows) < 2:
        raise UsageError(f"{path}: no data rows")

    records = []
    for lineno, cells in enumerate(rows[1:], 2):
        if len(cells) != len(CSV_HEADER):
            raise UsageError(f"{path}:{lineno}: expected {len(CSV_HEADER)} fields")
        for name, cell in zip(CSV_HEADER, cells):
            if cell == NOT_CONVERGED and name.startswith("iters"):
                continue
            try:
                float(cell)
            except ValueError as exc:
                raise UsageError(f"{path}:{lineno}: bad value {cell!r} for {name}") from exc
        records.append(dict(zip(CSV_HEADER, cells)))
    return records


def plot_script(csv_path: str, script_path: str = "pfsc.gp", title: str = "") -> str:
    png = str(Path(csv_path).with_suffix(".png"))
    return GNUPLOT_TEMPLATE.format(
        csv=csv_path, png=png, script=script_path, title=title or csv_path,
        missing=NOT_CONVERGED,
    )


def cmd_plot(args: argparse.Namespace) -> int:
    read_sweep_csv(args.csv)
    script = plot_script(args.csv, "pfsc.gp" if args.out == "-" else args.out, args.title)
    out = _open_out(args.out)
    try:
        out.write(script)
    finally:
        out.close()
    return EXIT_OK

# }}}


COMMANDS = {"solve": cmd_solve, "sweep": cmd_sweep, "plot": cmd_plot}


def main(argv: list[str] | None = None) -> int:
    try:
        args = parse_args(argv)
        logging.basicConfig(
            level=logging.INFO if args.verbose else logging.WARNING,
            format="[%(levelname)s] %(name)s: %(message)s",
        )
        return COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"pfsc: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (NumericalFailure, AssemblyError) as exc:
        print(f"pfsc: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except PFSCError as exc:
        print(f"pfsc: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
