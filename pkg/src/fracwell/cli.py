"""Command-line front end: spectra, convergence tables and eigenfunction samples.

Every output starts with a ``#`` stamp line recording the tool version, the
Levy index, basis size and quadrature settings.  Output is deterministic for
identical flags.  Exit codes: 0 success, 2 invalid input, 3 numerical failure.
"""

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass, field

import numpy as np

from . import __version__
from .errors import DomainError, FracwellError
from .galerkin import METHODS, QuadratureSpec, assemble
from .kernel import Parity
from .specfun import levy
from .spectrum import (WALL_CUTOFF, asymptotic_energy, boundary_exponent, merged_energies,
                       residual, sector_energies, solve, spectrum_to_dict, zg_reference)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_NUMERICAL = 3
DEFAULT_N_BASIS = 100
ASYMPTOTIC_N_BASIS = 1000


@dataclass(frozen=True)
class RunConfig:
    """Validated command-line settings shared by all subcommands."""

    command: str
    mu: float
    n_basis: int
    output_path: str = "-"
    format: str = "csv"
    quadrature: QuadratureSpec = field(default_factory=QuadratureSpec)
    method: str = "spectral"

    def __post_init__(self):
        levy(self.mu)
        if self.n_basis < 1:
            raise DomainError(f"--n must be a positive integer, got {self.n_basis}")
        if self.format not in ("csv", "json"):
            raise DomainError(f"unknown format {self.format!r}")

    def stamp(self, **extra):
        fields = {
            "fracwell": __version__, "command": self.command, "mu": "%.17g" % self.mu,
            "n_basis": self.n_basis, "method": self.method,
            "abs_tol": "%g" % self.quadrature.abs_tol, "rel_tol": "%g" % self.quadrature.rel_tol,
        }
        fields.update(extra)
        return fields


def _fmt(v):
    return "%.9g" % v


def _csv_text(cfg, columns, rows, notes=(), **extra):
    buf = io.StringIO()
    buf.write("# " + " ".join(f"{k}={v}" for k, v in cfg.stamp(**extra).items()) + "\n")
    for note in notes:
        buf.write(f"# {note}\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([_fmt(v) if isinstance(v, (float, np.floating)) else v for v in row])
    return buf.getvalue()


def _json_text(cfg, payload, notes=(), **extra):
    doc = {"header": cfg.stamp(**extra)}
    if notes:
        doc["notes"] = list(notes)
    doc.update(payload)
    return json.dumps(doc, indent=1) + "\n"


def _int_list(text):
    try:
        values = [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")
    if not values:
        raise argparse.ArgumentTypeError("list must not be empty")
    return values


def cmd_solve(cfg, report):
    s = solve(cfg.mu, cfg.n_basis, cfg.quadrature, cfg.method)
    m = len(s.merged) if report is None else min(report, len(s.merged))
    notes = []
    if s.degenerate:
        notes.append("degenerate spectrum at mu=0: every energy equals 1; "
                     "states listed in basis order")
    if cfg.format == "json":
        payload = spectrum_to_dict(s, m)
        return _json_text(cfg, payload, notes, report=m)
    rows = [(st.label, st.parity.value, st.energy) for st in s.merged[:m]]
    return _csv_text(cfg, ["label", "parity", "energy"], rows, notes, report=m)


def cmd_converge(cfg, sizes, report, sector):
    if any(b <= a for a, b in zip(sizes, sizes[1:])) or sizes[0] < 1:
        raise DomainError("--sizes must be positive and strictly ascending")
    table = []
    for n in sizes:
        if sector == "merged":
            energies, _ = merged_energies(cfg.mu, n, cfg.quadrature, cfg.method)
        else:
            energies = sector_energies(Parity(sector), cfg.mu, n, cfg.quadrature, cfg.method)
        table.append(list(energies[:report]))
    violations = []
    for (n0, prev), (n1, cur) in zip(zip(sizes, table), zip(sizes[1:], table[1:])):
        for j, (a, b) in enumerate(zip(prev, cur), start=1):
            if b > a + 1e-12:
                violations.append(f"E{j} increased from n={n0} to n={n1}")
    notes = [f"monotonicity violated: {v}" for v in violations]
    if violations:
        print("warning: " + "; ".join(violations), file=sys.stderr)
    extra = {"sector": sector, "sizes": ",".join(map(str, sizes))}
    if cfg.format == "json":
        rows = [{"n": n, "energies": e} for n, e in zip(sizes, table)]
        return _json_text(cfg, {"rows": rows, "monotone": not violations}, notes, **extra)
    columns = ["n"] + [f"E{j}" for j in range(1, report + 1)]
    rows = [[n] + e + [""] * (report - len(e)) for n, e in zip(sizes, table)]
    return _csv_text(cfg, columns, rows, notes, **extra)


def cmd_asymptotic(cfg, n_max):
    if n_max < 1:
        raise DomainError("--n-max must be at least 1")
    energies, _ = merged_energies(cfg.mu, cfg.n_basis, cfg.quadrature, cfg.method)
    if n_max > energies.size:
        raise DomainError(f"--n-max exceeds the {energies.size} computed states")
    rows = []
    for n in range(1, n_max + 1):
        e = energies[n - 1]
        e_kw = asymptotic_energy(n, cfg.mu)
        rows.append((n, float(e), e_kw, 100.0 * abs(e - e_kw) / e))
    notes = [f"computed column uses n_basis={cfg.n_basis}; larger bases lower every "
             "computed energy slightly"]
    if cfg.format == "json":
        payload = {"rows": [dict(zip(("n", "energy", "asymptotic", "rel_error_percent"), r))
                            for r in rows]}
        return _json_text(cfg, payload, notes)
    return _csv_text(cfg, ["n", "energy", "asymptotic", "rel_error_percent"], rows, notes)


def cmd_eigenfunction(cfg, labels, grid, compare_zg, with_residual, boundary_fit):
    if grid < 2:
        raise DomainError("--grid must be at least 2")
    s = solve(cfg.mu, cfg.n_basis, cfg.quadrature, cfg.method)
    for label in labels:
        s.state(label)
    x = np.linspace(-1.0, 1.0, grid)
    columns = {"x": x}
    for label in labels:
        columns[f"psi_{label}"] = s.state(label)(x)
    if compare_zg:
        columns["zg"] = zg_reference(x)
        columns["psi_1_minus_zg"] = s.state(1)(x) - columns["zg"]
    if with_residual:
        inside = np.abs(x) < 1.0 - WALL_CUTOFF
        for label in labels:
            col = np.full(grid, np.nan)
            col[inside] = residual(s, label, x[inside])
            columns[f"residual_{label}"] = col
    notes = []
    fits = {}
    if boundary_fit:
        for label in labels:
            fit = boundary_exponent(s, label)
            fits[label] = fit
            notes.append(f"boundary_fit label={label} slope={_fmt(fit.slope)} "
                         f"residual={_fmt(fit.residual)} samples={fit.samples}")
    if compare_zg:
        dev = np.abs(columns["psi_1_minus_zg"][np.abs(x) <= 0.95])
        if dev.size:
            notes.append(f"max |psi_1 - zg| over |x| <= 0.95: {_fmt(dev.max())}")
    extra = {"labels": ",".join(map(str, labels)), "grid": grid}
    if cfg.format == "json":
        payload = {name: [None if np.isnan(v) else float(v) for v in col]
                   for name, col in columns.items()}
        payload["energies"] = {str(lb): s.state(lb).energy for lb in labels}
        if fits:
            payload["boundary_fit"] = {str(lb): {"slope": f.slope, "residual": f.residual,
                                                 "samples": f.samples} for lb, f in fits.items()}
        return _json_text(cfg, {"samples": payload}, notes, **extra)
    names = list(columns)
    rows = []
    for j in range(grid):
        rows.append(["" if np.isnan(columns[nm][j]) else float(columns[nm][j]) for nm in names])
    return _csv_text(cfg, names, rows, notes, **extra)


def cmd_matrix(cfg, parity):
    m = assemble(Parity(parity), cfg.mu, cfg.n_basis, cfg.quadrature, cfg.method)
    if cfg.format == "json":
        return _json_text(cfg, json.loads(m.to_json()), parity=parity)
    stamp = " ".join(f"{k}={v}" for k, v in cfg.stamp(parity=parity).items())
    return f"# {stamp}\n" + m.to_csv()


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--mu", type=float, required=True, help="Levy index in [0, 2]")
    common.add_argument("--format", choices=("csv", "json"), default="csv")
    common.add_argument("--out", default="-", help="output file (default: stdout)")
    common.add_argument("--abs-tol", type=float, default=QuadratureSpec.abs_tol)
    common.add_argument("--rel-tol", type=float, default=QuadratureSpec.rel_tol)
    common.add_argument("--method", choices=METHODS, default="spectral",
                        help="matrix assembly route (default: spectral)")

    parser = argparse.ArgumentParser(
        prog="fracwell", description="Fractional Laplacian spectrum in the infinite well [-1, 1].")
    parser.add_argument("--version", action="version", version=f"fracwell {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", parents=[common], help="merged spectrum for one basis size")
    p.add_argument("--n", type=int, default=DEFAULT_N_BASIS, help="basis size per parity sector")
    p.add_argument("--report", type=int, default=None, help="number of lowest states to write")

    p = sub.add_parser("converge", parents=[common], help="lowest energies versus basis size")
    p.add_argument("--sizes", type=_int_list, required=True, help="ascending list, e.g. 30,50,100")
    p.add_argument("--report", type=int, default=6)
    p.add_argument("--sector", choices=("merged", "even", "odd"), default="merged")

    p = sub.add_parser("asymptotic", parents=[common], help="compare with the large-n formula")
    p.add_argument("--n", type=int, default=ASYMPTOTIC_N_BASIS, help="basis size per parity sector")
    p.add_argument("--n-max", type=int, default=20, help="highest state label to report")

    p = sub.add_parser("eigenfunction", parents=[common], help="sample eigenfunctions on a grid")
    p.add_argument("--n", type=int, default=DEFAULT_N_BASIS, help="basis size per parity sector")
    p.add_argument("--labels", type=_int_list, default=[1])
    p.add_argument("--grid", type=int, default=201, help="number of uniform grid points on [-1, 1]")
    p.add_argument("--compare-zg", action="store_true", help="add the closed-form ground-state curve")
    p.add_argument("--residual", action="store_true", help="add operator residual columns")
    p.add_argument("--boundary-fit", action="store_true", help="fit the wall exponent of each label")

    p = sub.add_parser("matrix", parents=[common], help="export one sector matrix")
    p.add_argument("--n", type=int, default=DEFAULT_N_BASIS)
    p.add_argument("--parity", choices=[q.value for q in Parity], default="even")
    return parser


def _run(args):
    n_basis = getattr(args, "n", None)
    if args.command == "converge":
        n_basis = max(args.sizes)
    cfg = RunConfig(args.command, args.mu, n_basis, args.out, args.format,
                    QuadratureSpec(args.abs_tol, args.rel_tol), args.method)
    if args.command == "solve":
        if args.report is not None and args.report < 1:
            raise DomainError("--report must be at least 1")
        return cmd_solve(cfg, args.report)
    if args.command == "converge":
        if args.report < 1:
            raise DomainError("--report must be at least 1")
        return cmd_converge(cfg, args.sizes, args.report, args.sector)
    if args.command == "asymptotic":
        return cmd_asymptotic(cfg, args.n_max)
    if args.command == "eigenfunction":
        return cmd_eigenfunction(cfg, args.labels, args.grid, args.compare_zg,
                                 args.residual, args.boundary_fit)
    return cmd_matrix(cfg, args.parity)


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        text = _run(args)
    except DomainError as exc:
        print(f"fracwell: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except FracwellError as exc:
        print(f"fracwell: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    if args.out == "-":
        sys.stdout.write(text)
    else:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
