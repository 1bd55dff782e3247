"""
Batch command-line front end.

Every command writes a table (CSV or JSON) whose bytes depend only on the
arguments. Exit status: 0 success, 1 a residual column exceeded
``--tolerance``, 2 invalid arguments, 3 size cap exceeded, 4 singular
detuning.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

from . import __version__
from .analysis import SCAN_MAX_ATOMS, dicke_pair_correlation, scan_partitions, scan_w
from .collective import CollectiveState, embed_collective
from .errors import (DegenerateInputError, InvalidInputError, NoTransitionError,
                     ResourceLimitError, SingularDenominatorError)
from .hilbert import MAX_DIMENSION
from .raman import (Geometry, RamanConfig, scattered_state, single_atom_rate, total_rate)
from .states import fidelity

SCHEMA_VERSION = 1
COMMANDS = ("scan-w", "scan-partitions", "dicke-corr", "geometry-fidelity", "rate")

EXIT_OK, EXIT_RESIDUAL, EXIT_INVALID, EXIT_RESOURCE, EXIT_SINGULAR = 0, 1, 2, 3, 4

# Largest two-level chain that fits in the dense amplitude cap.
DICKE_MAX_ATOMS = MAX_DIMENSION.bit_length() - 1

# Built-in geometry-fidelity scan: phase step per atom along a three-atom chain.
_THETA_STEPS = 9


@dataclass(frozen=True)
class RunConfig:
    command: str
    n: int | None = None
    n_max: int | None = None
    counts: tuple[int, int, int] | None = None
    detuning: float = 1.0
    field_plus: float = 1.0
    field_minus: float = 1.0
    dipole_il: float = 1.0
    dipole_fl: float = 1.0
    geometry: Path | None = None
    fmt: str = "csv"
    out: Path | None = None
    tolerance: float = 1e-9

    def raman_config(self) -> RamanConfig:
        if self.detuning == 0.0:
            raise SingularDenominatorError("detuning must be nonzero")
        return RamanConfig.with_detuning(
            self.detuning, field_plus=self.field_plus, field_minus=self.field_minus,
            dipole_il=self.dipole_il, dipole_fl=self.dipole_fl,
        )


@dataclass
class Table:
    command: str
    columns: list[str]
    rows: list[list]
    residual_columns: tuple[str, ...] = ()

    def max_residual(self) -> float:
        idx = [self.columns.index(c) for c in self.residual_columns]
        return max((row[k] for row in self.rows for k in idx), default=0.0)


def _fmt(value) -> str:
    if isinstance(value, float):
        return format(value, ".13g")
    return str(value)


def render_csv(table: Table) -> str:
    buf = io.StringIO()
    buf.write(f"# superraman {table.command} schema v{SCHEMA_VERSION}\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(table.columns)
    for row in table.rows:
        writer.writerow([_fmt(v) for v in row])
    return buf.getvalue()


def render_json(table: Table) -> str:
    doc = {
        "schema": f"superraman/{table.command}/v{SCHEMA_VERSION}",
        "columns": table.columns,
        "rows": [dict(zip(table.columns, row)) for row in table.rows],
    }
    return json.dumps(doc, indent=2) + "\n"


def _require(value, flag: str, command: str):
    if value is None:
        raise InvalidInputError(f"{command} requires {flag}")
    return value


def _cmd_scan_w(config: RunConfig) -> Table:
    n_max = config.n if config.n is not None else _require(config.n_max, "--n-max", "scan-w")
    records = scan_w(n_max, config.raman_config())
    if config.n is not None:
        records = [r for r in records if r.N == config.n]
    rows = [[r.N, r.formula_value, r.bruteforce_value, r.residual] for r in records]
    return Table("scan-w", ["N", "formula", "bruteforce", "residual"], rows, ("residual",))


def _cmd_scan_partitions(config: RunConfig) -> Table:
    n_max = _require(config.n_max, "--n-max", "scan-partitions")
    rows = [[r.N, r.n_i, r.n_l, r.n_f, r.formula_value, r.bruteforce_value, r.residual]
            for r in scan_partitions(n_max, config.raman_config())]
    return Table("scan-partitions",
                 ["N", "n_i", "n_l", "n_f", "formula", "bruteforce", "residual"],
                 rows, ("residual",))


def _cmd_dicke_corr(config: RunConfig) -> Table:
    # |N/2, 0> exists only for even N; a scan skips odd N.
    if config.n is not None:
        if config.n < 2 or config.n % 2:
            raise InvalidInputError(f"dicke-corr needs an even N >= 2, got {config.n}")
        ns = [config.n]
    else:
        ns = list(range(2, _require(config.n_max, "--n-max or --n", "dicke-corr") + 1, 2))
        if not ns:
            raise InvalidInputError("dicke-corr scan needs --n-max >= 2")
    if ns[-1] > DICKE_MAX_ATOMS:
        raise ResourceLimitError(f"N={ns[-1]} exceeds the dicke-corr cap {DICKE_MAX_ATOMS}")
    rows = [[n, dicke_pair_correlation(n, 0)] for n in ns]
    return Table("dicke-corr", ["N", "correlation"], rows)


def _load_geometry(path: Path) -> Geometry:
    try:
        data = json.loads(Path(path).read_text())
    except OSError as exc:
        raise InvalidInputError(f"cannot read geometry file: {exc}") from None
    except json.JSONDecodeError as exc:
        raise InvalidInputError(f"geometry file is not valid JSON: {exc}") from None
    if not isinstance(data, dict):
        raise InvalidInputError("geometry file must hold a JSON object")
    return Geometry.from_dict(data)


def _check_raman_size(n: int) -> None:
    if n > SCAN_MAX_ATOMS:
        raise ResourceLimitError(f"N={n} exceeds the brute-force cap {SCAN_MAX_ATOMS}")


def _fidelity_row(label: str, g: Geometry, cfg: RamanConfig) -> list:
    n = g.num_atoms
    if n < 2:
        raise InvalidInputError("geometry-fidelity needs at least two atoms")
    _check_raman_size(n)
    start = embed_collective(CollectiveState(n - 1, 0, 1))
    target = embed_collective(CollectiveState(n - 2, 0, 2))
    out = scattered_state(start, cfg, g)
    return [label, n, fidelity(target, out.state), out.weight / single_atom_rate(cfg)]


def _cmd_geometry_fidelity(config: RunConfig) -> Table:
    cfg = config.raman_config()
    columns = ["geometry", "N", "fidelity", "rate_ratio"]
    if config.geometry is not None:
        g = _load_geometry(config.geometry)
        return Table("geometry-fidelity", columns,
                     [_fidelity_row(Path(config.geometry).name, g, cfg)])
    n = config.n if config.n is not None else 3
    rows = []
    for step in range(_THETA_STEPS):
        theta = math.pi * step / (_THETA_STEPS - 1)
        # Momentum transfer k_l - k_s = (theta, 0, 0) along a unit-spaced chain.
        g = Geometry.chain(n, 1.0, k_laser=(theta / 2, 0.0, 1.0),
                           k_scattered=(-theta / 2, 0.0, 1.0))
        rows.append(_fidelity_row(f"chain-theta={theta:.6f}", g, cfg))
    return Table("geometry-fidelity", columns, rows)


def _cmd_rate(config: RunConfig) -> Table:
    cfg = config.raman_config()
    if config.counts is not None:
        cs = CollectiveState.from_counts(config.counts)
        if config.n is not None and config.n != cs.num_atoms:
            raise InvalidInputError(f"--counts sum to {cs.num_atoms}, but --n is {config.n}")
    else:
        n = _require(config.n, "--n or --counts", "rate")
        if n < 2:
            raise InvalidInputError("the default W state needs N >= 2; pass --counts")
        cs = CollectiveState(n - 1, 0, 1)
    _check_raman_size(cs.num_atoms)
    if cs.n_i == 0:
        raise NoTransitionError("no atom in the initial level")
    g = Geometry.colocated(cs.num_atoms) if config.geometry is None \
        else _load_geometry(config.geometry)
    if g.num_atoms != cs.num_atoms:
        raise InvalidInputError(f"geometry has {g.num_atoms} atoms, state has {cs.num_atoms}")
    rate = total_rate(embed_collective(cs), cfg, g)
    single = single_atom_rate(cfg)
    return Table("rate",
                 ["N", "n_i", "n_l", "n_f", "total_rate", "single_atom_rate", "enhancement"],
                 [[cs.num_atoms, cs.n_i, cs.n_l, cs.n_f, rate, single,
                   rate / (cs.num_atoms * single)]])


_DISPATCH = {
    "scan-w": _cmd_scan_w,
    "scan-partitions": _cmd_scan_partitions,
    "dicke-corr": _cmd_dicke_corr,
    "geometry-fidelity": _cmd_geometry_fidelity,
    "rate": _cmd_rate,
}


def build_table(config: RunConfig) -> Table:
    if config.command not in _DISPATCH:
        raise InvalidInputError(f"unknown command {config.command!r}")
    if config.geometry is not None and config.command not in ("rate", "geometry-fidelity"):
        raise InvalidInputError("--geometry only applies to rate and geometry-fidelity")
    if config.fmt not in ("csv", "json"):
        raise InvalidInputError(f"unknown format {config.fmt!r}")
    for name in ("n", "n_max"):
        value = getattr(config, name)
        if value is not None and value < 1:
            raise InvalidInputError(f"--{name.replace('_', '-')} must be positive")
    if not config.tolerance > 0:
        raise InvalidInputError("--tolerance must be positive")
    return _DISPATCH[config.command](config)


def run(config: RunConfig, stdout=None, stderr=None) -> int:
    """Execute one command and return its exit status."""
    stdout = sys.stdout if stdout is None else stdout
    stderr = sys.stderr if stderr is None else stderr
    try:
        table = build_table(config)
    except SingularDenominatorError as exc:
        print(f"superraman: {exc}", file=stderr)
        return EXIT_SINGULAR
    except ResourceLimitError as exc:
        print(f"superraman: {exc}", file=stderr)
        return EXIT_RESOURCE
    except (InvalidInputError, NoTransitionError, DegenerateInputError) as exc:
        print(f"superraman: {exc}", file=stderr)
        return EXIT_INVALID

    text = render_json(table) if config.fmt == "json" else render_csv(table)
    if config.out is None:
        stdout.write(text)
    else:
        try:
            with open(config.out, "w", encoding="utf-8", newline="") as fh:
                fh.write(text)
        except OSError as exc:
            print(f"superraman: cannot write output: {exc}", file=stderr)
            return EXIT_INVALID

    worst = table.max_residual()
    if worst > config.tolerance:
        print(f"superraman: max residual {worst:.3e} exceeds tolerance {config.tolerance:.3e}",
              file=stderr)
        return EXIT_RESIDUAL
    return EXIT_OK


def _counts(text: str) -> tuple[int, int, int]:
    try:
        parts = tuple(int(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected n_i,n_l,n_f, got {text!r}") from None
    if len(parts) != 3 or min(parts) < 0:
        raise argparse.ArgumentTypeError(f"expected three nonnegative integers, got {text!r}")
    return parts


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="superraman",
        description="Brute-force checks of entanglement-enhanced stimulated Raman scattering.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("--n", type=int, help="number of atoms for single-N commands")
    parser.add_argument("--n-max", type=int, help="largest N in a scan")
    parser.add_argument("--counts", type=_counts, help="occupations n_i,n_l,n_f for 'rate'")
    parser.add_argument("--detuning", type=float, default=1.0)
    parser.add_argument("--field-plus", type=float, default=1.0)
    parser.add_argument("--field-minus", type=float, default=1.0)
    parser.add_argument("--dipole-il", type=float, default=1.0)
    parser.add_argument("--dipole-fl", type=float, default=1.0)
    parser.add_argument("--geometry", type=Path, help="JSON geometry file")
    parser.add_argument("--format", dest="fmt", choices=("csv", "json"), default="csv")
    parser.add_argument("--out", type=Path, help="output path (default: stdout)")
    parser.add_argument("--tolerance", type=float, default=1e-9,
                        help="largest acceptable residual (default: 1e-9)")
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        config = RunConfig(
            command=args.command, n=args.n, n_max=args.n_max, counts=args.counts,
            detuning=args.detuning, field_plus=args.field_plus, field_minus=args.field_minus,
            dipole_il=args.dipole_il, dipole_fl=args.dipole_fl, geometry=args.geometry,
            fmt=args.fmt, out=args.out, tolerance=args.tolerance,
        )
    except (InvalidInputError, ValueError) as exc:
        print(f"superraman: {exc}", file=sys.stderr)
        return EXIT_INVALID
    return run(config)


if __name__ == "__main__":
    sys.exit(main())
