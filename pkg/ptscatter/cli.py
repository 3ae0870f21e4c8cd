"""
Command-line front end.

Subcommands emit tables as CSV (default) or JSON:

    potential     r, V_GPT, V_extended
    bound-states  nu, E, N (closed form), N (quadrature), Schrodinger residual
    smatrix       k, S, |S|, delta, S_GPT
    phase-shift   unwrapped delta(k) for both potentials
    verify        PASS/FAIL/INFO report; exit 2 on any FAIL

Exit codes: 0 success, 1 usage or parameter error, 2 verification failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import math
import sys
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np

from . import __version__, potential, scattering, spectrum, verify
from .config import load_config
from .exceptions import PtscatterError, UsageError
from .grid import RadialGrid
from .potential import PotentialKind, PotentialParams

logger = logging.getLogger(__name__)

COMMANDS = ("potential", "bound-states", "smatrix", "phase-shift", "verify")

COLUMNS = {
    "potential": ["r", "v_gpt", "v_extended"],
    "bound-states": ["nu", "energy", "norm_analytic", "norm_quadrature", "schrodinger_residual"],
    "smatrix": ["k", "re_s", "im_s", "abs_s", "delta", "re_s_gpt", "im_s_gpt"],
    "phase-shift": ["k", "delta_gpt", "delta_extended"],
    "verify": ["check", "status", "measured", "tolerance", "detail"],
}

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_VERIFY_FAILED = 2


# ============================================================================
# RUN CONFIGURATION
# ============================================================================

@dataclass
class RunConfig:
    command: str
    params: Optional[PotentialParams]
    kind: PotentialKind = PotentialKind.EXTENDED
    k_min: float = 0.1
    k_max: float = 5.0
    k_steps: int = 50
    r_min: float = 0.05
    r_max: float = 10.0
    r_steps: int = 200
    format: str = "csv"
    output_path: Optional[str] = None
    workers: Optional[int] = None
    settings: Dict[str, Any] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.command not in COMMANDS:
            raise UsageError(f"unknown command {self.command!r}")
        if self.format not in ("csv", "json"):
            raise UsageError(f"format must be csv or json, got {self.format!r}")
        if self.params is None and self.command != "verify":
            raise UsageError(f"{self.command} needs --A and --B (constraint B > A+1 > 1)")
        if self.command in ("smatrix", "phase-shift"):
            _check_range("k", self.k_min, self.k_max, self.k_steps)
            if self.k_min <= scattering.K_MIN:
                raise UsageError(f"--k-min must exceed the threshold cut {scattering.K_MIN:g}")
        if self.command == "potential":
            _check_range("r", self.r_min, self.r_max, self.r_steps)
            if self.r_min <= 0.0:
                raise UsageError("--r-min must be positive")

    @property
    def k_values(self) -> np.ndarray:
        return np.linspace(self.k_min, self.k_max, self.k_steps)

    @property
    def r_values(self) -> np.ndarray:
        return np.linspace(self.r_min, self.r_max, self.r_steps)


def _check_range(name: str, low: float, high: float, steps: int) -> None:
    if not (high > low):
        raise UsageError(f"--{name}-max must exceed --{name}-min, got [{low}, {high}]")
    if steps < 2:
        raise UsageError(f"--{name}-steps must be at least 2, got {steps}")


# ============================================================================
# TABLE BUILDERS
# ============================================================================

def _potential_rows(config: RunConfig) -> List[list]:
    r = config.r_values
    v_gpt = potential.v_from_w(PotentialKind.GPT, config.params, r)
    v_ext = potential.v_from_w(PotentialKind.EXTENDED, config.params, r)
    return [[x, g, e] for x, g, e in zip(r, v_gpt, v_ext)]


def _bound_state_rows(config: RunConfig) -> List[list]:
    params = config.params
    grid_spec = config.settings.get("verify", {}).get("residual_grid", {})
    grid = RadialGrid.with_step(
        grid_spec.get("r_min", 0.05), grid_spec.get("r_max", 20.0), grid_spec.get("step", 1e-3)
    )
    rows = []
    for state in spectrum.bound_states(params):
        rows.append([
            state.nu,
            state.energy,
            state.norm_const,
            spectrum.quadrature_norm(params, state.nu),
            spectrum.schrodinger_residual(params, state.nu, grid),
        ])
    return rows


def _smatrix_rows(config: RunConfig) -> List[list]:
    ks = config.k_values
    main = scattering.sweep(config.params, ks, config.kind, config.workers)
    gpt = scattering.sweep(config.params, ks, PotentialKind.GPT, config.workers)
    return [
        [p.k, p.s_value.real, p.s_value.imag, abs(p.s_value), p.phase_shift, g.s_value.real, g.s_value.imag]
        for p, g in zip(main, gpt)
    ]


def _phase_shift_rows(config: RunConfig) -> List[list]:
    ks = config.k_values
    gpt = scattering.sweep(config.params, ks, PotentialKind.GPT, config.workers)
    ext = scattering.sweep(config.params, ks, PotentialKind.EXTENDED, config.workers)
    delta_gpt = scattering.unwrap_phases([p.phase_shift for p in gpt])
    delta_ext = scattering.unwrap_phases([p.phase_shift for p in ext])
    return [[k, g, e] for k, g, e in zip(ks, delta_gpt, delta_ext)]


def _fixtures(config: RunConfig) -> List[PotentialParams]:
    if config.params is not None:
        return [config.params]
    return [PotentialParams(float(a), float(b)) for a, b in config.settings.get("fixtures", [])]


def _verify_rows(config: RunConfig) -> Tuple[List[list], bool]:
    results = verify.run_checks(_fixtures(config), config.settings)
    for result in results:
        mark = "✓" if result.status == verify.PASS else ("✗" if result.failed else "·")
        logger.info("  %s %s: %.3g", mark, result.name, result.measured)
    rows = [[r.name, r.status, r.measured, r.tolerance, r.detail] for r in results]
    return rows, verify.any_failed(results)


# ============================================================================
# OUTPUT FORMATTING
# ============================================================================

def format_value(value: Any) -> str:
    """Locale-free text for one table cell; floats get 17 significant digits."""
    if isinstance(value, (bool, np.bool_)):
        return str(bool(value))
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return format(float(value), ".17g")
    return str(value)


def _json_value(value: Any) -> Any:
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        value = float(value)
        return value if math.isfinite(value) else None
    return value


def render_csv(columns: Sequence[str], rows: Sequence[Sequence[Any]]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([format_value(v) for v in row])
    return buffer.getvalue()


def render_json(config: RunConfig, columns: Sequence[str], rows: Sequence[Sequence[Any]]) -> str:
    if config.params is not None:
        params = {"A": config.params.A, "B": config.params.B}
    else:
        params = {"fixtures": [[p.A, p.B] for p in _fixtures(config)]}
    document = {
        "command": config.command,
        "params": params,
        "rows": [{c: _json_value(v) for c, v in zip(columns, row)} for row in rows],
    }
    return json.dumps(document, indent=2) + "\n"


def _emit(text: str, output_path: Optional[str]) -> None:
    if output_path is None:
        sys.stdout.write(text)
        return
    try:
        with open(output_path, "w", encoding="utf-8", newline="") as f:
            f.write(text)
    except OSError as e:
        raise UsageError(f"cannot write output {output_path}: {e}") from e


# ============================================================================
# ENTRY POINTS
# ============================================================================

def run(config: RunConfig) -> int:
    """Build the table for config.command, emit it, and return the exit status."""
    failed = False
    if config.command == "potential":
        rows = _potential_rows(config)
    elif config.command == "bound-states":
        rows = _bound_state_rows(config)
    elif config.command == "smatrix":
        rows = _smatrix_rows(config)
    elif config.command == "phase-shift":
        rows = _phase_shift_rows(config)
    else:
        rows, failed = _verify_rows(config)

    columns = COLUMNS[config.command]
    text = render_csv(columns, rows) if config.format == "csv" else render_json(config, columns, rows)
    _emit(text, config.output_path)

    if config.command == "verify":
        total = len(rows)
        failures = sum(1 for row in rows if row[1] == verify.FAIL)
        if failed:
            print(f"✗ {failures} of {total} checks failed", file=sys.stderr)
            return EXIT_VERIFY_FAILED
        print(f"✓ all {total} checks passed", file=sys.stderr)
    return EXIT_OK


class _ArgumentParser(argparse.ArgumentParser):
    """ArgumentParser whose usage errors exit with status 1."""

    def error(self, message: str) -> None:
        self.print_usage(sys.stderr)
        print(f"Error: {message}", file=sys.stderr)
        sys.exit(EXIT_USAGE)


def parse_args(argv: Optional[Sequence[str]] = None) -> argparse.Namespace:
    """Parse command line arguments."""
    common = _ArgumentParser(add_help=False)
    common.add_argument("--A", type=float, dest="A", help="Potential parameter A")
    common.add_argument("--B", type=float, dest="B", help="Potential parameter B (B > A+1 > 1)")
    common.add_argument("--format", choices=["csv", "json"], default="csv", help="Output format (default: csv)")
    common.add_argument("--output", help="Write to this file instead of stdout")
    common.add_argument("--config", help="YAML file overriding packaged defaults")
    common.add_argument("--verbose", action="store_true", help="Progress messages on stderr")

    sweep = _ArgumentParser(add_help=False)
    sweep.add_argument("--k-min", type=float)
    sweep.add_argument("--k-max", type=float)
    sweep.add_argument("--k-steps", type=int)
    sweep.add_argument("--kind", choices=[k.value for k in PotentialKind], default="extended",
                       help="Potential for the main S columns (default: extended)")
    sweep.add_argument("--workers", type=int, help="Evaluate sweep points on N threads")

    parser = _ArgumentParser(
        prog="ptscatter",
        description="Bound states and s-wave scattering of the rationally extended Poschl-Teller potential",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    pot = sub.add_parser("potential", parents=[common], help="Tabulate V_GPT and V_extended")
    pot.add_argument("--r-min", type=float)
    pot.add_argument("--r-max", type=float)
    pot.add_argument("--r-steps", type=int)

    sub.add_parser("bound-states", parents=[common], help="Bound-state energies and normalizations")
    sub.add_parser("smatrix", parents=[common, sweep], help="S-matrix sweep")
    sub.add_parser("phase-shift", parents=[common, sweep], help="Unwrapped phase shifts")
    sub.add_parser("verify", parents=[common], help="Verification report")

    return parser.parse_args(argv)


def build_run_config(args: argparse.Namespace) -> RunConfig:
    """Merge parsed flags over the loaded configuration."""
    settings = load_config(args.config)
    defaults = settings.get("sweep", {})

    def pick(name: str, fallback: float):
        value = getattr(args, name, None)
        return defaults.get(name, fallback) if value is None else value

    params = None
    if args.A is not None or args.B is not None:
        if args.A is None or args.B is None:
            raise UsageError("--A and --B must be given together (constraint B > A+1 > 1)")
        params = PotentialParams(args.A, args.B)

    return RunConfig(
        command=args.command,
        params=params,
        kind=PotentialKind(getattr(args, "kind", "extended")),
        k_min=float(pick("k_min", 0.1)),
        k_max=float(pick("k_max", 5.0)),
        k_steps=int(pick("k_steps", 50)),
        r_min=float(pick("r_min", 0.05)),
        r_max=float(pick("r_max", 10.0)),
        r_steps=int(pick("r_steps", 200)),
        format=args.format,
        output_path=args.output,
        workers=getattr(args, "workers", None),
        settings=settings,
    )


def configure_logging(verbose: bool) -> None:
    logging.basicConfig(
        level=logging.INFO if verbose else logging.WARNING,
        stream=sys.stderr,
        format="%(message)s",
    )


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = parse_args(argv)
    configure_logging(args.verbose)
    try:
        return run(build_run_config(args))
    except PtscatterError as e:
        print(f"Error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
