"""Command-line interface.

Subcommands:

    parse-hitran   decode a fixed-width line list and print the records
    xsection       absorption cross section at a wavelength from a line list
    sensitivity    closed-form minimum detectable methane column
    fringe         simulate a fringe scan, fit its visibility, write the CSV
    sweep          sensitivity over a gain grid: CSV plus SVG figures
    monte-carlo    empirical sensitivity from simulated fringe extrema

Exit codes: 0 success, 2 record or JSON parse error, 3 I/O failure,
4 domain, degenerate, configuration, or fit error.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

from . import fringe as fringe_mod
from . import physics, spectra, sweep as sweep_mod
from .config import SEED_ENV_VAR, load_config
from .errors import (
    ConfigError,
    DegenerateError,
    DomainError,
    FieldParseError,
    FitError,
    RecordLengthError,
)

_PARSE_CSV_HEADER = (
    "molecule_id,isotopologue_id,wavenumber,intensity,einstein_a,"
    "gamma_air,gamma_self,lower_state_energy,n_air_exponent,delta_air"
)


def _read_lines(path: str, molecule: int, nu_min: float, nu_max: float, lenient: bool):
    with open(path, "r", encoding="ascii", errors="replace") as fh:
        result = spectra.parse_hitran_file(fh, molecule, nu_min, nu_max, strict=not lenient)
    if result.skipped:
        print(f"skipped {result.skipped} malformed record(s)", file=sys.stderr)
        for message in result.messages:
            print(f"  {message}", file=sys.stderr)
    return result


def cmd_parse_hitran(args) -> int:
    result = _read_lines(args.path, args.molecule, args.nu_min, args.nu_max, args.lenient)
    print(f"records: {len(result.lines)}")
    print(_PARSE_CSV_HEADER)
    for line in result.lines:
        print(
            f"{line.molecule_id},{line.isotopologue_id},{line.wavenumber!r},"
            f"{line.intensity!r},{line.einstein_a!r},{line.gamma_air!r},"
            f"{line.gamma_self!r},{line.lower_state_energy!r},"
            f"{line.n_air_exponent!r},{line.delta_air!r}"
        )
    return 0


def cmd_xsection(args) -> int:
    result = _read_lines(args.path, args.molecule, args.nu_min, args.nu_max, args.lenient)
    env = spectra.EnvironmentConditions(pressure=args.pressure, temperature=args.temperature)
    sigma = spectra.cross_section_at(result.lines, args.wavelength, env)
    print(f"lines: {len(result.lines)} (skipped {result.skipped})")
    print(f"sigma({args.wavelength:.6f} um) = {sigma:.6E} m^2/molecule")
    return 0


def _sensitivity_report(cfg) -> list[str]:
    sensor = cfg.sensor
    plume = cfg.plume
    to_ppm_m = plume.depth * 1.0e6
    photons = physics.mean_signal_photons(sensor, 1.0)
    delta_nd = physics.sensitivity_without_detection(
        sensor, plume.depth, plume.n_air, cfg.sigma_mir
    )
    out = [
        "method: interferometric (no detection at the probe wavelength)",
        f"  mean cross-term photons at T=1: {photons:.6e}",
        f"  shot-noise SNR at T=1: {physics.snr_without_detection(photons):.6e}",
        f"  minimum detectable methane column: {delta_nd * to_ppm_m:.6g} ppm·m",
    ]
    return out


def _direct_report(cfg) -> tuple[list[str], float]:
    sensor = cfg.sensor
    plume = cfg.plume
    to_ppm_m = plume.depth * 1.0e6
    direct = physics.DirectConfig(
        eta=sensor.eta,
        alpha=sensor.alpha,
        t_int=sensor.t_int,
        power=sensor.p_idler,
        lambda_probe=sensor.lambda_signal,
    )
    photons = direct.eta * direct.alpha * direct.t_int * direct.power / physics.photon_energy(
        direct.lambda_probe
    )
    delta_direct = physics.sensitivity_direct(direct, plume.depth, plume.n_air, cfg.sigma_swir)
    out = [
        "method: direct detection",
        f"  mean detected photons at T=1: {photons:.6e}",
        f"  shot-noise SNR at T=1: {math.sqrt(photons):.6e}",
        f"  minimum detectable methane column: {delta_direct * to_ppm_m:.6g} ppm·m",
    ]
    return out, delta_direct


def cmd_sensitivity(args) -> int:
    cfg = load_config(args.config)
    if args.method in ("nd", "both"):
        for line in _sensitivity_report(cfg):
            print(line)
    if args.method in ("direct", "both"):
        lines, _ = _direct_report(cfg)
        for line in lines:
            print(line)
    if args.method == "both":
        ratio = physics.relative_sensitivity(cfg.sigma_mir, cfg.sigma_swir, cfg.sensor.gain)
        print(f"relative sensitivity (direct / interferometric): {ratio:.6e}")
    return 0


def cmd_fringe(args) -> int:
    overrides: dict = {}
    if args.alpha is not None:
        overrides["sensor.alpha"] = args.alpha
    if args.counts_scale is not None:
        overrides["fringe.counts_scale"] = args.counts_scale
    if args.steps is not None:
        overrides["fringe.steps"] = args.steps
    if args.scan_length is not None:
        overrides["fringe.scan_length"] = args.scan_length
    if args.seed is not None:
        overrides["fringe.rng_seed"] = args.seed
    cfg = load_config(args.config, overrides)
    scan = fringe_mod.simulate_scan(cfg.fringe, args.transmittance)
    if args.out:
        written = scan.to_csv(args.out)
        print(f"wrote {args.out} ({written} bytes)")
    estimate = fringe_mod.estimate_visibility(scan, lambda_hint=cfg.fringe.lambda_idler)
    print(f"visibility: {estimate.visibility:.6f} ± {estimate.visibility_std:.6f}")
    print(f"period: {estimate.period:.6f} um")
    print(f"mean level: {estimate.mean_level:.4f} counts per step")
    return 0


def cmd_sweep(args) -> int:
    cfg = load_config(args.config)
    rows = sweep_mod.run_sweep(cfg.sweep)
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    csv_path = out_dir / "sweep.csv"
    csv_bytes = sweep_mod.emit_csv(rows, csv_path)
    print(f"wrote {csv_path} ({csv_bytes} bytes, {len(rows)} rows)")
    for kind in sweep_mod.PLOT_KINDS:
        svg_path = out_dir / f"{kind}.svg"
        svg_bytes = sweep_mod.emit_plot(rows, kind, svg_path)
        print(f"wrote {svg_path} ({svg_bytes} bytes)")
    crossover = sweep_mod.crossover_gain(rows)
    if crossover is None:
        print("crossover gain at sensitivity parity: not reached within the grid")
    else:
        print(f"crossover gain at sensitivity parity: {crossover:.6e}")
    return 0


def cmd_monte_carlo(args) -> int:
    overrides: dict = {}
    if args.trials is not None:
        overrides["monte_carlo.trials"] = args.trials
    if args.seed is not None:
        overrides["monte_carlo.rng_seed"] = args.seed
    cfg = load_config(args.config, overrides)
    result = sweep_mod.run_monte_carlo(cfg.monte_carlo)
    analytic = physics.sensitivity_without_detection(
        cfg.sensor, cfg.plume.depth, cfg.plume.n_air, cfg.sigma_mir
    )
    to_ppm_m = cfg.plume.depth * 1.0e6
    print(f"trials: {result.trials} (used {result.trials_used})")
    print(
        f"empirical delta_x: {result.delta_x * to_ppm_m:.6g} ppm·m "
        f"(bootstrap ± {result.delta_x_std * to_ppm_m:.3g})"
    )
    print(f"analytic delta_x: {analytic * to_ppm_m:.6g} ppm·m")
    print(f"empirical / analytic: {result.delta_x / analytic:.4f}")
    print(f"mean retrieved mixing ratio: {result.mean_mixing_ratio:.4e}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nlint",
        description=(
            "Simulation and sensitivity toolkit for a double-pass parametric "
            "methane sensor that reads mid-infrared absorption at a short-wave "
            "infrared detector."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_config(p):
        p.add_argument("--config", help="JSON run configuration file")

    p = sub.add_parser("parse-hitran", help="decode a fixed-width line list")
    p.add_argument("path", help="line-list file (160-character records)")
    p.add_argument("--molecule", type=int, default=spectra.CH4_MOLECULE_ID,
                   help="molecule id filter (default %(default)s, methane)")
    p.add_argument("--nu-min", type=float, default=0.0,
                   help="lower wavenumber bound, cm-1 (default %(default)s)")
    p.add_argument("--nu-max", type=float, default=math.inf,
                   help="upper wavenumber bound, cm-1 (default unlimited)")
    p.add_argument("--lenient", action="store_true",
                   help="skip malformed records instead of aborting")
    p.set_defaults(func=cmd_parse_hitran)

    p = sub.add_parser("xsection", help="cross section at a wavelength")
    p.add_argument("path", help="line-list file (160-character records)")
    p.add_argument("--wavelength", type=float, required=True,
                   help="evaluation wavelength, um")
    p.add_argument("--molecule", type=int, default=spectra.CH4_MOLECULE_ID,
                   help="molecule id filter (default %(default)s, methane)")
    p.add_argument("--pressure", type=float, default=1.0,
                   help="ambient pressure, atm (default %(default)s)")
    p.add_argument("--temperature", type=float, default=spectra.T_REF,
                   help="ambient temperature, K (default %(default)s)")
    p.add_argument("--nu-min", type=float, default=0.0,
                   help="lower wavenumber bound, cm-1 (default %(default)s)")
    p.add_argument("--nu-max", type=float, default=math.inf,
                   help="upper wavenumber bound, cm-1 (default unlimited)")
    p.add_argument("--lenient", action="store_true",
                   help="skip malformed records instead of aborting")
    p.set_defaults(func=cmd_xsection)

    p = sub.add_parser("sensitivity", help="closed-form detection limits")
    add_config(p)
    p.add_argument("--method", choices=("nd", "direct", "both"), default="nd",
                   help="nd: interferometric sensor; direct: conventional "
                        "instrument; both adds their ratio (default %(default)s)")
    p.set_defaults(func=cmd_sensitivity)

    p = sub.add_parser("fringe", help="simulate and fit one fringe scan")
    add_config(p)
    p.add_argument("--transmittance", type=float, default=1.0,
                   help="one-way gas transmittance in [0, 1] (default %(default)s)")
    p.add_argument("--out", help="write the scan CSV to this file")
    p.add_argument("--alpha", type=float,
                   help="override scene return fraction, dimensionless in (0, 1]")
    p.add_argument("--counts-scale", type=float,
                   help="override mean counts per step, counts")
    p.add_argument("--steps", type=int, help="override number of scan steps")
    p.add_argument("--scan-length", type=float, help="override scanned path, um")
    p.add_argument("--seed", type=int,
                   help=f"override sampling seed (also via {SEED_ENV_VAR})")
    p.set_defaults(func=cmd_fringe)

    p = sub.add_parser("sweep", help="sensitivity sweep with CSV and SVG output")
    add_config(p)
    p.add_argument("--out", required=True,
                   help="output directory for sweep.csv and the SVG figures")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("monte-carlo", help="empirical sensitivity check")
    add_config(p)
    p.add_argument("--trials", type=int, help="override number of trials (at least 100)")
    p.add_argument("--seed", type=int,
                   help=f"override sampling seed (also via {SEED_ENV_VAR})")
    p.set_defaults(func=cmd_monte_carlo)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (RecordLengthError, FieldParseError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (DomainError, DegenerateError, ConfigError, FitError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4


if __name__ == "__main__":
    sys.exit(main())
