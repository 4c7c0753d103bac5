"""Parameter sweeps, Monte Carlo validation, and report emission.

Evaluates the closed-form sensitivity budget over a log-spaced gain grid
for several scene return fractions, checks the analytic noise floor
against a Poisson fringe Monte Carlo, and writes the results as a CSV
table plus SVG figures.
"""

from __future__ import annotations

import io
import math
from dataclasses import dataclass, replace
from itertools import pairwise

import numpy as np

from .errors import DegenerateError, DomainError
from .fringe import derive_stream_seed, sample_counts
from .physics import (
    DirectConfig,
    PlumeState,
    SensorConfig,
    mean_signal_photons,
    photon_energy,
    relative_sensitivity,
    sensitivity_direct,
    sensitivity_without_detection,
    transmittance,
)
from .spectra import METHANE_MIR, METHANE_SWIR, CrossSectionPair

CSV_HEADER = "gain,alpha,delta_x_nd_ppm_m,delta_x_direct_ppm_m,r_s"

DEFAULT_ALPHA_VALUES = (1.0e-8, 1.0e-6, 1.0e-4, 1.0e-2, 1.0)


@dataclass(frozen=True)
class GainGrid:
    """Log-spaced parametric gain grid.

    Equal minimum and maximum collapse to a single point; otherwise the
    grid carries points_per_decade values per decade, endpoints included.
    """

    minimum: float = 1.0e-8
    maximum: float = 1.0e-2
    points_per_decade: int = 10

    def __post_init__(self) -> None:
        if not self.minimum > 0:
            raise ValueError(f"minimum must be positive, got {self.minimum}")
        if self.maximum < self.minimum:
            raise ValueError("maximum must be at least minimum")
        if self.points_per_decade < 1:
            raise ValueError(
                f"points_per_decade must be at least 1, got {self.points_per_decade}"
            )

    def values(self) -> np.ndarray:
        if self.maximum == self.minimum:
            return np.array([self.minimum])
        lo = math.log10(self.minimum)
        hi = math.log10(self.maximum)
        count = int(round((hi - lo) * self.points_per_decade)) + 1
        return np.logspace(lo, hi, max(count, 2))


@dataclass(frozen=True)
class SweepSpec:
    """Inputs for one sensitivity sweep.

    The base sensor supplies every operating parameter except gain and
    alpha, which the grid overrides cell by cell.  The matched direct
    instrument shares eta, alpha, integration time, probe power, and the
    detected photon energy, so the comparison isolates the cross-section
    advantage and the parametric gain.
    """

    gain_grid: GainGrid
    alpha_values: tuple[float, ...]
    base_sensor: SensorConfig
    plume_depth: float = 1.0
    n_air: float = 2.53e25
    sigma_mir: CrossSectionPair = METHANE_MIR
    sigma_swir: CrossSectionPair = METHANE_SWIR

    def __post_init__(self) -> None:
        if not self.alpha_values:
            raise ValueError("alpha_values must be non-empty")
        for alpha in self.alpha_values:
            if not 0 < alpha <= 1:
                raise ValueError(f"alpha values must be within (0, 1], got {alpha}")
        if not self.plume_depth > 0:
            raise ValueError(f"plume_depth must be positive, got {self.plume_depth}")
        if not self.n_air > 0:
            raise ValueError(f"n_air must be positive, got {self.n_air}")


@dataclass(frozen=True)
class SweepRow:
    """One grid cell: sensitivities in ppm m and the sensitivity ratio."""

    gain: float
    alpha: float
    delta_x_nd: float      # ppm m, interferometric sensor
    delta_x_direct: float  # ppm m, matched direct instrument
    r_s: float             # delta_x_direct / delta_x_nd, dimensionless


@dataclass(frozen=True)
class MonteCarloSpec:
    """Inputs for the empirical sensitivity estimate."""

    sensor: SensorConfig
    plume: PlumeState
    sigma_mir: CrossSectionPair = METHANE_MIR
    trials: int = 1000
    rng_seed: int = 0

    def __post_init__(self) -> None:
        if self.trials < 100:
            raise ValueError(f"trials must be at least 100, got {self.trials}")
        if self.rng_seed < 0:
            raise ValueError(f"rng_seed must be non-negative, got {self.rng_seed}")


@dataclass(frozen=True)
class EmpiricalSensitivity:
    """Monte Carlo mixing-ratio noise with a bootstrap error bar."""

    delta_x: float            # std of retrieved mixing ratio, dimensionless
    delta_x_std: float        # bootstrap 1-sigma on delta_x
    mean_mixing_ratio: float
    trials_used: int          # trials with positive fringe amplitudes
    trials: int


def run_sweep(spec: SweepSpec) -> list[SweepRow]:
    """Evaluate both sensitivities over the (alpha, gain) grid.

    Rows come back ordered by alpha then gain, ascending.  Degenerate or
    out-of-domain physics errors propagate annotated with the cell.
    """
    rows: list[SweepRow] = []
    to_ppm_m = spec.plume_depth * 1.0e6
    for alpha in sorted(spec.alpha_values):
        direct = DirectConfig(
            eta=spec.base_sensor.eta,
            alpha=alpha,
            t_int=spec.base_sensor.t_int,
            power=spec.base_sensor.p_idler,
            lambda_probe=spec.base_sensor.lambda_signal,
        )
        for gain in spec.gain_grid.values():
            gain = float(gain)
            try:
                sensor = replace(spec.base_sensor, gain=gain, alpha=alpha)
                delta_nd = sensitivity_without_detection(
                    sensor, spec.plume_depth, spec.n_air, spec.sigma_mir
                )
                delta_direct = sensitivity_direct(
                    direct, spec.plume_depth, spec.n_air, spec.sigma_swir
                )
                ratio = relative_sensitivity(spec.sigma_mir, spec.sigma_swir, gain)
            except (DomainError, DegenerateError) as exc:
                raise type(exc)(f"sweep cell gain={gain:g}, alpha={alpha:g}: {exc}") from exc
            rows.append(
                SweepRow(
                    gain=gain,
                    alpha=alpha,
                    delta_x_nd=delta_nd * to_ppm_m,
                    delta_x_direct=delta_direct * to_ppm_m,
                    r_s=ratio,
                )
            )
    return rows


def crossover_gain(rows) -> float | None:
    """Gain where the sensitivity ratio crosses 1, from the swept rows.

    Log-log interpolation between the bracketing grid cells; exact for
    the sqrt(gain) power law the ratio follows.  None when the sweep
    never reaches the crossover.
    """
    series = sorted({row.gain: row.r_s for row in rows}.items())
    for (g_lo, r_lo), (g_hi, r_hi) in pairwise(series):
        if r_lo == 1.0:
            return g_lo
        if r_hi == 1.0:
            return g_hi
        if (r_lo - 1.0) * (r_hi - 1.0) < 0:
            slope = (math.log10(r_hi) - math.log10(r_lo)) / (
                math.log10(g_hi) - math.log10(g_lo)
            )
            return 10.0 ** (math.log10(g_lo) - math.log10(r_lo) / slope)
    if series and series[-1][1] == 1.0:
        return series[-1][0]
    return None


def run_monte_carlo(spec: MonteCarloSpec) -> EmpiricalSensitivity:
    """Empirical mixing-ratio noise from simulated fringe extrema.

    Each trial draws Poisson counts at the fringe maximum and minimum for
    the on and off probe settings, halving the integration time between
    the two extrema.  The fringe amplitude difference retrieves a DAOD
    and a mixing ratio per trial; the spread across trials is the
    empirical sensitivity, with a bootstrap error bar.  Trials whose
    sampled amplitude is non-positive cannot be inverted and are dropped
    (trials_used reports the survivors).
    """
    sensor = spec.sensor
    plume = spec.plume
    if not plume.depth > 0:
        raise DomainError(f"plume depth must be positive, got {plume.depth}")
    differential = spec.sigma_mir.differential
    if differential == 0:
        raise DegenerateError(
            "sigma_on equals sigma_off; the differential cross section vanishes"
        )

    n_lo = (
        sensor.eta * sensor.gain * sensor.t_int * sensor.p_idler
        / photon_energy(sensor.lambda_signal)
    )
    extremum_means = []
    for sigma in (spec.sigma_mir.sigma_on, spec.sigma_mir.sigma_off):
        t_value = transmittance(plume, sigma)
        n_sig = mean_signal_photons(sensor, t_value)
        cross = 2.0 * math.sqrt(n_lo * n_sig)
        extremum_means.append((
            0.5 * (n_lo + n_sig + cross),
            0.5 * (n_lo + n_sig - cross),
        ))
    (max_on, min_on), (max_off, min_off) = extremum_means
    if min(max_on, min_on, max_off, min_off) < 10.0:
        raise DegenerateError(
            "a fringe extremum mean falls below 10 counts; the Gaussian treatment "
            "of Poisson noise is not meaningful there"
        )

    rng = np.random.default_rng(derive_stream_seed(spec.rng_seed, 0))
    amp_on = (
        sample_counts(rng, max_on, spec.trials) - sample_counts(rng, min_on, spec.trials)
    ).astype(float)
    amp_off = (
        sample_counts(rng, max_off, spec.trials) - sample_counts(rng, min_off, spec.trials)
    ).astype(float)
    valid = (amp_on > 0) & (amp_off > 0)
    if int(valid.sum()) < 2:
        raise DegenerateError("fewer than 2 trials produced positive fringe amplitudes")
    daod = np.log(amp_off[valid] / amp_on[valid])
    ratios = daod / (plume.depth * plume.n_air * differential)

    delta_x = float(np.std(ratios, ddof=1))
    boot_rng = np.random.default_rng(derive_stream_seed(spec.rng_seed, 1))
    resamples = np.empty(200)
    for i in range(resamples.size):
        picks = boot_rng.integers(0, ratios.size, ratios.size)
        resamples[i] = np.std(ratios[picks], ddof=1)
    return EmpiricalSensitivity(
        delta_x=delta_x,
        delta_x_std=float(np.std(resamples, ddof=1)),
        mean_mixing_ratio=float(np.mean(ratios)),
        trials_used=int(ratios.size),
        trials=spec.trials,
    )


def emit_csv(rows, destination) -> int:
    """Write sweep rows as CSV with 9-significant-digit scientific values.

    LF line endings regardless of platform.  Returns bytes written.
    """
    lines = [CSV_HEADER]
    for row in rows:
        lines.append(
            ",".join(
                f"{value:.8E}"
                for value in (row.gain, row.alpha, row.delta_x_nd, row.delta_x_direct, row.r_s)
            )
        )
    payload = "\n".join(lines) + "\n"
    data = payload.encode("ascii")
    if hasattr(destination, "write"):
        destination.write(payload)
    else:
        with open(destination, "w", encoding="ascii", newline="") as fh:
            fh.write(payload)
    return len(data)


PLOT_KINDS = ("rs_vs_gain", "deltax_vs_gain")


def emit_plot(rows, kind: str, destination) -> int:
    """Render a sweep figure to SVG; returns bytes written.

    rs_vs_gain draws the sensitivity ratio against gain with a reference
    line at 1; deltax_vs_gain draws the interferometric sensitivity
    against gain with one curve per alpha.  Both axes are logarithmic.
    """
    rows = list(rows)
    if not rows:
        raise ValueError("rows must be non-empty")
    if kind not in PLOT_KINDS:
        raise ValueError(f"kind must be one of {PLOT_KINDS}, got {kind!r}")

    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, ax = plt.subplots(figsize=(6.4, 4.4))
    try:
        if kind == "rs_vs_gain":
            series = sorted({row.gain: row.r_s for row in rows}.items())
            ax.plot(
                [g for g, _ in series],
                [r for _, r in series],
                marker="o",
                markersize=3,
                color="tab:blue",
                label="interferometric advantage",
            )
            ax.axhline(1.0, color="tab:red", linestyle="--", linewidth=1.0, label="parity")
            ax.set_ylabel("sensitivity ratio, direct / interferometric")
        else:
            alphas = sorted({row.alpha for row in rows})
            for alpha in alphas:
                cells = sorted(
                    (row.gain, row.delta_x_nd) for row in rows if row.alpha == alpha
                )
                ax.plot(
                    [g for g, _ in cells],
                    [d for _, d in cells],
                    marker="o",
                    markersize=3,
                    label=f"return fraction {alpha:g}",
                )
            ax.set_ylabel("minimum detectable methane column (ppm·m)")
        ax.set_xscale("log")
        ax.set_yscale("log")
        ax.set_xlabel("parametric gain (dimensionless)")
        ax.grid(True, which="both", alpha=0.3)
        ax.legend(fontsize=8)
        fig.tight_layout()
        buffer = io.BytesIO()
        fig.savefig(buffer, format="svg")
    finally:
        plt.close(fig)
    data = buffer.getvalue()
    if hasattr(destination, "write"):
        destination.write(data)
    else:
        with open(destination, "wb") as fh:
            fh.write(data)
    return len(data)
