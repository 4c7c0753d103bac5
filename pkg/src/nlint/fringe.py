"""Fringe scan simulation and visibility estimation.

Simulates the photon-counting record of a piezo-scanned interference
fringe: the interferometer mirror steps through path increments, the
signal detector accumulates counts per step, and the fringe visibility
is recovered by fitting a cosine model.  The measured visibility maps
back to the weak-arm/local-oscillator intensity ratio and from there to
the round-trip gas transmittance ratio between on and off resonance
probe settings.

Counts are Poisson distributed.  Sampling is deterministic for a given
seed; independent streams for batch work come from derive_stream_seed.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import OptimizeWarning, curve_fit

from .errors import AmbiguityWarning, DomainError, FitError, ModelRegimeWarning
from .physics import SensorConfig

# Above this expected count a rounded Gaussian with matched mean and
# variance replaces the Poisson draw; the distributions are then
# indistinguishable and the Gaussian sampler stays O(1) per draw.
GAUSSIAN_COUNT_THRESHOLD = 1.0e6

_MASK64 = (1 << 64) - 1

CSV_HEADER = "position_um,expected,sampled"


def derive_stream_seed(seed: int, index: int) -> int:
    """Derive the seed of substream index from a master seed.

    XORs the index into the seed and applies a 64-bit finalising mix
    (splitmix64), so neighbouring indices give uncorrelated streams.
    """
    if seed < 0 or index < 0:
        raise DomainError("seed and index must be non-negative")
    z = ((seed & _MASK64) ^ (index & _MASK64)) & _MASK64
    z = (z + 0x9E3779B97F4A7C15) & _MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return (z ^ (z >> 31)) & _MASK64


def sample_counts(rng: np.random.Generator, mean, size=None):
    """Draw photon counts with the given mean.

    Poisson for modest means; above GAUSSIAN_COUNT_THRESHOLD a rounded
    normal with matched mean and variance, clipped at zero.
    """
    mean = float(mean)
    if mean < 0:
        raise DomainError(f"mean count must be non-negative, got {mean}")
    if mean > GAUSSIAN_COUNT_THRESHOLD:
        draw = rng.normal(mean, math.sqrt(mean), size)
        return np.maximum(np.rint(draw), 0.0).astype(np.int64)
    return rng.poisson(mean, size)


@dataclass(frozen=True)
class FringeScanConfig:
    """Scan plan for one fringe acquisition.

    sensor supplies the return fraction alpha; lambda_idler (um) sets
    the fringe period in mirror path increment; scan_length (um) is the
    total scanned path; steps the number of samples; counts_scale the
    mean counts per step at zero fringe contrast; phase_offset (rad) the
    fringe phase at zero increment; rng_seed the sampling seed.
    """

    sensor: SensorConfig
    lambda_idler: float
    scan_length: float
    steps: int
    counts_scale: float
    phase_offset: float = 0.0
    rng_seed: int = 0

    def __post_init__(self) -> None:
        if not self.lambda_idler > 0:
            raise ValueError(f"lambda_idler must be positive, got {self.lambda_idler}")
        if not self.scan_length > 0:
            raise ValueError(f"scan_length must be positive, got {self.scan_length}")
        if self.steps < 8:
            raise ValueError(f"steps must be at least 8, got {self.steps}")
        if self.counts_scale < 0:
            raise ValueError(f"counts_scale must be non-negative, got {self.counts_scale}")
        if self.rng_seed < 0:
            raise ValueError(f"rng_seed must be non-negative, got {self.rng_seed}")


@dataclass(frozen=True)
class FringeScan:
    """Positions (um), expected mean counts, and sampled integer counts.

    sampled is empty for a noiseless scan.  Arrays are normalised to
    read-only numpy arrays on construction.
    """

    positions: np.ndarray
    expected: np.ndarray
    sampled: np.ndarray = field(default_factory=lambda: np.empty(0, dtype=np.int64))

    def __post_init__(self) -> None:
        positions = np.asarray(self.positions, dtype=float)
        expected = np.asarray(self.expected, dtype=float)
        sampled = np.asarray(self.sampled, dtype=np.int64)
        if positions.ndim != 1 or positions.shape != expected.shape:
            raise ValueError("positions and expected must be 1-d arrays of equal length")
        if sampled.size and sampled.shape != positions.shape:
            raise ValueError("sampled must be empty or match positions in length")
        if expected.size and expected.min() < 0:
            raise ValueError("expected counts must be non-negative")
        if sampled.size and sampled.min() < 0:
            raise ValueError("sampled counts must be non-negative")
        for name, arr in (("positions", positions), ("expected", expected), ("sampled", sampled)):
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)

    def to_csv(self, destination) -> int:
        """Write the scan as CSV (LF line endings); returns bytes written.

        Floats are rendered with repr so a read-back is bit exact.  The
        sampled column is left empty for a noiseless scan.
        """
        rows = [CSV_HEADER]
        has_samples = self.sampled.size > 0
        for i in range(self.positions.size):
            count = str(int(self.sampled[i])) if has_samples else ""
            rows.append(f"{float(self.positions[i])!r},{float(self.expected[i])!r},{count}")
        payload = "\n".join(rows) + "\n"
        data = payload.encode("ascii")
        if hasattr(destination, "write"):
            destination.write(payload)
        else:
            with open(destination, "w", encoding="ascii", newline="") as fh:
                fh.write(payload)
        return len(data)

    @classmethod
    def from_csv(cls, source) -> "FringeScan":
        """Read a scan written by to_csv."""
        if hasattr(source, "read"):
            text = source.read()
        else:
            with open(source, "r", encoding="ascii", newline="") as fh:
                text = fh.read()
        lines = text.splitlines()
        if not lines or lines[0] != CSV_HEADER:
            raise ValueError(f"expected header {CSV_HEADER!r}")
        positions, expected, sampled = [], [], []
        for line in lines[1:]:
            pos_text, exp_text, count_text = line.split(",")
            positions.append(float(pos_text))
            expected.append(float(exp_text))
            if count_text:
                sampled.append(int(count_text))
        if sampled and len(sampled) != len(positions):
            raise ValueError("sampled column must be fully present or fully empty")
        return cls(
            np.asarray(positions, dtype=float),
            np.asarray(expected, dtype=float),
            np.asarray(sampled, dtype=np.int64),
        )


@dataclass(frozen=True)
class VisibilityEstimate:
    """Fitted fringe visibility with its 1-sigma uncertainty.

    period is the fitted fringe period (um) and mean_level the fitted
    mean counts per step.
    """

    visibility: float
    visibility_std: float
    period: float
    mean_level: float

    def __post_init__(self) -> None:
        if not 0 <= self.visibility <= 1:
            raise ValueError(f"visibility must be within [0, 1], got {self.visibility}")
        if self.visibility_std < 0:
            raise ValueError(f"visibility_std must be non-negative, got {self.visibility_std}")
        if not self.period > 0:
            raise ValueError(f"period must be positive, got {self.period}")


@dataclass(frozen=True)
class TransmittanceRatio:
    """On/off transmittance ratio recovered from two visibilities."""

    ratio: float          # T_on / T_off
    ratio_std: float
    daod: float           # ln(T_off / T_on)
    daod_std: float
    r_on: float           # inferred weak-arm intensity ratios
    r_off: float


def visibility_from_intensity_ratio(ratio: float) -> float:
    """Fringe visibility 2 sqrt(r) / (1 + r) for weak-arm ratio r."""
    if ratio < 0:
        raise DomainError(f"intensity ratio must be non-negative, got {ratio}")
    return 2.0 * math.sqrt(ratio) / (1.0 + ratio)


def intensity_ratio_from_visibility(visibility: float) -> float:
    """Invert the visibility relation, returning the r <= 1 root.

    The relation is symmetric under r -> 1/r; the weak-arm assumption
    picks the root at or below 1.
    """
    if not 0 < visibility <= 1:
        raise DomainError(f"visibility must be within (0, 1], got {visibility}")
    slack = math.sqrt(max(0.0, 1.0 - visibility * visibility))
    root = (1.0 - slack) / visibility
    return root * root


def expected_fringe(cfg: FringeScanConfig, transmittance_value: float) -> FringeScan:
    """Noise-free fringe profile over the scan.

    With weak-arm ratio r = alpha * T^2 the normalised fringe is
    (1 + r + 2 sqrt(r) cos(2 pi z / lambda_idler + phase_offset)) / (1 + r),
    scaled to counts_scale mean counts per step.  One fringe period in
    path increment equals the idler wavelength.
    """
    if not 0 <= transmittance_value <= 1:
        raise DomainError(f"transmittance must be within [0, 1], got {transmittance_value}")
    ratio = cfg.sensor.alpha * transmittance_value**2
    if ratio > 0.5:
        warnings.warn(
            f"weak-arm intensity ratio {ratio:g} exceeds 0.5; the local-oscillator "
            "approximation behind the fringe model degrades",
            ModelRegimeWarning,
            stacklevel=2,
        )
    positions = np.linspace(0.0, cfg.scan_length, cfg.steps)
    phase = 2.0 * np.pi * positions / cfg.lambda_idler + cfg.phase_offset
    profile = (1.0 + ratio + 2.0 * math.sqrt(ratio) * np.cos(phase)) / (1.0 + ratio)
    expected = np.maximum(cfg.counts_scale * profile, 0.0)
    return FringeScan(positions, expected)


def simulate_scan(cfg: FringeScanConfig, transmittance_value: float) -> FringeScan:
    """Sample a photon-counting fringe scan; deterministic in rng_seed."""
    scan = expected_fringe(cfg, transmittance_value)
    rng = np.random.default_rng(cfg.rng_seed)
    sampled = np.empty(scan.expected.size, dtype=np.int64)
    for i, mean in enumerate(scan.expected):
        sampled[i] = sample_counts(rng, mean)
    return FringeScan(scan.positions, scan.expected, sampled)


def _period_seed(positions: np.ndarray, counts: np.ndarray) -> float:
    """Dominant period from the count spectrum, for fit initialisation."""
    n = positions.size
    spacing = (positions[-1] - positions[0]) / (n - 1)
    spectrum = np.abs(np.fft.rfft(counts - counts.mean()))
    k = int(np.argmax(spectrum[1:])) + 1
    return float(n * spacing / k)


def estimate_visibility(scan: FringeScan, lambda_hint: float | None = None) -> VisibilityEstimate:
    """Fit mean + amplitude * cos(2 pi z / period + phase) to a scan.

    Sampled counts are used when present, otherwise the expected profile.
    The fit weights each point by its Poisson standard deviation with a
    variance floor of one count.  lambda_hint (um) seeds the period;
    without it a spectral peak does.  Raises FitError when the fit does
    not converge or returns a non-positive mean level.
    """
    counts = np.asarray(scan.sampled if scan.sampled.size else scan.expected, dtype=float)
    positions = np.asarray(scan.positions, dtype=float)
    if counts.size < 8:
        raise ValueError("visibility estimation needs at least 8 scan points")
    if lambda_hint is not None and not lambda_hint > 0:
        raise DomainError(f"lambda_hint must be positive, got {lambda_hint}")

    sigma = np.sqrt(np.maximum(counts, 1.0))
    mean0 = float(counts.mean())
    if float(np.ptp(counts)) <= 1.0e-12 * max(abs(mean0), 1.0):
        # A flat record carries no fringe; report zero visibility with the
        # hint (or the scan span) standing in for the unmeasurable period.
        if mean0 <= 0 and not scan.sampled.size:
            raise FitError("scan mean level is not positive")
        period = float(lambda_hint) if lambda_hint else float(positions[-1] - positions[0])
        return VisibilityEstimate(0.0, 0.0, period, mean0)

    period0 = float(lambda_hint) if lambda_hint else _period_seed(positions, counts)
    # Linear weighted pre-fit at the seeded period for the remaining seeds.
    angle = 2.0 * np.pi * positions / period0
    design = np.column_stack([np.ones_like(positions), np.cos(angle), np.sin(angle)])
    weights = 1.0 / sigma
    coef, *_ = np.linalg.lstsq(design * weights[:, None], counts * weights, rcond=None)
    mean_seed = float(coef[0]) if coef[0] > 0 else max(mean0, 1.0)
    amp_seed = float(np.hypot(coef[1], coef[2])) or 0.1 * mean_seed
    phase_seed = float(np.arctan2(-coef[2], coef[1]))

    def model(z, mean, amplitude, period, phase):
        return mean + amplitude * np.cos(2.0 * np.pi * z / period + phase)

    try:
        with warnings.catch_warnings():
            # an inestimable covariance is handled below, not worth a warning
            warnings.simplefilter("ignore", OptimizeWarning)
            popt, pcov = curve_fit(
                model,
                positions,
                counts,
                p0=[mean_seed, amp_seed, period0, phase_seed],
                sigma=sigma,
                absolute_sigma=True,
                maxfev=20000,
            )
    except RuntimeError as exc:
        raise FitError(f"fringe fit did not converge: {exc}") from exc

    mean_fit, amp_fit, period_fit = float(popt[0]), float(popt[1]), float(popt[2])
    if mean_fit <= 0:
        raise FitError(f"fitted mean level must be positive, got {mean_fit}")
    visibility = min(abs(amp_fit) / mean_fit, 1.0)
    # Propagate the (mean, amplitude) covariance block through |B|/A.
    grad = np.array([-abs(amp_fit) / mean_fit**2, math.copysign(1.0, amp_fit) / mean_fit])
    with np.errstate(invalid="ignore"):
        variance = float(grad @ pcov[:2, :2] @ grad)
    if not math.isfinite(variance):
        # scipy reports an inf covariance when the model matches the data
        # to machine precision (noise-free input); a perfect fit has no
        # statistical error, while a bad covariance on noisy data is fatal
        residual = (counts - model(positions, *popt)) / sigma
        if float(np.max(np.abs(residual))) < 1.0e-6:
            variance = 0.0
        else:
            raise FitError("fit covariance is undefined")
    return VisibilityEstimate(
        visibility=visibility,
        visibility_std=math.sqrt(max(variance, 0.0)),
        period=abs(period_fit),
        mean_level=mean_fit,
    )


def transmittance_from_visibilities(
    on: VisibilityEstimate, off: VisibilityEstimate
) -> TransmittanceRatio:
    """Recover the on/off transmittance ratio from two visibilities.

    Each visibility inverts to a weak-arm ratio r = alpha T^2; with alpha
    common to both scans, T_on / T_off = sqrt(r_on / r_off) and
    DAOD = ln(T_off / T_on).  Uncertainties propagate linearly from the
    visibility uncertainties.
    """
    for name, est in (("on", on), ("off", off)):
        if est.visibility <= 0:
            raise DomainError(f"{name}-resonance visibility must be positive to invert")
    r_on = intensity_ratio_from_visibility(on.visibility)
    r_off = intensity_ratio_from_visibility(off.visibility)
    if max(r_on, r_off) > 0.5:
        warnings.warn(
            "inferred weak-arm ratio exceeds 0.5; the two roots of the visibility "
            "relation are close and the weak-arm choice may be wrong",
            AmbiguityWarning,
            stacklevel=2,
        )
    ratio = math.sqrt(r_on / r_off)
    daod = -math.log(ratio)
    term_on = _log_ratio_error(on)
    term_off = _log_ratio_error(off)
    daod_std = math.hypot(term_on, term_off)
    return TransmittanceRatio(
        ratio=ratio,
        ratio_std=ratio * daod_std,
        daod=daod,
        daod_std=daod_std,
        r_on=r_on,
        r_off=r_off,
    )


def _log_ratio_error(est: VisibilityEstimate) -> float:
    # d ln(sqrt r) / dV = 1 / (V sqrt(1 - V^2))
    if est.visibility_std == 0:
        return 0.0
    slack = math.sqrt(max(0.0, 1.0 - est.visibility**2))
    if slack == 0:
        return math.inf
    return est.visibility_std / (est.visibility * slack)
