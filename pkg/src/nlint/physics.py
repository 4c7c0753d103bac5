"""Closed-form model of a double-pass parametric methane sensor.

A pump drives spontaneous parametric downconversion in a nonlinear
crystal twice.  The first pass builds a bright idler-stimulated signal
field that acts as the local oscillator; the idler then probes the scene
at its own wavelength, returns attenuated by the target reflectivity and
the round-trip gas transmission, and stimulates the second pass.  Signal
photons from the two passes interfere, so gas absorption imprinted on
the idler is read out at the signal wavelength without any detector at
the probe wavelength.

This module provides the stationary signal/noise bookkeeping for that
scheme: parametric gain, per-pass intensities, the homodyne fringe, the
shot-noise-limited signal-to-noise ratio, Beer-Lambert plume
transmission, differential absorption optical depth (DAOD), mixing-ratio
retrieval, and Gaussian error propagation to the minimum detectable
methane column for both this sensor and a conventional direct-detection
instrument.

Everything computes in SI.  Wavelengths cross the API in micrometres and
cross sections in m2 per molecule, matching the spectra module.  The
small-signal regime is assumed throughout: parametric gain well below 1
and a weak returned field relative to the local oscillator.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import scipy.constants

from .errors import DegenerateError, DomainError, ModelRegimeWarning
from .spectra import CrossSectionPair

GAIN_REGIME_LIMIT = 1.0e-2        # above this the low-gain expansion degrades
RETURN_RATIO_REGIME_LIMIT = 0.5   # weak-arm/local-oscillator intensity ratio
N_AIR_STANDARD = 2.53e25          # m-3, ambient air number density


@dataclass(frozen=True)
class PhysicalConstants:
    """CODATA values used by the model."""

    hbar: float = scipy.constants.hbar        # J s
    c: float = scipy.constants.c              # m/s
    mu0: float = scipy.constants.mu_0         # N/A^2
    eps0: float = scipy.constants.epsilon_0   # F/m


CONSTANTS = PhysicalConstants()


@dataclass(frozen=True)
class CrystalParams:
    """Nonlinear crystal drive for the parametric gain estimate.

    chi2 is the effective second-order susceptibility (m/V), length the
    crystal length (m), omega_s and k_s the signal angular frequency
    (rad/s) and wavevector in the crystal (rad/m), pump_intensity the
    pump intensity (W/m2).  A switched-off pump (zero intensity) is a
    valid state with zero gain.
    """

    chi2: float
    length: float
    omega_s: float
    k_s: float
    pump_intensity: float

    def __post_init__(self) -> None:
        for name in ("chi2", "length", "omega_s", "k_s"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be positive, got {getattr(self, name)}")
        if self.pump_intensity < 0:
            raise ValueError(f"pump_intensity must be non-negative, got {self.pump_intensity}")


@dataclass(frozen=True)
class SensorConfig:
    """Operating point of the double-pass interferometric sensor.

    eta is the signal detector quantum efficiency, gain the single-pass
    parametric intensity gain, alpha the fraction of idler intensity
    returned to the crystal by the scene (target reflectivity times
    collection), t_int the integration time (s), p_idler the idler probe
    power (W), lambda_signal and lambda_idler the wavelengths (um).
    """

    eta: float
    gain: float
    alpha: float
    t_int: float
    p_idler: float
    lambda_signal: float
    lambda_idler: float

    def __post_init__(self) -> None:
        if not 0 < self.eta <= 1:
            raise ValueError(f"eta must be within (0, 1], got {self.eta}")
        if self.gain < 0:
            raise ValueError(f"gain must be non-negative, got {self.gain}")
        if not 0 < self.alpha <= 1:
            raise ValueError(f"alpha must be within (0, 1], got {self.alpha}")
        if not self.t_int > 0:
            raise ValueError(f"t_int must be positive, got {self.t_int}")
        if not self.p_idler > 0:
            raise ValueError(f"p_idler must be positive, got {self.p_idler}")
        if not self.lambda_signal > 0 or not self.lambda_idler > 0:
            raise ValueError("wavelengths must be positive")
        if not self.lambda_signal < self.lambda_idler:
            raise ValueError(
                f"lambda_signal must be below lambda_idler, got "
                f"{self.lambda_signal} >= {self.lambda_idler}"
            )
        if self.gain > GAIN_REGIME_LIMIT:
            warnings.warn(
                f"gain {self.gain:g} exceeds {GAIN_REGIME_LIMIT:g}; the low-gain "
                "expansion behind the fringe model degrades",
                ModelRegimeWarning,
                stacklevel=2,
            )


@dataclass(frozen=True)
class DirectConfig:
    """Conventional direct-detection differential-absorption instrument.

    eta is the detector quantum efficiency at the probe wavelength,
    alpha the returned intensity fraction, t_int the integration time
    (s), power the transmitted probe power (W), lambda_probe the probe
    wavelength (um).
    """

    eta: float
    alpha: float
    t_int: float
    power: float
    lambda_probe: float

    def __post_init__(self) -> None:
        if not 0 < self.eta <= 1:
            raise ValueError(f"eta must be within (0, 1], got {self.eta}")
        if not 0 < self.alpha <= 1:
            raise ValueError(f"alpha must be within (0, 1], got {self.alpha}")
        if not self.t_int > 0:
            raise ValueError(f"t_int must be positive, got {self.t_int}")
        if not self.power > 0:
            raise ValueError(f"power must be positive, got {self.power}")
        if not self.lambda_probe > 0:
            raise ValueError(f"lambda_probe must be positive, got {self.lambda_probe}")


@dataclass(frozen=True)
class PlumeState:
    """Methane plume along the probe path.

    depth is the plume extent (m), mixing_ratio the methane volume mixing
    ratio (dimensionless; 1e-6 is 1 ppm), n_air the ambient air number
    density (m-3).
    """

    depth: float
    mixing_ratio: float
    n_air: float = N_AIR_STANDARD

    def __post_init__(self) -> None:
        if self.depth < 0:
            raise ValueError(f"depth must be non-negative, got {self.depth}")
        if self.mixing_ratio < 0:
            raise ValueError(f"mixing_ratio must be non-negative, got {self.mixing_ratio}")
        if not self.n_air > 0:
            raise ValueError(f"n_air must be positive, got {self.n_air}")


def angular_frequency(wavelength_um: float) -> float:
    """Angular frequency (rad/s) of light at a vacuum wavelength in um."""
    if not wavelength_um > 0:
        raise DomainError(f"wavelength must be positive, got {wavelength_um}")
    return 2.0 * math.pi * CONSTANTS.c / (wavelength_um * 1.0e-6)


def photon_energy(wavelength_um: float) -> float:
    """Photon energy (J) at a vacuum wavelength in um."""
    return CONSTANTS.hbar * angular_frequency(wavelength_um)


def signal_wavelength(lambda_pump_um: float, lambda_idler_um: float) -> float:
    """Signal wavelength (um) from pump-idler energy conservation.

    Photon energies satisfy 1/lambda_pump = 1/lambda_signal + 1/lambda_idler.
    """
    if not lambda_pump_um > 0:
        raise DomainError(f"pump wavelength must be positive, got {lambda_pump_um}")
    if not lambda_idler_um > lambda_pump_um:
        raise DomainError(
            "idler wavelength must exceed the pump wavelength, got "
            f"{lambda_idler_um} <= {lambda_pump_um}"
        )
    return 1.0 / (1.0 / lambda_pump_um - 1.0 / lambda_idler_um)


def spdc_gain(crystal: CrystalParams) -> float:
    """Single-pass parametric intensity gain of the crystal.

    Low-gain limit: the stimulated signal intensity is gain times the
    seeding idler intensity, with gain quadratic in the pump field, so
    linear in pump intensity:

        gain = (mu0 eps0 chi2 omega_s^2 length / (2 k_s))^2 * pump_intensity
    """
    amplitude_factor = (
        CONSTANTS.mu0
        * CONSTANTS.eps0
        * crystal.chi2
        * crystal.omega_s**2
        * crystal.length
        / (2.0 * crystal.k_s)
    )
    return amplitude_factor**2 * crystal.pump_intensity


def first_pass(gain: float, idler_intensity: float) -> tuple[float, float]:
    """(signal, idler) intensities after the first crystal pass.

    The signal arm gains gain * I_idler and the idler is amplified to
    (1 + gain) * I_idler by the same interaction.
    """
    if gain < 0:
        raise DomainError(f"gain must be non-negative, got {gain}")
    if idler_intensity < 0:
        raise DomainError(f"idler intensity must be non-negative, got {idler_intensity}")
    return gain * idler_intensity, (1.0 + gain) * idler_intensity


def second_pass(
    gain: float,
    idler_intensity: float,
    alpha: float,
    transmittance_value: float,
) -> float:
    """Signal intensity stimulated on the return pass.

    The idler comes back attenuated by the scene return fraction alpha
    and the round-trip gas transmittance squared, then stimulates a
    second downconversion: I_s2 = gain * I_idler * alpha * T^2.
    """
    if gain < 0:
        raise DomainError(f"gain must be non-negative, got {gain}")
    if idler_intensity < 0:
        raise DomainError(f"idler intensity must be non-negative, got {idler_intensity}")
    if not 0 < alpha <= 1:
        raise DomainError(f"alpha must be within (0, 1], got {alpha}")
    if not 0 <= transmittance_value <= 1:
        raise DomainError(f"transmittance must be within [0, 1], got {transmittance_value}")
    weak_ratio = alpha * transmittance_value**2
    if weak_ratio > RETURN_RATIO_REGIME_LIMIT:
        warnings.warn(
            f"returned/local-oscillator intensity ratio {weak_ratio:g} exceeds "
            f"{RETURN_RATIO_REGIME_LIMIT:g}; the weak-arm fringe approximation degrades",
            ModelRegimeWarning,
            stacklevel=2,
        )
    return gain * idler_intensity * weak_ratio


def homodyne_intensity(i_lo: float, i_s2: float, phase: float) -> float:
    """Interfered signal intensity for a given pump-idler-signal phase.

    I = I_lo + I_s2 + 2 sqrt(I_lo I_s2) cos(phase), where phase is the
    pump phase minus the idler and signal phases accumulated between the
    passes.
    """
    if i_lo < 0 or i_s2 < 0:
        raise DomainError("intensities must be non-negative")
    return i_lo + i_s2 + 2.0 * math.sqrt(i_lo * i_s2) * math.cos(phase)


def mean_signal_photons(cfg: SensorConfig, transmittance_value: float) -> float:
    """Mean detected photon number of the interference (cross) term.

    n = eta * gain * alpha * T^2 * t_int * p_idler / (hbar omega_signal).
    This is the photon budget that sets the shot-noise-limited contrast
    of the fringe amplitude.
    """
    if not 0 <= transmittance_value <= 1:
        raise DomainError(f"transmittance must be within [0, 1], got {transmittance_value}")
    rate = cfg.p_idler / photon_energy(cfg.lambda_signal)
    return cfg.eta * cfg.gain * cfg.alpha * transmittance_value**2 * cfg.t_int * rate


def snr_without_detection(mean_photons: float) -> float:
    """Shot-noise-limited SNR of the fringe amplitude, 2 sqrt(n).

    The fringe amplitude R is the difference between extremal counts and
    its variance is dominated by the local-oscillator shot noise, giving
    SNR = R / sigma_R = 2 sqrt(n) for n detected cross-term photons.
    """
    if mean_photons < 0:
        raise DomainError(f"mean photon number must be non-negative, got {mean_photons}")
    if mean_photons == 0:
        raise DegenerateError("mean photon number is zero; the fringe SNR is undefined")
    return 2.0 * math.sqrt(mean_photons)


def optical_depth(plume: PlumeState, sigma: float) -> float:
    """One-way optical depth depth * mixing_ratio * n_air * sigma."""
    if sigma < 0:
        raise DomainError(f"cross section must be non-negative, got {sigma}")
    return plume.depth * plume.mixing_ratio * plume.n_air * sigma


def transmittance(plume: PlumeState, sigma: float) -> float:
    """Beer-Lambert one-way transmittance exp(-depth * X * n_air * sigma)."""
    return math.exp(-optical_depth(plume, sigma))


def daod_from_fringe_amplitudes(r_on: float, r_off: float) -> float:
    """Differential absorption optical depth from fringe amplitudes.

    The fringe amplitude scales linearly with the one-way transmittance
    at the idler wavelength (the round-trip T^2 enters through a square
    root), so DAOD = ln(R_off / R_on).
    """
    if not r_on > 0 or not r_off > 0:
        raise DomainError("fringe amplitudes must be positive")
    return math.log(r_off / r_on)


def daod_direct(n_on: float, n_off: float) -> float:
    """DAOD from direct-detection mean counts, which scale as T^2.

    DAOD = ln(n_off / n_on) / 2.
    """
    if not n_on > 0 or not n_off > 0:
        raise DomainError("mean counts must be positive")
    return 0.5 * math.log(n_off / n_on)


def mixing_ratio_from_daod(daod: float, depth: float, n_air: float, pair: CrossSectionPair) -> float:
    """Invert DAOD to a methane volume mixing ratio.

    X = DAOD / (depth * n_air * (sigma_on - sigma_off)).
    """
    if not depth > 0:
        raise DomainError(f"depth must be positive, got {depth}")
    if not n_air > 0:
        raise DomainError(f"n_air must be positive, got {n_air}")
    differential = pair.differential
    if differential == 0:
        raise DegenerateError(
            "sigma_on equals sigma_off; the differential cross section vanishes"
        )
    return daod / (depth * n_air * differential)


def sensitivity_without_detection(
    cfg: SensorConfig,
    plume_depth: float,
    n_air: float,
    pair: CrossSectionPair,
) -> float:
    """Minimum detectable mixing ratio of the interferometric sensor.

    Gaussian propagation of local-oscillator shot noise through the
    fringe-amplitude DAOD at unit SNR, for transmittance near 1:

        delta_X = sqrt(hbar omega_s / (2 eta gain alpha t_int p_idler))
                  / (depth * n_air * (sigma_on - sigma_off))

    Dimensionless; multiply by depth and 1e6 for ppm m.
    """
    if not plume_depth > 0:
        raise DomainError(f"plume depth must be positive, got {plume_depth}")
    if not n_air > 0:
        raise DomainError(f"n_air must be positive, got {n_air}")
    differential = pair.differential
    if differential == 0:
        raise DegenerateError(
            "sigma_on equals sigma_off; the differential cross section vanishes"
        )
    if cfg.gain == 0:
        raise DegenerateError("gain is zero; no signal reaches the detector")
    noise = math.sqrt(
        photon_energy(cfg.lambda_signal)
        / (2.0 * cfg.eta * cfg.gain * cfg.alpha * cfg.t_int * cfg.p_idler)
    )
    return noise / (plume_depth * n_air * differential)


def sensitivity_direct(
    cfg: DirectConfig,
    plume_depth: float,
    n_air: float,
    pair: CrossSectionPair,
) -> float:
    """Minimum detectable mixing ratio of the direct-detection instrument.

    Same propagation applied to Poisson counting of the returned probe,
    whose mean scales as T^2:

        delta_X = sqrt(hbar omega / (2 eta alpha t_int power))
                  / (depth * n_air * (sigma_on - sigma_off))

    No parametric gain enters; only the detected photon number counts.
    """
    if not plume_depth > 0:
        raise DomainError(f"plume depth must be positive, got {plume_depth}")
    if not n_air > 0:
        raise DomainError(f"n_air must be positive, got {n_air}")
    differential = pair.differential
    if differential == 0:
        raise DegenerateError(
            "sigma_on equals sigma_off; the differential cross section vanishes"
        )
    noise = math.sqrt(
        photon_energy(cfg.lambda_probe) / (2.0 * cfg.eta * cfg.alpha * cfg.t_int * cfg.power)
    )
    return noise / (plume_depth * n_air * differential)


def relative_sensitivity(
    sigma_mir: CrossSectionPair,
    sigma_swir: CrossSectionPair,
    gain: float,
) -> float:
    """Direct-instrument sensitivity divided by the interferometric one.

    With matched detector efficiency, return fraction, integration time,
    probe power, and probe photon energy, everything cancels except the
    cross-section advantage and the parametric gain:

        R = (delta_sigma_mir / delta_sigma_swir) * sqrt(gain)

    Values above 1 mean the interferometric sensor needs less gas to see
    a plume than the direct instrument.
    """
    if gain < 0:
        raise DomainError(f"gain must be non-negative, got {gain}")
    d_mir = sigma_mir.differential
    d_swir = sigma_swir.differential
    if d_mir <= 0 or d_swir <= 0:
        raise DegenerateError("both differential cross sections must be positive")
    return (d_mir / d_swir) * math.sqrt(gain)
