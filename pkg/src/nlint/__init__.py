"""Simulation and sensitivity toolkit for a double-pass parametric methane
sensor: mid-infrared absorption read out interferometrically at a
short-wave infrared detector, with no detection at the probe wavelength."""

from __future__ import annotations

from .config import DEFAULT_CONFIG, SEED_ENV_VAR, RunConfig, load_config
from .errors import (
    AmbiguityWarning,
    ConfigError,
    DegenerateError,
    DomainError,
    FieldParseError,
    FitError,
    ModelRegimeWarning,
    RecordLengthError,
)
from .fringe import (
    CSV_HEADER as FRINGE_CSV_HEADER,
    GAUSSIAN_COUNT_THRESHOLD,
    FringeScan,
    FringeScanConfig,
    TransmittanceRatio,
    VisibilityEstimate,
    derive_stream_seed,
    estimate_visibility,
    expected_fringe,
    intensity_ratio_from_visibility,
    sample_counts,
    simulate_scan,
    transmittance_from_visibilities,
    visibility_from_intensity_ratio,
)
from .physics import (
    CONSTANTS,
    CrystalParams,
    DirectConfig,
    PhysicalConstants,
    PlumeState,
    SensorConfig,
    angular_frequency,
    daod_direct,
    daod_from_fringe_amplitudes,
    first_pass,
    homodyne_intensity,
    mean_signal_photons,
    mixing_ratio_from_daod,
    optical_depth,
    photon_energy,
    relative_sensitivity,
    second_pass,
    sensitivity_direct,
    sensitivity_without_detection,
    signal_wavelength,
    snr_without_detection,
    spdc_gain,
    transmittance,
)
from .spectra import (
    METHANE_MIR,
    METHANE_SWIR,
    CrossSectionPair,
    EnvironmentConditions,
    HitranLine,
    HitranParseResult,
    cross_section_at,
    format_hitran_record,
    lorentzian_cross_section,
    parse_hitran_file,
    parse_hitran_record,
    reference_cross_sections,
    wavelength_to_wavenumber,
)
from .sweep import (
    CSV_HEADER as SWEEP_CSV_HEADER,
    DEFAULT_ALPHA_VALUES,
    PLOT_KINDS,
    EmpiricalSensitivity,
    GainGrid,
    MonteCarloSpec,
    SweepRow,
    SweepSpec,
    crossover_gain,
    emit_csv,
    emit_plot,
    run_monte_carlo,
    run_sweep,
)

__version__ = "0.1.0"
