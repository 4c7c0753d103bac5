"""HITRAN line-list parsing and pressure-broadened absorption cross sections.

Decodes the classic fixed-width ".par" transition record (160 characters)
and evaluates air-broadened Lorentzian cross sections from the decoded
parameters.  Line-list units (cm-1, atm, intensities at 296 K) are kept
internally; cross sections leave this module in SI, m2 per molecule.

Decoded columns, 1-based and inclusive:

    1-2     molecule id              I2
    3       isotopologue id          I1
    4-15    transition wavenumber    F12.6   cm-1
    16-25   line intensity           E10.3   cm-1 / (molecule cm-2)
    26-35   Einstein A coefficient   E10.3   s-1
    36-40   air-broadened half width F5.4    cm-1/atm
    41-45   self-broadened half width F5.4   cm-1/atm
    46-55   lower-state energy       F10.4   cm-1
    56-59   temperature exponent     F4.2    dimensionless
    60-67   air pressure shift       F8.6    cm-1/atm

Columns 68-160 hold quantum assignments, uncertainty codes, and flags.
They are not interpreted; the 93 characters are carried verbatim so a
record can be re-emitted byte for byte.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .errors import DomainError, FieldParseError, RecordLengthError

RECORD_LENGTH = 160
TRAILER_START = 67  # 0-based offset of the opaque trailer
TRAILER_LENGTH = RECORD_LENGTH - TRAILER_START

T_REF = 296.0  # K, reference temperature of tabulated intensities and widths
CH4_MOLECULE_ID = 6

# (field name, first column, last column, decoder); columns are 1-based inclusive
_FIELDS = (
    ("molecule_id", 1, 2, int),
    ("isotopologue_id", 3, 3, int),
    ("wavenumber", 4, 15, float),
    ("intensity", 16, 25, float),
    ("einstein_a", 26, 35, float),
    ("gamma_air", 36, 40, float),
    ("gamma_self", 41, 45, float),
    ("lower_state_energy", 46, 55, float),
    ("n_air_exponent", 56, 59, float),
    ("delta_air", 60, 67, float),
)


@dataclass(frozen=True)
class HitranLine:
    """One decoded line-list transition.

    Numeric fields keep line-list units (see module docstring).  The
    trailer string preserves columns 68-160 exactly as read.
    """

    molecule_id: int
    isotopologue_id: int
    wavenumber: float           # cm-1
    intensity: float            # cm-1 / (molecule cm-2) at 296 K
    einstein_a: float           # s-1
    gamma_air: float            # cm-1/atm, air-broadened Lorentzian HWHM
    gamma_self: float           # cm-1/atm
    lower_state_energy: float   # cm-1
    n_air_exponent: float       # broadening temperature exponent
    delta_air: float            # cm-1/atm, pressure-induced line shift
    trailer: str = ""           # columns 68-160, verbatim

    def __post_init__(self) -> None:
        if not 1 <= self.molecule_id <= 99:
            raise ValueError(f"molecule_id must be within [1, 99], got {self.molecule_id}")
        if not 0 <= self.isotopologue_id <= 9:
            raise ValueError(f"isotopologue_id must be within [0, 9], got {self.isotopologue_id}")
        if not self.wavenumber > 0:
            raise ValueError(f"wavenumber must be positive, got {self.wavenumber}")
        if self.intensity < 0:
            raise ValueError(f"intensity must be non-negative, got {self.intensity}")
        if not self.gamma_air > 0:
            raise ValueError(f"gamma_air must be positive, got {self.gamma_air}")
        if self.gamma_self < 0:
            raise ValueError(f"gamma_self must be non-negative, got {self.gamma_self}")
        if self.lower_state_energy < 0:
            raise ValueError(
                f"lower_state_energy must be non-negative, got {self.lower_state_energy}"
            )
        if len(self.trailer) > TRAILER_LENGTH:
            raise ValueError(f"trailer longer than {TRAILER_LENGTH} characters")


@dataclass(frozen=True)
class EnvironmentConditions:
    """Ambient pressure (atm) and temperature (K) for line-shape evaluation."""

    pressure: float = 1.0
    temperature: float = T_REF

    def __post_init__(self) -> None:
        if not self.pressure > 0:
            raise ValueError(f"pressure must be positive, got {self.pressure}")
        if not self.temperature > 0:
            raise ValueError(f"temperature must be positive, got {self.temperature}")


@dataclass(frozen=True)
class CrossSectionPair:
    """On/off-resonance cross sections (m2/molecule) and their wavelengths (um)."""

    sigma_on: float
    sigma_off: float
    lambda_on: float
    lambda_off: float

    def __post_init__(self) -> None:
        if self.sigma_off < 0:
            raise ValueError(f"sigma_off must be non-negative, got {self.sigma_off}")
        if self.sigma_on < self.sigma_off:
            raise ValueError("sigma_on must be at least sigma_off")
        if not self.lambda_on > 0 or not self.lambda_off > 0:
            raise ValueError("wavelengths must be positive")

    @property
    def differential(self) -> float:
        """Differential cross section sigma_on - sigma_off, m2/molecule."""
        return self.sigma_on - self.sigma_off


@dataclass
class HitranParseResult:
    """Outcome of a filtered line-list read."""

    lines: list[HitranLine] = field(default_factory=list)
    skipped: int = 0
    messages: list[str] = field(default_factory=list)


# Effective band cross sections for methane retrieval budgets: the strong
# mid-infrared band probed by the interferometer and the weaker short-wave
# infrared band used by conventional direct-absorption instruments.  The
# off wavelengths sit on nearby low-absorption points; the off cross
# section is taken as zero at this level of modelling.
METHANE_MIR = CrossSectionPair(sigma_on=1.18e-22, sigma_off=0.0, lambda_on=3.221, lambda_off=3.392)
METHANE_SWIR = CrossSectionPair(sigma_on=1.81e-24, sigma_off=0.0, lambda_on=1.65, lambda_off=1.66)


def reference_cross_sections() -> tuple[CrossSectionPair, CrossSectionPair]:
    """Built-in (mid-infrared, short-wave infrared) methane band pair."""
    return METHANE_MIR, METHANE_SWIR


def wavelength_to_wavenumber(wavelength_um: float) -> float:
    """Vacuum wavenumber in cm-1 for a wavelength in micrometres."""
    if not wavelength_um > 0:
        raise DomainError(f"wavelength must be positive, got {wavelength_um}")
    return 1.0e4 / wavelength_um


def parse_hitran_record(record: str) -> HitranLine:
    """Decode one fixed-width record into a HitranLine.

    Trailing CR/LF characters are ignored; everything else must be exactly
    160 characters.  Numeric fields are decoded from their column ranges;
    a field that fails to decode raises FieldParseError naming the columns.
    """
    text = record.rstrip("\r\n")
    if len(text) != RECORD_LENGTH:
        raise RecordLengthError(
            f"expected a {RECORD_LENGTH}-character record, got {len(text)} characters"
        )
    values: dict[str, int | float] = {}
    for name, first, last, decode in _FIELDS:
        raw = text[first - 1 : last]
        try:
            values[name] = decode(raw)
        except ValueError:
            raise FieldParseError(
                f"columns {first}-{last} ({name}): cannot decode {raw!r}"
            ) from None
    return HitranLine(trailer=text[TRAILER_START:], **values)  # type: ignore[arg-type]


def _fortran_fixed(value: float, width: int, decimals: int) -> str:
    """Render a fixed-point field, dropping the leading integer zero when
    the rounded text would otherwise overflow the field (Fortran behaviour,
    e.g. 0.055 in F5.4 prints as '.0550')."""
    text = f"{value:.{decimals}f}"
    if len(text) > width:
        if text.startswith("0."):
            text = text[1:]
        elif text.startswith("-0."):
            text = "-" + text[2:]
    if len(text) > width:
        raise ValueError(f"{value!r} does not fit in F{width}.{decimals}")
    return text.rjust(width)


def format_hitran_record(line: HitranLine) -> str:
    """Render a HitranLine back to its 160-character fixed-width form.

    Inverse of parse_hitran_record over the decoded columns: formatting a
    parsed record reproduces the original bytes whenever the original was
    itself written with these field conventions.
    """
    parts = [
        f"{line.molecule_id:2d}",
        f"{line.isotopologue_id:1d}",
        _fortran_fixed(line.wavenumber, 12, 6),
        f"{line.intensity:10.3E}",
        f"{line.einstein_a:10.3E}",
        _fortran_fixed(line.gamma_air, 5, 4),
        _fortran_fixed(line.gamma_self, 5, 4),
        _fortran_fixed(line.lower_state_energy, 10, 4),
        _fortran_fixed(line.n_air_exponent, 4, 2),
        _fortran_fixed(line.delta_air, 8, 6),
        line.trailer.ljust(TRAILER_LENGTH),
    ]
    record = "".join(parts)
    if len(record) != RECORD_LENGTH:
        raise ValueError("internal error: formatted record has wrong length")
    return record


def parse_hitran_file(
    stream,
    molecule_id: int,
    nu_min: float,
    nu_max: float,
    strict: bool = True,
) -> HitranParseResult:
    """Read fixed-width records from an iterable of text lines.

    Keeps lines of the requested molecule whose wavenumber falls within
    [nu_min, nu_max], in file order.  Blank lines are ignored.  In strict
    mode the first malformed record aborts the read, re-raised with the
    1-based line number prepended.  In lenient mode malformed records are
    skipped and counted, with one diagnostic message per skip.
    """
    if not nu_min < nu_max:
        raise ValueError(
            f"wavenumber interval requires nu_min < nu_max, got [{nu_min}, {nu_max}]"
        )
    result = HitranParseResult()
    for lineno, raw in enumerate(stream, start=1):
        text = raw.rstrip("\r\n")
        if not text:
            continue
        try:
            line = parse_hitran_record(text)
        except ValueError as exc:  # includes RecordLengthError, FieldParseError
            if strict:
                raise type(exc)(f"line {lineno}: {exc}") from exc
            result.skipped += 1
            result.messages.append(f"line {lineno}: {exc}")
            continue
        if line.molecule_id == molecule_id and nu_min <= line.wavenumber <= nu_max:
            result.lines.append(line)
    return result


def lorentzian_cross_section(
    line: HitranLine,
    wavenumber: float,
    env: EnvironmentConditions = EnvironmentConditions(),
) -> float:
    """Pressure-broadened Lorentzian cross section of one line, m2/molecule.

    The half width scales as gamma_air * p * (296/T)**n_air_exponent and
    the line centre shifts by delta_air * p.  The profile integrates to the
    tabulated intensity, so the cm2-per-molecule value is the intensity
    times the area-normalised Lorentzian; a factor 1e-4 converts to m2.
    """
    if not wavenumber > 0:
        raise DomainError(f"wavenumber must be positive, got {wavenumber}")
    gamma = line.gamma_air * env.pressure * (T_REF / env.temperature) ** line.n_air_exponent
    centre = line.wavenumber + line.delta_air * env.pressure
    profile = (gamma / math.pi) / ((wavenumber - centre) ** 2 + gamma**2)
    return line.intensity * profile * 1.0e-4


def cross_section_at(
    lines,
    wavelength_um: float,
    env: EnvironmentConditions = EnvironmentConditions(),
) -> float:
    """Total cross section at a wavelength (um), summed over lines, m2/molecule."""
    nu = wavelength_to_wavenumber(wavelength_um)
    return sum(lorentzian_cross_section(line, nu, env) for line in lines)
