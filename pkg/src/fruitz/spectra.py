"""Impedance measurement data model: samples, spectra, unit views, CSV loading.

Angles are stored in degrees (the unit the measurement tables use) and
converted to radians only inside computations. Zero-modulus readings are kept
but flagged ``below_floor`` and excluded from any fitting view.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .errors import InsufficientData, ParseError, ValidationError

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class MeasurementMeta:
    """Electrode geometry and averaging setup of the tetrapolar measurement."""

    electrode_spacing_mm: float = 10.0
    current_electrode_area_cm2: float = 1.76
    potential_electrode_area_cm2: float = 23.35
    averaging_count: int = 256
    stated_error_pct: float = 5.0

    def __post_init__(self):
        for name in (
            "electrode_spacing_mm",
            "current_electrode_area_cm2",
            "potential_electrode_area_cm2",
            "averaging_count",
            "stated_error_pct",
        ):
            if getattr(self, name) <= 0:
                raise ValidationError(f"{name} must be positive")


@dataclass(frozen=True)
class ImpedanceSample:
    """One (frequency, |Z|, phase) reading.

    ``below_floor`` is derived: a 0 Ohm modulus means the reading was under
    the instrument floor, not a literal short.
    """

    frequency_hz: float
    modulus_ohm: float
    phase_deg: float

    def __post_init__(self):
        if not (self.frequency_hz > 0 and math.isfinite(self.frequency_hz)):
            raise ValidationError(f"frequency must be positive, got {self.frequency_hz}")
        if not (self.modulus_ohm >= 0 and math.isfinite(self.modulus_ohm)):
            raise ValidationError(f"modulus must be non-negative, got {self.modulus_ohm}")
        if not (-90.0 <= self.phase_deg <= 90.0):
            raise ValidationError(
                f"phase {self.phase_deg} deg outside the passive RC range [-90, 90]"
            )

    @property
    def below_floor(self) -> bool:
        return self.modulus_ohm == 0.0


@dataclass(frozen=True)
class Spectrum:
    """Ordered multi-frequency set of samples for one specimen."""

    samples: tuple[ImpedanceSample, ...]
    specimen: str = ""
    meta: MeasurementMeta = field(default_factory=MeasurementMeta)

    def __post_init__(self):
        object.__setattr__(self, "samples", tuple(self.samples))
        if not self.samples:
            raise ValidationError("spectrum must contain at least one sample")
        freqs = [s.frequency_hz for s in self.samples]
        for lo, hi in zip(freqs, freqs[1:]):
            if hi <= lo:
                raise ValidationError(
                    f"frequencies must be strictly increasing ({lo} then {hi})"
                )

    @property
    def frequencies_hz(self) -> tuple[float, ...]:
        return tuple(s.frequency_hz for s in self.samples)

    def sample_at(self, frequency_hz: float, rel_tol: float = 1e-12) -> ImpedanceSample | None:
        for s in self.samples:
            if math.isclose(s.frequency_hz, frequency_hz, rel_tol=rel_tol):
                return s
        return None


def polar_to_cartesian(sample: ImpedanceSample) -> tuple[float, float]:
    """Return (R, X) in ohms for a polar sample; R = |Z| cos phi, X = |Z| sin phi."""
    phi = math.radians(sample.phase_deg)
    return sample.modulus_ohm * math.cos(phi), sample.modulus_ohm * math.sin(phi)


def cartesian_to_polar(resistance_ohm: float, reactance_ohm: float) -> tuple[float, float]:
    """Return (|Z|, phase in degrees); phase of the zero vector is 0."""
    modulus = math.hypot(resistance_ohm, reactance_ohm)
    if modulus == 0.0:
        return 0.0, 0.0
    return modulus, math.degrees(math.atan2(reactance_ohm, resistance_ohm))


def fitting_view(spectrum: Spectrum) -> list[tuple[float, float, float]]:
    """Ordered (omega_rad_s, R_ohm, X_ohm) triples of the usable samples.

    Below-floor samples are dropped; at least 2 usable samples are required.
    """
    view = []
    for s in spectrum.samples:
        if s.below_floor:
            continue
        r, x = polar_to_cartesian(s)
        view.append((TWO_PI * s.frequency_hz, r, x))
    if len(view) < 2:
        raise InsufficientData(
            f"only {len(view)} usable sample(s) above the instrument floor"
        )
    return view


CSV_HEADER = "frequency_hz,modulus_ohm,phase_deg"


def parse_spectrum_csv(text: str, specimen: str = "") -> Spectrum:
    """Parse the spectrum CSV contract from a string.

    Format: optional ``# key=value`` metadata comments, a header line
    ``frequency_hz,modulus_ohm,phase_deg``, then one sample per row.
    """
    meta_kv: dict[str, str] = {}
    samples: list[ImpedanceSample] = []
    saw_header = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            body = line[1:].strip()
            if "=" in body:
                key, _, value = body.partition("=")
                meta_kv[key.strip()] = value.strip()
            continue
        if not saw_header:
            if [c.strip() for c in line.split(",")] != CSV_HEADER.split(","):
                raise ParseError(f"expected header {CSV_HEADER!r}, got {line!r}", lineno)
            saw_header = True
            continue
        parts = [c.strip() for c in line.split(",")]
        if len(parts) != 3:
            raise ParseError(f"expected 3 columns, got {len(parts)}", lineno)
        try:
            f, m, p = (float(v) for v in parts)
        except ValueError as exc:
            raise ParseError(str(exc), lineno) from None
        try:
            samples.append(ImpedanceSample(f, m, p))
        except ValidationError as exc:
            raise ValidationError(f"line {lineno}: {exc}") from None
    if not saw_header:
        raise ParseError("no header line found")
    if not samples:
        raise ParseError("no data rows found")

    meta_fields = {}
    for name in (
        "electrode_spacing_mm",
        "current_electrode_area_cm2",
        "potential_electrode_area_cm2",
        "stated_error_pct",
    ):
        if name in meta_kv:
            meta_fields[name] = float(meta_kv[name])
    if "averaging_count" in meta_kv:
        meta_fields["averaging_count"] = int(meta_kv["averaging_count"])
    return Spectrum(
        samples=tuple(samples),
        specimen=meta_kv.get("specimen", specimen),
        meta=MeasurementMeta(**meta_fields),
    )


def load_spectrum(path, specimen: str = "") -> Spectrum:
    """Load a spectrum from a CSV file (see ``parse_spectrum_csv``)."""
    with open(path, "r", encoding="utf-8") as fh:
        return parse_spectrum_csv(fh.read(), specimen=specimen)


def spectrum_to_csv(spectrum: Spectrum, include_meta: bool = True) -> str:
    """Serialize a spectrum to the CSV contract; inverse of ``parse_spectrum_csv``."""
    lines = []
    if include_meta:
        if spectrum.specimen:
            lines.append(f"# specimen={spectrum.specimen}")
        m = spectrum.meta
        if m != MeasurementMeta():
            lines.append(f"# electrode_spacing_mm={m.electrode_spacing_mm:g}")
            lines.append(f"# averaging_count={m.averaging_count}")
    lines.append(CSV_HEADER)
    for s in spectrum.samples:
        lines.append(f"{s.frequency_hz:g},{s.modulus_ohm:g},{s.phase_deg:g}")
    return "\n".join(lines) + "\n"
