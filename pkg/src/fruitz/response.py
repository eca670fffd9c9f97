"""Frequency-response reconstruction and phase-portrait series.

A sweep tabulates |Z|, phase, R and X of a model or circuit over a
logarithmic frequency grid; the default span (1 kHz to 10 MHz) brackets the
20-500 kHz measurement band by a decade on each side. Phase portraits pair
the measured phase at a low and a high frequency across a specimen's states;
the match is exact by design, never interpolated.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .circuits import CauerCircuit, FosterCircuit, cauer_impedance, foster_impedance
from .errors import MissingFrequency, ValidationError
from .ratfit import RationalImpedance, evaluate
from .spectra import TWO_PI, Spectrum, cartesian_to_polar

DEFAULT_F_MIN_HZ = 1e3
DEFAULT_F_MAX_HZ = 1e7
DEFAULT_POINTS = 200

RESPONSE_CSV_HEADER = "frequency_hz,modulus_ohm,phase_deg,resistance_ohm,reactance_ohm"


@dataclass(frozen=True)
class ResponseRow:
    frequency_hz: float
    modulus_ohm: float
    phase_deg: float
    resistance_ohm: float
    reactance_ohm: float


@dataclass(frozen=True)
class FrequencyResponse:
    """Tabulated impedance over a strictly increasing frequency grid."""

    rows: tuple[ResponseRow, ...]
    source: str = ""

    def __post_init__(self):
        object.__setattr__(self, "rows", tuple(self.rows))
        freqs = [r.frequency_hz for r in self.rows]
        for lo, hi in zip(freqs, freqs[1:]):
            if hi <= lo:
                raise ValidationError("response frequencies must be strictly increasing")

    @property
    def frequencies_hz(self) -> tuple[float, ...]:
        return tuple(r.frequency_hz for r in self.rows)


@dataclass(frozen=True)
class PhasePortraitPoint:
    """Phase at the low and high probe frequency for one labelled state."""

    label: str
    phase_low_deg: float
    phase_high_deg: float


ImpedanceSource = RationalImpedance | FosterCircuit | CauerCircuit


def impedance_of(source: ImpedanceSource, omega_rad_s: float) -> complex:
    """Evaluate any supported impedance source at one angular frequency."""
    if isinstance(source, RationalImpedance):
        return evaluate(source, omega_rad_s)
    if isinstance(source, FosterCircuit):
        return foster_impedance(source, omega_rad_s)
    if isinstance(source, CauerCircuit):
        return cauer_impedance(source, omega_rad_s)
    raise ValidationError(f"unsupported impedance source {type(source).__name__}")


def sweep(
    source: ImpedanceSource,
    f_min_hz: float = DEFAULT_F_MIN_HZ,
    f_max_hz: float = DEFAULT_F_MAX_HZ,
    points: int = DEFAULT_POINTS,
    label: str = "",
) -> FrequencyResponse:
    """Log-spaced frequency sweep, endpoints included."""
    if not (0 < f_min_hz < f_max_hz):
        raise ValidationError(f"need 0 < f_min < f_max, got ({f_min_hz}, {f_max_hz})")
    if points < 2:
        raise ValidationError(f"need at least 2 points, got {points}")
    grid = np.geomspace(f_min_hz, f_max_hz, points)
    rows = []
    for f in grid:
        z = impedance_of(source, TWO_PI * f)
        modulus, phase = cartesian_to_polar(z.real, z.imag)
        rows.append(ResponseRow(float(f), modulus, phase, z.real, z.imag))
    return FrequencyResponse(tuple(rows), source=label or type(source).__name__)


def response_to_csv(response: FrequencyResponse) -> str:
    lines = [RESPONSE_CSV_HEADER]
    for r in response.rows:
        lines.append(
            f"{r.frequency_hz:.10g},{r.modulus_ohm:.10g},{r.phase_deg:.10g},"
            f"{r.resistance_ohm:.10g},{r.reactance_ohm:.10g}"
        )
    return "\n".join(lines) + "\n"


def phase_portrait(
    series: list[tuple[str, Spectrum]], f_low_hz: float, f_high_hz: float
) -> list[PhasePortraitPoint]:
    """One (phase_low, phase_high) point per labelled spectrum, in series order."""
    points = []
    for label, spectrum in series:
        low = spectrum.sample_at(f_low_hz)
        high = spectrum.sample_at(f_high_hz)
        if low is None or high is None:
            missing = f_low_hz if low is None else f_high_hz
            raise MissingFrequency(
                f"series entry {label!r} has no sample at {missing:g} Hz"
            )
        points.append(PhasePortraitPoint(label, low.phase_deg, high.phase_deg))
    return points
