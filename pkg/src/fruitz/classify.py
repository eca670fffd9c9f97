"""Freshness and degradation-mode rules over measured spectra series.

Two pieces of evidence drive the assessment:

* the phase ratio rho = |phase(f_low)| / |phase(f_high)| of a single
  spectrum, which is large for fresh tissue and collapses below 1 as it
  degrades (defaults probe 20 kHz against 500 kHz);
* the per-frequency modulus trend across the series, matched against a
  fruit-specific profile (dehydration drives apple modulus up and lemon
  modulus down; rot drives apple modulus down; pear has an extremum and
  ships indeterminate).

Trends use a 5% dead-band, the instrument's stated measurement error, so
noise is never read as a trend.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .errors import DegeneratePhase, InconsistentSeries, MissingFrequency, ValidationError
from .spectra import Spectrum

DEFAULT_F_LOW_HZ = 20e3
DEFAULT_F_HIGH_HZ = 500e3
DEFAULT_FRESH_RATIO = 2.0
DEFAULT_STALE_RATIO = 1.0
TREND_DEADBAND = 0.05
PHASE_GUARD_DEG = 0.1


class Verdict(enum.Enum):
    FRESH = "fresh"
    STALE = "stale"


class Mode(enum.Enum):
    DEHYDRATION = "dehydration"
    ROT = "rot"
    INDETERMINATE = "indeterminate"


@dataclass(frozen=True)
class FruitProfile:
    """Expected modulus trend signs (+1 up, -1 down, 0 indeterminate) per process."""

    name: str
    dehydration_modulus_trend: int
    rot_modulus_trend: int

    def __post_init__(self):
        for t in (self.dehydration_modulus_trend, self.rot_modulus_trend):
            if t not in (-1, 0, 1):
                raise ValidationError(f"trend sign must be -1, 0 or +1, got {t}")


APPLE = FruitProfile("apple", dehydration_modulus_trend=+1, rot_modulus_trend=-1)
LEMON = FruitProfile("lemon", dehydration_modulus_trend=-1, rot_modulus_trend=0)
PEAR = FruitProfile("pear", dehydration_modulus_trend=0, rot_modulus_trend=0)
BUILTIN_PROFILES = {p.name: p for p in (APPLE, LEMON, PEAR)}


@dataclass(frozen=True)
class StateAssessment:
    verdict: Verdict
    mode: Mode
    phase_ratio_start: float
    phase_ratio_end: float
    modulus_trend_per_freq: tuple[int, ...]
    evidence: str


def phase_ratio(spectrum: Spectrum, f_low_hz: float, f_high_hz: float) -> float:
    """rho = |phase(f_low)| / |phase(f_high)|; both frequencies must be present."""
    low = spectrum.sample_at(f_low_hz)
    high = spectrum.sample_at(f_high_hz)
    if low is None or high is None:
        missing = f_low_hz if low is None else f_high_hz
        raise MissingFrequency(f"no sample at {missing:g} Hz")
    if abs(high.phase_deg) <= PHASE_GUARD_DEG:
        raise DegeneratePhase(
            f"high-frequency phase {high.phase_deg} deg within {PHASE_GUARD_DEG} of zero"
        )
    return abs(low.phase_deg) / abs(high.phase_deg)


def _trend_sign(first: float, last: float, deadband: float) -> int:
    if first == 0.0 and last == 0.0:
        return 0
    if first == 0.0:
        return 1 if last > 0 else -1
    if abs(last - first) / abs(first) < deadband:
        return 0
    return 1 if last > first else -1


def _mode_from_trends(trends: tuple[int, ...], profile: FruitProfile) -> Mode:
    # unanimous match against a profile trend wins outright
    for sign, mode in (
        (profile.dehydration_modulus_trend, Mode.DEHYDRATION),
        (profile.rot_modulus_trend, Mode.ROT),
    ):
        if sign != 0 and all(t == sign for t in trends):
            return mode
    # fall back to a strict majority of the non-flat trends; mixed-frequency
    # behaviour is common mid-process and a single reversed band should not
    # erase otherwise consistent evidence
    total = sum(trends)
    if total != 0:
        majority = 1 if total > 0 else -1
        if majority == profile.dehydration_modulus_trend:
            return Mode.DEHYDRATION
        if majority == profile.rot_modulus_trend:
            return Mode.ROT
    return Mode.INDETERMINATE


def assess(
    series: list[Spectrum],
    profile: FruitProfile,
    f_low_hz: float = DEFAULT_F_LOW_HZ,
    f_high_hz: float = DEFAULT_F_HIGH_HZ,
    fresh_ratio: float = DEFAULT_FRESH_RATIO,
    stale_ratio: float = DEFAULT_STALE_RATIO,
) -> StateAssessment:
    """Assess a time-ordered series of spectra of one specimen.

    Verdict: fresh when the final phase ratio is at or above ``fresh_ratio``,
    stale at or below ``stale_ratio``; between the thresholds the trend
    evidence decides (detected degradation reads as stale).
    """
    if len(series) < 2:
        raise ValidationError("assessment needs a series of at least 2 spectra")
    freq_sets = [s.frequencies_hz for s in series]
    if any(fs != freq_sets[0] for fs in freq_sets[1:]):
        raise InconsistentSeries(f"frequency grids differ across the series: {freq_sets}")

    first, last = series[0], series[-1]
    trends = tuple(
        _trend_sign(a.modulus_ohm, b.modulus_ohm, TREND_DEADBAND)
        for a, b in zip(first.samples, last.samples)
    )
    mode = _mode_from_trends(trends, profile)

    evidence_lines = [
        f"profile={profile.name}",
        f"modulus trends (first->last) per frequency: "
        + ", ".join(
            f"{f:g} Hz: {t:+d}" for f, t in zip(first.frequencies_hz, trends)
        ),
    ]

    ratios = []
    for which, spectrum in (("start", first), ("end", last)):
        try:
            rho = phase_ratio(spectrum, f_low_hz, f_high_hz)
            evidence_lines.append(f"phase ratio ({which}) = {rho:.3f}")
        except DegeneratePhase as exc:
            rho = math.nan
            evidence_lines.append(f"phase ratio ({which}) undefined: {exc}")
        ratios.append(rho)
    rho_start, rho_end = ratios

    if math.isnan(rho_end):
        verdict = Verdict.STALE if mode is not Mode.INDETERMINATE else Verdict.FRESH
        evidence_lines.append("verdict from trend evidence only (degenerate end ratio)")
    elif rho_end >= fresh_ratio:
        verdict = Verdict.FRESH
        evidence_lines.append(f"end ratio {rho_end:.3f} >= fresh threshold {fresh_ratio:g}")
    elif rho_end <= stale_ratio:
        verdict = Verdict.STALE
        evidence_lines.append(f"end ratio {rho_end:.3f} <= stale threshold {stale_ratio:g}")
    else:
        verdict = Verdict.STALE if mode is not Mode.INDETERMINATE else Verdict.FRESH
        evidence_lines.append(
            f"end ratio {rho_end:.3f} between thresholds; verdict from trend evidence"
        )
    evidence_lines.append(f"mode={mode.value}, verdict={verdict.value}")
    return StateAssessment(
        verdict=verdict,
        mode=mode,
        phase_ratio_start=rho_start,
        phase_ratio_end=rho_end,
        modulus_trend_per_freq=trends,
        evidence="\n".join(evidence_lines),
    )
