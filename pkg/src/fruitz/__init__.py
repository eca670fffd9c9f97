"""Fruit bioimpedance toolkit.

Fits rational complex-impedance models to multi-frequency measurements,
synthesizes equivalent Foster and Cauer RC networks, reconstructs
amplitude/phase frequency responses, and classifies specimen freshness
from phase ratios and modulus trends.
"""

from .classify import (
    APPLE,
    BUILTIN_PROFILES,
    LEMON,
    PEAR,
    FruitProfile,
    Mode,
    StateAssessment,
    Verdict,
    assess,
    phase_ratio,
)
from .circuits import (
    CauerCircuit,
    FosterCircuit,
    cauer_impedance,
    cauer_synthesis,
    circuit_to_rational,
    foster_impedance,
    foster_synthesis,
)
from .ratfit import ModelOrders, RationalImpedance, build_system, evaluate, fit_rational
from .response import (
    FrequencyResponse,
    PhasePortraitPoint,
    phase_portrait,
    response_to_csv,
    sweep,
)
from .spectra import (
    ImpedanceSample,
    MeasurementMeta,
    Spectrum,
    cartesian_to_polar,
    fitting_view,
    load_spectrum,
    polar_to_cartesian,
    spectrum_to_csv,
)

__version__ = "0.1.0"

__all__ = [
    "APPLE",
    "BUILTIN_PROFILES",
    "LEMON",
    "PEAR",
    "CauerCircuit",
    "FosterCircuit",
    "FrequencyResponse",
    "FruitProfile",
    "ImpedanceSample",
    "MeasurementMeta",
    "Mode",
    "ModelOrders",
    "PhasePortraitPoint",
    "RationalImpedance",
    "Spectrum",
    "StateAssessment",
    "Verdict",
    "assess",
    "build_system",
    "cartesian_to_polar",
    "cauer_impedance",
    "cauer_synthesis",
    "circuit_to_rational",
    "evaluate",
    "fit_rational",
    "fitting_view",
    "foster_impedance",
    "foster_synthesis",
    "load_spectrum",
    "phase_portrait",
    "phase_ratio",
    "polar_to_cartesian",
    "response_to_csv",
    "spectrum_to_csv",
    "sweep",
]
