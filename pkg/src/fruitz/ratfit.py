"""Rational impedance model: linear-system assembly, solve, and evaluation.

The model is Z(p) = (A0 + A1 p + ... + AN p^N) / (1 + B1 p + ... + BM p^M)
with p = j*omega. Each measured frequency contributes two real equations
(real and imaginary part of N(p) - Z*(D(p) - 1) = Z), so K frequencies give
a 2K x (N+M+1) system in the unknowns [A0..AN, B1..BM].

Angular frequencies are normalized by the geometric mean of the usable
frequencies before assembly; raw omega spans ~1.2e5..3.1e6 rad/s and cubed
powers would otherwise push the condition number out of reach. Coefficients
are de-scaled on the way out, so callers only ever see SI units.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
import scipy.linalg

from .errors import InsufficientData, PoleAtFrequency, SingularSystem, ValidationError
from .spectra import Spectrum, fitting_view

SUPPORTED_ORDERS = ((1, 2), (2, 3))
CONDITION_LIMIT = 1e12
DENOMINATOR_FLOOR = 1e-300


@dataclass(frozen=True)
class ModelOrders:
    """Numerator/denominator polynomial orders; only (1,2) and (2,3) are supported."""

    num_order: int
    den_order: int

    def __post_init__(self):
        if (self.num_order, self.den_order) not in SUPPORTED_ORDERS:
            raise ValidationError(
                f"unsupported orders ({self.num_order},{self.den_order}); "
                f"supported: {SUPPORTED_ORDERS}"
            )

    @property
    def unknowns(self) -> int:
        return self.num_order + self.den_order + 1

    @property
    def min_frequencies(self) -> int:
        return math.ceil(self.unknowns / 2)


@dataclass(frozen=True)
class RationalImpedance:
    """Fitted rational impedance with provenance of the solve.

    ``num_coeffs`` is (A0..AN) in Ohm*s^n, ``den_coeffs`` is (B1..BM) in s^m
    (the constant denominator term is fixed at 1). ``omega_scale`` records the
    normalization frequency used during the solve; ``fit_residuals`` holds the
    per-frequency relative complex misfit when the model came from a fit.
    """

    num_coeffs: tuple[float, ...]
    den_coeffs: tuple[float, ...]
    omega_scale: float = 1.0
    fit_residuals: tuple[float, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "num_coeffs", tuple(float(c) for c in self.num_coeffs))
        object.__setattr__(self, "den_coeffs", tuple(float(c) for c in self.den_coeffs))
        object.__setattr__(self, "fit_residuals", tuple(float(r) for r in self.fit_residuals))
        all_coeffs = self.num_coeffs + self.den_coeffs
        if not all(math.isfinite(c) for c in all_coeffs):
            raise ValidationError("coefficients must be finite")
        _ = self.orders  # validates the (N, M) pair

    @property
    def orders(self) -> ModelOrders:
        return ModelOrders(len(self.num_coeffs) - 1, len(self.den_coeffs))

    @property
    def is_positive(self) -> bool:
        """True when every coefficient is strictly positive (passivity heuristic)."""
        return all(c > 0 for c in self.num_coeffs + self.den_coeffs)

    @property
    def denominator(self) -> tuple[float, ...]:
        """Full denominator coefficients (1, B1, .., BM), ascending powers."""
        return (1.0,) + self.den_coeffs


def build_system(
    view: list[tuple[float, float, float]], orders: ModelOrders
) -> tuple[np.ndarray, np.ndarray, float]:
    """Assemble the fitting system from (omega, R, X) triples.

    Returns (matrix, rhs, omega_scale): a 2K x (N+M+1) real matrix and rhs in
    ohms, assembled in the omega-normalized variable. Unknown ordering is
    [A0..AN, B1..BM].
    """
    if len(view) < orders.min_frequencies:
        raise InsufficientData(
            f"{len(view)} usable frequencies < {orders.min_frequencies} "
            f"required for orders ({orders.num_order},{orders.den_order})"
        )
    omegas = np.array([w for w, _, _ in view], dtype=float)
    omega_scale = float(np.exp(np.mean(np.log(omegas))))

    n, m = orders.num_order, orders.den_order
    rows = []
    rhs = []
    for omega, r, x in view:
        w = omega / omega_scale
        z = complex(r, x)
        coeffs = [(1j * w) ** k for k in range(n + 1)]
        coeffs += [-z * (1j * w) ** k for k in range(1, m + 1)]
        rows.append([c.real for c in coeffs])
        rows.append([c.imag for c in coeffs])
        rhs.extend((r, x))
    return np.array(rows), np.array(rhs), omega_scale


def _solve(matrix: np.ndarray, rhs: np.ndarray) -> np.ndarray:
    cond = np.linalg.cond(matrix)
    if not np.isfinite(cond) or cond > CONDITION_LIMIT:
        raise SingularSystem(cond)
    if matrix.shape[0] == matrix.shape[1]:
        return scipy.linalg.solve(matrix, rhs)
    # QR with column pivoting; avoids squaring the condition number
    solution, _, _, _ = scipy.linalg.lstsq(matrix, rhs, lapack_driver="gelsy")
    return solution


def fit_rational(spectrum: Spectrum, orders: ModelOrders) -> RationalImpedance:
    """Fit the rational model to a spectrum's usable samples.

    Square systems are solved exactly; overdetermined ones in the
    least-squares sense. Residuals are |Z_fit - Z_meas| / |Z_meas| per
    usable frequency, in frequency order.
    """
    view = fitting_view(spectrum)
    matrix, rhs, omega_scale = build_system(view, orders)
    solution = _solve(matrix, rhs)

    n, m = orders.num_order, orders.den_order
    num = solution[: n + 1] / omega_scale ** np.arange(n + 1)
    den = solution[n + 1 :] / omega_scale ** np.arange(1, m + 1)
    model = RationalImpedance(tuple(num), tuple(den), omega_scale=omega_scale)

    residuals = []
    for omega, r, x in view:
        z_fit = evaluate(model, omega)
        residuals.append(abs(z_fit - complex(r, x)) / abs(complex(r, x)))
    return RationalImpedance(
        model.num_coeffs, model.den_coeffs, omega_scale=omega_scale,
        fit_residuals=tuple(residuals),
    )


def evaluate(model: RationalImpedance, omega_rad_s: float) -> complex:
    """Evaluate Z(j*omega); real part is R, imaginary part is X, both in ohms."""
    p = 1j * omega_rad_s
    num = sum(a * p**k for k, a in enumerate(model.num_coeffs))
    den = 1.0 + sum(b * p**k for k, b in enumerate(model.den_coeffs, start=1))
    if abs(den) < DENOMINATOR_FLOOR:
        raise PoleAtFrequency(omega_rad_s)
    return num / den
