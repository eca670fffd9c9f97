"""RC two-terminal networks: closed-form evaluation and synthesis.

Two topologies are supported, both realizing a strictly proper rational
impedance of orders (M-1, M) with M in {2, 3}:

* Foster: series chain of parallel R||C branches,
  Z = sum R_i / (1 + j*omega*R_i*C_i).
* Cauer: ladder alternating shunt capacitors and series resistors,
  Z = 1 / (j*omega*C1 + 1 / (R1 + 1 / (j*omega*C2 + ...))).

Foster synthesis goes through the denominator poles and residues
(C_i = 1/r_i, R_i = -r_i/p_i); Cauer synthesis is a continued-fraction
expansion about infinity by repeated polynomial division. Non-physical
element values (negative R or C) are representable and flagged, never
rejected: fits to degraded tissue routinely produce them and downstream
analysis still wants the numbers.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    ComplexPoles,
    DegenerateExpansion,
    NonDistinctPoles,
    PoleAtFrequency,
    UnstablePoles,
    ValidationError,
)
from .ratfit import RationalImpedance

_REAL_POLE_TOL = 1e-9      # |Im| / |root| below which a root counts as real
_DISTINCT_TOL = 1e-9       # relative separation required between poles
_DEGENERATE_TOL = 1e-12    # leading coefficient floor, relative to max coeff
_DISCRIMINANT_TOL = 1e-10  # switch to companion-matrix roots near degeneracy


@dataclass(frozen=True)
class FosterCircuit:
    """Series chain of 2 or 3 parallel R||C branches, (R_i ohms, C_i farads)."""

    branches: tuple[tuple[float, float], ...]

    def __post_init__(self):
        object.__setattr__(
            self, "branches", tuple((float(r), float(c)) for r, c in self.branches)
        )
        if len(self.branches) not in (2, 3):
            raise ValidationError(f"Foster circuit needs 2 or 3 branches, got {len(self.branches)}")

    @property
    def is_physical(self) -> bool:
        return all(r > 0 and c > 0 for r, c in self.branches)

    @property
    def time_constants(self) -> tuple[float, ...]:
        return tuple(r * c for r, c in self.branches)

    @property
    def dc_resistance(self) -> float:
        return sum(r for r, _ in self.branches)


@dataclass(frozen=True)
class CauerCircuit:
    """Ladder [C1, R1, C2, R2(, C3, R3)]: shunt capacitors, series resistors."""

    ladder: tuple[float, ...]

    def __post_init__(self):
        object.__setattr__(self, "ladder", tuple(float(v) for v in self.ladder))
        if len(self.ladder) not in (4, 6):
            raise ValidationError(f"Cauer ladder needs 4 or 6 elements, got {len(self.ladder)}")

    @property
    def capacitors(self) -> tuple[float, ...]:
        return self.ladder[0::2]

    @property
    def resistors(self) -> tuple[float, ...]:
        return self.ladder[1::2]

    @property
    def is_physical(self) -> bool:
        return all(v > 0 for v in self.ladder)

    @property
    def dc_resistance(self) -> float:
        return sum(self.resistors)


def foster_impedance(circuit: FosterCircuit, omega_rad_s: float) -> complex:
    """Closed-form Foster impedance: sum of R_i / (1 + j*omega*R_i*C_i)."""
    return sum(r / (1.0 + 1j * omega_rad_s * r * c) for r, c in circuit.branches)


def cauer_impedance(circuit: CauerCircuit, omega_rad_s: float) -> complex:
    """Evaluate the Cauer continued fraction innermost-out."""
    caps, res = circuit.capacitors, circuit.resistors
    acc = complex(res[-1])
    for c, r in zip(reversed(caps[1:]), reversed(res[:-1])):
        if abs(acc) < 1e-300:
            raise PoleAtFrequency(omega_rad_s)
        acc = r + 1.0 / (1j * omega_rad_s * c + 1.0 / acc)
    if abs(acc) < 1e-300:
        raise PoleAtFrequency(omega_rad_s)
    den = 1j * omega_rad_s * caps[0] + 1.0 / acc
    if abs(den) < 1e-300:
        raise PoleAtFrequency(omega_rad_s)
    return 1.0 / den


def _poly_roots(coeffs_ascending) -> np.ndarray:
    """Roots of a degree-2 or -3 polynomial, analytic with companion fallback.

    Quadratic and cubic closed forms are exact at these degrees; near a
    vanishing discriminant they lose accuracy, so the companion-matrix
    eigenvalues take over there.
    """
    raw = np.asarray(coeffs_ascending, dtype=float)
    degree = len(raw) - 1
    # balance the first and last coefficients so the closed forms work on
    # O(1) numbers; roots scale back by the same factor
    if raw[0] != 0.0 and raw[degree] != 0.0:
        scale = (abs(raw[degree]) / abs(raw[0])) ** (1.0 / degree)
    else:
        scale = 1.0
    c = raw * scale ** -np.arange(degree + 1) if scale not in (0.0, 1.0) else raw.copy()
    roots = _poly_roots_balanced(c, degree)
    # a couple of Newton steps on the balanced polynomial tightens the
    # closed-form roots to machine precision when the roots span many decades
    desc = c[::-1]
    deriv = np.polyder(desc)
    for _ in range(2):
        slope = np.polyval(deriv, roots)
        step = np.where(slope != 0, np.polyval(desc, roots) / np.where(slope != 0, slope, 1.0), 0.0)
        roots = roots - step
    return roots / scale


def _poly_roots_balanced(c: np.ndarray, degree: int) -> np.ndarray:
    if degree == 2:
        a2, a1, a0 = c[2], c[1], c[0]
        disc = a1 * a1 - 4.0 * a2 * a0
        scale = max(a1 * a1, abs(4.0 * a2 * a0), 1e-300)
        if abs(disc) < _DISCRIMINANT_TOL * scale:
            return np.roots(c[::-1])
        sq = cmath.sqrt(disc)
        # pair the root of larger magnitude with -sign(a1) to avoid cancellation
        q = -0.5 * (a1 + (sq if a1.real >= 0 else -sq))
        return np.array([q / a2, a0 / q]) if q != 0 else np.roots(c[::-1])
    if degree == 3:
        a, b, d, e = c[3], c[2], c[1], c[0]
        # depressed cubic t^3 + pt + q, x = t - b/(3a)
        p = (3.0 * a * d - b * b) / (3.0 * a * a)
        q = (2.0 * b**3 - 9.0 * a * b * d + 27.0 * a * a * e) / (27.0 * a**3)
        disc = -4.0 * p**3 - 27.0 * q * q
        scale = max(abs(4.0 * p**3), abs(27.0 * q * q), 1e-300)
        if abs(disc) < _DISCRIMINANT_TOL * scale:
            return np.roots(c[::-1])
        shift = -b / (3.0 * a)
        if disc > 0:
            # three real roots, trigonometric form
            m = 2.0 * math.sqrt(-p / 3.0)
            theta = math.acos(max(-1.0, min(1.0, 3.0 * q / (p * m)))) / 3.0
            return np.array(
                [m * math.cos(theta - 2.0 * math.pi * k / 3.0) + shift for k in range(3)]
            )
        # one real root, Cardano
        u = cmath.exp(cmath.log(-q / 2.0 + cmath.sqrt(q * q / 4.0 + p**3 / 27.0)) / 3.0)
        w = complex(-0.5, math.sqrt(3.0) / 2.0)
        return np.array([u * w**k + (-p / (3.0 * (u * w**k))) + shift for k in range(3)])
    raise ValidationError(f"unsupported polynomial degree {degree}")


def _require_synthesizable(model: RationalImpedance) -> None:
    orders = model.orders
    if orders.num_order != orders.den_order - 1:
        raise ValidationError(
            f"synthesis needs orders (M-1, M), got ({orders.num_order},{orders.den_order})"
        )


def foster_synthesis(model: RationalImpedance) -> FosterCircuit:
    """Realize the model as a Foster chain via poles and residues.

    Requires all denominator roots real, strictly negative and distinct;
    otherwise raises the matching synthesis error carrying the raw roots.
    Branches come out sorted by ascending time constant.
    """
    _require_synthesizable(model)
    roots = _poly_roots(model.denominator)
    if np.any(np.abs(roots.imag) > _REAL_POLE_TOL * np.maximum(np.abs(roots), 1e-300)):
        raise ComplexPoles(f"denominator roots are not all real: {roots}", poles=roots)
    poles = np.real(roots)
    if np.any(poles >= 0):
        raise UnstablePoles(f"non-negative denominator root(s): {poles}", poles=poles)
    scale = np.max(np.abs(poles))
    for i in range(len(poles)):
        for j in range(i + 1, len(poles)):
            if abs(poles[i] - poles[j]) < _DISTINCT_TOL * scale:
                raise NonDistinctPoles(f"coincident poles: {poles}", poles=poles)

    num = np.polynomial.Polynomial(model.num_coeffs)
    dden = np.polynomial.Polynomial(model.denominator).deriv()
    branches = []
    for p in poles:
        residue = num(p) / dden(p)
        c_i = 1.0 / residue
        r_i = -residue / p
        branches.append((r_i, c_i))
    branches.sort(key=lambda rc: rc[0] * rc[1])
    return FosterCircuit(tuple(branches))


def _trim(coeffs: np.ndarray, floor: float) -> np.ndarray:
    """Drop trailing (highest-power) coefficients below the floor."""
    keep = len(coeffs)
    while keep > 1 and abs(coeffs[keep - 1]) <= floor:
        keep -= 1
    return coeffs[:keep]


def cauer_synthesis(model: RationalImpedance) -> CauerCircuit:
    """Realize the model as a Cauer ladder by continued-fraction expansion.

    Alternates between removing the pole at infinity of the admittance
    (shunt C = leading-coefficient ratio) and the value at infinity of the
    remainder impedance (series R), via polynomial division in ascending
    coefficient arrays. Exactly M capacitor and M resistor extractions.
    """
    _require_synthesizable(model)
    stages = model.orders.den_order
    # run the expansion in a normalized frequency variable so coefficients of
    # different powers (units s^m) are comparable; resistors are invariant,
    # capacitors de-scale at the end
    b_last = model.den_coeffs[-1]
    omega0 = abs(b_last) ** (-1.0 / stages) if b_last != 0.0 else 1.0
    num = np.asarray(model.num_coeffs, dtype=float) * omega0 ** np.arange(stages)
    den = np.asarray(model.denominator, dtype=float) * omega0 ** np.arange(stages + 1)
    floor = _DEGENERATE_TOL * max(np.max(np.abs(num)), np.max(np.abs(den)))

    ladder: list[float] = []
    for stage in range(stages):
        if len(den) != len(num) + 1 or abs(num[-1]) <= floor:
            raise DegenerateExpansion(
                f"expansion stalled before capacitor {stage + 1}: "
                f"remainder degrees ({len(num) - 1}, {len(den) - 1})"
            )
        # Y = den/num has a pole at infinity: remove C*p
        c_k = den[-1] / num[-1]
        remainder = den.copy()
        remainder[1:] -= c_k * num  # den - c_k * p * num
        remainder = _trim(remainder, floor)
        ladder.append(c_k)
        # now Z = num / remainder is a constant at infinity: remove R
        if len(remainder) != len(num) or abs(remainder[-1]) <= floor:
            raise DegenerateExpansion(
                f"expansion stalled before resistor {stage + 1}: "
                f"remainder degrees ({len(num) - 1}, {len(remainder) - 1})"
            )
        r_k = num[-1] / remainder[-1]
        new_num = _trim(num - r_k * remainder, floor)
        ladder.append(r_k)
        num, den = new_num, remainder
    # odd slots are capacitors in the normalized variable
    ladder = [v / omega0 if i % 2 == 0 else v for i, v in enumerate(ladder)]
    return CauerCircuit(tuple(ladder))


def _rational_from_polys(num: np.ndarray, den: np.ndarray) -> RationalImpedance:
    if abs(den[0]) < 1e-300:
        raise ValidationError("circuit has a pole at DC; cannot normalize")
    num = num / den[0]
    den = den / den[0]
    return RationalImpedance(tuple(num), tuple(den[1:]))


def circuit_to_rational(circuit: FosterCircuit | CauerCircuit) -> RationalImpedance:
    """Expand a circuit's closed form into rational coefficients, orders (M-1, M)."""
    P = np.polynomial.Polynomial
    if isinstance(circuit, FosterCircuit):
        den = P([1.0])
        for r, c in circuit.branches:
            den = den * P([1.0, r * c])
        num = P([0.0])
        for i, (r, _) in enumerate(circuit.branches):
            term = P([r])
            for j, (rj, cj) in enumerate(circuit.branches):
                if j != i:
                    term = term * P([1.0, rj * cj])
            num = num + term
        num_c = np.zeros(len(circuit.branches))
        num_c[: len(num.coef)] = num.coef
        den_c = np.zeros(len(circuit.branches) + 1)
        den_c[: len(den.coef)] = den.coef
        return _rational_from_polys(num_c, den_c)

    if isinstance(circuit, CauerCircuit):
        caps, res = circuit.capacitors, circuit.resistors
        # build innermost-out as a rational (num, den) pair
        num, den = P([res[-1]]), P([1.0])
        for c, r in zip(reversed(caps[1:]), reversed(res[:-1])):
            # Y = j*omega*c + den/num, then Z = r + 1/Y
            y_num = P([0.0, c]) * num + den
            num, den = P([r]) * y_num + num, y_num
        y_num = P([0.0, caps[0]]) * num + den
        den = y_num
        m = len(caps)
        num_c = np.zeros(m)
        num_c[: len(num.coef)] = num.coef
        den_c = np.zeros(m + 1)
        den_c[: len(den.coef)] = den.coef
        return _rational_from_polys(num_c, den_c)

    raise ValidationError(f"unsupported circuit type {type(circuit).__name__}")
