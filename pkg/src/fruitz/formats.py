"""Versioned JSON file formats for models and circuits.

Model file::

    {"format_version": 1, "kind": "rational_impedance",
     "orders": {"num": N, "den": M},
     "num_coeffs": [...], "den_coeffs": [...],
     "omega_scale": ..., "fit_residuals": [...], "is_positive": ...}

Circuit file::

    {"format_version": 1, "kind": "circuit", "topology": "foster"|"cauer",
     "elements": [{"name": "C1", "value": ..., "unit": "F"}, ...],
     "is_physical": ..., "source_model": <model object or null>}

All values are SI (ohms, farads, rad/s).
"""

from __future__ import annotations

import json

from .circuits import CauerCircuit, FosterCircuit
from .errors import ParseError
from .ratfit import RationalImpedance

FORMAT_VERSION = 1


def model_to_dict(model: RationalImpedance) -> dict:
    orders = model.orders
    return {
        "format_version": FORMAT_VERSION,
        "kind": "rational_impedance",
        "orders": {"num": orders.num_order, "den": orders.den_order},
        "num_coeffs": list(model.num_coeffs),
        "den_coeffs": list(model.den_coeffs),
        "omega_scale": model.omega_scale,
        "fit_residuals": list(model.fit_residuals),
        "is_positive": model.is_positive,
    }


def model_from_dict(data: dict) -> RationalImpedance:
    _check(data, "rational_impedance")
    model = RationalImpedance(
        num_coeffs=tuple(data["num_coeffs"]),
        den_coeffs=tuple(data["den_coeffs"]),
        omega_scale=float(data.get("omega_scale", 1.0)),
        fit_residuals=tuple(data.get("fit_residuals", ())),
    )
    orders = model.orders
    declared = data.get("orders", {})
    if declared and (declared.get("num"), declared.get("den")) != (
        orders.num_order, orders.den_order,
    ):
        raise ParseError(f"declared orders {declared} do not match coefficient counts")
    return model


def circuit_to_dict(circuit: FosterCircuit | CauerCircuit,
                    source_model: RationalImpedance | None = None,
                    suspect: bool | None = None) -> dict:
    elements = []
    if isinstance(circuit, FosterCircuit):
        topology = "foster"
        for i, (r, c) in enumerate(circuit.branches, start=1):
            elements.append({"name": f"C{i}", "value": c, "unit": "F"})
            elements.append({"name": f"R{i}", "value": r, "unit": "ohm"})
    else:
        topology = "cauer"
        for i, (c, r) in enumerate(zip(circuit.capacitors, circuit.resistors), start=1):
            elements.append({"name": f"C{i}", "value": c, "unit": "F"})
            elements.append({"name": f"R{i}", "value": r, "unit": "ohm"})
    data = {
        "format_version": FORMAT_VERSION,
        "kind": "circuit",
        "topology": topology,
        "elements": elements,
        "is_physical": circuit.is_physical,
        "source_model": model_to_dict(source_model) if source_model else None,
    }
    if suspect is not None:
        data["suspect"] = suspect
    return data


def circuit_from_dict(data: dict) -> FosterCircuit | CauerCircuit:
    _check(data, "circuit")
    values = {e["name"]: float(e["value"]) for e in data["elements"]}
    count = len(values) // 2
    caps = [values[f"C{i}"] for i in range(1, count + 1)]
    res = [values[f"R{i}"] for i in range(1, count + 1)]
    if data["topology"] == "foster":
        return FosterCircuit(tuple(zip(res, caps)))
    if data["topology"] == "cauer":
        ladder = []
        for c, r in zip(caps, res):
            ladder.extend((c, r))
        return CauerCircuit(tuple(ladder))
    raise ParseError(f"unknown topology {data['topology']!r}")


def model_to_json(model: RationalImpedance) -> str:
    return json.dumps(model_to_dict(model), indent=2) + "\n"


def circuit_to_json(circuit, source_model=None, suspect=None) -> str:
    return json.dumps(circuit_to_dict(circuit, source_model, suspect), indent=2) + "\n"


def load_document(path) -> RationalImpedance | FosterCircuit | CauerCircuit:
    """Load a model or circuit file, dispatching on its ``kind`` field."""
    with open(path, "r", encoding="utf-8") as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ParseError(f"not valid JSON: {exc}") from None
    kind = data.get("kind")
    if kind == "rational_impedance":
        return model_from_dict(data)
    if kind == "circuit":
        return circuit_from_dict(data)
    raise ParseError(f"unknown document kind {kind!r}")


def _check(data: dict, expected_kind: str) -> None:
    if data.get("kind") != expected_kind:
        raise ParseError(f"expected kind {expected_kind!r}, got {data.get('kind')!r}")
    if data.get("format_version") != FORMAT_VERSION:
        raise ParseError(f"unsupported format_version {data.get('format_version')!r}")
