import json

import pytest

from fruitz import fixtures, formats
from fruitz.circuits import CauerCircuit, FosterCircuit
from fruitz.errors import ParseError
from fruitz.ratfit import ModelOrders, fit_rational


@pytest.fixture
def model():
    return fit_rational(fixtures.get_spectrum("table3.fresh"), ModelOrders(2, 3))


class TestModelFormat:
    def test_round_trip(self, model, tmp_path):
        path = tmp_path / "model.json"
        path.write_text(formats.model_to_json(model))
        loaded = formats.load_document(path)
        assert loaded.num_coeffs == model.num_coeffs
        assert loaded.den_coeffs == model.den_coeffs
        assert loaded.omega_scale == model.omega_scale
        assert loaded.fit_residuals == model.fit_residuals

    def test_schema_fields(self, model):
        data = formats.model_to_dict(model)
        assert data["format_version"] == 1
        assert data["kind"] == "rational_impedance"
        assert data["orders"] == {"num": 2, "den": 3}
        assert isinstance(data["is_positive"], bool)
        assert len(data["fit_residuals"]) == 3

    def test_declared_orders_must_match(self, model):
        data = formats.model_to_dict(model)
        data["orders"]["den"] = 2
        with pytest.raises(ParseError):
            formats.model_from_dict(data)

    def test_bad_version(self, model):
        data = formats.model_to_dict(model)
        data["format_version"] = 99
        with pytest.raises(ParseError):
            formats.model_from_dict(data)


class TestCircuitFormat:
    def test_foster_round_trip(self, tmp_path):
        circuit = fixtures.get_circuit("table8.apple.longitudinal.fresh.scheme_a")
        path = tmp_path / "c.json"
        path.write_text(formats.circuit_to_json(circuit))
        loaded = formats.load_document(path)
        assert isinstance(loaded, FosterCircuit)
        assert loaded.branches == circuit.branches

    def test_cauer_round_trip(self, tmp_path):
        circuit = fixtures.get_circuit("table8.lemon.transverse.day3.scheme_g")
        path = tmp_path / "c.json"
        path.write_text(formats.circuit_to_json(circuit))
        loaded = formats.load_document(path)
        assert isinstance(loaded, CauerCircuit)
        assert loaded.ladder == circuit.ladder

    def test_source_model_embedded(self, model):
        from fruitz.circuits import cauer_synthesis

        circuit = cauer_synthesis(model)
        data = formats.circuit_to_dict(circuit, source_model=model)
        assert data["source_model"]["kind"] == "rational_impedance"

    def test_elements_are_si_triples(self):
        circuit = fixtures.get_circuit("table8.pear.transverse.fresh.scheme_b")
        data = formats.circuit_to_dict(circuit)
        assert {e["unit"] for e in data["elements"]} == {"F", "ohm"}
        assert len(data["elements"]) == 4


class TestLoadDocument:
    def test_unknown_kind(self, tmp_path):
        path = tmp_path / "x.json"
        path.write_text(json.dumps({"kind": "mystery", "format_version": 1}))
        with pytest.raises(ParseError):
            formats.load_document(path)

    def test_not_json(self, tmp_path):
        path = tmp_path / "x.json"
        path.write_text("not json at all")
        with pytest.raises(ParseError):
            formats.load_document(path)
