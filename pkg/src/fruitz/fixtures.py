"""Embedded measurement fixtures: seven spectra tables and the fitted circuits.

Values are stored verbatim from the source tables (moduli in ohms, phases in
degrees, capacitances converted nF -> F, resistances kOhm -> Ohm). Rows known
to be unreliable carry ``suspect=True``: the pear-longitudinal fresh row is
column-misaligned in the source, and the 90%-rot apple circuit rows describe
wildly different impedances between the two schemes.
"""

from __future__ import annotations

from dataclasses import dataclass

from .circuits import CauerCircuit, FosterCircuit
from .errors import InputError
from .spectra import Spectrum, ImpedanceSample, spectrum_to_csv

FREQUENCIES_HZ = (20e3, 100e3, 500e3)

# (table id, fruit, cut, note, [(state, moduli, phases, suspect)])
_SPECTRUM_TABLES = (
    ("table1", "apple", "transverse", "apple rot progression (25/45/90% affected area)", (
        ("pct25", (716, 542, 375), (-18.3, -16.6, -8.4), False),
        ("pct45", (645, 306, 229), (-24.9, -20.7, -6.9), False),
        ("pct90", (287, 462, 411), (-63.7, -75.5, -46.0), False),
    )),
    ("table2", "apple", "longitudinal", "apple longitudinal cut over one week", (
        ("fresh", (670, 344, 245), (-43.3, -25.3, -10.8), False),
        ("day3", (974, 659, 388), (-43.1, -26.4, -16.5), False),
        ("day6", (6950, 2240, 758), (-31.6, -38.4, -55.2), False),
    )),
    ("table3", "apple", "transverse", "apple transverse cut over one week", (
        ("fresh", (739, 260, 112), (-48.0, -31.1, -7.1), False),
        ("day3", (974, 595, 334), (-47.2, -30.8, -12.6), False),
        ("day6", (5950, 1955, 731), (-24.1, -20.5, -34.6), False),
    )),
    ("table4", "pear", "longitudinal", "pear longitudinal cut over one week", (
        # fresh row is column-misaligned in the source; stored verbatim
        ("fresh", (148, 0, 0), (0.0, -20.4, -15.2), True),
        ("day3", (403, 50, 0), (-38.3, -30.4, -10.5), False),
        ("day6", (346, 0, 0), (-27.6, -25.0, -4.5), False),
    )),
    ("table5", "pear", "transverse", "pear transverse cut over one week", (
        ("fresh", (885, 323, 144), (-47.5, -33.8, -10.8), False),
        ("day3", (226, 69, 14), (-43.6, -30.2, -5.3), False),
        ("day6", (1312, 1072, 516), (-11.0, -35.9, -41.0), False),
    )),
    ("table6", "lemon", "longitudinal", "lemon longitudinal cut over one week", (
        ("fresh", (503, 3, 0), (-45.1, -32.6, -7.4), False),
        ("day3", (553, 68, 0), (-47.9, -43.1, -6.9), False),
        ("day6", (235, 99, 0), (-9.0, -21.7, -19.8), False),
    )),
    ("table7", "lemon", "transverse", "lemon transverse cut over one week", (
        ("fresh", (974, 263, 158), (-37.4, -39.1, -24.5), False),
        ("day3", (308, 97, 74), (-35.5, -28.4, -7.4), False),
        ("day6", (68, 63, 0), (-22.9, -15.6, -55.0), False),
    )),
)

# fitted element values: (group, state, scheme, [(C_nF, R_kOhm)...], suspect)
# schemes a/b are Foster chains (3 and 2 branches), v/g are Cauer ladders
_CIRCUIT_ROWS = (
    ("apple.longitudinal", "fresh", "a", ((0.00214, 0.237), (11.169, 0.102), (16.029, 1.464)), False),
    ("apple.longitudinal", "fresh", "v", ((0.00214, 0.237), (6.584, 0.283), (11.145, 1.282)), False),
    ("apple.longitudinal", "day3", "a", ((0.01495, 0.375), (3.306, 0.304), (12.638, 10.659)), False),
    ("apple.longitudinal", "day3", "v", ((0.01498, 0.379), (2.629, 0.479), (10.186, 10.479)), False),
    ("apple.longitudinal", "day6", "a", ((0.04076, 0.285), (0.526, 1.980), (3.436, 4.113)), False),
    ("apple.longitudinal", "day6", "v", ((0.03742, 0.338), (0.427, 2.557), (3.549, 3.484)), False),
    ("apple.transverse", "fresh", "a", ((0.00098, 0.210), (170.15, 0.010), (11.412, 1.317)), False),
    ("apple.transverse", "fresh", "v", ((0.00098, 0.210), (12.231, 2.644), (0.618, 1.338)), False),
    ("apple.transverse", "day3", "a", ((0.0101, 0.373), (6.707, 0.243), (8.999, 3.528)), False),
    ("apple.transverse", "day3", "v", ((0.0101, 0.375), (3.844, 0.711), (6.166, 3.057)), False),
    ("apple.transverse", "day6", "a", ((0.00065, 0.603), (0.403, 1.365), (5.231, 2.419)), False),
    ("apple.transverse", "day6", "v", ((0.00065, 0.605), (0.374, 1.576), (5.344, 2.206)), False),
    ("apple.rot", "pct25", "a", ((0.00234, 0.374), (6.634, 0.195), (29.751, 0.439)), False),
    ("apple.rot", "pct25", "v", ((0.00234, 0.375), (5.428, 0.286), (31.323, 0.348)), False),
    ("apple.rot", "pct45", "a", ((0.00974, 0.266), (25.373, 0.0156), (13.662, 0.531)), False),
    ("apple.rot", "pct45", "v", ((0.00973, 0.266), (8.916, 0.116), (6.456, 0.430)), False),
    ("apple.rot", "pct90", "a", ((1.591, 0.247), (2.150, 0.255), (23.991, 0.647)), True),
    ("apple.rot", "pct90", "v", ((4.880, 0.0558), (54.495, 0.0050), (76.729, 0.588)), True),
    ("lemon.transverse", "fresh", "b", ((0.5478, 0.1523), (11.339, 0.7676)), False),
    ("lemon.transverse", "fresh", "g", ((0.5226, 0.1676), (11.038, 0.7526)), False),
    ("lemon.transverse", "day3", "b", ((0.0279, 0.0780), (32.980, 0.2849)), False),
    ("lemon.transverse", "day3", "g", ((0.0279, 0.0782), (32.968, 0.2848)), False),
    ("lemon.transverse", "day6", "b", ((6.931, 0.0636), (341.02, 4.140)), False),
    ("lemon.transverse", "day6", "g", ((6.793, 0.0662), (334.44, 4.137)), False),
    ("pear.transverse", "fresh", "b", ((0.0655, 0.2395), (9.373, 1.5446)), False),
    ("pear.transverse", "fresh", "g", ((0.0651, 0.2429), (9.3283, 1.5413)), False),
    ("pear.transverse", "day3", "b", ((0.0536, 0.0477), (78.563, 0.2139)), False),
    ("pear.transverse", "day3", "g", ((0.0536, 0.0478), (78.533, 0.2138)), False),
    ("pear.transverse", "day6", "b", ((0.3166, 0.4253), (1.6725, 1.2351)), False),
    ("pear.transverse", "day6", "g", ((0.2662, 0.5943), (1.6492, 1.0662)), False),
)

FOSTER_SCHEMES = ("a", "b")
CAUER_SCHEMES = ("v", "g")

# circuit group -> measured-spectra table of the same specimen
CIRCUIT_GROUP_TO_TABLE = {
    "apple.longitudinal": "table2",
    "apple.transverse": "table3",
    "apple.rot": "table1",
    "lemon.transverse": "table7",
    "pear.transverse": "table5",
}


@dataclass(frozen=True)
class Fixture:
    """One addressable fixture: a spectrum, a series or a fitted circuit."""

    id: str
    kind: str  # "spectrum" | "series" | "circuit"
    payload: object
    note: str
    suspect: bool = False


def _build_registry() -> dict[str, Fixture]:
    registry: dict[str, Fixture] = {}
    for table_id, fruit, cut, note, rows in _SPECTRUM_TABLES:
        series = []
        for state, moduli, phases, suspect in rows:
            samples = tuple(
                ImpedanceSample(f, float(m), float(p))
                for f, m, p in zip(FREQUENCIES_HZ, moduli, phases)
            )
            spectrum = Spectrum(samples, specimen=f"{fruit} {cut} {state}")
            sid = f"{table_id}.{state}"
            registry[sid] = Fixture(sid, "spectrum", spectrum, f"{note}; state {state}", suspect)
            series.append((state, spectrum))
        registry[table_id] = Fixture(
            table_id, "series", tuple(series), note,
            suspect=any(r[3] for r in rows),
        )
    for group, state, scheme, elements, suspect in _CIRCUIT_ROWS:
        pairs = tuple((r_kohm * 1e3, c_nf * 1e-9) for c_nf, r_kohm in elements)
        if scheme in FOSTER_SCHEMES:
            circuit = FosterCircuit(pairs)
        else:
            ladder = []
            for r_ohm, c_f in pairs:
                ladder.extend((c_f, r_ohm))
            circuit = CauerCircuit(tuple(ladder))
        cid = f"table8.{group}.{state}.scheme_{scheme}"
        registry[cid] = Fixture(
            cid, "circuit", circuit,
            f"fitted element values, {group} specimen, state {state}, scheme {scheme}",
            suspect,
        )
    return registry


_REGISTRY = _build_registry()


def list_fixtures() -> list[str]:
    return sorted(_REGISTRY)


def get_fixture(fixture_id: str) -> Fixture:
    try:
        return _REGISTRY[fixture_id]
    except KeyError:
        raise InputError(f"unknown fixture id {fixture_id!r}") from None


def get_spectrum(fixture_id: str) -> Spectrum:
    fx = get_fixture(fixture_id)
    if fx.kind != "spectrum":
        raise InputError(f"fixture {fixture_id!r} is a {fx.kind}, not a spectrum")
    return fx.payload


def get_series(table_id: str) -> tuple[tuple[str, Spectrum], ...]:
    fx = get_fixture(table_id)
    if fx.kind != "series":
        raise InputError(f"fixture {table_id!r} is a {fx.kind}, not a series")
    return fx.payload


def get_circuit(fixture_id: str) -> FosterCircuit | CauerCircuit:
    fx = get_fixture(fixture_id)
    if fx.kind != "circuit":
        raise InputError(f"fixture {fixture_id!r} is a {fx.kind}, not a circuit")
    return fx.payload


def dump_fixture(fixture_id: str) -> str:
    """Serialize a fixture: spectra and series as CSV, circuits as JSON."""
    fx = get_fixture(fixture_id)
    if fx.kind == "spectrum":
        return spectrum_to_csv(fx.payload)
    if fx.kind == "series":
        lines = ["state,frequency_hz,modulus_ohm,phase_deg"]
        for state, spectrum in fx.payload:
            for s in spectrum.samples:
                lines.append(f"{state},{s.frequency_hz:g},{s.modulus_ohm:g},{s.phase_deg:g}")
        return "\n".join(lines) + "\n"
    from .formats import circuit_to_json
    return circuit_to_json(fx.payload, suspect=fx.suspect)
