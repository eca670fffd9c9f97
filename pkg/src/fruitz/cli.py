"""Command-line frontend tying the pipeline together.

Subcommands: fit, synth, eval, sweep, classify, fixtures. Exit codes:
0 success, 2 input/validation error, 3 numerical/synthesis failure.
"""

from __future__ import annotations

import functools
import json
import sys

import click

from . import classify as _classify
from . import fixtures as _fixtures
from . import formats, plots
from .circuits import CauerCircuit, FosterCircuit, cauer_synthesis, foster_synthesis
from .errors import InputError, NumericalError
from .ratfit import ModelOrders, RationalImpedance, fit_rational
from .response import impedance_of, phase_portrait, response_to_csv, sweep as _sweep
from .spectra import TWO_PI, cartesian_to_polar, load_spectrum

EXIT_INPUT = 2
EXIT_NUMERICAL = 3


def _handle_errors(func):
    @functools.wraps(func)
    def wrapper(*args, **kwargs):
        try:
            return func(*args, **kwargs)
        except InputError as exc:
            click.echo(f"error: {exc}", err=True)
            sys.exit(EXIT_INPUT)
        except NumericalError as exc:
            click.echo(f"numerical error: {exc}", err=True)
            sys.exit(EXIT_NUMERICAL)
        except OSError as exc:
            click.echo(f"error: {exc}", err=True)
            sys.exit(EXIT_INPUT)
    return wrapper


def _echo(quiet: bool, message: str) -> None:
    if not quiet:
        click.echo(message)


class OrdersParam(click.ParamType):
    name = "orders"

    def convert(self, value, param, ctx):
        try:
            n, m = (int(v) for v in str(value).split(","))
            return ModelOrders(n, m)
        except (ValueError, InputError) as exc:
            self.fail(str(exc), param, ctx)


@click.group()
def main():
    """Fit, synthesize and assess fruit bioimpedance spectra."""


@main.command("fit")
@click.option("--input", "input_path", required=True, type=click.Path(), help="Spectrum CSV.")
@click.option("--orders", type=OrdersParam(), default="2,3", show_default=True,
              help="Numerator,denominator polynomial orders.")
@click.option("--out", "out_path", type=click.Path(), help="Model JSON output path.")
@click.option("--quiet", is_flag=True, help="Suppress non-error output.")
@_handle_errors
def cmd_fit(input_path, orders, out_path, quiet):
    """Fit a rational impedance model to a measured spectrum."""
    spectrum = load_spectrum(input_path)
    model = fit_rational(spectrum, orders)
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(formats.model_to_json(model))
    for freq, res in zip(
        (s.frequency_hz for s in spectrum.samples if not s.below_floor),
        model.fit_residuals,
    ):
        _echo(quiet, f"residual at {freq:g} Hz: {res:.3e}")
    _echo(quiet, f"is_positive: {model.is_positive}")


@main.command("synth")
@click.option("--model", "model_path", required=True, type=click.Path(), help="Model JSON.")
@click.option("--topology", type=click.Choice(["foster", "cauer"]), required=True)
@click.option("--out", "out_path", type=click.Path(), help="Circuit JSON output path.")
@click.option("--quiet", is_flag=True)
@_handle_errors
def cmd_synth(model_path, topology, out_path, quiet):
    """Synthesize an equivalent RC circuit from a fitted model."""
    model = formats.load_document(model_path)
    if not isinstance(model, RationalImpedance):
        raise InputError(f"{model_path} does not contain a model document")
    circuit = foster_synthesis(model) if topology == "foster" else cauer_synthesis(model)
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(formats.circuit_to_json(circuit, source_model=model))
    if isinstance(circuit, FosterCircuit):
        for i, (r, c) in enumerate(circuit.branches, start=1):
            _echo(quiet, f"branch {i}: R = {r:.6g} ohm, C = {c:.6g} F")
    else:
        for i, (c, r) in enumerate(zip(circuit.capacitors, circuit.resistors), start=1):
            _echo(quiet, f"stage {i}: C = {c:.6g} F, R = {r:.6g} ohm")
    _echo(quiet, f"is_physical: {circuit.is_physical}")


@main.command("eval")
@click.option("--input", "input_path", required=True, type=click.Path(),
              help="Model or circuit JSON.")
@click.option("--freq", "freq_hz", required=True, type=float, help="Frequency in Hz.")
@_handle_errors
def cmd_eval(input_path, freq_hz):
    """Evaluate a model or circuit at one frequency."""
    if freq_hz <= 0:
        raise InputError(f"frequency must be positive, got {freq_hz}")
    source = formats.load_document(input_path)
    z = impedance_of(source, TWO_PI * freq_hz)
    modulus, phase = cartesian_to_polar(z.real, z.imag)
    click.echo(
        f"f = {freq_hz:g} Hz: R = {z.real:.6g} ohm, X = {z.imag:.6g} ohm, "
        f"|Z| = {modulus:.6g} ohm, phase = {phase:.4g} deg"
    )


@main.command("sweep")
@click.option("--input", "input_path", required=True, type=click.Path(),
              help="Model or circuit JSON.")
@click.option("--fmin", type=float, default=1e3, show_default=True)
@click.option("--fmax", type=float, default=1e7, show_default=True)
@click.option("--points", type=int, default=200, show_default=True)
@click.option("--out", "out_path", type=click.Path(), help="Response CSV output path.")
@click.option("--svg", "svg_path", type=click.Path(),
              help="Render the amplitude/phase figure to this file.")
@click.option("--quiet", is_flag=True)
@_handle_errors
def cmd_sweep(input_path, fmin, fmax, points, out_path, svg_path, quiet):
    """Tabulate (and optionally plot) the frequency response of a model or circuit."""
    source = formats.load_document(input_path)
    response = _sweep(source, fmin, fmax, points)
    csv_text = response_to_csv(response)
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(csv_text)
    elif not quiet:
        click.echo(csv_text, nl=False)
    if svg_path:
        plots.render_response(response, svg_path)
        _echo(quiet, f"figure written to {svg_path}")


@main.command("classify")
@click.argument("csv_paths", nargs=-1, required=True, type=click.Path())
@click.option("--profile", default="apple", show_default=True,
              help="Built-in profile name (apple/lemon/pear) or a profile JSON path.")
@click.option("--f-low", type=float, default=_classify.DEFAULT_F_LOW_HZ, show_default=True)
@click.option("--f-high", type=float, default=_classify.DEFAULT_F_HIGH_HZ, show_default=True)
@click.option("--portrait-svg", type=click.Path(),
              help="Render the phase portrait of the series to this file.")
@click.option("--quiet", is_flag=True)
@_handle_errors
def cmd_classify(csv_paths, profile, f_low, f_high, portrait_svg, quiet):
    """Assess freshness from a time-ordered series of spectrum CSVs."""
    if len(csv_paths) < 2:
        raise InputError("classification needs at least 2 spectrum files (a time series)")
    series = [load_spectrum(p) for p in csv_paths]
    fruit = _load_profile(profile)
    assessment = _classify.assess(series, fruit, f_low_hz=f_low, f_high_hz=f_high)
    _echo(quiet, assessment.evidence)
    click.echo(f"verdict: {assessment.verdict.value}")
    click.echo(f"mode: {assessment.mode.value}")
    if portrait_svg:
        labelled = [
            (spec.specimen or f"t{i}", spec) for i, spec in enumerate(series)
        ]
        points = phase_portrait(labelled, f_low, f_high)
        plots.render_phase_portrait(points, portrait_svg)
        _echo(quiet, f"phase portrait written to {portrait_svg}")


@main.command("fixtures")
@click.option("--list", "do_list", is_flag=True, help="List all fixture ids.")
@click.option("--dump", "dump_id", help="Dump one fixture (CSV or JSON) to stdout.")
@click.option("--out", "out_path", type=click.Path(), help="Write the dump to a file.")
@_handle_errors
def cmd_fixtures(do_list, dump_id, out_path):
    """List or export the embedded measurement fixtures."""
    if do_list == bool(dump_id):
        raise InputError("pass exactly one of --list or --dump ID")
    if do_list:
        for fid in _fixtures.list_fixtures():
            fx = _fixtures.get_fixture(fid)
            flag = " [suspect]" if fx.suspect else ""
            click.echo(f"{fid}\t{fx.kind}{flag}")
        return
    text = _fixtures.dump_fixture(dump_id)
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        click.echo(text, nl=False)


def _load_profile(spec: str) -> _classify.FruitProfile:
    if spec in _classify.BUILTIN_PROFILES:
        return _classify.BUILTIN_PROFILES[spec]
    try:
        with open(spec, "r", encoding="utf-8") as fh:
            data = json.load(fh)
        return _classify.FruitProfile(
            name=data["name"],
            dehydration_modulus_trend=int(data["dehydration_modulus_trend"]),
            rot_modulus_trend=int(data["rot_modulus_trend"]),
        )
    except FileNotFoundError:
        raise InputError(
            f"unknown profile {spec!r}; built-ins: {sorted(_classify.BUILTIN_PROFILES)}"
        ) from None
    except (KeyError, ValueError, json.JSONDecodeError) as exc:
        raise InputError(f"bad profile file {spec!r}: {exc}") from None


if __name__ == "__main__":
    main()
