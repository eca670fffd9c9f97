"""Figure rendering for sweeps and phase portraits.

Output is deterministic for identical inputs: the SVG hash salt is pinned and
the date metadata stripped, so golden-file comparisons stay byte-stable.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .response import FrequencyResponse, PhasePortraitPoint

_SVG_KWARGS = {"metadata": {"Date": None}}

plt.rcParams["svg.hashsalt"] = "fruitz"


def render_response(responses: list[FrequencyResponse] | FrequencyResponse, path) -> None:
    """Two-panel figure: |Z| log-log on top, phase semilog below."""
    if isinstance(responses, FrequencyResponse):
        responses = [responses]
    fig, (ax_mag, ax_phase) = plt.subplots(2, 1, figsize=(7, 7), sharex=True)
    for resp in responses:
        freqs = [r.frequency_hz for r in resp.rows]
        ax_mag.loglog(freqs, [r.modulus_ohm for r in resp.rows], label=resp.source)
        ax_phase.semilogx(freqs, [r.phase_deg for r in resp.rows], label=resp.source)
    ax_mag.set_ylabel(r"$|Z|$, $\Omega$")
    ax_mag.grid(True, which="both", alpha=0.3)
    ax_phase.set_xlabel("frequency, Hz")
    ax_phase.set_ylabel(r"$\varphi$, deg")
    ax_phase.grid(True, which="both", alpha=0.3)
    if any(r.source for r in responses):
        ax_mag.legend(fontsize=8)
    fig.tight_layout()
    _save(fig, path)


def render_phase_portrait(points: list[PhasePortraitPoint], path) -> None:
    """Single-panel trajectory of (phase_low, phase_high) across states."""
    fig, ax = plt.subplots(figsize=(6, 6))
    xs = [p.phase_low_deg for p in points]
    ys = [p.phase_high_deg for p in points]
    ax.plot(xs, ys, "o-", color="tab:blue")
    for p in points:
        ax.annotate(p.label, (p.phase_low_deg, p.phase_high_deg),
                    textcoords="offset points", xytext=(6, 6), fontsize=8)
    ax.set_xlabel("phase at low frequency, deg")
    ax.set_ylabel("phase at high frequency, deg")
    ax.grid(True, alpha=0.3)
    fig.tight_layout()
    _save(fig, path)


def _save(fig, path) -> None:
    path = str(path)
    kwargs = _SVG_KWARGS if path.endswith(".svg") else {}
    fig.savefig(path, **kwargs)
    plt.close(fig)
