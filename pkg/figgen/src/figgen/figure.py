"""Render attitude-simulation CSV logs as a 2x2 panel figure.

The input contract is the simulator's fixed column layout:

    t,psi,e_r_norm,e_w_norm,wx,wy,wz,ux,uy,uz,ortho_err,V,V_bound

Panels: attitude error psi(t), angular velocity error magnitude, angular
velocity components, and control torque components. When two runs are given
the first is drawn with solid lines and the second dashed, so controller
variants can be overlaid. Rendering is read-only over its inputs and
deterministic.
"""

import csv
from dataclasses import dataclass

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

EXPECTED_HEADER = "t,psi,e_r_norm,e_w_norm,wx,wy,wz,ux,uy,uz,ortho_err,V,V_bound"

PANELS = ("psi", "e_w", "omega", "u")

_PANEL_TITLES = {
    "psi": "Attitude error function",
    "e_w": "Angular velocity error (rad/s)",
    "omega": "Angular velocity (rad/s)",
    "u": "Control input (N m)",
}

_STYLES = ({"color": "tab:red", "linestyle": "-"},
           {"color": "tab:blue", "linestyle": "--"})


class HeaderMismatch(Exception):
    """CSV header does not match the simulator's column contract."""


class EmptyInput(Exception):
    """CSV contains a header but no data rows."""


@dataclass(frozen=True)
class RunData:
    """Columns of one simulation log used by the panels."""

    label: str
    t: np.ndarray
    psi: np.ndarray
    e_w_norm: np.ndarray
    omega: np.ndarray
    u: np.ndarray


@dataclass(frozen=True)
class FigureSpec:
    """One or two input runs, the output image path, and panel selection."""

    run_a: str
    out: str
    run_b: str | None = None
    panels: tuple = PANELS
    label_a: str = "run A"
    label_b: str = "run B"

    def __post_init__(self):
        unknown = [p for p in self.panels if p not in PANELS]
        if unknown:
            raise ValueError(f"unknown panels {unknown}; choose from {PANELS}")
        if not self.panels:
            raise ValueError("at least one panel is required")


def load_run(path, label):
    """Read one CSV log, enforcing the exact header contract."""
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise EmptyInput(f"{path}: file is empty") from None
        if ",".join(header) != EXPECTED_HEADER:
            raise HeaderMismatch(
                f"{path}: header {','.join(header)!r} does not match "
                f"{EXPECTED_HEADER!r}"
            )
        rows = [[float(cell) for cell in row] for row in reader if row]
    if not rows:
        raise EmptyInput(f"{path}: no data rows")
    data = np.array(rows)
    return RunData(
        label=label,
        t=data[:, 0],
        psi=data[:, 1],
        e_w_norm=data[:, 3],
        omega=data[:, 4:7],
        u=data[:, 7:10],
    )


def _draw_panel(ax, panel, runs):
    ax.set_title(_PANEL_TITLES[panel], fontsize=10)
    ax.set_xlabel("t (s)", fontsize=9)
    for run, style in zip(runs, _STYLES):
        if panel == "psi":
            ax.plot(run.t, run.psi, label=run.label, **style)
        elif panel == "e_w":
            ax.plot(run.t, run.e_w_norm, label=run.label, **style)
        elif panel == "omega":
            for i in range(3):
                ax.plot(run.t, run.omega[:, i], **style,
                        alpha=1.0 - 0.3 * i)
        else:
            for i in range(3):
                ax.plot(run.t, run.u[:, i], **style, alpha=1.0 - 0.3 * i)
    ax.grid(True, alpha=0.3)


def render(spec):
    """Render the figure described by spec and return the output path."""
    runs = [load_run(spec.run_a, spec.label_a)]
    if spec.run_b is not None:
        runs.append(load_run(spec.run_b, spec.label_b))

    n = len(spec.panels)
    ncols = 1 if n == 1 else 2
    nrows = (n + ncols - 1) // ncols
    fig, axes = plt.subplots(
        nrows, ncols, figsize=(4.2 * ncols, 3.2 * nrows), squeeze=False
    )
    flat = axes.ravel()
    for ax, panel in zip(flat, spec.panels):
        _draw_panel(ax, panel, runs)
    for ax in flat[n:]:
        ax.set_visible(False)
    # Legend only for panels with one line per run; entries only for the
    # runs actually present.
    if "psi" in spec.panels:
        flat[spec.panels.index("psi")].legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(spec.out, dpi=120, metadata={"Software": None})
    plt.close(fig)
    return spec.out
