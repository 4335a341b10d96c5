"""Scenario orchestration: config parsing, closed-loop rollout, CSV logging,
run comparison, and gain certification reports.

The CSV column contract is fixed (consumed by the figure generator):

    t,psi,e_r_norm,e_w_norm,wx,wy,wz,ux,uy,uz,ortho_err,V,V_bound

Scenario configs are flat JSON objects; see `scenario_from_dict` for the
schema. Runs are fully deterministic: identical configs produce
byte-identical CSV files.
"""

import json
import logging
import math
from dataclasses import dataclass

import numpy as np

from .attitude_error import e_omega, e_r, psi
from .commands import (
    EULER_TRACKING,
    FIXED,
    CommandSpec,
    command_function,
    fixed_command,
)
from .controllers import (
    STABILIZATION,
    TRACKING,
    Certification,
    GainSet,
    RoaReport,
    baseline_control,
    best_certification,
    lyapunov_value,
    roa_check,
    stabilize_control,
    tracking_control,
)
from .dynamics import BodyState, InertiaMatrix
from .errors import ConfigInvalid, ConfigMismatch
from .integrators import (
    LGVI,
    RK4_PROJECTED,
    IntegratorConfig,
    lgvi_step,
    rk4_step,
)
from .so3 import exp_so3, orthogonality_error, rotation_matrix

log = logging.getLogger("attctl")

CSV_HEADER = "t,psi,e_r_norm,e_w_norm,wx,wy,wz,ux,uy,uz,ortho_err,V,V_bound"

PROPOSED_TRACKING = "proposed_tracking"
INERTIA_FREE = "inertia_free"
BASELINE = "baseline"
_CONTROLLERS = (PROPOSED_TRACKING, INERTIA_FREE, BASELINE)

# Psi thresholds whose first-crossing times compare() reports.
THRESHOLDS = (1.0, 0.1, 0.01)

# Per-step slack for the monotonicity flag on W = e_w.J e_w/2 + kR psi.
W_MONOTONE_TOL = 1e-9


@dataclass(frozen=True)
class ScenarioConfig:
    """Validated, fully-resolved scenario description."""

    inertia: InertiaMatrix
    gains: GainSet
    command: CommandSpec
    initial_r: np.ndarray
    initial_omega: np.ndarray
    controller: str
    integrator: IntegratorConfig
    duration: float
    log_every: int = 10
    controller_inertia_override: InertiaMatrix | None = None
    baseline_pure_pd: bool = False
    baseline_error_scale: float = 1.0

    def __post_init__(self):
        if self.controller not in _CONTROLLERS:
            raise ConfigInvalid(
                f"controller: unknown controller {self.controller!r}"
            )
        if not self.duration > 0.0:
            raise ConfigInvalid(f"duration: must be > 0, got {self.duration!r}")
        if self.log_every < 1:
            raise ConfigInvalid(
                f"log_every: must be >= 1, got {self.log_every!r}"
            )
        if self.controller == INERTIA_FREE and self.command.kind != FIXED:
            raise ConfigInvalid(
                "controller: inertia_free requires a fixed command "
                "(the law assumes Omega_d == 0)"
            )


@dataclass(frozen=True)
class TrajectoryRecord:
    """Logged closed-loop diagnostics plus full states at the logged times.

    Array rows follow the CSV contract; `w_monotone[i]` reports whether the
    invariance function W was non-increasing (within W_MONOTONE_TOL) at
    every integration step in the interval ending at row i. `crossings`
    holds first times psi <= threshold, detected on the full step grid.
    """

    t: np.ndarray
    psi: np.ndarray
    e_r_norm: np.ndarray
    e_w_norm: np.ndarray
    omega: np.ndarray
    u: np.ndarray
    ortho_err: np.ndarray
    v: np.ndarray
    v_bound: np.ndarray
    w_monotone: np.ndarray
    states: list
    crossings: dict
    certification: Certification
    initial_u_norm: float
    max_newton_iters: int

    def first_crossing(self, threshold):
        return self.crossings.get(threshold)

    def to_csv(self, path):
        with open(path, "w", newline="") as fh:
            fh.write(CSV_HEADER + "\n")
            for i in range(len(self.t)):
                cells = [
                    self.t[i],
                    self.psi[i],
                    self.e_r_norm[i],
                    self.e_w_norm[i],
                    self.omega[i, 0],
                    self.omega[i, 1],
                    self.omega[i, 2],
                    self.u[i, 0],
                    self.u[i, 1],
                    self.u[i, 2],
                    self.ortho_err[i],
                    self.v[i],
                    self.v_bound[i],
                ]
                fh.write(",".join(repr(float(c)) for c in cells) + "\n")


@dataclass(frozen=True)
class RunSummary:
    controller: str
    initial_u_norm: float
    crossings: dict

    def to_dict(self):
        return {
            "controller": self.controller,
            "initial_u_norm": self.initial_u_norm,
            "first_crossing": {
                str(k): v for k, v in self.crossings.items()
            },
        }


@dataclass(frozen=True)
class ComparisonReport:
    run_a: RunSummary
    run_b: RunSummary
    record_a: TrajectoryRecord
    record_b: TrajectoryRecord

    def to_dict(self):
        return {"run_a": self.run_a.to_dict(), "run_b": self.run_b.to_dict()}


@dataclass(frozen=True)
class GainCheck:
    certification: Certification
    roa: RoaReport


def _control_provider(config, cmd, inertia_ctrl):
    gains = config.gains
    if config.controller == PROPOSED_TRACKING:
        def control(t, r, omega):
            return tracking_control(
                BodyState(r, omega), cmd(t), gains, inertia_ctrl
            )
    elif config.controller == INERTIA_FREE:
        rd = fixed_command(config.command).rd
        def control(t, r, omega):
            return stabilize_control(BodyState(r, omega), rd, gains)
    else:
        feedforward = not config.baseline_pure_pd
        scale = config.baseline_error_scale
        def control(t, r, omega):
            return baseline_control(
                BodyState(r, omega),
                cmd(t),
                gains,
                inertia_ctrl,
                feedforward=feedforward,
                error_scale=scale,
            )
    return control


def certification_mode(controller):
    return STABILIZATION if controller == INERTIA_FREE else TRACKING


def run_scenario(config):
    """Roll out the closed loop and return the trajectory record.

    V and V_bound are evaluated with the grid-optimal admissible c2 for the
    plant inertia; the controller-side inertia override changes the control
    law only, never the plant or the diagnostics.
    """
    j_plant = config.inertia
    j_ctrl = (
        config.controller_inertia_override
        if config.controller_inertia_override is not None
        else j_plant
    )
    gains = config.gains
    cmd = command_function(config.command)
    cert = best_certification(
        gains, j_plant, certification_mode(config.controller)
    )
    control = _control_provider(config, cmd, j_ctrl)
    icfg = config.integrator
    h = icfg.h
    n_steps = int(math.floor(config.duration / h + 1e-9))
    log.info(
        "run_scenario: controller=%s integrator=%s h=%g steps=%d",
        config.controller, icfg.method, h, n_steps,
    )

    state = BodyState(
        np.array(config.initial_r, dtype=float),
        np.array(config.initial_omega, dtype=float),
    )
    u = control(0.0, state.r, state.omega)
    initial_u_norm = float(np.linalg.norm(u))

    rows_t, rows_psi, rows_er, rows_ew = [], [], [], []
    rows_omega, rows_u, rows_ortho = [], [], []
    rows_v, rows_flag, states = [], [], []

    def w_value(c, psi_value):
        ew = e_omega(state.r, state.omega, c.rd, c.omega_d)
        return 0.5 * float(ew @ j_plant.matrix @ ew) + gains.k_r * psi_value

    def log_row(t, c, psi_value, ortho, flag):
        er_vec = e_r(state.r, c.rd)
        ew_vec = e_omega(state.r, state.omega, c.rd, c.omega_d)
        v = lyapunov_value(state, c, gains, j_plant, cert.c2_used)
        rows_t.append(t)
        rows_psi.append(psi_value)
        rows_er.append(float(np.linalg.norm(er_vec)))
        rows_ew.append(float(np.linalg.norm(ew_vec)))
        rows_omega.append(np.array(state.omega, dtype=float))
        rows_u.append(np.array(u, dtype=float))
        rows_ortho.append(ortho)
        rows_v.append(v)
        rows_flag.append(flag)
        states.append(state)

    c = cmd(0.0)
    psi_k = psi(state.r, c.rd)
    w_k = w_value(c, psi_k)
    crossings = {
        thr: (0.0 if psi_k <= thr else None) for thr in THRESHOLDS
    }
    log_row(0.0, c, psi_k, orthogonality_error(state.r), True)

    max_newton = 0
    interval_ok = True
    for k in range(1, n_steps + 1):
        t_prev = (k - 1) * h
        if icfg.method == LGVI:
            step = lgvi_step(state, u, control, t_prev, h, j_plant, icfg)
        else:
            step = rk4_step(
                state,
                control,
                t_prev,
                h,
                j_plant,
                project=(icfg.method == RK4_PROJECTED),
            )
        state = step.state
        t = k * h
        u = control(t, state.r, state.omega)
        max_newton = max(max_newton, step.newton_iters)

        c = cmd(t)
        psi_k = psi(state.r, c.rd)
        w_prev, w_k = w_k, w_value(c, psi_k)
        if w_k > w_prev + W_MONOTONE_TOL:
            interval_ok = False
        for thr in THRESHOLDS:
            if crossings[thr] is None and psi_k <= thr:
                crossings[thr] = t
        if k % config.log_every == 0:
            log_row(t, c, psi_k, step.ortho_error, interval_ok)
            interval_ok = True

    v0 = rows_v[0]
    t_arr = np.array(rows_t)
    return TrajectoryRecord(
        t=t_arr,
        psi=np.array(rows_psi),
        e_r_norm=np.array(rows_er),
        e_w_norm=np.array(rows_ew),
        omega=np.array(rows_omega),
        u=np.array(rows_u),
        ortho_err=np.array(rows_ortho),
        v=np.array(rows_v),
        v_bound=v0 * np.exp(-cert.decay_rate * t_arr),
        w_monotone=np.array(rows_flag, dtype=bool),
        states=states,
        crossings=crossings,
        certification=cert,
        initial_u_norm=initial_u_norm,
        max_newton_iters=max_newton,
    )


# Fields that select the control law; compare() requires everything else to
# match exactly.
_CONTROLLER_FIELDS = (
    "controller",
    "baseline_pure_pd",
    "baseline_error_scale",
    "controller_inertia_override",
)


def _shared_key(config):
    return (
        config.inertia.matrix.tobytes(),
        config.gains,
        config.command,
        config.initial_r.tobytes(),
        config.initial_omega.tobytes(),
        config.integrator,
        config.duration,
        config.log_every,
    )


def _controller_key(config):
    override = config.controller_inertia_override
    return (
        config.controller,
        config.baseline_pure_pd,
        config.baseline_error_scale,
        None if override is None else override.matrix.tobytes(),
    )


def compare(config_a, config_b):
    """Run two scenarios that differ only in controller selection and report
    initial control magnitudes and psi threshold crossings for each."""
    if _shared_key(config_a) != _shared_key(config_b):
        raise ConfigMismatch(
            "configs differ outside the controller selection fields "
            f"{_CONTROLLER_FIELDS}"
        )
    if _controller_key(config_a) == _controller_key(config_b):
        raise ConfigMismatch("configs are identical; nothing to compare")
    record_a = run_scenario(config_a)
    record_b = run_scenario(config_b)
    return ComparisonReport(
        run_a=RunSummary(
            config_a.controller, record_a.initial_u_norm, record_a.crossings
        ),
        run_b=RunSummary(
            config_b.controller, record_b.initial_u_norm, record_b.crossings
        ),
        record_a=record_a,
        record_b=record_b,
    )


def check_gains(config):
    """Certification (grid-optimal c2) plus the region-of-attraction report
    for the configured initial condition."""
    mode = certification_mode(config.controller)
    cert = best_certification(config.gains, config.inertia, mode)
    state0 = BodyState(config.initial_r, config.initial_omega)
    cmd0 = command_function(config.command)(0.0)
    roa = roa_check(state0, cmd0, config.gains, config.inertia)
    return GainCheck(certification=cert, roa=roa)


# --- configuration loading -------------------------------------------------


def _require(obj, key, context):
    if key not in obj:
        raise ConfigInvalid(f"{context}: missing required field {key!r}")
    return obj[key]


def _inertia_from(value, context):
    arr = np.asarray(value, dtype=float)
    try:
        if arr.shape == (3,):
            return InertiaMatrix.from_principal(arr)
        if arr.shape == (3, 3):
            return InertiaMatrix(arr)
    except ValueError as exc:
        raise ConfigInvalid(f"{context}: {exc}") from exc
    raise ConfigInvalid(
        f"{context}: expected 3 principal moments or a 3x3 matrix"
    )


def _command_from(obj):
    kind = _require(obj, "kind", "command")
    if kind == EULER_TRACKING:
        return CommandSpec(
            kind=kind,
            phi=tuple(float(c) for c in _require(obj, "phi", "command")),
            theta=tuple(float(c) for c in _require(obj, "theta", "command")),
            psi=tuple(float(c) for c in _require(obj, "psi", "command")),
        )
    if kind == FIXED:
        return CommandSpec(
            kind=kind,
            axis=tuple(float(c) for c in _require(obj, "axis", "command")),
            angle_rad=float(_require(obj, "angle_rad", "command")),
        )
    raise ConfigInvalid(f"command.kind: unknown kind {kind!r}")


def _axis_angle_rotation(obj, context):
    axis = np.asarray(_require(obj, "axis", context), dtype=float)
    angle = float(_require(obj, "angle_rad", context))
    norm = float(np.linalg.norm(axis))
    if abs(norm - 1.0) > 1e-9:
        raise ConfigInvalid(f"{context}.axis: must be a unit vector")
    return rotation_matrix(exp_so3(angle * axis))


def scenario_from_dict(obj):
    """Build a ScenarioConfig from the flat JSON object schema."""
    if not isinstance(obj, dict):
        raise ConfigInvalid("config: expected a JSON object")
    gains_obj = _require(obj, "gains", "config")
    try:
        gains = GainSet(
            k_r=float(_require(gains_obj, "k_R", "gains")),
            k_omega=float(_require(gains_obj, "k_Omega", "gains")),
        )
    except ValueError as exc:
        raise ConfigInvalid(f"gains: {exc}") from exc

    initial = _require(obj, "initial", "config")
    initial_r = _axis_angle_rotation(
        _require(initial, "R0", "initial"), "initial.R0"
    )
    omega0 = np.asarray(_require(initial, "Omega0", "initial"), dtype=float)
    if omega0.shape != (3,):
        raise ConfigInvalid("initial.Omega0: expected 3 components")

    integ = obj.get("integrator", {})
    try:
        icfg = IntegratorConfig(
            method=integ.get("method", LGVI),
            h=float(integ.get("h", 1e-3)),
            newton_tol=float(integ.get("newton_tol", 1e-14)),
            newton_max_iter=int(integ.get("newton_max_iter", 50)),
        )
    except ValueError as exc:
        raise ConfigInvalid(f"integrator: {exc}") from exc

    override = obj.get("controller_inertia_override")
    return ScenarioConfig(
        inertia=_inertia_from(_require(obj, "inertia", "config"), "inertia"),
        gains=gains,
        command=_command_from(_require(obj, "command", "config")),
        initial_r=initial_r,
        initial_omega=omega0,
        controller=str(_require(obj, "controller", "config")),
        integrator=icfg,
        duration=float(_require(obj, "duration", "config")),
        log_every=int(obj.get("log_every", 10)),
        controller_inertia_override=(
            None
            if override is None
            else _inertia_from(override, "controller_inertia_override")
        ),
        baseline_pure_pd=bool(obj.get("baseline_pure_pd", False)),
        baseline_error_scale=float(obj.get("baseline_error_scale", 1.0)),
    )


def scenario_from_json(path):
    """Load and validate a scenario config file."""
    try:
        with open(path) as fh:
            obj = json.load(fh)
    except json.JSONDecodeError as exc:
        raise ConfigInvalid(f"{path}: invalid JSON ({exc})") from exc
    return scenario_from_dict(obj)
