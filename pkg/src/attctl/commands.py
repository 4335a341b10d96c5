"""Desired-attitude command generation.

Two command kinds are supported: a 3-2-1 Euler-angle polynomial trajectory
(Rd = R3(phi) R2(theta) R1(psi), each angle a polynomial in t) and a fixed
attitude given as axis-angle. Commands are evaluated lazily per time stamp
because the integrators need intra-step evaluations.
"""

from dataclasses import dataclass

import numpy as np

from .errors import ConfigInvalid, GimbalLockNear
from .so3 import exp_so3

EULER_TRACKING = "euler_tracking"
FIXED = "fixed"

# Central-difference step for the commanded angular acceleration; per-component
# error is O(1e-12), far below controller tolerances.
_OMEGA_DOT_STEP = 1e-6

_E1 = np.array([1.0, 0.0, 0.0])
_E2 = np.array([0.0, 1.0, 0.0])
_E3 = np.array([0.0, 0.0, 1.0])

_GIMBAL_MARGIN = 1e-3


@dataclass(frozen=True)
class AttitudeCommand:
    """Time-stamped (Rd, Omega_d, Omega_d_dot) triple consumed by the
    controllers; kinematically consistent: hat(Omega_d) = Rd^T Rd_dot."""

    rd: np.ndarray
    omega_d: np.ndarray
    omega_d_dot: np.ndarray
    t: float


@dataclass(frozen=True)
class CommandSpec:
    """Scenario command description.

    kind "euler_tracking": phi/theta/psi are polynomial coefficient tuples
    (value = c0 + c1 t + c2 t^2 + ...), angles in rad rotating about body
    axes 3, 2, 1 in that order.
    kind "fixed": unit axis and angle_rad give the constant Rd.
    """

    kind: str
    phi: tuple = (0.0,)
    theta: tuple = (0.0,)
    psi: tuple = (0.0,)
    axis: tuple = (1.0, 0.0, 0.0)
    angle_rad: float = 0.0

    def __post_init__(self):
        if self.kind not in (EULER_TRACKING, FIXED):
            raise ConfigInvalid(f"command.kind: unknown kind {self.kind!r}")
        if self.kind == FIXED:
            norm = float(np.linalg.norm(self.axis))
            if abs(norm - 1.0) > 1e-12:
                raise ConfigInvalid(
                    f"command.axis: must be a unit vector, |axis| = {norm!r}"
                )


def _poly(coeffs, t):
    acc = 0.0
    for c in reversed(coeffs):
        acc = acc * t + c
    return acc


def _poly_deriv(coeffs, t):
    acc = 0.0
    for k in range(len(coeffs) - 1, 0, -1):
        acc = acc * t + k * coeffs[k]
    return acc


def _angles(spec, t):
    return np.array(
        [_poly(spec.phi, t), _poly(spec.theta, t), _poly(spec.psi, t)]
    )


def _rates(spec, t):
    return np.array(
        [
            _poly_deriv(spec.phi, t),
            _poly_deriv(spec.theta, t),
            _poly_deriv(spec.psi, t),
        ]
    )


def _body_rates(angles, rates):
    # Body rates for Rd = R3(phi) R2(theta) R1(psi); smooth for all angles.
    _, theta, psi = angles
    dphi, dtheta, dpsi = rates
    st, ct = np.sin(theta), np.cos(theta)
    sp, cp = np.sin(psi), np.cos(psi)
    return np.array(
        [
            dpsi - dphi * st,
            dtheta * cp + dphi * ct * sp,
            -dtheta * sp + dphi * ct * cp,
        ]
    )


def body_rate_from_euler(angles, rates):
    """Body angular velocity Omega_d with hat(Omega_d) = Rd^T Rd_dot for the
    3-2-1 angle stack, guarded against pitch near +/- 90 degrees.

    The guard protects callers that intend to invert the map; the forward
    expression itself is evaluated by the command generator without it.
    """
    angles = np.asarray(angles, dtype=float)
    rates = np.asarray(rates, dtype=float)
    if abs(angles[1]) >= np.pi / 2.0 - _GIMBAL_MARGIN:
        raise GimbalLockNear(
            f"pitch angle {angles[1]!r} within {_GIMBAL_MARGIN:g} of +/- pi/2"
        )
    return _body_rates(angles, rates)


def _euler_rotation(angles):
    phi, theta, psi = angles
    return exp_so3(phi * _E3) @ exp_so3(theta * _E2) @ exp_so3(psi * _E1)


def euler_command(t, spec):
    """Tracking command at time t for an euler_tracking spec.

    Omega_d comes from the analytic 3-2-1 rate map; Omega_d_dot from a
    central difference of Omega_d with step 1e-6.
    """
    if spec.kind != EULER_TRACKING:
        raise ConfigInvalid(f"euler_command requires kind {EULER_TRACKING!r}")
    rd = _euler_rotation(_angles(spec, t))
    omega_d = _body_rates(_angles(spec, t), _rates(spec, t))
    d = _OMEGA_DOT_STEP
    omega_plus = _body_rates(_angles(spec, t + d), _rates(spec, t + d))
    omega_minus = _body_rates(_angles(spec, t - d), _rates(spec, t - d))
    omega_d_dot = (omega_plus - omega_minus) / (2.0 * d)
    return AttitudeCommand(rd, omega_d, omega_d_dot, t)


def fixed_command(spec, t=0.0):
    """Stabilization command: fixed Rd = exp(angle * hat(axis)), zero rates."""
    if spec.kind != FIXED:
        raise ConfigInvalid(f"fixed_command requires kind {FIXED!r}")
    rd = exp_so3(spec.angle_rad * np.asarray(spec.axis, dtype=float))
    return AttitudeCommand(rd, np.zeros(3), np.zeros(3), t)


def command_function(spec):
    """Callable t -> AttitudeCommand for either command kind."""
    if spec.kind == EULER_TRACKING:
        return lambda t: euler_command(t, spec)
    return lambda t: fixed_command(spec, t)
