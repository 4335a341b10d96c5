import numpy as np
import pytest

from attctl import (
    CommandSpec,
    ConfigInvalid,
    GimbalLockNear,
    body_rate_from_euler,
    command_function,
    euler_command,
    exp_so3,
    fixed_command,
    hat,
    rotation_angle,
)
from conftest import CASE_I_COMMAND, CASE_II_COMMAND

PI = np.pi


@pytest.fixture
def tracking_spec():
    c = CASE_I_COMMAND
    return CommandSpec(kind="euler_tracking", phi=tuple(c["phi"]),
                       theta=tuple(c["theta"]), psi=tuple(c["psi"]))


@pytest.fixture
def fixed_spec():
    c = CASE_II_COMMAND
    return CommandSpec(kind="fixed", axis=tuple(c["axis"]),
                       angle_rad=c["angle_rad"])


def _rd_numeric(spec, t):
    return euler_command(t, spec).rd


def test_euler_initial_angles(tracking_spec):
    cmd = euler_command(0.0, tracking_spec)
    e3 = np.array([0.0, 0.0, 1.0])
    assert np.allclose(cmd.rd, exp_so3(0.999 * PI * e3), atol=1e-14)


def test_euler_initial_attitude_error(tracking_spec):
    cmd = euler_command(0.0, tracking_spec)
    # From R(0) = I the initial error equals the commanded angle, 0.999 pi.
    assert np.isclose(rotation_angle(cmd.rd), 0.999 * PI, atol=1e-9)


def test_euler_rates_at_t1(tracking_spec):
    # d/dt of the angle polynomials at t = 1.
    d = 1e-6
    a_plus = np.array([
        np.polyval(list(reversed(tracking_spec.phi)), 1.0 + d),
        np.polyval(list(reversed(tracking_spec.theta)), 1.0 + d),
        np.polyval(list(reversed(tracking_spec.psi)), 1.0 + d),
    ])
    a_minus = np.array([
        np.polyval(list(reversed(tracking_spec.phi)), 1.0 - d),
        np.polyval(list(reversed(tracking_spec.theta)), 1.0 - d),
        np.polyval(list(reversed(tracking_spec.psi)), 1.0 - d),
    ])
    fd = (a_plus - a_minus) / (2.0 * d)
    assert np.allclose(fd, [0.5, 0.2, 0.8], atol=1e-8)


def test_fixed_command(fixed_spec):
    cmd = fixed_command(fixed_spec)
    assert np.isclose(rotation_angle(cmd.rd), 0.999 * PI, atol=1e-12)
    assert np.array_equal(cmd.omega_d, np.zeros(3))
    assert np.array_equal(cmd.omega_d_dot, np.zeros(3))
    trivial = CommandSpec(kind="fixed", axis=(1.0, 0.0, 0.0), angle_rad=0.0)
    assert np.array_equal(fixed_command(trivial).rd, np.eye(3))


def test_body_rate_zero_rates():
    out = body_rate_from_euler([0.4, 0.2, -0.1], [0.0, 0.0, 0.0])
    assert np.array_equal(out, np.zeros(3))


def test_body_rate_single_axis():
    out = body_rate_from_euler([0.7, 0.0, 0.0], [0.3, 0.0, 0.0])
    assert np.allclose(out, [0.0, 0.0, 0.3], atol=1e-15)


def test_body_rate_defining_identity():
    rng = np.random.default_rng(31)
    d = 1e-6
    for _ in range(30):
        angles = rng.uniform([-PI, -PI / 2 + 2e-3, -PI],
                             [PI, PI / 2 - 2e-3, PI])
        rates = rng.normal(size=3)
        spec = CommandSpec(
            kind="euler_tracking",
            phi=(angles[0], rates[0]),
            theta=(angles[1], rates[1]),
            psi=(angles[2], rates[2]),
        )
        omega = body_rate_from_euler(angles, rates)
        rd = _rd_numeric(spec, 0.0)
        rd_dot = (_rd_numeric(spec, d) - _rd_numeric(spec, -d)) / (2.0 * d)
        assert np.linalg.norm(hat(omega) - rd.T @ rd_dot) < 1e-6


def test_body_rate_gimbal_guard():
    with pytest.raises(GimbalLockNear):
        body_rate_from_euler([0.0, PI / 2, 0.0], [0.1, 0.0, 0.0])
    with pytest.raises(GimbalLockNear):
        body_rate_from_euler([0.0, -PI / 2 + 5e-4, 0.0], [0.1, 0.0, 0.0])


def test_kinematic_consistency_over_horizon(tracking_spec):
    # hat(Omega_d) = Rd^T Rd_dot along the whole 10 s command, including
    # where the pitch polynomial passes through pi/2.
    d = 1e-6
    for t in np.arange(0.0, 10.0 + 1e-12, 0.01):
        cmd = euler_command(t, tracking_spec)
        rd_dot = (
            _rd_numeric(tracking_spec, t + d)
            - _rd_numeric(tracking_spec, t - d)
        ) / (2.0 * d)
        defect = np.linalg.norm(hat(cmd.omega_d) - cmd.rd.T @ rd_dot)
        assert defect < 1e-6


def test_omega_d_dot_consistency(tracking_spec):
    # Euler step of Omega_d using the reported Omega_d_dot is O(h^2)
    # accurate: bounded by ||Omega_d_ddot|| h^2 / 2 (rate curvature grows to
    # ~185 by t = 10 on this command) and quartered when h is halved.
    def defect(t, h):
        now = euler_command(t, tracking_spec)
        ahead = euler_command(t + h, tracking_spec)
        return np.linalg.norm(now.omega_d + h * now.omega_d_dot
                              - ahead.omega_d)

    for t in np.linspace(0.05, 9.95, 25):
        assert defect(t, 1e-3) <= 200.0 * 1e-6 / 2.0
        assert defect(t, 1e-3) / defect(t, 5e-4) == pytest.approx(4.0,
                                                                  rel=0.05)


def test_command_function_dispatch(tracking_spec, fixed_spec):
    assert np.allclose(
        command_function(tracking_spec)(0.3).rd,
        euler_command(0.3, tracking_spec).rd,
        atol=0,
    )
    assert np.allclose(
        command_function(fixed_spec)(5.0).rd, fixed_command(fixed_spec).rd,
        atol=0,
    )


def test_command_spec_validation():
    with pytest.raises(ConfigInvalid):
        CommandSpec(kind="nope")
    with pytest.raises(ConfigInvalid):
        CommandSpec(kind="fixed", axis=(1.0, 1.0, 0.0), angle_rad=0.5)
    with pytest.raises(ConfigInvalid):
        euler_command(0.0, CommandSpec(kind="fixed", axis=(1.0, 0.0, 0.0),
                                       angle_rad=0.0))
