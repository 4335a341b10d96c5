import numpy as np
import pytest

from attctl import (
    AtErrorBoundary,
    e_omega,
    e_r,
    e_r_baseline,
    error_jacobian,
    exp_so3,
    psi,
    psi_baseline,
    random_rotation,
)
from conftest import random_rotation_pairs

PI = np.pi
E1 = np.array([1.0, 0.0, 0.0])


def rot_about(axis_angle, rd=None):
    rd = np.eye(3) if rd is None else rd
    return rd @ exp_so3(axis_angle)


def test_psi_zero_at_goal():
    assert psi(np.eye(3), np.eye(3)) == 0.0
    for seed in range(10):
        r = random_rotation(seed)
        assert psi(r, r) <= 1e-15  # tr(R^T R) = 3 up to roundoff


def test_psi_quarter_turn():
    rd = random_rotation(1)
    value = psi(rot_about([PI / 2, 0, 0], rd), rd)
    assert np.isclose(value, 2.0 - np.sqrt(2.0), atol=1e-12)
    assert np.isclose(value, 0.5857864, atol=1e-7)


def test_psi_near_antipode():
    s = np.array([1.0, -1.0, 1.0]) / np.sqrt(3.0)
    rd = random_rotation(2)
    value = psi(rot_about(0.999 * PI * s, rd), rd)
    assert np.isclose(value, 4.0 * np.sin(0.999 * PI / 4.0) ** 2, atol=1e-12)
    assert np.isclose(value, 1.9968584, atol=1e-7)


def test_e_r_zero_at_goal():
    r = random_rotation(3)
    assert np.array_equal(e_r(r, r), np.zeros(3))


def test_e_r_quarter_turn():
    rd = random_rotation(4)
    vec = e_r(rot_about([PI / 2, 0, 0], rd), rd)
    # Magnitude sin(theta/2) along the body-frame rotation axis e1.
    assert np.allclose(vec, [np.sqrt(0.5), 0.0, 0.0], atol=1e-12)
    assert np.isclose(vec[0], 0.7071068, atol=1e-7)


def test_e_r_magnitude_near_antipode():
    s = np.array([1.0, -1.0, 1.0]) / np.sqrt(3.0)
    rd = random_rotation(5)
    vec = e_r(rot_about(0.999 * PI * s, rd), rd)
    assert np.isclose(np.linalg.norm(vec), np.sin(0.4995 * PI), atol=1e-12)
    assert np.isclose(np.linalg.norm(vec), 0.9999988, atol=1e-7)


def test_e_r_boundary_guard():
    rd = np.eye(3)
    with pytest.raises(AtErrorBoundary):
        e_r(exp_so3([PI, 0.0, 0.0]), rd)
    with pytest.raises(AtErrorBoundary):
        e_r(exp_so3((PI - 1e-10) * E1), rd)
    # 1e-4 rad away from the antipode is still well defined: the reference
    # tracking scenario passes within ~3e-5 rad of it.
    vec = e_r(exp_so3((PI - 1e-4) * E1), rd)
    assert np.isclose(np.linalg.norm(vec), np.sin((PI - 1e-4) / 2.0),
                      atol=1e-9)


def test_e_omega_perfect_tracking():
    r = random_rotation(6)
    omega = np.array([0.4, -0.2, 1.0])
    assert np.allclose(e_omega(r, omega, r, omega), np.zeros(3), atol=1e-15)


def test_e_omega_zero_command_rate():
    r = random_rotation(7)
    rd = random_rotation(8)
    omega = np.array([0.3, 0.1, -0.5])
    assert np.array_equal(e_omega(r, omega, rd, np.zeros(3)), omega)


def test_e_omega_hand_example():
    r = exp_so3([0.0, 0.0, PI / 2])
    out = e_omega(r, np.zeros(3), np.eye(3), [1.0, 0.0, 0.0])
    assert np.allclose(out, [0.0, 1.0, 0.0], atol=1e-15)


def test_error_jacobian_at_goal():
    r = random_rotation(9)
    assert np.allclose(error_jacobian(r, r), np.eye(3) / 2.0, atol=1e-15)


def test_error_jacobian_norm_and_spectrum():
    for r, rd, angle in random_rotation_pairs(10, 200, max_angle=PI - 1e-6):
        e = error_jacobian(r, rd)
        sv = np.linalg.svd(e, compute_uv=False)
        assert np.isclose(sv[0], 0.5, atol=1e-12)
        eigs = np.sort(np.linalg.eigvalsh(e.T @ e))
        third = (1.0 + np.cos(angle)) / 8.0
        expected = np.sort([0.25, 0.25, third])
        assert np.allclose(eigs, expected, atol=1e-10)


def test_error_jacobian_quarter_turn_spectrum():
    rd = random_rotation(12)
    e = error_jacobian(rot_about([0.0, PI / 2, 0.0], rd), rd)
    eigs = np.sort(np.linalg.eigvalsh(e.T @ e))
    assert np.allclose(eigs, [0.125, 0.25, 0.25], atol=1e-12)


def test_psi_baseline_examples():
    rd = random_rotation(13)
    assert psi_baseline(rd, rd) == 0.0
    assert np.isclose(psi_baseline(rot_about([PI / 2, 0, 0], rd), rd), 1.0,
                      atol=1e-12)
    assert np.isclose(psi_baseline(rot_about([PI, 0, 0], rd), rd), 2.0,
                      atol=1e-12)


def test_e_r_baseline_examples():
    rd = random_rotation(14)
    assert np.array_equal(e_r_baseline(rd, rd), np.zeros(3))
    vec = e_r_baseline(rot_about([PI / 2, 0, 0], rd), rd)
    assert np.allclose(vec, [1.0, 0.0, 0.0], atol=1e-12)
    s = np.array([1.0, -1.0, 1.0]) / np.sqrt(3.0)
    vec = e_r_baseline(rot_about(0.999 * PI * s, rd), rd)
    assert np.isclose(np.linalg.norm(vec), np.sin(0.999 * PI), atol=1e-12)
    assert np.isclose(np.linalg.norm(vec), 0.0031416, atol=1e-7)


def test_quadratic_sandwich():
    for r, rd, _ in random_rotation_pairs(15, 1000, max_angle=PI - 1e-9):
        p = psi(r, rd)
        n2 = float(np.linalg.norm(e_r(r, rd)) ** 2)
        assert n2 <= p + 1e-12
        assert p <= 2.0 * n2 + 1e-12


def test_closed_forms_on_angle_sweep():
    rng = np.random.default_rng(16)
    angles = np.concatenate(
        [np.linspace(0.0, PI - 1e-3, 300), [PI - 1e-3]]
    )
    for angle in angles:
        axis = rng.normal(size=3)
        axis /= np.linalg.norm(axis)
        r = exp_so3(angle * axis)
        assert abs(psi(r, np.eye(3)) - 4.0 * np.sin(angle / 4.0) ** 2) <= 1e-12
        n2 = np.linalg.norm(e_r(r, np.eye(3))) ** 2
        assert abs(n2 - np.sin(angle / 2.0) ** 2) <= 1e-12


def test_only_critical_point_is_the_goal():
    # On a dense angle grid inside the sublevel set, e_r vanishes only at 0.
    axis = np.array([0.48, -0.6, 0.64])
    axis /= np.linalg.norm(axis)
    for angle in np.linspace(1e-6, PI - 1e-3, 2000):
        assert np.linalg.norm(e_r(exp_so3(angle * axis), np.eye(3))) > 0.0


def test_error_vector_monotonicity():
    axis = np.array([0.0, 0.6, 0.8])
    angles = np.linspace(0.0, PI - 1e-6, 400)
    new = [np.linalg.norm(e_r(exp_so3(a * axis), np.eye(3))) for a in angles]
    old = [np.linalg.norm(e_r_baseline(exp_so3(a * axis), np.eye(3)))
           for a in angles]
    assert np.all(np.diff(new) > 0.0)  # strictly increasing to the antipode
    assert not np.all(np.diff(old) > 0.0)
    assert np.isclose(angles[int(np.argmax(old))], PI / 2, atol=0.01)
    assert old[-1] < 1e-5  # classical error vector collapses at 180 degrees


def _smooth_pair(seed):
    rng = np.random.default_rng(seed)
    r0 = random_rotation(seed + 2000)
    angle = rng.uniform(0.1, 2.9)
    axis = rng.normal(size=3)
    axis /= np.linalg.norm(axis)
    rd0 = r0 @ exp_so3(-angle * axis)  # relative angle away from 0 and pi
    w = rng.normal(size=3)
    wd = rng.normal(size=3)

    def at(t):
        return r0 @ exp_so3(t * w), rd0 @ exp_so3(t * wd)

    return at, w, wd


def test_chain_rule_matches_dot_product():
    delta = 1e-7
    for seed in range(50):
        at, w, wd = _smooth_pair(seed)
        r, rd = at(0.0)
        rp, rdp = at(delta)
        rm, rdm = at(-delta)
        fd = (psi(rp, rdp) - psi(rm, rdm)) / (2.0 * delta)
        analytic = float(e_r(r, rd) @ e_omega(r, w, rd, wd))
        assert np.isclose(fd, analytic, rtol=1e-6, atol=1e-9)


def test_jacobian_matches_finite_difference():
    delta = 1e-7
    for seed in range(50):
        at, w, wd = _smooth_pair(seed + 500)
        r, rd = at(0.0)
        rp, rdp = at(delta)
        rm, rdm = at(-delta)
        fd = (e_r(rp, rdp) - e_r(rm, rdm)) / (2.0 * delta)
        ew = e_omega(r, w, rd, wd)
        analytic = error_jacobian(r, rd) @ ew
        assert np.allclose(fd, analytic, rtol=1e-6, atol=1e-9)
        # Velocity bound: ||e_r_dot|| <= ||e_w|| / 2.
        assert np.linalg.norm(fd) <= 0.5 * np.linalg.norm(ew) + 1e-9
