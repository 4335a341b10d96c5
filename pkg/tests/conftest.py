"""Shared fixtures: the reference rigid body, gains, and scenarios used by
the numerical experiments."""

import math

import numpy as np
import pytest

from attctl import GainSet, InertiaMatrix, scenario_from_dict

PI = math.pi
SQ3 = 1.0 / math.sqrt(3.0)

CASE_I_COMMAND = {
    "kind": "euler_tracking",
    "phi": [0.999 * PI, 0.5],
    "theta": [0.0, 0.0, 0.1],
    "psi": [0.0, -0.2, 0.5],
}
CASE_II_COMMAND = {
    "kind": "fixed",
    "axis": [SQ3, -SQ3, SQ3],
    "angle_rad": 0.999 * PI,
}


def scenario_dict(command, controller, **overrides):
    cfg = {
        "inertia": [3.0, 2.0, 1.0],
        "gains": {"k_R": 12.0, "k_Omega": 8.4},
        "command": command,
        "initial": {
            "R0": {"axis": [0.0, 0.0, 1.0], "angle_rad": 0.0},
            "Omega0": [0.0, 0.0, 0.0],
        },
        "controller": controller,
        "integrator": {
            "method": "lgvi",
            "h": 1e-3,
            "newton_tol": 1e-14,
            "newton_max_iter": 50,
        },
        "duration": 10.0,
        "log_every": 10,
    }
    cfg.update(overrides)
    return cfg


def case_i_config(controller="proposed_tracking", **overrides):
    return scenario_from_dict(
        scenario_dict(CASE_I_COMMAND, controller, **overrides)
    )


def case_ii_config(controller="inertia_free", **overrides):
    return scenario_from_dict(
        scenario_dict(CASE_II_COMMAND, controller, **overrides)
    )


@pytest.fixture(scope="session")
def ref_gains():
    return GainSet(k_r=12.0, k_omega=8.4)

@pytest.fixture(scope="session")
def ref_inertia():
    return InertiaMatrix.from_principal([3.0, 2.0, 1.0])


def random_rotation_pairs(seed, n, max_angle=PI):
    """Deterministic (R, Rd, angle) triples with angle uniform on
    [0, max_angle)."""
    rng = np.random.default_rng(seed)
    from attctl import exp_so3, random_rotation

    out = []
    for i in range(n):
        rd = random_rotation(seed * 1_000_003 + i)
        axis = rng.normal(size=3)
        axis /= np.linalg.norm(axis)
        angle = rng.uniform(0.0, max_angle)
        out.append((rd @ exp_so3(angle * axis), rd, angle))
    return out
