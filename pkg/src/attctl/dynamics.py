"""Rigid-body attitude plant: Euler's equation and the attitude kinematics.

    J Omega_dot + Omega x J Omega = u
    R_dot = R hat(Omega)

packaged as state-derivative evaluators for the integrators.
"""

from dataclasses import dataclass

import numpy as np

from .so3 import hat

_SYMMETRY_TOL = 1e-12


@dataclass(frozen=True)
class InertiaMatrix:
    """Symmetric positive-definite inertia tensor (kg m^2) with its inverse
    and eigenvalue bounds cached at construction; the 3x3 inverse is exact
    and reused every step."""

    matrix: np.ndarray
    inverse: np.ndarray
    lambda_min: float
    lambda_max: float

    def __init__(self, matrix):
        m = np.array(matrix, dtype=float)
        if m.shape != (3, 3):
            raise ValueError(f"inertia must be 3x3, got shape {m.shape}")
        if np.linalg.norm(m - m.T) > _SYMMETRY_TOL:
            raise ValueError("inertia matrix must be symmetric")
        eigs = np.linalg.eigvalsh(m)
        if eigs[0] <= 0.0:
            raise ValueError(f"inertia must be positive definite, eigs={eigs}")
        object.__setattr__(self, "matrix", m)
        object.__setattr__(self, "inverse", np.linalg.inv(m))
        object.__setattr__(self, "lambda_min", float(eigs[0]))
        object.__setattr__(self, "lambda_max", float(eigs[-1]))

    @classmethod
    def from_principal(cls, values):
        """Inertia from the three principal moments."""
        return cls(np.diag(np.asarray(values, dtype=float)))


@dataclass(frozen=True)
class BodyState:
    """Attitude R (3x3 rotation) and body-frame angular velocity Omega
    (rad/s)."""

    r: np.ndarray
    omega: np.ndarray


def omega_dot(omega, u, inertia):
    """Angular acceleration J^{-1} (u - Omega x J Omega)."""
    omega = np.asarray(omega, dtype=float)
    return inertia.inverse @ (
        np.asarray(u, dtype=float) - np.cross(omega, inertia.matrix @ omega)
    )


def r_dot(r, omega):
    """Attitude kinematics R hat(Omega); tangent to SO(3) at R."""
    return np.asarray(r, dtype=float) @ hat(omega)


def free_energy(state, inertia):
    """Rotational kinetic energy Omega . J Omega / 2 (J); conserved in free
    rotation, which makes it the integrator-validation observable."""
    w = np.asarray(state.omega, dtype=float)
    return 0.5 * float(w @ inertia.matrix @ w)
