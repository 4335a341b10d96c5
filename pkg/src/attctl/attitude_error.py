"""Attitude error function on SO(3) and its error vectors.

The error function used throughout the library is

    psi(R, Rd) = 2 - sqrt(1 + tr(Rd^T R)),

whose error vector

    e_r(R, Rd) = (Rd^T R - R^T Rd)^vee / (2 sqrt(1 + tr(Rd^T R)))

has magnitude sin(theta/2) for a relative rotation angle theta: it keeps
growing monotonically all the way to the antipode instead of collapsing to
zero like the classical (R - R^T)^vee error. Closed forms used by the tests:
psi = 4 sin^2(theta/4) and ||e_r||^2 = sin^2(theta/2).

The baseline pair `psi_baseline` / `e_r_baseline` implements the classical
half-trace error function for comparison runs.

All error-vector quantities are defined only on the sublevel set psi < 2
(everything except the 180-degree relative rotations); at the boundary the
1/sqrt(1 + tr) prefactor is singular and AtErrorBoundary is raised rather
than returning a silently clamped value.
"""

import numpy as np

from .errors import AtErrorBoundary

# Guard on psi for the error-vector prefactor: psi >= 2 - BOUNDARY_EPS means
# the relative rotation is within ~1e-9 rad of the antipode.
BOUNDARY_EPS = 1e-9

_IDENTITY = np.eye(3)


def _relative_geometry(r, rd):
    """Shared kernel: relative rotation q = Rd^T R and its half-angle cosine.

    Returns (q, skew, coshalf) where skew = (q - q^T)^vee = 2 sin(theta) axis
    and coshalf = cos(theta/2) = sqrt(1 + tr(q)) / 2.

    For tr(q) < 1 the direct square root loses relative accuracy near the
    antipode (1 + tr underflows quadratically), so coshalf is recovered from
    the skew part via sin(theta) / (2 sin(theta/2)), which stays accurate to
    roundoff; both branches agree in exact arithmetic.
    """
    q = np.asarray(rd, dtype=float).T @ np.asarray(r, dtype=float)
    skew = np.array(
        [q[2, 1] - q[1, 2], q[0, 2] - q[2, 0], q[1, 0] - q[0, 1]]
    )
    c = min(1.0, max(-1.0, 0.5 * (np.trace(q) - 1.0)))  # cos(theta)
    if c >= 0.0:
        coshalf = np.sqrt((1.0 + c) / 2.0)
    else:
        s = 0.5 * np.linalg.norm(skew)  # sin(theta)
        coshalf = s / (2.0 * np.sqrt((1.0 - c) / 2.0))
    return q, skew, min(1.0, coshalf)


def psi(r, rd):
    """Attitude error 2 - sqrt(1 + tr(Rd^T R)), in [0, 2]; zero iff R == Rd."""
    _, _, coshalf = _relative_geometry(r, rd)
    return max(0.0, 2.0 - 2.0 * coshalf)


def e_r(r, rd):
    """Attitude error vector; magnitude sin(theta/2) along the relative
    rotation axis. Raises AtErrorBoundary when psi >= 2 - BOUNDARY_EPS."""
    _, skew, coshalf = _relative_geometry(r, rd)
    value = 2.0 - 2.0 * coshalf
    if value >= 2.0 - BOUNDARY_EPS:
        raise AtErrorBoundary(
            f"psi = {value!r} at the sublevel-set boundary; "
            "attitude error vector undefined at 180 degrees"
        )
    return skew / (4.0 * coshalf)


def e_omega(r, omega, rd, omega_d):
    """Angular velocity error Omega - R^T Rd Omega_d (body frame)."""
    return np.asarray(omega, dtype=float) - np.asarray(r).T @ (
        np.asarray(rd) @ np.asarray(omega_d, dtype=float)
    )


def error_jacobian(r, rd):
    """Matrix E(R, Rd) with e_r_dot = E e_omega along trajectories:

        E = (tr(R^T Rd) I - R^T Rd + 2 e_r e_r^T) / (2 sqrt(1 + tr(Rd^T R)))

    Its singular values are {1/2, 1/2, sqrt((1 + cos theta)/8)}, so
    ||E||_2 = 1/2 everywhere on the sublevel set.
    """
    q, skew, coshalf = _relative_geometry(r, rd)
    value = 2.0 - 2.0 * coshalf
    if value >= 2.0 - BOUNDARY_EPS:
        raise AtErrorBoundary(
            f"psi = {value!r} at the sublevel-set boundary; "
            "error Jacobian undefined at 180 degrees"
        )
    er = skew / (4.0 * coshalf)
    qt = q.T  # R^T Rd
    return (np.trace(qt) * _IDENTITY - qt + 2.0 * np.outer(er, er)) / (
        4.0 * coshalf
    )


def psi_baseline(r, rd):
    """Classical half-trace error function: tr(I - Rd^T R) / 2, in [0, 2]."""
    q = np.asarray(rd, dtype=float).T @ np.asarray(r, dtype=float)
    return max(0.0, 0.5 * (3.0 - np.trace(q)))


def e_r_baseline(r, rd):
    """Error vector of `psi_baseline`: (Rd^T R - R^T Rd)^vee / 2.

    Magnitude is sin(theta), which peaks at 90 degrees and falls back to
    zero at the antipode; the 1/2 scaling makes the small-angle limit equal
    theta * axis, the rotation vector itself. Defined on all of SO(3).
    """
    _, skew, _ = _relative_geometry(r, rd)
    return 0.5 * skew
