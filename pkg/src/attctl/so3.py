"""Primitives on the rotation group SO(3).

Rotations are plain 3x3 numpy arrays. `rotation_matrix` is the validating
constructor used at API boundaries; functions that provably return group
elements (`exp_so3`, `project_to_so3`, `random_rotation`) skip re-validation.
"""

import numpy as np

from .errors import NotARotation, NotNearRotation, NotSkewSymmetric

# Constructor tolerance on ||R^T R - I||_F and |det R - 1|.
ROTATION_TOL = 1e-9
# Below this angle the Rodrigues coefficients use their 2-term Taylor series
# to avoid 0/0.
SMALL_ANGLE = 1e-6
SKEW_TOL = 1e-9

_IDENTITY = np.eye(3)


def hat(v):
    """Skew-symmetric matrix of v, satisfying hat(v) @ y == cross(v, y)."""
    x, y, z = v
    return np.array([[0.0, -z, y], [z, 0.0, -x], [-y, x, 0.0]])


def vee(m, tol=SKEW_TOL):
    """Inverse of `hat`. Raises NotSkewSymmetric if ||m + m^T||_F > tol.

    The skew part is averaged so that exact skew inputs are read off
    exactly and near-skew inputs are symmetrized.
    """
    m = np.asarray(m, dtype=float)
    defect = np.linalg.norm(m + m.T)
    if defect > tol:
        raise NotSkewSymmetric(f"||m + m^T||_F = {defect:.3e} > {tol:.1e}")
    return 0.5 * np.array(
        [m[2, 1] - m[1, 2], m[0, 2] - m[2, 0], m[1, 0] - m[0, 1]]
    )


def exp_so3(v):
    """Rodrigues exponential: I + sin|v|/|v| hat(v) + (1-cos|v|)/|v|^2 hat(v)^2."""
    v = np.asarray(v, dtype=float)
    th = np.linalg.norm(v)
    if th < SMALL_ANGLE:
        a = 1.0 - th * th / 6.0
        b = 0.5 - th * th / 24.0
    else:
        a = np.sin(th) / th
        b = (1.0 - np.cos(th)) / (th * th)
    k = hat(v)
    return _IDENTITY + a * k + b * (k @ k)


def _skew_part_vector(r):
    # (R - R^T)^vee without the skewness check: equals 2 sin(theta) * axis.
    return np.array(
        [r[2, 1] - r[1, 2], r[0, 2] - r[2, 0], r[1, 0] - r[0, 1]]
    )


def log_so3(r):
    """Rotation vector (angle * unit axis) of r, with |result| <= pi.

    Three branches keep the axis well conditioned over the whole group:
    small angles use the skew part with a Taylor-corrected scale, moderate
    angles the standard theta/(2 sin theta) scaling, and angles near pi
    recover the axis from the symmetric part (where the skew part has lost
    almost all axis information). At exactly pi the two antipodal axes are
    equivalent; the one whose largest-magnitude component is positive is
    returned.
    """
    r = np.asarray(r, dtype=float)
    v = _skew_part_vector(r)
    s = 0.5 * np.linalg.norm(v)  # sin(theta)
    c = min(1.0, max(-1.0, 0.5 * (np.trace(r) - 1.0)))  # cos(theta)
    theta = np.arctan2(s, c)

    if theta < SMALL_ANGLE:
        return 0.5 * v * (1.0 + theta * theta / 6.0)
    if theta < 0.75 * np.pi:
        return (theta / (2.0 * s)) * v

    # Near pi: axis from the outer product kk^T = ((R + R^T)/2 - cI)/(1 - c).
    outer = (0.5 * (r + r.T) - c * _IDENTITY) / (1.0 - c)
    diag = np.clip(np.diagonal(outer), 0.0, None)
    i = int(np.argmax(diag))
    axis = outer[i] / np.sqrt(diag[i])
    axis = axis / np.linalg.norm(axis)
    if s > 1e-9:
        # Sign is still recoverable from the skew part.
        if axis @ v < 0.0:
            axis = -axis
    elif axis[int(np.argmax(np.abs(axis)))] < 0.0:
        axis = -axis
    return theta * axis


def rotation_angle(r):
    """Principal rotation angle in [0, pi], from arccos((tr - 1)/2).

    The trace argument is clamped to [-1, 1]: floating-point traces can
    spill past +/-3 by an ulp.
    """
    c = 0.5 * (np.trace(np.asarray(r, dtype=float)) - 1.0)
    return float(np.arccos(min(1.0, max(-1.0, c))))


def orthogonality_error(r):
    """||R^T R - I||_F, the drift measure reported by the integrators."""
    r = np.asarray(r, dtype=float)
    return float(np.linalg.norm(r.T @ r - _IDENTITY))


def rotation_matrix(m, tol=ROTATION_TOL):
    """Validating constructor: returns m as a float array after checking
    the group invariants. Raises NotARotation if
    ||m^T m - I||_F > tol or |det m - 1| > tol.
    """
    m = np.array(m, dtype=float)
    if m.shape != (3, 3):
        raise NotARotation(f"expected 3x3 matrix, got shape {m.shape}")
    err = orthogonality_error(m)
    if err > tol:
        raise NotARotation(f"||R^T R - I||_F = {err:.3e} > {tol:.1e}")
    det = np.linalg.det(m)
    if abs(det - 1.0) > tol:
        raise NotARotation(f"det R = {det!r} not within {tol:.1e} of 1")
    return m


def project_to_so3(m):
    """Nearest rotation matrix to m (orthogonal polar factor with det +1).

    Computed from the SVD, which is exact for this purpose; the input must
    lie within Frobenius distance 0.5 of its projection or NotNearRotation
    is raised.
    """
    m = np.asarray(m, dtype=float)
    u, _, vt = np.linalg.svd(m)
    d = np.sign(np.linalg.det(u) * np.linalg.det(vt))
    r = (u * np.array([1.0, 1.0, d])) @ vt
    dist = np.linalg.norm(m - r)
    if dist > 0.5:
        raise NotNearRotation(f"||m - proj(m)||_F = {dist:.3e} > 0.5")
    return r


def random_rotation(seed):
    """Deterministic random rotation: uniform unit axis, angle uniform on
    [0, pi)."""
    rng = np.random.default_rng(seed)
    axis = rng.normal(size=3)
    axis = axis / np.linalg.norm(axis)
    angle = rng.uniform(0.0, np.pi)
    return exp_so3(angle * axis)
