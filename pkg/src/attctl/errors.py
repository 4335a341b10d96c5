"""Exception types shared across the library."""


class AttctlError(Exception):
    """Base class for all attctl errors."""


class NotSkewSymmetric(AttctlError):
    """Input matrix is not skew-symmetric within tolerance."""


class NotARotation(AttctlError):
    """Matrix fails the rotation-matrix invariants (orthogonality / det +1)."""


class NotNearRotation(AttctlError):
    """Matrix is too far from SO(3) to be projected onto it."""


class AtErrorBoundary(AttctlError):
    """Attitude error is at the boundary of the sublevel set where the
    error vector is defined (relative rotation within numerical reach of
    180 degrees)."""


class GimbalLockNear(AttctlError):
    """Euler pitch angle too close to +/- 90 degrees for the rate map."""


class NewtonDivergence(AttctlError):
    """Implicit integrator step failed to converge; step size too large."""


class ConfigInvalid(AttctlError):
    """Scenario configuration failed validation."""


class ConfigMismatch(AttctlError):
    """Configs passed to compare() do not form a valid comparison pair."""
