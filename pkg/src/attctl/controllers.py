"""Control laws and the Lyapunov gain-certification arithmetic.

Three control laws:

  * `tracking_control`   u  = -kR e_r - kW e_w + Omega x J Omega
                              - J (hat(Omega) R^T Rd Omega_d - R^T Rd Omega_d_dot)
  * `stabilize_control`  u' = -kR e_r - kW Omega        (inertia-free, fixed Rd)
  * `baseline_control`   tracking law with e_r replaced by the classical
                          sin(theta) error vector, or its pure PD form.

Certification: exponential stability of the tracking loop is certified by a
Lyapunov function V = e_w . J e_w / 2 + kR psi + c2 e_w . e_r sandwiched by
quadratic forms z^T W11 z <= V <= z^T W12 z with z = (||e_r||, ||e_w||), and
V_dot <= -z^T W2 z. All three 2x2 matrices are positive definite for any
0 < c2 < c2_bound(...), giving V(t) <= V(0) exp(-decay t) with
decay = lambda_min(W2) / lambda_max(W12). For the inertia-free law the W2
block pays an extra alpha = 1/2 + sqrt(2) lmax/lmin in its (2,2) entry,
which lowers the certified rate.
"""

from dataclasses import dataclass

import numpy as np

from .attitude_error import e_omega, e_r, e_r_baseline, psi
from .so3 import hat

TRACKING = "tracking"
STABILIZATION = "stabilization"

DEFAULT_C2_GRID = 200


@dataclass(frozen=True)
class GainSet:
    """Proportional gain k_r (N m per unit e_r) and damping gain k_omega
    (N m s/rad); both strictly positive."""

    k_r: float
    k_omega: float

    def __post_init__(self):
        if not (self.k_r > 0.0 and self.k_omega > 0.0):
            raise ValueError(
                f"gains must be positive, got k_r={self.k_r!r}, "
                f"k_omega={self.k_omega!r}"
            )


@dataclass(frozen=True)
class Certification:
    """Lyapunov certificate for one (gains, inertia, c2, mode) tuple.

    decay_rate = lambda_min(W2) / lambda_max(W12) is meaningful only when
    positive_definite is True; non-definite results are reported, not
    raised.
    """

    mode: str
    c2_max: float
    c2_used: float
    w11: np.ndarray
    w12: np.ndarray
    w2: np.ndarray
    positive_definite: bool
    decay_rate: float
    alpha: float | None


@dataclass(frozen=True)
class RoaReport:
    """Region-of-attraction check: inside iff psi0 < 2 and
    ||e_w(0)||^2 < (2/lmax) kR (2 - psi0). Diagnostic only; controllers are
    never refused outside the certified region."""

    psi0: float
    psi_ok: bool
    e_omega0_norm: float
    e_omega_bound: float
    inside: bool


def tracking_control(state, cmd, gains, inertia):
    """Tracking law with full feedforward; along the closed loop
    J e_w_dot = -kR e_r - kW e_w."""
    er = e_r(state.r, cmd.rd)
    ew = e_omega(state.r, state.omega, cmd.rd, cmd.omega_d)
    return -gains.k_r * er - gains.k_omega * ew + _feedforward(
        state, cmd, inertia
    )


def stabilize_control(state, rd, gains):
    """Inertia-free stabilization law for a fixed command (Omega_d == 0, so
    e_w = Omega); along the closed loop
    J e_w_dot = -kR e_r - kW e_w - Omega x J Omega."""
    return -gains.k_r * e_r(state.r, rd) - gains.k_omega * np.asarray(
        state.omega, dtype=float
    )


def baseline_control(
    state, cmd, gains, inertia, feedforward=True, error_scale=1.0
):
    """Comparison law built on the classical sin(theta) error vector.

    With feedforward (default) it is `tracking_control` with e_r swapped for
    `e_r_baseline`, isolating the effect of the error function; without it,
    the plain PD form -kR e_r_baseline - kW Omega. error_scale rescales the
    baseline error vector (the classical literature is not consistent about
    its normalization).
    """
    er0 = error_scale * e_r_baseline(state.r, cmd.rd)
    if not feedforward:
        return -gains.k_r * er0 - gains.k_omega * np.asarray(
            state.omega, dtype=float
        )
    ew = e_omega(state.r, state.omega, cmd.rd, cmd.omega_d)
    return -gains.k_r * er0 - gains.k_omega * ew + _feedforward(
        state, cmd, inertia
    )


def _feedforward(state, cmd, inertia):
    omega = np.asarray(state.omega, dtype=float)
    j = inertia.matrix
    r_t_rd = np.asarray(state.r).T @ np.asarray(cmd.rd)
    return np.cross(omega, j @ omega) - j @ (
        hat(omega) @ (r_t_rd @ cmd.omega_d) - r_t_rd @ cmd.omega_d_dot
    )


def stabilization_alpha(inertia):
    """alpha = 1/2 + sqrt(2) lmax(J)/lmin(J), the inertia-free penalty in
    the W2 (2,2) entry."""
    return 0.5 + np.sqrt(2.0) * inertia.lambda_max / inertia.lambda_min


def c2_bound(gains, inertia, mode):
    """Supremum of admissible cross-term weights c2: any c2 strictly below
    it makes W11, W12 and W2 positive definite."""
    kr, kw = gains.k_r, gains.k_omega
    lmin, lmax = inertia.lambda_min, inertia.lambda_max
    if mode == TRACKING:
        return min(
            np.sqrt(2.0 * kr * lmin),
            2.0 * kw,
            4.0 * kr * kw * lmin**2 / (2.0 * kr * lmin**2 + kw**2 * lmax),
        )
    if mode == STABILIZATION:
        alpha = stabilization_alpha(inertia)
        return min(
            np.sqrt(2.0 * kr * lmin),
            kw / alpha,
            4.0
            * kr
            * kw
            * lmin**2
            / (4.0 * alpha * kr * lmin**2 + kw**2 * lmax),
        )
    raise ValueError(f"unknown certification mode {mode!r}")


def certify(gains, inertia, c2, mode):
    """Build the W11 / W12 / W2 matrices for a given c2 and report
    definiteness and the certified decay rate."""
    if mode not in (TRACKING, STABILIZATION):
        raise ValueError(f"unknown certification mode {mode!r}")
    if not c2 > 0.0:
        raise ValueError(f"c2 must be positive, got {c2!r}")
    kr, kw = gains.k_r, gains.k_omega
    lmin, lmax = inertia.lambda_min, inertia.lambda_max

    w11 = np.array([[kr, c2 / 2.0], [c2 / 2.0, lmin / 2.0]])
    w12 = np.array([[2.0 * kr, c2 / 2.0], [c2 / 2.0, lmax / 2.0]])
    off = -c2 * kw / (2.0 * lmin)
    alpha = None
    if mode == TRACKING:
        corner = kw - c2 / 2.0
    else:
        alpha = float(stabilization_alpha(inertia))
        corner = kw - alpha * c2
    w2 = np.array([[c2 * kr / lmax, off], [off, corner]])

    pd = all(
        np.linalg.eigvalsh(w)[0] > 0.0 for w in (w11, w12, w2)
    )
    decay = float(
        np.linalg.eigvalsh(w2)[0] / np.linalg.eigvalsh(w12)[-1]
    )
    return Certification(
        mode=mode,
        c2_max=float(c2_bound(gains, inertia, mode)),
        c2_used=float(c2),
        w11=w11,
        w12=w12,
        w2=w2,
        positive_definite=pd,
        decay_rate=decay,
        alpha=alpha,
    )


def best_certification(gains, inertia, mode, grid_points=DEFAULT_C2_GRID):
    """Certificate with the largest decay rate over a grid of admissible c2
    in (0, c2_bound); the theory only constrains c2, it never picks one."""
    top = c2_bound(gains, inertia, mode)
    best = None
    for i in range(1, grid_points + 1):
        cert = certify(gains, inertia, top * i / (grid_points + 1), mode)
        if cert.positive_definite and (
            best is None or cert.decay_rate > best.decay_rate
        ):
            best = cert
    if best is None:
        raise ValueError("no admissible c2 found on the grid")
    return best


def roa_check(state0, cmd0, gains, inertia):
    """Evaluate both region-of-attraction inequalities at the initial
    condition."""
    psi0 = float(psi(state0.r, cmd0.rd))
    psi_ok = bool(psi0 < 2.0)
    ew0 = float(
        np.linalg.norm(
            e_omega(state0.r, state0.omega, cmd0.rd, cmd0.omega_d)
        )
    )
    slack = max(0.0, 2.0 - psi0)
    bound = float(
        np.sqrt(2.0 / inertia.lambda_max * gains.k_r * slack)
    )
    inside = bool(
        psi_ok and ew0**2 < 2.0 / inertia.lambda_max * gains.k_r * slack
    )
    return RoaReport(
        psi0=float(psi0),
        psi_ok=psi_ok,
        e_omega0_norm=ew0,
        e_omega_bound=bound,
        inside=inside,
    )


def lyapunov_value(state, cmd, gains, inertia, c2):
    """V = e_w . J e_w / 2 + kR psi + c2 e_w . e_r; with c2 = 0 this is the
    invariance function W used for the sublevel-set argument."""
    ew = e_omega(state.r, state.omega, cmd.rd, cmd.omega_d)
    er = e_r(state.r, cmd.rd)
    return (
        0.5 * float(ew @ inertia.matrix @ ew)
        + gains.k_r * psi(state.r, cmd.rd)
        + c2 * float(ew @ er)
    )
