"""Low-SNR rates of one-bit receivers over frequency-selective fading.

The channel is a stationary vector process h[k] with spatial correlation
C_h and temporal autocorrelation c_h(k); signaling may be bursty with
peak-to-average ratio beta and a delay power profile alpha.  Everything
at second order is captured by two scalars,

    zeta = tr(C_h^2) sum_{k>=1} c_h(k)^2      (temporal diversity)
    chi  = (1/2) tr(nondiag(C_h)^2) c_h(0)    (spatial cross terms),

from which an upper bound on the achievable quadratic rate term and the
rate of i.i.d. on-off signaling follow in closed form.
"""

import warnings
from dataclasses import dataclass

import numpy as np

from .numcore import convert_units, nondiag

_TRACE_TOL = 1e-9
_ALPHA_TOL = 1e-12
_MAX_LAGS = 512
_TAIL_WARN = 1e-6


class FadingCorrelationModel:
    """Spatio-temporal second-order description of the fading process.

    Parameters
    ----------
    C_h : array_like, (N', N')
        Hermitian PSD spatial correlation, normalized to tr(C_h) = N'.
    c_h : array_like, (K+1,)
        Temporal autocorrelation at lags 0..K, with c_h(0) = 1.
    alpha : array_like
        Delay power profile; nonnegative, summing to 1.
    beta : float
        Peak-to-average power ratio of the signaling, >= 1.
    """

    def __init__(self, C_h, c_h, alpha, beta):
        C_h = np.atleast_2d(np.asarray(C_h, dtype=complex))
        n = C_h.shape[0]
        if C_h.shape != (n, n):
            raise ValueError("C_h must be square")
        if np.max(np.abs(C_h - C_h.conj().T)) > 1e-10 * max(1.0, float(np.max(np.abs(C_h)))):
            raise ValueError("C_h must be Hermitian")
        if np.min(np.linalg.eigvalsh(C_h)) < -1e-10 * n:
            raise ValueError("C_h must be positive semidefinite")
        if abs(float(np.trace(C_h).real) - n) > _TRACE_TOL * n:
            raise ValueError("C_h must be normalized to trace N'")
        c_h = np.asarray(c_h, dtype=float).ravel()
        if c_h.size < 1 or abs(c_h[0] - 1.0) > _ALPHA_TOL:
            raise ValueError("c_h(0) must equal 1")
        alpha = np.asarray(alpha, dtype=float).ravel()
        if np.any(alpha < 0) or abs(alpha.sum() - 1.0) > _ALPHA_TOL:
            raise ValueError("alpha must be a nonnegative profile summing to 1")
        if beta < 1.0:
            raise ValueError("peak-to-average ratio beta must be >= 1")
        self.C_h = C_h
        self.c_h = c_h
        self.alpha = alpha
        self.beta = float(beta)

    @property
    def n_rx(self):
        return self.C_h.shape[0]


def zeta(model, max_lags=_MAX_LAGS):
    """Temporal diversity coefficient tr(C_h^2) sum_{k=1..K} c_h(k)^2.

    The lag sum is truncated at min(len(c_h)-1, max_lags); a warning is
    emitted when the last used autocorrelation value is not yet small.
    """
    tail = model.c_h[1 : max_lags + 1]
    if tail.size and abs(tail[-1]) > _TAIL_WARN:
        warnings.warn(
            "autocorrelation truncated at |c_h(K)| = %.3g; zeta may be low"
            % abs(tail[-1]),
            RuntimeWarning,
            stacklevel=2,
        )
    tr2 = float(np.trace(model.C_h @ model.C_h).real)
    return tr2 * float(np.sum(tail**2))


def chi(model):
    """Spatial cross-term coefficient (1/2) tr(nondiag(C_h)^2) c_h(0)."""
    nd = nondiag(model.C_h)
    return 0.5 * float(np.trace(nd @ nd).real) * model.c_h[0]


@dataclass(frozen=True)
class LowSnrBound:
    """Optimized quadratic-term bound and the on-off policy achieving it.

    u_coeff multiplies ((2/pi) snr)^2; gamma_opt is the optimal duty
    parameter in [0, 1] and oofsk_duty = gamma_opt/beta the fraction of
    time an on-off FSK scheme transmits (at peak power beta * P).
    """

    zeta: float
    chi: float
    u_coeff: float
    gamma_opt: float
    oofsk_duty: float


def _bound_coeff(z, c, beta):
    # maximize gamma*beta*(z+c) - gamma^2*c over gamma in [0, 1]
    if c <= 0.0:
        return beta * z, 1.0
    if beta * (z + c) >= 2.0 * c:
        return beta * z + (beta - 1.0) * c, 1.0
    gamma = beta * (z + c) / (2.0 * c)
    return beta**2 * (z + c) ** 2 / (4.0 * c), gamma


def upper_bound(model):
    """Upper bound on the quadratic rate term, optimized over duty cycling."""
    z = zeta(model)
    c = chi(model)
    u, gamma = _bound_coeff(z, c, model.beta)
    return LowSnrBound(z, c, u, gamma, gamma / model.beta)


def bound_value(bound, snr, units="nats"):
    """Evaluate a LowSnrBound at a given snr: ((2/pi) snr)^2 u_coeff."""
    if snr < 0:
        raise ValueError("snr must be nonnegative")
    return convert_units((2.0 * snr / np.pi) ** 2 * bound.u_coeff, units)


def _iid_coeff(z, c, beta, sum_alpha_sq):
    # maximize gamma^2 (z*sum_alpha_sq - c) + gamma*beta*c over gamma in [0, 1]
    a2 = z * sum_alpha_sq - c
    a1 = beta * c
    if a2 >= 0.0:
        gamma = 1.0
    else:
        gamma = min(1.0, max(0.0, a1 / (-2.0 * a2)))
    return a2 * gamma**2 + a1 * gamma, gamma


def iid_rate(model, snr, units="nats"):
    """Quadratic rate term of i.i.d. bursty signaling, duty optimized.

    ((2/pi) snr)^2 max_gamma [ gamma^2 zeta sum_t alpha_t^2
                               + gamma (beta - gamma) chi ],
    never above the upper bound.
    """
    if snr < 0:
        raise ValueError("snr must be nonnegative")
    z = zeta(model)
    c = chi(model)
    val, _ = _iid_coeff(z, c, model.beta, float(np.sum(model.alpha**2)))
    return convert_units((2.0 * snr / np.pi) ** 2 * val, units)


def fig9_curve(T_values, beta, chi_over_zeta_grid):
    """Ratio of the i.i.d. rate to the upper bound across channel mixes.

    For each ratio chi/zeta and each uniform profile length T, both
    quadratic coefficients are computed (the common ((2/pi) snr)^2 scale
    cancels).  Returns (grid, {T: ratios}).
    """
    grid = np.asarray(chi_over_zeta_grid, dtype=float).ravel()
    if np.any(grid < 0):
        raise ValueError("chi/zeta must be nonnegative")
    out = {}
    for T in T_values:
        T = int(T)
        if T < 1:
            raise ValueError("profile length must be at least 1")
        ratios = np.empty(grid.size)
        for i, r in enumerate(grid):
            z, c = 1.0, float(r)
            u, _ = _bound_coeff(z, c, beta)
            val, _ = _iid_coeff(z, c, beta, 1.0 / T)
            ratios[i] = val / u
        out[T] = ratios
    return grid, out
