"""Second-order low-SNR expansions of one-bit channel rates.

Every result is packaged as a `QuadraticExpansion`

    rate(rho) = constant + linear * rho - quadratic * rho**2,

in nats, where the meaning of rho is recorded in `rho_kind`:

    "inv_noise"  rho = 1/sigma2, input power carried by the distribution
    "snr"        rho = P_Tr/sigma2, coefficients normalized per unit power
    "eps2"       rho = epsilon**2 for entropy expansions of sign(eps x + n)

The quadratic field keeps the signed convention above (a positive value
curves the rate downward); expansions are polynomials and are never
clamped to be nonnegative.
"""

from dataclasses import dataclass

import numpy as np

from . import constellations as cst
from .numcore import LN2, nondiag, split, split_pnorm

_MEAN_TOL = 1e-9
_RHO_KINDS = ("inv_noise", "snr", "eps2")


@dataclass(frozen=True)
class QuadraticExpansion:
    """Second-order expansion rate(rho) = constant + linear rho - quadratic rho^2."""

    constant: float
    linear: float
    quadratic: float
    rho_kind: str

    def __post_init__(self):
        if self.rho_kind not in _RHO_KINDS:
            raise ValueError("unknown rho_kind %r" % (self.rho_kind,))

    def evaluate(self, rho):
        rho = np.asarray(rho, dtype=float)
        val = self.constant + self.linear * rho - self.quadratic * rho**2
        return float(val) if val.ndim == 0 else val


def _require_proper(d):
    if not cst.is_proper(d):
        raise ValueError("input distribution must be proper (circular second moments)")


def _require_zero_mean(m):
    power = float(np.trace(m.covariance).real)
    if np.linalg.norm(m.mean) > _MEAN_TOL * np.sqrt(max(power, np.finfo(float).tiny)):
        raise ValueError("input distribution must have zero mean")


def entropy_expansion(d):
    """Expansion of the entropy of sign(eps x + noise) in powers of eps^2.

    Unit-variance complex noise.  For a proper input with mean m,
    covariance C and component-wise third moments,

        H = 2N ln2 - (2/pi) ||m||_2^2 eps^2
            - [ (2/pi^2) tr(nondiag(C)^2)
                - (4/(3 pi)) sum_c m_c E[x_c^3]
                + (4/(3 pi^2)) ||m||_4^4 ] eps^4 + o(eps^4),

    where the third-moment sum runs signed over all real components.
    """
    _require_proper(d)
    m = cst.moments(d)
    mean = m.mean
    nd = nondiag(m.covariance)
    # signed sum over real components of E[x_c] E[x_c^3]
    third_term = float(np.sum(split(mean) * split(m.third_circ)))
    quad = (
        (2.0 / np.pi**2) * float(np.trace(nd @ nd).real)
        - (4.0 / (3.0 * np.pi)) * third_term
        + (4.0 / (3.0 * np.pi**2)) * split_pnorm(mean, 4)
    )
    return QuadraticExpansion(
        constant=2.0 * d.dim * LN2,
        linear=-(2.0 / np.pi) * split_pnorm(mean, 2),
        quadratic=quad,
        rho_kind="eps2",
    )


def conditional_entropy_expansion(d, conditional_map):
    """Average entropy expansion of sign(eps g + noise) given x ~ d.

    `conditional_map(x)` returns the conditional distribution of g given
    x (a point mass for a deterministic map); the expansion coefficients
    are averaged over d.  Each conditional distribution must be proper.
    """
    const = None
    lin = quad = 0.0
    for x, p in zip(d.points, d.probs):
        e = entropy_expansion(conditional_map(x))
        if const is None:
            const = e.constant
        elif e.constant != const:
            raise ValueError("conditional distributions must share one output dimension")
        lin += p * e.linear
        quad += p * e.quadratic
    return QuadraticExpansion(const, lin, quad, "eps2")


def mi_expansion_perfect_csi(H, d):
    """Second-order mutual information expansion, channel known to both sides.

    For zero-mean proper inputs whose law is invariant under rotation by
    j (declared by the caller, not checked),

        I = (2/pi) tr(H C H^H) rho
            - [ (2/pi^2) tr(nondiag(H C H^H)^2)
                + (4/(3 pi)) (1 - 1/pi) E||Hx||_4^4 ] rho^2 + o(rho^2)

    with rho = 1/sigma2.
    """
    H = np.atleast_2d(np.asarray(H, dtype=complex))
    _require_proper(d)
    m = cst.moments(d)
    _require_zero_mean(m)
    G = H @ m.covariance @ H.conj().T
    fourth = cst.moments(cst.pushforward(d, H)).fourth_split_norm
    nd = nondiag(G)
    return QuadraticExpansion(
        constant=0.0,
        linear=(2.0 / np.pi) * float(np.trace(G).real),
        quadratic=(2.0 / np.pi**2) * float(np.trace(nd @ nd).real)
        + (4.0 / (3.0 * np.pi)) * (1.0 - 1.0 / np.pi) * fourth,
        rho_kind="inv_noise",
    )


def mi_expansion_unquantized(H, C_x):
    """Second-order expansion of the unquantized coherent mutual information.

    I = tr(H C H^H) rho - (1/2) tr((H C H^H)^2) rho^2 + o(rho^2), the
    benchmark whose linear term the one-bit channel meets up to 2/pi.
    """
    H = np.atleast_2d(np.asarray(H, dtype=complex))
    C_x = np.atleast_2d(np.asarray(C_x, dtype=complex))
    G = H @ C_x @ H.conj().T
    return QuadraticExpansion(
        constant=0.0,
        linear=float(np.trace(G).real),
        quadratic=0.5 * float(np.trace(G @ G).real),
        rho_kind="inv_noise",
    )


def _split_fourth_sum(H, kurtosis):
    # sum_{i,j,c} kappa_{j,c} h_{i,j,c}^4 with c running over Re/Im
    kR = kurtosis[0::2]
    kI = kurtosis[1::2]
    return float(np.sum(H.real**4 @ kR) + np.sum(H.imag**4 @ kI))


def mi_expansion_ind_inputs(H, kurtosis, total_power):
    """Expansion for independent zero-mean inputs of equal power.

    Each of the 2M real input components is independent with power
    P/(2M) and raw kurtosis given per split component (interleaved
    R1, I1, ...).  Coefficients are per unit snr = P_Tr/sigma2:

        I = (2/pi) tr(H H^H) (snr/M)
            - [ (2/pi^2) tr(nondiag(H H^H)^2)
                + (2/(3 pi)) (1 - 1/pi)
                  (3 tr(diag(H H^H)^2) + sum kappa h^4) ] (snr/M)^2.

    The kurtosis sum is evaluated as written, which presumes the R/I
    symmetric case kappa_{j,R} = kappa_{j,I}.
    """
    H = np.atleast_2d(np.asarray(H, dtype=complex))
    kurtosis = np.asarray(kurtosis, dtype=float).ravel()
    M = H.shape[1]
    if kurtosis.size != 2 * M:
        raise ValueError("need %d kurtosis values, got %d" % (2 * M, kurtosis.size))
    if np.any(kurtosis < -2):
        raise ValueError("kurtosis cannot fall below -2")
    if total_power <= 0:
        raise ValueError("total_power must be positive")
    G = H @ H.conj().T
    nd = nondiag(G)
    dg = np.diag(G).real
    quad = (2.0 / np.pi**2) * float(np.trace(nd @ nd).real) + (2.0 / (3.0 * np.pi)) * (
        1.0 - 1.0 / np.pi
    ) * (3.0 * float(np.sum(dg**2)) + _split_fourth_sum(H, kurtosis))
    return QuadraticExpansion(
        constant=0.0,
        linear=(2.0 / np.pi) * float(np.trace(G).real) / M,
        quadratic=quad / M**2,
        rho_kind="snr",
    )


def capacity_qpsk_2nd(H, total_power=1.0):
    """Second-order capacity under i.i.d. QPSK, coefficients per unit snr.

    QPSK components are two-valued symmetric (kurtosis -2 throughout),
    which turns the kurtosis sum into -2 sum_{i,j,c} h_{i,j,c}^4:

        C = (2/pi) tr(H H^H) (snr/M)
            - [ (2/pi^2) tr(nondiag(H H^H)^2)
                + (2/(3 pi)) (1 - 1/pi)
                  (3 tr(diag(H H^H)^2) - 2 sum h^4) ] (snr/M)^2.

    Written out directly; agrees with mi_expansion_perfect_csi applied
    to qpsk_iid to full precision, which the tests enforce.
    """
    H = np.atleast_2d(np.asarray(H, dtype=complex))
    if total_power <= 0:
        raise ValueError("total_power must be positive")
    M = H.shape[1]
    G = H @ H.conj().T
    nd = nondiag(G)
    dg = np.diag(G).real
    hsum = float(np.sum(H.real**4) + np.sum(H.imag**4))
    quad = (2.0 / np.pi**2) * float(np.trace(nd @ nd).real) + (2.0 / (3.0 * np.pi)) * (
        1.0 - 1.0 / np.pi
    ) * (3.0 * float(np.sum(dg**2)) - 2.0 * hsum)
    return QuadraticExpansion(
        0.0, (2.0 / np.pi) * float(np.trace(G).real) / M, quad / M**2, "snr"
    )


def ergodic_capacity_1bit(n_rx, n_tx):
    """Ergodic second-order capacity with one-bit outputs, i.i.d. Rayleigh.

    Per unit snr = P_Tr/sigma2:

        C = N (2/pi) snr - N (N + (pi-1) M - 1) / (2M) ((2/pi) snr)^2.
    """
    N, M = _check_dims(n_rx, n_tx)
    return QuadraticExpansion(
        constant=0.0,
        linear=N * 2.0 / np.pi,
        quadratic=N * (N + (np.pi - 1.0) * M - 1.0) / (2.0 * M) * (2.0 / np.pi) ** 2,
        rho_kind="snr",
    )


def ergodic_capacity_unquantized(n_rx, n_tx):
    """Ergodic second-order capacity without quantization, i.i.d. Rayleigh.

        C = N snr - N (N + M) / (2M) snr^2.
    """
    N, M = _check_dims(n_rx, n_tx)
    return QuadraticExpansion(
        constant=0.0,
        linear=float(N),
        quadratic=N * (N + M) / (2.0 * M),
        rho_kind="snr",
    )


def _check_dims(n_rx, n_tx):
    # fractional effective array sizes from dimension_tradeoff are fine
    N = float(n_rx)
    M = float(n_tx)
    if N <= 0 or M <= 0:
        raise ValueError("antenna counts must be positive")
    return N, M


def dimension_tradeoff(n_rx, n_tx):
    """Array sizes a one-bit system needs to match an ideal (N, M) system.

    Matching both expansion coefficients of the ergodic capacities gives

        N' = (pi/2) N,     M' = M (pi N - 2) / (pi N - (pi - 2) M),

    valid away from the singular ratio pi N = (pi - 2) M.
    """
    N, M = _check_dims(n_rx, n_tx)
    den = np.pi * N - (np.pi - 2.0) * M
    if abs(den) <= 1e-12 * (np.pi * N + (np.pi - 2.0) * M):
        raise ValueError("singular dimension ratio: pi N = (pi - 2) M")
    return (np.pi / 2.0) * N, M * (np.pi * N - 2.0) / den


class ChannelSecondMomentOperator:
    """Conditional second moment map x -> E[H x x^H H^H | x].

    Abstracts the channel statistics needed by the statistical-CSI
    expansion; `dim_out` is the receive dimension N.
    """

    def __init__(self, dim_out, per_input):
        self.dim_out = int(dim_out)
        self._per_input = per_input

    def __call__(self, x):
        out = np.atleast_2d(np.asarray(self._per_input(np.asarray(x, dtype=complex))))
        if out.shape != (self.dim_out, self.dim_out):
            raise ValueError("operator output has shape %s" % (out.shape,))
        if np.max(np.abs(out - out.conj().T)) > 1e-10 * max(1.0, np.max(np.abs(out))):
            raise ValueError("conditional second moment must be Hermitian")
        return out

    def averaged(self, d):
        """E over x ~ d of the conditional second moment."""
        acc = np.zeros((self.dim_out, self.dim_out), dtype=complex)
        for x, p in zip(d.points, d.probs):
            acc += p * self(x)
        return acc


def block_siso_operator(block_len):
    """Second-moment operator of a block-constant scalar Rayleigh channel.

    Over a coherence block of length T the channel is h I_T with
    E|h|^2 = 1, so E[H x x^H H^H | x] = x x^H.
    """
    if block_len < 1:
        raise ValueError("block length must be at least 1")
    return ChannelSecondMomentOperator(block_len, lambda x: np.outer(x, x.conj()))


def mi_expansion_statistical_csi(d, operator):
    """Expansion when only the channel law is known to the receiver.

    The linear term vanishes; with rho = 1/sigma2 the rate is

        I = (1/2) ((2/pi))^2 tr{ E_x[ nondiag(E[Hxx^H H^H|x])^2 ]
                                 - nondiag(E[H C_x H^H])^2 } rho^2 + o(rho^2).

    Input must be zero mean and proper.
    """
    _require_proper(d)
    m = cst.moments(d)
    _require_zero_mean(m)
    avg = operator.averaged(d)
    acc = 0.0
    for x, p in zip(d.points, d.probs):
        nd = nondiag(operator(x))
        acc += p * float(np.trace(nd @ nd).real)
    nd_avg = nondiag(avg)
    coeff = 0.5 * (2.0 / np.pi) ** 2 * (acc - float(np.trace(nd_avg @ nd_avg).real))
    return QuadraticExpansion(0.0, 0.0, -coeff, "inv_noise")


def iid_block_mimo_expansions(n_rx, block_len, total_power=1.0):
    """Statistical-CSI expansions for i.i.d. block Rayleigh MIMO channels.

    N' receive antennas, coherence blocks of length T, constant-modulus
    inputs of power P per symbol.  Per unit snr = P/sigma2 the quadratic
    rate terms per block are

        one-bit:      (N'/2) (2/pi)^2 T (T - 1) snr^2
        unquantized:  (N'/2) T^2 snr^2

    (linear terms vanish without receiver channel knowledge); returned
    as a (quantized, unquantized) pair.
    """
    if n_rx < 1 or block_len < 1:
        raise ValueError("dimensions must be at least 1")
    if total_power <= 0:
        raise ValueError("total_power must be positive")
    T = float(block_len)
    quant = QuadraticExpansion(
        0.0, 0.0, -(n_rx / 2.0) * (2.0 / np.pi) ** 2 * T * (T - 1.0), "snr"
    )
    ideal = QuadraticExpansion(0.0, 0.0, -(n_rx / 2.0) * T**2, "snr")
    return quant, ideal
