"""Rates of the one-bit block Rayleigh-fading SISO channel, no CSI.

The channel stays constant over coherence blocks of length T and is
unknown to both sides.  With i.i.d. QPSK inputs the block transition
probabilities reduce to one-dimensional Gaussian integrals over sign
count classes, which makes the exact rate computable for any T; T = 2
and T = 3 additionally have arcsine closed forms.  Scalar coherent
baselines (one-bit AWGN, Shannon, spectral vs energy efficiency) live
here too.
"""

import numpy as np
from scipy.special import comb

from .numcore import (
    LN2,
    binary_entropy,
    convert_units,
    gauss_hermite,
    gaussian_expectation_adaptive,
    log_std_normal_cdf,
    std_normal_cdf,
)

_DEFAULT_NODES = 96
_NODE_CAP = 512


def _check_snr(snr):
    if snr < 0:
        raise ValueError("snr must be nonnegative")


def orthant_factor_count(block_len, minus_count, snr, nodes=_DEFAULT_NODES):
    """Block transition factor for a sign class.

    q_k = Int phi(u) Phi(-sqrt(snr) u)^k Phi(sqrt(snr) u)^(T-k) du,
    the probability (per real branch) of any fixed pattern with k minus
    signs when the transmitted block is the all-plus representative.
    """
    T = int(block_len)
    k = int(minus_count)
    if T < 1:
        raise ValueError("block length must be at least 1")
    if not 0 <= k <= T:
        raise ValueError("minus count must lie in 0..T")
    _check_snr(snr)
    root = np.sqrt(snr)

    def f(u):
        return np.exp(
            k * log_std_normal_cdf(-root * u) + (T - k) * log_std_normal_cdf(root * u)
        )

    return float(gaussian_expectation_adaptive(f, nodes=nodes, cap=_NODE_CAP))


def orthant_factor(signs, snr, nodes=_DEFAULT_NODES):
    """Same as `orthant_factor_count`, keyed by an explicit sign pattern."""
    signs = np.asarray(signs, dtype=float).ravel()
    if not np.all(np.abs(signs) == 1.0):
        raise ValueError("sign pattern entries must be +-1")
    return orthant_factor_count(signs.size, int(np.sum(signs < 0)), snr, nodes)


def qpsk_rate(block_len, snr, units="nats", nodes=_DEFAULT_NODES):
    """Achievable rate of i.i.d. QPSK over one coherence block, exact.

    R = 2 sum_k binom(T,k) q_k log(2^T q_k) per block; the two real
    branches contribute identically.  Zero at snr = 0 and for T = 1,
    approaching 2T bits as snr grows.
    """
    T = int(block_len)
    if T < 1:
        raise ValueError("block length must be at least 1")
    _check_snr(snr)
    total = 0.0
    for k in range(T + 1):
        q = orthant_factor_count(T, k, snr, nodes)
        if q > 0.0:
            total += comb(T, k, exact=True) * q * (T * LN2 + np.log(q))
    return convert_units(2.0 * total, units)


def _xlnx_pair(a):
    # (1+a) ln(1+a) + (1-a) ln(1-a), a in [0, 1], with 0 ln 0 = 0
    terms = 0.0
    for s in (1.0 + a, 1.0 - a):
        if s > 0.0:
            terms += s * np.log(s)
    return terms


def _clamped_arcsin_arg(snr, tol=1e-12):
    _check_snr(snr)
    v = snr / (1.0 + snr)
    if v > 1.0 + tol or v < -1.0 - tol:
        raise ValueError("arcsine argument %r out of range" % (v,))
    return min(1.0, max(-1.0, v))


def qpsk_rate_T2_closed(snr, units="nats"):
    """Closed form of the T = 2 block rate.

    With A = (2/pi) arcsin(snr/(1+snr)),
    R = (1+A) log(1+A) + (1-A) log(1-A), reaching 2 bits as snr -> inf.
    """
    A = (2.0 / np.pi) * np.arcsin(_clamped_arcsin_arg(snr))
    return convert_units(_xlnx_pair(A), units)


def qpsk_rate_T3_closed(snr, units="nats"):
    """Closed form of the T = 3 block rate.

    With a = arcsin(snr/(1+snr)),
    R = (1/2)(1 + (6/pi) a) log(1 + (6/pi) a)
        + (3/2)(1 - (2/pi) a) log(1 - (2/pi) a),
    reaching 4 bits as snr -> inf; the small-snr quadratic term is
    (12/pi^2) snr^2 nats.
    """
    a = np.arcsin(_clamped_arcsin_arg(snr))
    big = 1.0 + (6.0 / np.pi) * a
    small = 1.0 - (2.0 / np.pi) * a
    total = 0.5 * big * np.log(big)
    if small > 0.0:
        total += 1.5 * small * np.log(small)
    return convert_units(total, units)


def coherent_rayleigh_qpsk(snr, units="nats", nodes=_DEFAULT_NODES):
    """Per-symbol QPSK rate with perfect receiver CSI, Rayleigh fading.

    C = 2 E_u[ ln2 - H(Phi(sqrt(snr) u)) ] nats for u ~ N(0,1); the
    infinite-coherence benchmark for the block rates.
    """
    _check_snr(snr)
    root = np.sqrt(snr)

    def f(u):
        return LN2 - binary_entropy(std_normal_cdf(root * u), "nats")

    return convert_units(2.0 * float(gaussian_expectation_adaptive(f, nodes=nodes, cap=_NODE_CAP)), units)


def awgn_1bit_capacity(snr, units="nats"):
    """Capacity of the scalar AWGN channel with one-bit output quantization.

    C = 2 (ln2 - H(Phi(sqrt(snr)))) nats, achieved by QPSK.
    """
    _check_snr(snr)
    return convert_units(2.0 * (LN2 - binary_entropy(std_normal_cdf(np.sqrt(snr)), "nats")), units)


def shannon_capacity(snr, units="nats"):
    """Unquantized scalar AWGN capacity log(1 + snr)."""
    _check_snr(snr)
    return convert_units(float(np.log1p(snr)), units)


_EBN0_LIMIT_DB = {
    "one_bit": 10.0 * np.log10(LN2 * np.pi / 2.0),
    "ideal": 10.0 * np.log10(LN2),
}


def se_ee_point(snr, system):
    """(capacity bits, Eb/N0 in dB) for the chosen scalar system.

    `system` is "one_bit" or "ideal".  At snr = 0 the limiting energy
    per bit is returned: pi/2 ln2 for one-bit outputs, ln2 without
    quantization (-1.59 dB).
    """
    if system not in _EBN0_LIMIT_DB:
        raise ValueError("system must be 'one_bit' or 'ideal'")
    _check_snr(snr)
    if snr == 0.0:
        return 0.0, _EBN0_LIMIT_DB[system]
    cap = awgn_1bit_capacity if system == "one_bit" else shannon_capacity
    c_bits = cap(snr, "bits")
    return c_bits, 10.0 * np.log10(snr / c_bits)


def snr_at_capacity(target_bits, system, tol=1e-10):
    """snr at which the chosen scalar system reaches `target_bits`, by bisection."""
    if system not in _EBN0_LIMIT_DB:
        raise ValueError("system must be 'one_bit' or 'ideal'")
    cap = awgn_1bit_capacity if system == "one_bit" else shannon_capacity
    if system == "one_bit" and target_bits >= 2.0:
        raise ValueError("one-bit capacity saturates below 2 bits")
    lo, hi = 0.0, 1.0
    while cap(hi, "bits") < target_bits:
        hi *= 2.0
        if hi > 1e12:
            raise ValueError("target capacity unreachable")
    while cap(hi, "bits") - cap(lo, "bits") > tol:
        mid = 0.5 * (lo + hi)
        if cap(mid, "bits") < target_bits:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def training_rate(block_len, training_len, snr, units="nats", nodes=_DEFAULT_NODES):
    """Rate left to a scheme that spends `training_len` symbols on pilots.

    C(T) - C(T_T) per block; requires 1 <= T_T < T.  T_T = 1 costs
    nothing since the single-symbol block carries no information anyway.
    """
    T, TT = int(block_len), int(training_len)
    if not 1 <= TT < T:
        raise ValueError("training length must satisfy 1 <= T_T < T")
    return qpsk_rate(T, snr, units, nodes) - qpsk_rate(TT, snr, units, nodes)


def exact_stat_csi_mi_T2(snr, units="nats", nodes=_DEFAULT_NODES):
    """T = 2 block mutual information by direct two-dimensional quadrature.

    Independent reference for the closed forms: the channel h = (u+jv)/sqrt(2)
    is integrated over the (u, v) Gaussian pair, the 16 input blocks and
    16 sign patterns are enumerated, and I(x; r) is assembled from the
    joint law.  The output marginal comes out uniform, as it must.
    """
    _check_snr(snr)
    T = 2
    t, w = gauss_hermite(nodes)
    u = np.repeat(t, nodes)
    v = np.tile(t, nodes)
    w2 = np.repeat(w, nodes) * np.tile(w, nodes)
    amp = np.sqrt(snr)
    phases = amp * np.exp(1j * (np.pi / 4.0 + np.pi / 2.0 * np.arange(4)))
    inputs = [(a, b) for a in phases for b in phases]
    n_pat = 4**T
    bits = ((np.arange(n_pat)[:, None] >> np.arange(2 * T - 1, -1, -1)) & 1).astype(float)
    signs = 2.0 * bits - 1.0  # (16, 4): r_{1R}, r_{1I}, r_{2R}, r_{2I}
    cond = np.empty((len(inputs), n_pat))
    for ix, x in enumerate(inputs):
        logs = []
        for xt in x:
            a = u * xt.real - v * xt.imag
            b = u * xt.imag + v * xt.real
            logs.append((log_std_normal_cdf(a), log_std_normal_cdf(-a)))
            logs.append((log_std_normal_cdf(b), log_std_normal_cdf(-b)))
        for ip in range(n_pat):
            acc = np.zeros_like(u)
            for comp in range(2 * T):
                acc += logs[comp][0] if signs[ip, comp] > 0 else logs[comp][1]
            cond[ix, ip] = float(w2 @ np.exp(acc))
    cond /= cond.sum(axis=1, keepdims=True)
    marginal = cond.mean(axis=0)
    mask = cond > 0
    mi = float(
        np.sum(np.where(mask, cond * (np.log(np.where(mask, cond, 1.0)) - np.log(marginal)), 0.0))
        / len(inputs)
    )
    return convert_units(mi, units)
