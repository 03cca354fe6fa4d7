"""Exact rates of the one-bit quantized Gaussian MIMO channel.

The receiver observes r = sign(Re/Im components of H x + noise) with
circularly symmetric complex Gaussian noise of variance sigma2 per
complex dimension (sigma2/2 per real component).  Everything here works
by enumerating the finite input support and all sign patterns, so the
results are exact up to floating point and serve as the reference the
low-SNR expansions are tested against.
"""

import numpy as np

from .numcore import log_std_normal_cdf

MAX_REAL_OUTPUTS = 24
MAX_SUPPORT = 4**10

_PMF_CHUNK = 10**7


class EnumerationCapError(Exception):
    """Requested enumeration exceeds the supported problem size."""


def sign_patterns(n_real):
    """All sign patterns in {-1,+1}^n_real as a (2^n, n) array."""
    if n_real < 1:
        raise ValueError("need at least one real output")
    if n_real > MAX_REAL_OUTPUTS:
        raise EnumerationCapError(
            "%d real outputs exceed the enumeration cap of %d"
            % (n_real, MAX_REAL_OUTPUTS)
        )
    idx = np.arange(2**n_real, dtype=np.int64)
    bits = (idx[:, None] >> np.arange(n_real - 1, -1, -1)) & 1
    return (2 * bits - 1).astype(float)


def _split_rows(z):
    # (K, N) complex -> (K, 2N) real, interleaved per column
    out = np.empty((z.shape[0], 2 * z.shape[1]))
    out[:, 0::2] = z.real
    out[:, 1::2] = z.imag
    return out


def _check_sizes(n_rx, support):
    if 2 * n_rx > MAX_REAL_OUTPUTS:
        raise EnumerationCapError(
            "2N = %d real outputs exceed the cap of %d" % (2 * n_rx, MAX_REAL_OUTPUTS)
        )
    if support > MAX_SUPPORT:
        raise EnumerationCapError(
            "support size %d exceeds the cap of %d" % (support, MAX_SUPPORT)
        )


def conditional_pmf_matrix(H, d, sigma2):
    """P(r | x) for every input point and sign pattern.

    Returns a (K, 4^N) matrix whose rows sum to 1; column order follows
    `sign_patterns(2N)`.  Factors over real components: each contributes
    Phi(r_c [Hx]_c / sqrt(sigma2/2)), accumulated in the log domain.
    """
    H = np.atleast_2d(np.asarray(H, dtype=complex))
    if sigma2 <= 0:
        raise ValueError("noise variance must be positive")
    if H.shape[1] != d.dim:
        raise ValueError("H has %d columns, input dimension is %d" % (H.shape[1], d.dim))
    _check_sizes(H.shape[0], d.size)
    scale = 1.0 / np.sqrt(sigma2 / 2.0)
    s = _split_rows(d.points @ H.T) * scale
    lp = log_std_normal_cdf(s)
    lm = log_std_normal_cdf(-s)
    patterns = sign_patterns(2 * H.shape[0])
    q = patterns.shape[0]
    out = np.empty((d.size, q))
    step = max(1, _PMF_CHUNK // max(1, d.size))
    for lo in range(0, q, step):
        blk = patterns[lo : lo + step]
        pos = 0.5 * (1.0 + blk)
        out[:, lo : lo + blk.shape[0]] = np.exp(lp @ pos.T + lm @ (1.0 - pos).T)
    return out


def cond_prob(r, x, H, sigma2):
    """Probability of one sign pattern r given the input vector x."""
    H = np.atleast_2d(np.asarray(H, dtype=complex))
    r = np.asarray(r, dtype=float).ravel()
    if r.size != 2 * H.shape[0]:
        raise ValueError("pattern has %d components, expected %d" % (r.size, 2 * H.shape[0]))
    if not np.all(np.abs(r) == 1.0):
        raise ValueError("sign pattern entries must be +-1")
    if sigma2 <= 0:
        raise ValueError("noise variance must be positive")
    x = np.asarray(x, dtype=complex).ravel()
    z = H @ x
    s = np.empty(2 * z.size)
    s[0::2] = z.real
    s[1::2] = z.imag
    return float(np.exp(np.sum(log_std_normal_cdf(r * s / np.sqrt(sigma2 / 2.0)))))


def output_pmf(H, d, sigma2):
    """Marginal pmf of the sign pattern, ordered like `sign_patterns(2N)`."""
    return d.probs @ conditional_pmf_matrix(H, d, sigma2)


def _xlogx(p):
    return np.where(p > 0, p * np.log(np.where(p > 0, p, 1.0)), 0.0)


def exact_mi_perfect_csi(H, d, sigma2, units="nats"):
    """Mutual information I(x; r) for a known channel, by enumeration.

    Computed as H(r) - H(r|x) over the full sign-pattern pmf; bounded by
    2N ln 2.
    """
    from .numcore import convert_units

    cond = conditional_pmf_matrix(H, d, sigma2)
    marginal = d.probs @ cond
    h_r = -float(np.sum(_xlogx(marginal)))
    h_r_given_x = -float(d.probs @ np.sum(_xlogx(cond), axis=1))
    return convert_units(h_r - h_r_given_x, units)


def exact_sign_entropy(d, epsilon, units="nats"):
    """Entropy of sign(epsilon x + noise), unit-variance complex noise.

    The channel matrix is the identity on the input dimension; `epsilon`
    scales the input.  Equals 2N ln 2 at epsilon = 0.
    """
    from .numcore import convert_units

    if epsilon < 0:
        raise ValueError("epsilon must be nonnegative")
    pmf = output_pmf(np.eye(d.dim), d.scaled(epsilon), 1.0)
    return convert_units(-float(np.sum(_xlogx(pmf))), units)


def mc_ergodic_mi(n_rx, n_tx, d, sigma2, draws, seed, units="nats"):
    """Monte-Carlo ergodic mutual information over i.i.d. Rayleigh channels.

    Draws `draws` channel matrices with CN(0,1) entries, evaluates the
    exact mutual information for each, and returns (mean, standard
    error).  Draw i uses a counter-based generator keyed by the (seed,
    draw index) pair, so the result is reproducible, independent of
    evaluation order, and distinct seeds share no draws.
    """
    from .numcore import convert_units

    if n_tx != d.dim:
        raise ValueError("input distribution has dim %d, expected %d" % (d.dim, n_tx))
    if draws < 2:
        raise ValueError("need at least two draws for a standard error")
    values = np.empty(draws)
    key_hi = (int(seed) & 0xFFFFFFFFFFFFFFFF) << 64
    for i in range(draws):
        rng = np.random.Generator(np.random.Philox(key=key_hi | i))
        H = rng.normal(0.0, np.sqrt(0.5), (n_rx, n_tx)) + 1j * rng.normal(
            0.0, np.sqrt(0.5), (n_rx, n_tx)
        )
        values[i] = exact_mi_perfect_csi(H, d, sigma2, "nats")
    mean = float(values.mean())
    stderr = float(values.std(ddof=1) / np.sqrt(draws))
    return convert_units(mean, units), convert_units(stderr, units)
