"""Independent verification suite for the expansion building blocks.

Everything here re-derives quantities the expansions rely on by a
different route: sign-vector sums by enumeration, orthant moments by
Monte Carlo, and the derivatives of the quantized output probability by
finite differences against their closed forms.  The CLI `verify`
subcommand runs the whole battery; the checks are also convenient
building blocks for the test suite.
"""

from itertools import combinations

import numpy as np

from .numcore import nondiag, std_normal_cdf

# density exp(-||y||^2)/pi^(N/2) restricted to the positive orthant:
# component variance 1/2, orthant mass 2^-N


def sign_quadratic_identity(A):
    """(enumerated, closed) for 2^-N sum_r r^T A r = tr(A)."""
    A = np.asarray(A, dtype=float)
    n = A.shape[0]
    acc = 0.0
    for idx in range(2**n):
        r = 1.0 - 2.0 * ((idx >> np.arange(n)) & 1)
        acc += r @ A @ r
    return acc / 2**n, float(np.trace(A))


def sign_quartic_identity(A, B):
    """(enumerated, closed) for the fourth-order sign sum.

    2^-N sum_r (r^T A r)(r^T B r) = tr(A nondiag(B + B^T)) + tr(A) tr(B).
    """
    A = np.asarray(A, dtype=float)
    B = np.asarray(B, dtype=float)
    n = A.shape[0]
    acc = 0.0
    for idx in range(2**n):
        r = 1.0 - 2.0 * ((idx >> np.arange(n)) & 1)
        acc += (r @ A @ r) * (r @ B @ r)
    closed = float(np.trace(A @ nondiag(B + B.T)) + np.trace(A) * np.trace(B))
    return acc / 2**n, closed


def orthant_moment_closed(n_dim, i, j):
    """Closed form of the positive-orthant moment of y_i y_j.

    1/(2 2^N) on the diagonal, 1/(pi 2^N) off it.
    """
    if i == j:
        return 1.0 / (2.0 * 2.0**n_dim)
    return 1.0 / (np.pi * 2.0**n_dim)


def orthant_moment_mc(n_dim, i, j, samples, seed, chunk=10**6):
    """(estimate, stderr) of the orthant moment by direct Monte Carlo."""
    rng = np.random.Generator(np.random.Philox(key=seed))
    total = 0.0
    total_sq = 0.0
    done = 0
    while done < samples:
        m = min(chunk, samples - done)
        y = rng.normal(0.0, np.sqrt(0.5), (m, n_dim))
        vals = y[:, i] * y[:, j] * np.all(y > 0, axis=1)
        total += float(vals.sum())
        total_sq += float((vals**2).sum())
        done += m
    mean = total / samples
    var = total_sq / samples - mean**2
    return mean, np.sqrt(max(var, 0.0) / samples)


def quantizer_output_probability(points, probs, r, eps):
    """P_eps(r) for the real channel y = eps x + noise, noise var 1/2.

    P(r_i branch) = Phi(sqrt(2) eps r_i x_i), averaged over the input law.
    """
    points = np.atleast_2d(np.asarray(points, dtype=float))
    r = np.asarray(r, dtype=float).ravel()
    per_point = np.prod(std_normal_cdf(np.sqrt(2.0) * eps * points * r), axis=1)
    return float(np.asarray(probs, dtype=float) @ per_point)


def output_probability_derivatives(points, probs, r):
    """Closed-form derivatives of P_eps(r) at eps = 0.

    Returns (P0, P0', P0'', P0''') with

        P0    = 2^-N
        P0'   = 2^-N (2/sqrt(pi)) r^T E[x]
        P0''  = 2^-N (4/pi) r^T nondiag(E[x x^T]) r
        P0''' = 2^-N [ -(4/sqrt(pi)) r^T E[x o x o x]
                       + (48/pi^(3/2)) sum_{i<j<l} r_i r_j r_l E[x_i x_j x_l] ].
    """
    x = np.atleast_2d(np.asarray(points, dtype=float))
    p = np.asarray(probs, dtype=float)
    r = np.asarray(r, dtype=float).ravel()
    n = x.shape[1]
    mean = p @ x
    second = (x.T * p) @ x
    third_diag = p @ x**3
    base = 2.0**-n
    d1 = base * (2.0 / np.sqrt(np.pi)) * float(r @ mean)
    d2 = base * (4.0 / np.pi) * float(r @ nondiag(second) @ r)
    triple = 0.0
    for i, j, l in combinations(range(n), 3):
        triple += r[i] * r[j] * r[l] * float(p @ (x[:, i] * x[:, j] * x[:, l]))
    d3 = base * (
        -(4.0 / np.sqrt(np.pi)) * float(r @ third_diag)
        + (48.0 / np.pi**1.5) * triple
    )
    return base, d1, d2, d3


def central_differences(f, h):
    """(f', f'', f''') at 0 by central differences with step h."""
    fm2, fm1, f0, fp1, fp2 = (f(k * h) for k in (-2, -1, 0, 1, 2))
    d1 = (fp1 - fm1) / (2.0 * h)
    d2 = (fp1 - 2.0 * f0 + fm1) / h**2
    d3 = (fp2 - 2.0 * fp1 + 2.0 * fm1 - fm2) / (2.0 * h**3)
    return d1, d2, d3


def _rel_err(got, want, floor=1e-12):
    return abs(got - want) / max(abs(want), floor)


def run_verify(seed=0, mc_samples=10**7, fd_step=1e-3):
    """Run the whole battery; returns a list of (name, passed, detail).

    Covers the sign-vector identities for N <= 6, the orthant moments
    against Monte Carlo, the finite-difference derivative checks of the
    output probability, and remainder-order checks of the entropy and
    mutual-information expansions against enumeration.
    """
    from . import blockfading, channel, constellations, lowsnr

    rng = np.random.Generator(np.random.Philox(key=seed))
    checks = []

    worst = 0.0
    for n in range(2, 7):
        A = rng.normal(size=(n, n))
        B = rng.normal(size=(n, n))
        got, want = sign_quadratic_identity(A)
        worst = max(worst, abs(got - want))
        got, want = sign_quartic_identity(A, B)
        worst = max(worst, abs(got - want))
    checks.append(("sign-vector trace identities (N=2..6)", worst <= 1e-12,
                   "max abs deviation %.3g" % worst))

    worst = 0.0
    for n_dim, i, j in ((2, 0, 0), (2, 0, 1), (3, 1, 2)):
        est, se = orthant_moment_mc(n_dim, i, j, mc_samples, seed + 17 * (i + 3 * j + n_dim))
        dev = abs(est - orthant_moment_closed(n_dim, i, j)) / max(se, 1e-300)
        worst = max(worst, dev)
    checks.append(("orthant moments vs Monte Carlo", worst <= 4.0,
                   "worst deviation %.2f sigma" % worst))

    pts = rng.normal(size=(5, 3)) + 0.3
    pr = rng.dirichlet(np.ones(5))
    r = np.array([1.0, -1.0, 1.0])
    p0, c1, c2, c3 = output_probability_derivatives(pts, pr, r)
    d1, d2, d3 = central_differences(
        lambda e: quantizer_output_probability(pts, pr, r, e), fd_step
    )
    worst = max(_rel_err(d1, c1), _rel_err(d2, c2), _rel_err(d3, c3))
    checks.append(("output probability derivatives vs finite differences",
                   worst <= 1e-4, "worst relative error %.3g" % worst))

    # two mixed components with nonzero mean, cross-covariance and third
    # moments, so every term of the expansion is exercised; a linear map
    # of a proper law stays proper
    base = np.array([0.9 + 0.6j, 0.9 - 0.6j, -0.3 + 0.6j, -0.3 - 0.6j])
    mix = np.array([[1.0, 0.4 + 0.1j], [0.2 - 0.3j, 1.0]])
    probe = constellations.DiscreteInputDistribution(
        [mix @ np.array([a, b]) for a in base for b in base], np.full(16, 1.0 / 16)
    )
    exp = lowsnr.entropy_expansion(probe)
    res = [
        abs(channel.exact_sign_entropy(probe, e) - exp.evaluate(e**2))
        for e in (0.1, 0.05)
    ]
    ratio = res[0] / res[1]
    checks.append(("entropy expansion remainder is o(eps^4)",
                   32.0 <= ratio <= 128.0, "residual ratio %.1f" % ratio))

    H = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
    d = constellations.qpsk_iid(2, 1.0)
    exp = lowsnr.mi_expansion_perfect_csi(H, d)
    res = [
        abs(channel.exact_mi_perfect_csi(H, d, 1.0 / s) - exp.evaluate(s))
        for s in (0.1, 0.05)
    ]
    ratio = res[0] / res[1]
    checks.append(("mutual information expansion remainder is o(snr^2)",
                   4.0 <= ratio <= 16.0, "residual ratio %.1f" % ratio))

    worst = 0.0
    for s in (0.1, 1.0, 10.0):
        worst = max(worst, abs(blockfading.qpsk_rate(2, s) - blockfading.qpsk_rate_T2_closed(s)))
        worst = max(worst, abs(blockfading.qpsk_rate(3, s) - blockfading.qpsk_rate_T3_closed(s)))
    checks.append(("block rate closed forms vs quadrature", worst <= 1e-6,
                   "max abs deviation %.3g nats" % worst))

    return checks
