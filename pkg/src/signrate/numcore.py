"""Numerical core: split-view algebra, Gaussian special functions, quadrature.

Complex length-N vectors are handled throughout the package in two
equivalent ways: as complex numpy arrays, and as "split" real vectors of
length 2N interleaving real and imaginary parts,

    split(a) = (Re a_1, Im a_1, Re a_2, Im a_2, ...).

All component-wise norms and the circ product below are defined on the
split view.  Rates and entropies are computed internally in nats; use
`convert_units` at the presentation boundary.
"""

import numpy as np
from scipy import special

LN2 = np.log(2.0)

_UNITS = ("nats", "bits")

# log Phi values below this are floored so sums of many factors stay finite
_LOG_PHI_FLOOR = -746.0


def convert_units(value_nats, units):
    """Convert a value in nats to the requested units ('nats' or 'bits')."""
    if units not in _UNITS:
        raise ValueError("units must be 'nats' or 'bits', got %r" % (units,))
    if units == "bits":
        return value_nats / LN2
    return value_nats


def split(a):
    """Return the real split view of a complex vector.

    Parameters
    ----------
    a : array_like, shape (N,)
        Complex vector.

    Returns
    -------
    ndarray, shape (2N,)
        Interleaved (Re a_1, Im a_1, Re a_2, Im a_2, ...).
    """
    a = np.asarray(a, dtype=complex).ravel()
    out = np.empty(2 * a.size)
    out[0::2] = a.real
    out[1::2] = a.imag
    return out


def unsplit(v):
    """Inverse of `split`: real length-2N vector back to complex length N."""
    v = np.asarray(v, dtype=float).ravel()
    if v.size % 2:
        raise ValueError("split vector must have even length")
    return v[0::2] + 1j * v[1::2]


def circ_product(a, b):
    """Component-wise circ product of two complex vectors.

    [a o b]_i = Re(a_i) Re(b_i) + j Im(a_i) Im(b_i); the real and
    imaginary parts multiply independently.
    """
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    if a.shape != b.shape:
        raise ValueError("shape mismatch: %s vs %s" % (a.shape, b.shape))
    return a.real * b.real + 1j * a.imag * b.imag


def split_pnorm(a, p):
    """Sum of |.|^p over the real and imaginary components of `a`.

    This is ||a||_p^p on the split view, e.g. split_pnorm(a, 2) is the
    squared Euclidean norm and split_pnorm(a, 4) the fourth-power sum
    entering the quadratic rate terms.
    """
    if p <= 0:
        raise ValueError("p must be positive")
    v = np.asarray(a, dtype=complex)
    return float(np.sum(np.abs(v.real) ** p) + np.sum(np.abs(v.imag) ** p))


def split_component_sum(a):
    """Signed sum of all real and imaginary components of `a`.

    Companion to `split_pnorm` for odd-order terms where the sign of each
    component matters (no absolute value is taken).
    """
    v = np.asarray(a, dtype=complex)
    return float(np.sum(v.real) + np.sum(v.imag))


def diagpart(A):
    """Diagonal part of a square matrix, as a matrix of the same shape."""
    A = np.asarray(A)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ValueError("expected a square matrix, got shape %s" % (A.shape,))
    return np.diag(np.diag(A))


def nondiag(A):
    """Off-diagonal part of a square matrix: A - diagpart(A)."""
    return np.asarray(A) - diagpart(A)


def std_normal_cdf(z):
    """Standard normal CDF Phi(z), accurate in both tails."""
    return special.ndtr(z)


def log_std_normal_cdf(z):
    """log Phi(z), floored at a large negative constant to keep sums finite."""
    return np.maximum(special.log_ndtr(z), _LOG_PHI_FLOOR)


def binary_entropy(p, units="nats"):
    """Binary entropy of a probability p, with the 0 log 0 = 0 convention."""
    p = np.asarray(p, dtype=float)
    if np.any(p < 0) or np.any(p > 1):
        raise ValueError("p must lie in [0, 1]")
    out = np.zeros_like(p)
    for q in (p, 1.0 - p):
        mask = q > 0
        out = out - np.where(mask, q * np.log(np.where(mask, q, 1.0)), 0.0)
    return convert_units(out if out.ndim else float(out), units)


_GH_CACHE = {}


def gauss_hermite(nodes):
    """Unit-variance Gauss-Hermite rule: points t_i and weights w_i.

    sum_i w_i f(t_i) approximates E[f(U)] for U ~ N(0,1); exact for
    polynomials of degree < 2*nodes.  Cached per node count.
    """
    if nodes < 1:
        raise ValueError("need at least one node")
    if nodes not in _GH_CACHE:
        # scipy's rule stays stable at large node counts where the
        # numpy recurrence overflows
        x, w = special.roots_hermite(nodes)
        _GH_CACHE[nodes] = (x * np.sqrt(2.0), w / np.sqrt(np.pi))
    return _GH_CACHE[nodes]


def gaussian_expectation(f, nodes=96):
    """E[f(U)] for U ~ N(0,1) by Gauss-Hermite quadrature.

    `f` must accept a vector of evaluation points and return values of the
    same shape (or a stack whose last axis runs over points).
    """
    t, w = gauss_hermite(nodes)
    return np.asarray(f(t)) @ w


def gaussian_expectation_adaptive(f, nodes=96, cap=512, tol=1e-12):
    """E[f(U)] with node doubling until successive estimates agree.

    Starts at `nodes`, doubles up to `cap`, stops when two consecutive
    estimates differ by less than `tol` (absolute).  Returns the last
    estimate either way; the cap keeps cost bounded for hard integrands.
    """
    est = gaussian_expectation(f, nodes)
    n = nodes
    while n < cap:
        n = min(2 * n, cap)
        new = gaussian_expectation(f, n)
        if np.all(np.abs(new - est) < tol):
            return new
        est = new
    return est
