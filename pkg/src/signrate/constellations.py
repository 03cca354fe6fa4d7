"""Finite input distributions on C^M and their split-view moments."""

import json
from dataclasses import dataclass

import numpy as np

_PROB_TOL = 1e-12
_MERGE_TOL = 1e-12
_QPSK_MAX_DIM = 10


class DiscreteInputDistribution:
    """Probability distribution with finite support on C^M.

    Parameters
    ----------
    points : array_like, shape (K, M)
        Support points, one complex row vector per point.
    probs : array_like, shape (K,)
        Probabilities; nonnegative, summing to 1 within 1e-12.
    """

    def __init__(self, points, probs):
        points = np.atleast_2d(np.asarray(points, dtype=complex))
        probs = np.asarray(probs, dtype=float).ravel()
        if points.shape[0] != probs.size:
            raise ValueError(
                "got %d points but %d probabilities" % (points.shape[0], probs.size)
            )
        if not np.all(np.isfinite(points.view(float))):
            raise ValueError("support points must be finite")
        if np.any(probs < 0):
            raise ValueError("probabilities must be nonnegative")
        if abs(probs.sum() - 1.0) > _PROB_TOL:
            raise ValueError("probabilities sum to %.17g, not 1" % probs.sum())
        self.points = points
        self.probs = probs

    @property
    def dim(self):
        return self.points.shape[1]

    @property
    def size(self):
        return self.points.shape[0]

    def scaled(self, factor):
        """Distribution of factor * x."""
        return DiscreteInputDistribution(self.points * factor, self.probs)

    def to_json_dict(self):
        pts = [[[float(z.real), float(z.imag)] for z in row] for row in self.points]
        return {"dim": self.dim, "points": pts, "probs": self.probs.tolist()}

    @classmethod
    def from_json_dict(cls, obj):
        """Build from {"dim": M, "points": [...], "probs": [...]}.

        Each point may be given as M [re, im] pairs, a flat list of 2M
        reals, or (for M = 1) a single [re, im] pair.
        """
        dim = int(obj["dim"])
        raw = obj["points"]
        rows = []
        for entry in raw:
            arr = np.asarray(entry, dtype=float)
            if arr.shape == (dim, 2):
                rows.append(arr[:, 0] + 1j * arr[:, 1])
            elif arr.shape == (2 * dim,):
                rows.append(arr[0::2] + 1j * arr[1::2])
            elif dim == 1 and arr.shape == (2,):
                rows.append(np.array([arr[0] + 1j * arr[1]]))
            else:
                raise ValueError("cannot interpret point %r for dim %d" % (entry, dim))
        return cls(np.array(rows), obj["probs"])

    @classmethod
    def from_json_file(cls, path):
        with open(path) as fh:
            return cls.from_json_dict(json.load(fh))


@dataclass(frozen=True)
class MomentSummary:
    """Split-view moments of a finite input distribution.

    mean              E[x], complex (M,)
    covariance        E[x x^H] - mean mean^H, complex (M, M)
    pseudo_covariance E[x x^T] - mean mean^T, complex (M, M)
    third_circ        E[x o x o x], component-wise third moments packed as
                      E[x_R^3] + j E[x_I^3], complex (M,)
    fourth_split_norm E[||x||_4^4], sum of fourth powers over all real
                      and imaginary components
    kurtosis          raw-moment kurtosis E[x_c^4]/E[x_c^2]^2 - 3 per real
                      component, split order (R1, I1, R2, I2, ...), (2M,)
    """

    mean: np.ndarray
    covariance: np.ndarray
    pseudo_covariance: np.ndarray
    third_circ: np.ndarray
    fourth_split_norm: float
    kurtosis: np.ndarray


def qpsk_iid(dim, total_power):
    """I.i.d. QPSK input on C^dim with total transmit power `total_power`.

    The 4^dim equiprobable points have components sqrt(P/dim) e^{j pi/4}
    times a fourth root of unity, so each real component carries power
    P/(2 dim) and has kurtosis -2.
    """
    if not 1 <= dim <= _QPSK_MAX_DIM:
        raise ValueError("dim must be in 1..%d" % _QPSK_MAX_DIM)
    if total_power <= 0:
        raise ValueError("total_power must be positive")
    a = np.sqrt(total_power / (2.0 * dim))
    symbols = np.array([a + 1j * a, -a + 1j * a, -a - 1j * a, a - 1j * a])
    grids = np.meshgrid(*([symbols] * dim), indexing="ij")
    points = np.stack([g.ravel() for g in grids], axis=1)
    probs = np.full(points.shape[0], 4.0 ** (-dim))
    return DiscreteInputDistribution(points, probs)


def moments(d):
    """Moment summary of a discrete input distribution."""
    p = d.probs
    x = d.points
    mean = p @ x
    exxh = (x.T * p) @ x.conj()
    exxt = (x.T * p) @ x
    cov = exxh - np.outer(mean, mean.conj())
    pcov = exxt - np.outer(mean, mean)
    third = p @ (x.real**3 + 1j * x.imag**3)
    fourth = float(p @ np.sum(x.real**4 + x.imag**4, axis=1))
    m2 = np.empty(2 * d.dim)
    m4 = np.empty(2 * d.dim)
    m2[0::2] = p @ x.real**2
    m2[1::2] = p @ x.imag**2
    m4[0::2] = p @ x.real**4
    m4[1::2] = p @ x.imag**4
    # constant components have m4 = m2^2, the two-valued symmetric limit
    kurt = np.where(m2 > 0, m4 / np.where(m2 > 0, m2, 1.0) ** 2 - 3.0, -2.0)
    return MomentSummary(mean, cov, pcov, third, fourth, kurt)


def is_proper(d, tol=1e-9):
    """Whether the pseudo-covariance vanishes relative to the power scale.

    The scale is the total second moment E||x||^2, not just the trace of
    the covariance, so that degenerate inputs (point masses, conditional
    laws of deterministic maps) tolerate rounding noise in the products.
    """
    m = moments(d)
    power = float(np.trace(m.covariance).real) + float(np.sum(np.abs(m.mean) ** 2))
    scale = power + np.finfo(float).tiny
    return bool(np.max(np.abs(m.pseudo_covariance)) <= tol * scale)


def pushforward(d, H):
    """Distribution of H x for x ~ d, with coincident images merged.

    Image points whose coordinates agree within 1e-12 are summed into a
    single support point (probability-weighted representative).
    """
    H = np.atleast_2d(np.asarray(H, dtype=complex))
    if H.shape[1] != d.dim:
        raise ValueError("H has %d columns, expected %d" % (H.shape[1], d.dim))
    img = d.points @ H.T
    keys = np.round(
        np.concatenate([img.real, img.imag], axis=1) / _MERGE_TOL
    ).astype(np.int64)
    uniq, inverse = np.unique(keys, axis=0, return_inverse=True)
    k = uniq.shape[0]
    probs = np.zeros(k)
    np.add.at(probs, inverse, d.probs)
    pts = np.zeros((k, H.shape[0]), dtype=complex)
    np.add.at(pts, inverse, img * d.probs[:, None])
    pts /= probs[:, None]
    return DiscreteInputDistribution(pts, probs)
