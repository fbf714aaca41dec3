#
#     This file is part of edgekit.
#
#     edgekit -- Edgeworth corrections for weighted sums of random vectors
#
#     edgekit is free software; you can redistribute it and/or
#     modify it under the terms of the GNU Lesser General Public
#     License as published by the Free Software Foundation; either
#     version 3 of the License, or (at your option) any later version.
#
#     edgekit is distributed in the hope that it will be useful,
#     but WITHOUT ANY WARRANTY; without even the implied warranty of
#     MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE.  See the GNU
#     Lesser General Public License for more details.
#
#     You should have received a copy of the GNU Lesser General Public
#     License along with edgekit; if not, write to the Free Software
#     Foundation, Inc., 51 Franklin Street, Fifth Floor, Boston, MA  02110-1301  USA
#
#

"""Weighted sums sum_j theta_j X_j: weights on the sphere, sampling and exact laws.

Boxes are closed: atoms of a discrete sum lying on the boundary (up to
``BOUNDARY_TOL``, which absorbs rounding of the partial sums) count as inside.
"""

from math import sqrt, fsum
import logging

import numpy as np
from scipy.stats import norm

from .measures import Box
from .errors import check_dimension, ConfigError

logger = logging.getLogger('edgekit')

SPHERE_TOL = 1e-12
BOUNDARY_TOL = 1e-12
MAX_EXACT_N = 26
MIN_SAMPLES = 1000
SAMPLE_CHUNK = 1 << 15


class ThetaVector:
    """Weights theta on the unit sphere S^(n-1).

    Parameters
    ----------
    weights : sequence of float
        sum_j theta_j^2 = 1 within 1e-12
    """
    def __init__(self, weights):
        self.weights = np.array(weights, dtype=float).ravel()
        if self.weights.size == 0:
            raise ValueError("theta needs at least one weight.")
        s = float(np.sum(self.weights**2))
        if abs(s - 1) > SPHERE_TOL:
            raise ValueError("theta is not on the unit sphere: sum theta_j^2 = %.17g." % s)
        self.weights.setflags(write=False)

    @property
    def n(self):
        return self.weights.size

    def __len__(self):
        return self.weights.size

    def __iter__(self):
        return iter(self.weights.tolist())

    def __getitem__(self, i):
        return self.weights[i]

    def to_text(self):
        return ",".join("%.17g" % t for t in self.weights) + "\n"

    @classmethod
    def from_text(cls, text):
        return cls([float(e) for e in text.strip().split(",")])

    def __repr__(self):
        return "ThetaVector(n=%d)" % self.n


def read_theta(path):
    with open(path) as f:
        return ThetaVector.from_text(f.read())


def write_theta(theta, path):
    with open(path, "w") as f:
        f.write(theta.to_text())


def equal_weights(n):
    """theta_j = 1/sqrt(n): the worst case for closeness to the normal law."""
    return ThetaVector(np.full(n, 1.0 / sqrt(n)))


def sample_sphere(n, seed):
    """Uniform point of S^(n-1): theta = Z/||Z|| for a standard Gaussian n-vector Z.

    Parameters
    ----------
    n : int
        n >= 1
    seed : int or :obj:`numpy.random.SeedSequence`

    Returns
    -------
    :obj:`ThetaVector`
    """
    if n < 1:
        raise ValueError("n must be positive, got %d." % n)
    rng = np.random.default_rng(seed)
    while True:
        z = rng.standard_normal(n)
        r = np.linalg.norm(z)
        if r > 0:
            return ThetaVector(z / r)


def sample_weighted_sum(spec, theta, seed, batch):
    """``batch`` independent realisations of sum_j theta_j X_j as a (batch, k) array.

    Parameters
    ----------
    spec : :obj:`~edgekit.moments.DistributionSpec`
    theta : :obj:`ThetaVector` or sequence of float
    seed : int or :obj:`numpy.random.SeedSequence`
    batch : int
    """
    w = np.asarray(list(theta), dtype=float)
    rng = np.random.default_rng(seed)
    out = np.empty((batch, spec.k))
    for start in range(0, batch, SAMPLE_CHUNK):
        size = min(SAMPLE_CHUNK, batch - start)
        X = spec.sample(rng, size * w.size).reshape(size, w.size, spec.k)
        out[start:start + size] = np.einsum("j,bjk->bk", w, X)
    return out


def wilson_interval(successes, N, confidence=0.95):
    """Wilson score interval for a binomial proportion."""
    if N <= 0:
        raise ValueError("N must be positive, got %d." % N)
    z = norm.ppf(0.5 + confidence / 2)
    p = successes / N
    den = 1 + z * z / N
    center = (p + z * z / (2 * N)) / den
    half = z * sqrt(p * (1 - p) / N + z * z / (4 * N * N)) / den
    return max(0.0, center - half), min(1.0, center + half)


def empirical_probability(spec, theta, s, N, seed, confidence=0.95):
    """Monte Carlo estimate of P(sum_j theta_j X_j in s).

    Returns
    -------
    estimate : float
        Fraction of the N samples inside the (closed) set
    interval : (float, float)
        Wilson score interval
    """
    if N < MIN_SAMPLES:
        raise ValueError("empirical_probability needs N >= %d, got %d." % (MIN_SAMPLES, N))
    S = sample_weighted_sum(spec, theta, seed, N)
    hits = int(np.count_nonzero(s.contains(S.T)))
    return hits / N, wilson_interval(hits, N, confidence)


def compensated_cumsum(values):
    """Cumulative sums with compensation for the rounding error of every addition.

    The error of each step of the plain running sum is recovered exactly
    (TwoSum) and accumulated separately, all as array operations.
    """
    v = np.asarray(values, dtype=float)
    s = np.cumsum(v)
    prev = np.concatenate(([0.0], s[:-1]))
    z = s - prev
    err = (prev - (s - z)) + (v - z)
    return s + np.cumsum(err)


def _half_sums(weights, values, probs):
    sums = np.zeros(1)
    p = np.ones(1)
    for w in weights:
        sums = (sums[:, None] + w * values[None, :]).ravel()
        p = (p[:, None] * probs[None, :]).ravel()
    return sums, p


class ExactSumLaw:
    """Exact law of one coordinate of sum_j theta_j X_j for a discrete product spec.

    The n summands are split in two halves; the partial sums of the second
    half are sorted with cumulative probabilities, so that

        P(S <= x) = sum_a p_a P(B <= x - a)

    costs one binary search per partial sum a of the first half.

    Parameters
    ----------
    spec : :obj:`~edgekit.moments.DistributionSpec`
        With finite per-coordinate support
    theta : sequence of float
        n <= 26 weights
    """
    def __init__(self, spec, theta):
        if not spec.discrete_support:
            raise ConfigError("Exact enumeration needs a discrete spec, got %r." % (spec,))
        w = np.asarray(list(theta), dtype=float)
        if w.size > MAX_EXACT_N:
            raise ConfigError("Exact enumeration supports n <= %d, got n = %d." % (MAX_EXACT_N, w.size))
        self.spec = spec
        self.k = spec.k
        values, probs = spec.support
        values = np.array(values, dtype=float)
        probs = np.array([float(p) for p in probs])
        half = (w.size + 1) // 2
        self._a, self._pa = _half_sums(w[:half], values, probs)
        b, pb = _half_sums(w[half:], values, probs)
        order = np.argsort(b, kind="stable")
        self._b = b[order]
        self._cb = compensated_cumsum(pb[order])
        self._logger = logger.getChild(self.__class__.__name__)
        self._logger.debug("n=%d split into %d x %d partial sums", w.size, self._a.size, self._b.size)

    def _below(self, x, strict):
        """P(S < x) if strict else P(S <= x), with the boundary tolerance."""
        if x == np.inf:
            return 1.0
        if x == -np.inf:
            return 0.0
        y = x - self._a + (-BOUNDARY_TOL if strict else BOUNDARY_TOL)
        idx = np.searchsorted(self._b, y, side="left" if strict else "right") - 1
        if self._logger.isEnabledFor(logging.DEBUG):
            raw = np.searchsorted(self._b, x - self._a, side="left" if strict else "right") - 1
            if np.any(raw != idx):
                self._logger.debug("x=%.17g: %d partial sums absorbed by the boundary tolerance",
                                   x, int(np.count_nonzero(raw != idx)))
        cb = np.where(idx >= 0, self._cb[np.maximum(idx, 0)], 0.0)
        return min(1.0, fsum((self._pa * cb).tolist()))

    def cdf(self, x):
        """P(S <= x)."""
        return self._below(x, strict=False)

    def interval_probability(self, lo, hi):
        """P(lo <= S <= hi)."""
        if lo > hi:
            raise ValueError("Interval bounds reversed: %g > %g." % (lo, hi))
        if lo == -np.inf:
            return self.cdf(hi)
        return max(0.0, self.cdf(hi) - self._below(lo, strict=True))

    def box_probability(self, box):
        """Coordinates are independent, so the box probability factorizes."""
        check_dimension(box.lo, self.k, "box")
        ret = 1.0
        for lo, hi in zip(box.lo, box.hi):
            ret *= self.interval_probability(lo, hi)
        return ret


def exact_box_probability(spec, theta, b):
    """Exact P(sum_j theta_j X_j in b) for a discrete spec (closed box).

    Parameters
    ----------
    spec : :obj:`~edgekit.moments.DistributionSpec`
        Finite per-coordinate support, independent coordinates
    theta : sequence of float
        n <= 26
    b : :obj:`~edgekit.measures.Box`

    Examples
    --------

    >>> from edgekit import get_spec
    >>> exact_box_probability(get_spec("rademacher", 1), equal_weights(2), Box([-np.inf], [0]))
    0.75
    """
    if not isinstance(b, Box):
        raise TypeError("exact_box_probability needs a Box, got %r." % (b,))
    return ExactSumLaw(spec, theta).box_probability(b)


def exact_cdf_table(spec, theta, thresholds):
    """P(S <= x) of the first coordinate for every threshold x."""
    law = ExactSumLaw(spec, theta)
    return np.array([law.cdf(x) for x in thresholds])
