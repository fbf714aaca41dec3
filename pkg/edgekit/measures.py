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

"""Gaussian and Edgeworth (signed) measures of convex sets.

Three tractable families stand in for general convex sets: boxes (exact
integration coordinate by coordinate), balls and half-spaces (importance
sampling from the standard Gaussian for expansions).
"""

from math import sqrt, inf
import logging

import numpy as np
from scipy.integrate import quad
from scipy.stats import chi2, ncx2

from .hermite import gaussian_partial_integral, gaussian_cdf
from .errors import check_dimension, NumericError
from . import casadi_helpers

logger = logging.getLogger('edgekit')

NORMAL_TOL = 1e-12
MC_MIN_SAMPLES = 1000
MC_BATCH = 1 << 16


class ConvexSetSpec:
    """Base class of the set families; all sets are closed."""
    kind = None

    @property
    def k(self):
        raise NotImplementedError

    def contains(self, points):
        """Membership of the columns of a (k, N) array (boundary counts as inside)."""
        raise NotImplementedError

    def __str__(self):
        return format_set(self)


def _vector(v):
    return tuple(float(e) for e in v)


class Box(ConvexSetSpec):
    """Box prod_i [lo_i, hi_i]; entries may be infinite.

    Parameters
    ----------
    lo : k-vector
    hi : k-vector
        lo_i <= hi_i for every i
    """
    kind = "box"

    def __init__(self, lo, hi):
        lo, hi = _vector(lo), _vector(hi)
        check_dimension(hi, len(lo), "hi")
        if len(lo) == 0:
            raise ValueError("A box needs at least one coordinate.")
        for a, b in zip(lo, hi):
            if np.isnan(a) or np.isnan(b) or a > b:
                raise ValueError("Malformed box: lo=%s, hi=%s." % (lo, hi))
        self.lo = lo
        self.hi = hi

    @property
    def k(self):
        return len(self.lo)

    @classmethod
    def whole_space(cls, k):
        return cls([-inf] * k, [inf] * k)

    @classmethod
    def orthant(cls, corner):
        """prod_i (-inf, corner_i]."""
        return cls([-inf] * len(corner), corner)

    def contains(self, points):
        points = np.atleast_2d(points)
        check_dimension(points, self.k, "points")
        lo = np.array(self.lo)[:, None]
        hi = np.array(self.hi)[:, None]
        return np.all((points >= lo) & (points <= hi), axis=0)

    def __eq__(self, other):
        return isinstance(other, Box) and (self.lo, self.hi) == (other.lo, other.hi)

    def __hash__(self):
        return hash((self.lo, self.hi))


class Ball(ConvexSetSpec):
    """Closed ball {x : ||x - center|| <= radius}, radius > 0."""
    kind = "ball"

    def __init__(self, center, radius):
        self.center = _vector(center)
        self.radius = float(radius)
        if not self.radius > 0:
            raise ValueError("Ball radius must be positive, got %g." % self.radius)

    @property
    def k(self):
        return len(self.center)

    def contains(self, points):
        points = np.atleast_2d(points)
        check_dimension(points, self.k, "points")
        d = points - np.array(self.center)[:, None]
        return np.sum(d * d, axis=0) <= self.radius**2


class HalfSpace(ConvexSetSpec):
    """Half-space {x : <normal, x> <= offset} with a unit normal."""
    kind = "halfspace"

    def __init__(self, normal, offset):
        self.normal = _vector(normal)
        self.offset = float(offset)
        norm = sqrt(sum(u * u for u in self.normal))
        if abs(norm - 1) > NORMAL_TOL:
            raise ValueError("Half-space normal must have unit length, got %.17g." % norm)

    @property
    def k(self):
        return len(self.normal)

    def contains(self, points):
        points = np.atleast_2d(points)
        check_dimension(points, self.k, "points")
        return np.array(self.normal) @ points <= self.offset


def _format_vector(v):
    return ",".join("%.17g" % e for e in v)


def format_set(s):
    """Inverse of :func:`parse_set`."""
    if isinstance(s, Box):
        return "box %s %s" % (_format_vector(s.lo), _format_vector(s.hi))
    if isinstance(s, Ball):
        return "ball %s %.17g" % (_format_vector(s.center), s.radius)
    if isinstance(s, HalfSpace):
        return "halfspace %s %.17g" % (_format_vector(s.normal), s.offset)
    raise TypeError("Not a set: %r" % (s,))


def parse_set(text):
    """Parse the set grammar.

    ``"box lo1,...,lok hi1,...,hik"`` (inf/-inf allowed),
    ``"ball c1,...,ck r"``, ``"halfspace u1,...,uk c"``.

    Examples
    --------

    >>> parse_set("box -inf,-inf 0,0").hi
    (0.0, 0.0)
    """
    parts = text.split()
    try:
        kind = parts[0].lower()
        if kind == "box" and len(parts) == 3:
            return Box([float(e) for e in parts[1].split(",")], [float(e) for e in parts[2].split(",")])
        if kind == "ball" and len(parts) == 3:
            return Ball([float(e) for e in parts[1].split(",")], float(parts[2]))
        if kind == "halfspace" and len(parts) == 3:
            return HalfSpace([float(e) for e in parts[1].split(",")], float(parts[2]))
    except (IndexError, ValueError) as e:
        raise ValueError("Malformed set '%s': %s" % (text, e))
    raise ValueError("Malformed set '%s'. Expected 'box lo hi', 'ball c r' or 'halfspace u c'." % text)


def _ball_measure(ball):
    k = ball.k
    lam = sum(c * c for c in ball.center)
    if lam == 0:
        return float(chi2.cdf(ball.radius**2, k))

    # radial density of ||Z - c||: 2 rho f_{ncx2}(rho^2), finite at 0 for every k
    def radial(rho):
        return 2 * rho * ncx2.pdf(rho * rho, k, lam)
    value, err = quad(radial, 0, ball.radius, epsabs=1e-13, epsrel=1e-12, limit=200)
    if err > 1e-10:
        raise NumericError("Ball measure quadrature did not converge (error estimate %g)." % err)
    return value


def gaussian_measure(s):
    """Standard Gaussian measure of a set.

    Parameters
    ----------
    s : :obj:`ConvexSetSpec`

    Returns
    -------
    float
        Box: product of Phi differences; HalfSpace: Phi(offset);
        Ball: radial quadrature of the noncentral chi distribution.
    """
    if isinstance(s, Box):
        ret = 1.0
        for a, b in zip(s.lo, s.hi):
            ret *= gaussian_partial_integral(0, a, b)
        return ret
    if isinstance(s, HalfSpace):
        return float(gaussian_cdf(s.offset))
    if isinstance(s, Ball):
        return _ball_measure(s)
    raise TypeError("Unsupported set %r." % (s,))


def expansion_measure_box(e, b):
    """Exact signed measure of a box under an Edgeworth expansion.

    Every correction term c_nu He_nu phi = c_nu (-1)^|nu| D^nu phi integrates
    to c_nu (-1)^|nu| prod_i int_{lo_i}^{hi_i} phi^(nu_i).

    Parameters
    ----------
    e : :obj:`~edgekit.edgeworth.EdgeworthExpansion`
    b : :obj:`Box`

    Returns
    -------
    float
    """
    if not isinstance(b, Box):
        raise TypeError("expansion_measure_box needs a Box, got %r." % (b,))
    check_dimension(b.lo, e.k, "box")
    terms = e.terms()
    top = max([max(nu) for _, nu in terms], default=0)
    table = [[gaussian_partial_integral(n, a, c) for n in range(top + 1)] for a, c in zip(b.lo, b.hi)]
    ret = 1.0
    for row in table:
        ret *= row[0]
    for c, nu in terms:
        term = c * (-1)**sum(nu)
        for i, n in enumerate(nu):
            term *= table[i][n]
        ret += term
    return ret


def expansion_measure_mc(e, s, N, seed):
    """Importance-sampling estimate of an expansion's measure of any set.

    E_{Z ~ N(0, I)}[1_B(Z) density(Z)/phi(Z)], where the ratio is the
    polynomial correction factor. Samples are drawn in batches with
    independent substreams of ``seed`` and merged in batch order.

    Parameters
    ----------
    e : :obj:`~edgekit.edgeworth.EdgeworthExpansion`
    s : :obj:`ConvexSetSpec`
    N : int
        Number of samples, at least 1000
    seed : int or :obj:`numpy.random.SeedSequence`

    Returns
    -------
    estimate : float
    stderr : float
    """
    if N <= 0:
        raise ValueError("Sample count must be positive, got %d." % N)
    if N < MC_MIN_SAMPLES:
        raise ValueError("expansion_measure_mc needs N >= %d, got %d." % (MC_MIN_SAMPLES, N))
    check_dimension(range(s.k), e.k, "set")
    f = e.density_function()
    sizes = [MC_BATCH] * (N // MC_BATCH) + ([N % MC_BATCH] if N % MC_BATCH else [])
    streams = np.random.SeedSequence(seed).spawn(len(sizes)) \
        if not isinstance(seed, np.random.SeedSequence) else seed.spawn(len(sizes))
    total = 0.0
    total_sq = 0.0
    for size, ss in zip(sizes, streams):
        Z = np.random.default_rng(ss).standard_normal((e.k, size))
        w = casadi_helpers.evaluate_batch(f, Z, output=1) * s.contains(Z)
        total += float(np.sum(w))
        total_sq += float(np.sum(w * w))
    mean = total / N
    var = max(total_sq / N - mean * mean, 0.0) * N / (N - 1)
    logger.debug("importance sampling of %s: %d samples in %d batches, mean %.6g", s, N, len(sizes), mean)
    return mean, sqrt(var / N)


def expansion_measure(e, s, N=None, seed=None):
    """Exact for boxes, Monte Carlo (N samples) otherwise; returns a float."""
    if isinstance(s, Box):
        return expansion_measure_box(e, s)
    if N is None:
        raise ValueError("Non-box sets need a Monte Carlo sample count N.")
    return expansion_measure_mc(e, s, N, seed)[0]
