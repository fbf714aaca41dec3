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

"""Moment <-> cumulant conversion and cumulants of weighted sums.

Both directions use truncated multivariate power series. With
M(t) = sum mu_nu t^nu/nu! and K(t) = sum kappa_nu t^nu/nu!,

    K = log(1 + M) = sum_s (-1)^(s+1)/s M^s
    M = exp(K) - 1 = sum_s K^s/s!

truncated at total degree m. The factors i^|nu| of the characteristic
function are dropped: they are the same on both sides for every degree.
"""

from fractions import Fraction
from math import factorial

from .multiindex import enumerate_up_to
from .moments import TensorSet, MomentSet, analytic_moments, EXACT

SPHERE_TOL = 1e-12


class CumulantSet(TensorSet):
    """Cumulants kappa_nu, 1 <= |nu| <= m (dense)."""
    kind = "cumulants"

    def __add__(self, other):
        """Cumulants of the sum of two independent vectors."""
        if (self.k, self.m) != (other.k, other.m):
            raise ValueError("Cannot add %r and %r." % (self, other))
        return CumulantSet(self.k, self.m, {a: v + other[a] for a, v in self.items()})

    def scale_by_degree(self, factors):
        """kappa_nu * factors(|nu|); ``factors`` is a callable or a dict on degrees."""
        f = factors if callable(factors) else factors.__getitem__
        return self.map_values(lambda a, v: v * f(a.degree))


def _coefficient_series(tensor):
    """Series coefficients {nu: value/nu!} (exact when the values are exact)."""
    ret = {}
    for alpha, v in tensor.items():
        ret[alpha] = Fraction(v) / alpha.factorial if tensor.arithmetic_mode == EXACT \
            else v / alpha.factorial
    return ret


def _series_mul(a, b, m):
    """Product of two series without constant term, truncated at degree m."""
    ret = {}
    for alpha, x in a.items():
        da = alpha.degree
        for beta, y in b.items():
            if da + beta.degree > m:
                continue
            gamma = alpha + beta
            ret[gamma] = ret.get(gamma, 0) + x * y
    return ret


def _series_power_sum(base, weights, k, m):
    """sum_s weights[s] * base^s for s = 1..m, truncated at degree m.

    Since base has no constant term, base^s only has degrees >= s.
    """
    total = {}
    power = dict(base)
    for s in range(1, m + 1):
        w = weights(s)
        for alpha, v in power.items():
            total[alpha] = total.get(alpha, 0) + w * v
        if s < m:
            power = _series_mul(power, base, m)
    return {alpha: total.get(alpha, 0) for alpha in enumerate_up_to(k, m)}


def _to_tensor(cls, k, m, series):
    return cls(k, m, {alpha: alpha.factorial * v for alpha, v in series.items()})


def moments_to_cumulants(ms):
    """Cumulants from moments through K = log(1 + M).

    Parameters
    ----------
    ms : :obj:`~edgekit.moments.MomentSet`

    Returns
    -------
    :obj:`CumulantSet`
        Same order; exact when ``ms`` is exact.

    Examples
    --------

    >>> from edgekit import get_spec, analytic_moments
    >>> cs = moments_to_cumulants(analytic_moments(get_spec("rademacher", 1), 4))
    >>> cs[(4,)]
    Fraction(-2, 1)
    """
    exact = ms.arithmetic_mode == EXACT
    one = Fraction(1) if exact else 1.0

    def weights(s):
        return (-1)**(s + 1) * one / s
    series = _series_power_sum(_coefficient_series(ms), weights, ms.k, ms.m)
    return _to_tensor(CumulantSet, ms.k, ms.m, series)


def cumulants_to_moments(cs):
    """Moments from cumulants through M = exp(K) - 1; inverse of :func:`moments_to_cumulants`."""
    exact = cs.arithmetic_mode == EXACT
    one = Fraction(1) if exact else 1.0

    def weights(s):
        return one / factorial(s)
    series = _series_power_sum(_coefficient_series(cs), weights, cs.k, cs.m)
    return _to_tensor(MomentSet, cs.k, cs.m, series)


def cumulants_of_spec(spec, m):
    """Exact cumulants of a catalog law up to order m."""
    return moments_to_cumulants(analytic_moments(spec, m))


def lp_power_sum(theta, p):
    """sum_j theta_j^p, keeping the sign for odd p."""
    return sum(t**p for t in theta)


def check_on_sphere(theta, tol=SPHERE_TOL):
    s = sum(t * t for t in theta)
    if abs(s - 1) > tol:
        raise ValueError("theta is not on the unit sphere: sum theta_j^2 = %.17g." % s)


def weighted_sum_cumulants(cs, theta):
    """Cumulants of sum_j theta_j X_j for i.i.d. X_j with cumulants ``cs``.

    kappa_nu(sum) = (sum_j theta_j^|nu|) kappa_nu(X_1). On the unit sphere the
    degree-2 factor is exactly 1, so the covariance block is returned unchanged.

    Parameters
    ----------
    cs : :obj:`CumulantSet`
        Cumulants of one summand
    theta : sequence of float
        Weights with sum theta_j^2 = 1 (tolerance 1e-12)

    Returns
    -------
    :obj:`CumulantSet`
    """
    theta = [t.item() if hasattr(t, "item") else t for t in theta]
    check_on_sphere(theta)
    factors = {p: (1 if p == 2 else lp_power_sum(theta, p)) for p in range(1, cs.m + 1)}
    return cs.scale_by_degree(factors)


def drop_degree(cs, d):
    """Copy of ``cs`` with every cumulant of degree d set to zero."""
    zero = 0 if cs.arithmetic_mode == EXACT else 0.0
    return cs.map_values(lambda a, v: zero if a.degree == d else v)
