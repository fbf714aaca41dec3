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

"""Probabilists' Hermite polynomials and derivatives of the Gaussian density.

He_0 = 1, He_1 = x, He_{n+1} = x He_n - n He_{n-1}, so that the n-th
derivative of the standard normal density is (-1)^n He_n(x) phi(x).
"""

import functools
from math import pi, sqrt

import numpy as np
from scipy.special import erfc

from .errors import check_dimension

MAX_DEGREE = 12
SQRT2 = sqrt(2.0)
INV_SQRT_2PI = 1.0 / sqrt(2.0 * pi)


class HermitePoly:
    """He_n with exact integer coefficients in the monomial basis.

    Parameters
    ----------
    n : int
        Degree
    coeffs : tuple of int
        coeffs[i] is the coefficient of x^i

    Examples
    --------

    >>> hermite_coeffs(4).coeffs
    (3, 0, -6, 0, 1)
    """
    def __init__(self, n, coeffs):
        self.n = n
        self.coeffs = tuple(coeffs)

    def __call__(self, x):
        """Horner evaluation; x may be a float or a numpy array."""
        ret = self.coeffs[-1]
        for c in reversed(self.coeffs[:-1]):
            ret = ret * x + c
        if np.ndim(x) and np.ndim(ret) == 0:
            ret = np.full(np.shape(x), float(ret))
        return ret

    def __eq__(self, other):
        return isinstance(other, HermitePoly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        terms = ["%d*x^%d" % (c, i) for i, c in enumerate(self.coeffs) if c]
        return "He_%d(x) = %s" % (self.n, " + ".join(terms))


@functools.lru_cache(maxsize=None)
def hermite_coeffs(n):
    """Exact coefficients of He_n via the three-term recurrence.

    Parameters
    ----------
    n : int
        0 <= n <= 12

    Returns
    -------
    :obj:`HermitePoly`
    """
    if n < 0 or n > MAX_DEGREE:
        raise ValueError("Hermite degree must be in [0, %d], got %d." % (MAX_DEGREE, n))
    if n == 0:
        return HermitePoly(0, (1,))
    if n == 1:
        return HermitePoly(1, (0, 1))
    prev = hermite_coeffs(n - 2).coeffs + (0, 0)
    cur = (0,) + hermite_coeffs(n - 1).coeffs
    return HermitePoly(n, tuple(c - (n - 1) * p for c, p in zip(cur, prev)))


def hermite_eval(n, x):
    return hermite_coeffs(n)(x)


def hermite_product(nu, x):
    """prod_i He_{nu_i}(x_i); x has the k coordinates on its first axis."""
    check_dimension(x, len(nu), "x")
    ret = 1
    for e, xi in zip(nu, x):
        if e:
            ret = ret * hermite_eval(e, xi)
    return ret


def gaussian_pdf(x):
    """One-dimensional standard normal density."""
    return INV_SQRT_2PI * np.exp(-0.5 * np.square(x))


def gaussian_cdf(x):
    """Phi(x) = erfc(-x/sqrt(2))/2.

    scipy's erfc is accurate to a few ulp over the whole line, which keeps
    differences of Phi values accurate to ~1e-16 absolute.
    """
    return 0.5 * erfc(-np.asarray(x, dtype=float) / SQRT2)


def gaussian_sf(x):
    """1 - Phi(x) without cancellation."""
    return 0.5 * erfc(np.asarray(x, dtype=float) / SQRT2)


def gaussian_density(x):
    """k-dimensional standard normal density phi(x); x has coordinates on axis 0."""
    ret = 1.0
    for xi in x:
        ret = ret * gaussian_pdf(xi)
    return ret


def gaussian_derivative(nu, x):
    """D^nu phi(x) = (-1)^|nu| prod_i He_{nu_i}(x_i) phi(x).

    Parameters
    ----------
    nu : :obj:`~edgekit.multiindex.MultiIndex`
        Derivative orders, |nu| <= 12
    x : k-vector (or array with coordinates on axis 0)

    Returns
    -------
    float or numpy.ndarray
    """
    check_dimension(x, len(nu), "x")
    if sum(nu) > MAX_DEGREE:
        raise ValueError("Derivative order %d exceeds %d." % (sum(nu), MAX_DEGREE))
    x = [np.asarray(xi, dtype=float) for xi in x]
    sign = -1.0 if sum(nu) % 2 else 1.0
    ret = sign * hermite_product(nu, x) * gaussian_density(x)
    return ret if np.ndim(ret) else float(ret)


def gaussian_derivative_1d(n, x):
    """phi^(n)(x) in one dimension; 0 at +-inf."""
    if np.isinf(x):
        return 0.0
    return (-1.0 if n % 2 else 1.0) * float(hermite_eval(n, x)) * float(gaussian_pdf(x))


def gaussian_partial_integral(n, a, b):
    """Integral of phi^(n) over [a, b] (a may be -inf, b may be +inf).

    For n >= 1 this is phi^(n-1)(b) - phi^(n-1)(a); for n = 0 it is
    Phi(b) - Phi(a), evaluated in whichever tail avoids cancellation.

    Examples
    --------

    >>> gaussian_partial_integral(0, -np.inf, np.inf)
    1.0
    """
    if a > b:
        raise ValueError("Integration bounds reversed: a=%g > b=%g." % (a, b))
    if n == 0:
        if a >= 0:
            return float(gaussian_sf(a) - gaussian_sf(b))
        return float(gaussian_cdf(b) - gaussian_cdf(a))
    return gaussian_derivative_1d(n - 1, b) - gaussian_derivative_1d(n - 1, a)
