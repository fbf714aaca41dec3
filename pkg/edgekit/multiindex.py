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

"""Multi-indices: nonnegative integer exponent vectors over k coordinates.

Multi-indices index moments, cumulants, monomials and partial derivatives.
The canonical order used everywhere (dense tables, file output, iteration)
is degree-major, lexicographic-descending within a degree::

    (3,0) (2,1) (1,2) (0,3)
"""

from math import comb, factorial, prod
import functools

from .errors import check_dimension


class MultiIndex(tuple):
    """Immutable exponent vector ``alpha`` in N^k.

    Parameters
    ----------
    exponents : iterable of int
        Nonnegative integer components, at least one.

    Examples
    --------

    >>> a = MultiIndex((3, 1))
    >>> a.degree, a.factorial
    (4, 6)
    """
    def __new__(cls, exponents):
        exponents = tuple(int(e) for e in exponents)
        if len(exponents) == 0:
            raise ValueError("A multi-index needs at least one coordinate.")
        if any(e < 0 for e in exponents):
            raise ValueError("Negative exponent in multi-index %s." % (exponents,))
        return tuple.__new__(cls, exponents)

    @property
    def k(self):
        return len(self)

    @property
    def degree(self):
        """Total degree |alpha|."""
        return sum(self)

    @property
    def factorial(self):
        """Exact integer alpha! = prod_i alpha_i!."""
        return mi_factorial(self)

    @property
    def pattern(self):
        """Sorted nonzero exponents, e.g. (2,0,1,1) -> (2,1,1)."""
        return tuple(sorted((e for e in self if e > 0), reverse=True))

    def __add__(self, other):
        check_dimension(other, self.k, "multi-index")
        return MultiIndex(a + b for a, b in zip(self, other))

    def __repr__(self):
        return "MultiIndex(%s)" % format_multi_index(self)

    @staticmethod
    def zero(k):
        return MultiIndex((0,) * k)

    @staticmethod
    def unit(k, i, power=1):
        e = [0] * k
        e[i] = power
        return MultiIndex(e)


@functools.lru_cache(maxsize=None)
def enumerate_degree(k, d):
    """All multi-indices in N^k of total degree d.

    Parameters
    ----------
    k : int
        Number of coordinates, k >= 1
    d : int
        Total degree, d >= 0

    Returns
    -------
    tuple of :obj:`MultiIndex`
        binomial(d+k-1, k-1) indices in lexicographic-descending order.

    Examples
    --------

    >>> enumerate_degree(2, 3)
    (MultiIndex(3,0), MultiIndex(2,1), MultiIndex(1,2), MultiIndex(0,3))
    """
    if k < 1:
        raise ValueError("Dimension k must be positive, got %d." % k)
    if d < 0:
        raise ValueError("Degree must be nonnegative, got %d." % d)
    if k == 1:
        return (MultiIndex((d,)),)
    ret = []
    for first in range(d, -1, -1):
        for tail in enumerate_degree(k - 1, d - first):
            ret.append(MultiIndex((first,) + tuple(tail)))
    return tuple(ret)


def enumerate_up_to(k, m):
    """Dense canonical order: every alpha with 1 <= |alpha| <= m, degree-major."""
    ret = []
    for d in range(1, m + 1):
        ret.extend(enumerate_degree(k, d))
    return tuple(ret)


def count_degree(k, d):
    return comb(d + k - 1, k - 1)


def mi_factorial(alpha):
    """Exact integer prod_i alpha_i!.

    Python integers are unbounded, so the value is exact for any degree;
    there is no wrap-around to report.
    """
    return prod(factorial(e) for e in alpha)


def monomial(alpha, t):
    """Evaluate t^alpha = prod_i t_i^alpha_i.

    Works for floats, :obj:`fractions.Fraction` and numpy arrays whose first
    axis runs over the k coordinates (then the result is vectorised over the
    remaining axes).
    """
    check_dimension(t, len(alpha), "t")
    ret = 1
    for e, ti in zip(alpha, t):
        if e:
            ret = ret * ti**e
    return ret


def format_multi_index(alpha):
    """Text form "a1,a2,...,ak" (no spaces)."""
    return ",".join(str(e) for e in alpha)


def parse_multi_index(text):
    try:
        return MultiIndex(int(e) for e in text.strip().split(","))
    except ValueError as e:
        raise ValueError("Malformed multi-index '%s': %s" % (text, e))
