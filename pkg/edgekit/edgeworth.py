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

"""Edgeworth polynomials, their density realisation and expansions.

The frequency-domain polynomial P^_r(t) collects, for every composition
(i_1, ..., i_m) of r, the products

    1/m! * prod_j sum_{|nu_j| = i_j + 2} kappa_{nu_j} t^{nu_j} / nu_j!

and the density P_r is obtained by replacing each (it)^nu with
(-1)^|nu| D^nu phi = He_nu phi. An expansion of order s is
phi + P_1 + ... + P_s, a signed density that integrates to 1.

Two conventions are exposed:

sign
    ``'substitution-plus'`` (default) applies the substitution literally and
    reproduces the classical one-dimensional correction
    Phi(x) - (beta_4 - 3)/(8n) He_3(x) phi(x).
    ``'paper-minus'`` negates every correction term, as in the usual printed
    form of the fourth-moment correction.
scale
    ``'per-theta'``: cumulants of the weighted sum are l_p(theta) kappa_nu.
    ``'averaged'``: the factor for degree p is (p-1)!! n^(1-p/2) for even p
    (3/n at p = 4) and 0 for odd p.
"""

from fractions import Fraction
from math import factorial
import functools
import logging

import numpy as np

from .multiindex import MultiIndex, enumerate_degree, monomial
from .cumulants import weighted_sum_cumulants, lp_power_sum, EXACT
from .hermite import gaussian_derivative, gaussian_density, hermite_product, gaussian_cdf, gaussian_pdf
from .errors import check_dimension
from . import casadi_helpers

logger = logging.getLogger('edgekit')

SUBSTITUTION_PLUS = "substitution-plus"
PAPER_MINUS = "paper-minus"
SIGN_CONVENTIONS = (SUBSTITUTION_PLUS, PAPER_MINUS)

PER_THETA = "per-theta"
AVERAGED = "averaged"
SCALE_CONVENTIONS = (PER_THETA, AVERAGED)

MAX_ORDER = 4
COVARIANCE_TOL = 1e-9


def sign_factor(sign):
    if sign == SUBSTITUTION_PLUS:
        return 1
    if sign == PAPER_MINUS:
        return -1
    raise ValueError("Unknown sign convention '%s'. Use one of %s." % (sign, SIGN_CONVENTIONS))


class FreqPolynomial:
    """Polynomial sum_nu c_nu t^nu in k variables (coefficient of t^nu, no nu! divided out).

    Parameters
    ----------
    k : int
    coeffs : dict
        multi-index -> coefficient; zero coefficients are dropped
    """
    def __init__(self, k, coeffs=None):
        self.k = k
        self._coeffs = {}
        for nu, c in (coeffs or {}).items():
            if c != 0:
                self._coeffs[MultiIndex(nu)] = c

    def __getitem__(self, nu):
        return self._coeffs.get(MultiIndex(nu), 0)

    def items(self):
        """(nu, c_nu) by degree, lexicographic-descending inside a degree."""
        return sorted(self._coeffs.items(), key=lambda e: (e[0].degree, [-v for v in e[0]]))

    def __len__(self):
        return len(self._coeffs)

    def is_zero(self):
        return not self._coeffs

    def degrees(self):
        return sorted(set(nu.degree for nu in self._coeffs))

    def __add__(self, other):
        ret = dict(self._coeffs)
        for nu, c in other._coeffs.items():
            ret[nu] = ret.get(nu, 0) + c
        return FreqPolynomial(self.k, ret)

    def __mul__(self, other):
        if not isinstance(other, FreqPolynomial):
            return FreqPolynomial(self.k, {nu: c * other for nu, c in self._coeffs.items()})
        ret = {}
        for a, x in self._coeffs.items():
            for b, y in other._coeffs.items():
                ret[a + b] = ret.get(a + b, 0) + x * y
        return FreqPolynomial(self.k, ret)

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, FreqPolynomial) and self.k == other.k and self._coeffs == other._coeffs

    def __call__(self, t):
        check_dimension(t, self.k, "t")
        return sum(c * monomial(nu, t) for nu, c in self._coeffs.items())

    def __repr__(self):
        return "FreqPolynomial(k=%d, %d terms)" % (self.k, len(self._coeffs))


def compositions(r):
    """All ordered tuples of positive integers summing to r."""
    if r == 0:
        yield ()
        return
    for first in range(1, r + 1):
        for rest in compositions(r - first):
            yield (first,) + rest


def _cumulant_form(cs, i):
    """sum_{|nu| = i+2} kappa_nu t^nu / nu!."""
    exact = cs.arithmetic_mode == EXACT
    coeffs = {}
    for nu in enumerate_degree(cs.k, i + 2):
        kappa = cs[nu]
        coeffs[nu] = Fraction(kappa) / nu.factorial if exact else kappa / nu.factorial
    return FreqPolynomial(cs.k, coeffs)


def phat_polynomial(r, cs):
    """Frequency-domain Edgeworth polynomial P^_r(t : {kappa_nu}).

    Parameters
    ----------
    r : int
        1 <= r <= 4
    cs : :obj:`~edgekit.cumulants.CumulantSet`
        Dense to order r+2

    Returns
    -------
    :obj:`FreqPolynomial`
        Every term has degree between r+2 and 3r.

    Examples
    --------

    >>> from edgekit import get_spec, cumulants_of_spec
    >>> phat_polynomial(1, cumulants_of_spec(get_spec("rademacher", 2), 3)).is_zero()
    True
    """
    if r < 1 or r > MAX_ORDER:
        raise ValueError("Edgeworth polynomial order must be in [1, %d], got %d." % (MAX_ORDER, r))
    if cs.m < r + 2:
        raise ValueError("P^_%d needs cumulants to order %d, got order %d." % (r, r + 2, cs.m))
    forms = {i: _cumulant_form(cs, i) for i in range(1, r + 1)}
    ret = FreqPolynomial(cs.k)
    for comp in compositions(r):
        term = forms[comp[0]]
        for i in comp[1:]:
            term = term * forms[i]
        w = Fraction(1, factorial(len(comp)))
        ret = ret + (term * (w if cs.arithmetic_mode == EXACT else float(w)))
    return ret


def pr_factor(r, cs, x, sign=SUBSTITUTION_PLUS):
    """P_r(-phi)(x) / phi(x) = sum_nu c_nu He_nu(x); exact for exact inputs."""
    check_dimension(x, cs.k, "x")
    s = sign_factor(sign)
    return s * sum(c * hermite_product(nu, x) for nu, c in phat_polynomial(r, cs).items())


def pr_density(r, cs, x, sign=SUBSTITUTION_PLUS):
    """Density P_r(-phi : {kappa_nu})(x).

    Each (it)^nu of P^_r is replaced by (-1)^|nu| D^nu phi(x).

    Parameters
    ----------
    r : int
        Order, 1 <= r <= 4
    cs : :obj:`~edgekit.cumulants.CumulantSet`
    x : k-vector
    sign : str, optional
        ``'substitution-plus'`` (default) or ``'paper-minus'`` (negated)
    """
    check_dimension(x, cs.k, "x")
    s = sign_factor(sign)
    ret = 0.0
    for nu, c in phat_polynomial(r, cs).items():
        ret += float(c) * (-1)**nu.degree * gaussian_derivative(nu, x)
    return s * ret


def averaged_lp(p, n):
    """Large-n value of E_theta l_p(theta): (p-1)!! n^(1-p/2) for even p, 0 for odd p."""
    if p % 2:
        return Fraction(0)
    df = 1
    for j in range(p - 1, 0, -2):
        df *= j
    return Fraction(df * n, n**(p // 2))


def expected_lp(p, n):
    """Exact E_theta sum_j theta_j^p for theta uniform on S^(n-1) (3/(n+2) at p = 4)."""
    if p % 2:
        return Fraction(0)
    df = 1
    for j in range(p - 1, 0, -2):
        df *= j
    den = 1
    for j in range(p // 2):
        den *= n + 2 * j
    return Fraction(n * df, den)


def lp_norm(theta, p):
    """l_p(theta) = sum_j |theta_j|^p."""
    return sum(abs(t)**p for t in theta)


class EdgeworthExpansion:
    """Edgeworth expansion Psi_s of order s around the standard Gaussian.

    Parameters
    ----------
    cumulants : :obj:`~edgekit.cumulants.CumulantSet`
        Cumulants of the (weighted) sum itself, order >= s+2
    s : int, optional
        Expansion order, 0 <= s <= 4
        Default: 2
    sign : str, optional
        Sign convention, see module documentation
        Default: 'substitution-plus'
    scale : str, optional
        Scale convention the cumulants were built with (bookkeeping only)
        Default: 'per-theta'

    Examples
    --------

    >>> from edgekit import get_spec, cumulants_of_spec, equal_weights
    >>> base = cumulants_of_spec(get_spec("rademacher", 1), 4)
    >>> e = EdgeworthExpansion.for_weighted_sum(base, theta=equal_weights(10))
    >>> round(e.density([0.0]), 6)
    0.388969
    """
    def __init__(self, cumulants, s=2, sign=SUBSTITUTION_PLUS, scale=PER_THETA, n=None, theta=None):
        if s < 0 or s > MAX_ORDER:
            raise ValueError("Expansion order must be in [0, %d], got %d." % (MAX_ORDER, s))
        if s > 0 and cumulants.m < s + 2:
            raise ValueError("Order %d expansion needs cumulants to order %d, got %d." %
                             (s, s + 2, cumulants.m))
        sign_factor(sign)
        if scale not in SCALE_CONVENTIONS:
            raise ValueError("Unknown scale convention '%s'. Use one of %s." % (scale, SCALE_CONVENTIONS))
        for nu, v in cumulants.of_degree(1).items():
            if abs(v) > COVARIANCE_TOL:
                raise ValueError("Expansion needs a centered law: kappa_%s = %g." % (nu, v))
        for nu, v in cumulants.of_degree(2).items():
            target = 1 if nu.pattern == (2,) else 0
            if abs(v - target) > COVARIANCE_TOL:
                raise ValueError("Expansion is defined around V = I only: kappa_%s = %g." % (nu, v))
        self.k = cumulants.k
        self.s = s
        self.sign = sign
        self.scale = scale
        self.n = n
        self.theta = theta
        self.cumulants = cumulants
        self._logger = logger.getChild(self.__class__.__name__)

    @classmethod
    def for_weighted_sum(cls, base, s=2, theta=None, n=None, scale=None, sign=SUBSTITUTION_PLUS):
        """Expansion for sum_j theta_j X_j from the cumulants of one summand.

        Parameters
        ----------
        base : :obj:`~edgekit.cumulants.CumulantSet`
            Cumulants of X_1
        theta : sequence of float, optional
            Weights on the unit sphere; required for the per-theta scale
        n : int, optional
            Number of summands; taken from theta when omitted
        scale : str, optional
            Default: 'per-theta' when theta is given, else 'averaged'
        """
        if scale is None:
            scale = PER_THETA if theta is not None else AVERAGED
        if n is None:
            if theta is None:
                raise ValueError("Either theta or n is required.")
            n = len(theta)
        if scale == PER_THETA:
            if theta is None:
                raise ValueError("The per-theta scale needs theta.")
            cumulants = weighted_sum_cumulants(base, theta)
        elif scale == AVERAGED:
            cumulants = base.scale_by_degree(lambda p: averaged_lp(p, n) if base.arithmetic_mode == EXACT
                                             else float(averaged_lp(p, n)))
        else:
            raise ValueError("Unknown scale convention '%s'. Use one of %s." % (scale, SCALE_CONVENTIONS))
        return cls(cumulants, s=s, sign=sign, scale=scale, n=n, theta=theta)

    @functools.cached_property
    def polynomials(self):
        """[P^_1, ..., P^_s]."""
        return [phat_polynomial(r, self.cumulants) for r in range(1, self.s + 1)]

    @functools.cached_property
    def _terms(self):
        coeffs = {}
        for p in self.polynomials:
            for nu, c in p.items():
                coeffs[nu] = coeffs.get(nu, 0) + c
        sf = sign_factor(self.sign)
        ret = tuple((sf * float(c), nu) for nu, c in sorted(coeffs.items(),
                    key=lambda e: (e[0].degree, [-v for v in e[0]])) if c != 0)
        self._logger.debug("order %d expansion in k=%d: %d correction terms", self.s, self.k, len(ret))
        return ret

    def terms(self):
        """Correction terms [(c_nu, nu), ...]: density = phi (1 + sum c_nu He_nu)."""
        return list(self._terms)

    def correction_factor(self, x):
        """density(x)/phi(x); x may hold a batch of points on its trailing axis."""
        check_dimension(x, self.k, "x")
        x = [np.asarray(xi, dtype=float) for xi in x]
        ret = 1.0
        for c, nu in self._terms:
            ret = ret + c * hermite_product(nu, x)
        return ret

    def density(self, x):
        """Signed density phi(x) + sum_r P_r(-phi)(x)."""
        check_dimension(x, self.k, "x")
        x = [np.asarray(xi, dtype=float) for xi in x]
        ret = gaussian_density(x) * self.correction_factor(x)
        return ret if np.ndim(ret) else float(ret)

    def density_function(self):
        """casadi Function x -> (density, correction factor)."""
        return casadi_helpers.density_function(self._terms, self.k, name="edgeworth_density")

    def __repr__(self):
        return "EdgeworthExpansion(k=%d, s=%d, sign=%s, scale=%s, %d terms)" % (
            self.k, self.s, self.sign, self.scale, len(self._terms))


def expansion_density(e, x):
    """phi(x) + sum_{r=1}^s P_r(-phi)(x) for the expansion e."""
    return e.density(x)


BRACKET_WEIGHTS = {(4,): Fraction(1, 24), (3, 1): Fraction(1, 6), (2, 2): Fraction(1, 4),
                   (2, 1, 1): Fraction(1, 2), (1, 1, 1, 1): Fraction(1)}


def _bracket(alpha, mu, x):
    """One term of the fourth-moment closed form, as printed bracket by bracket."""
    pattern = alpha.pattern
    idx = sorted((i for i, e in enumerate(alpha) if e), key=lambda i: -alpha[i])
    if pattern == (4,):
        xi = x[idx[0]]
        return (mu - 3) * (3 - 6 * xi**2 + xi**4)
    if pattern == (3, 1):
        xi, xj = x[idx[0]], x[idx[1]]
        return mu * (xi**3 * xj - 3 * xi * xj)
    if pattern == (2, 2):
        xi, xj = x[idx[0]], x[idx[1]]
        return (mu - 1) * (1 - xi**2 - xj**2 + xi**2 * xj**2)
    if pattern == (2, 1, 1):
        xi, xj, xl = x[idx[0]], x[idx[1]], x[idx[2]]
        return mu * (xi**2 * xj * xl - xj * xl)
    xi, xj, xl, xm = (x[i] for i in idx)
    return mu * xi * xj * xl * xm


def lemma_correction(k, fourth_moments, x, sign=SUBSTITUTION_PLUS):
    """Fourth-moment closed form of (P_1 + P_2)(-phi)/phi for a law with zero third moments.

    Sum over |alpha| = 4 of the five bracket groups (pure quartic, 3-1, 2-2,
    2-1-1, 1-1-1-1) with weights 1/24, 1/6, 1/4, 1/2, 1. Exact for exact input.

    Parameters
    ----------
    k : int
    fourth_moments : dict
        mu_alpha for every |alpha| = 4
    x : k-vector
    sign : str, optional
    """
    check_dimension(x, k, "x")
    missing = [a for a in enumerate_degree(k, 4) if a not in fourth_moments]
    if missing:
        raise ValueError("Fourth-moment table is incomplete: missing %s." % (missing,))
    total = 0
    for alpha in enumerate_degree(k, 4):
        w = BRACKET_WEIGHTS[alpha.pattern]
        term = _bracket(alpha, fourth_moments[alpha], x)
        total = total + (w * term if isinstance(term, (int, Fraction)) else float(w) * term)
    return sign_factor(sign) * total


def closed_form_g_density(k, fourth_moments, n, x, theta=None, scale=None, sign=SUBSTITUTION_PLUS):
    """Corrected normal density g(x) from fourth moments.

    g(x) = phi(x) (1 + L * lemma_correction(x)) with L = 3/n ('averaged') or
    L = l_4(theta) ('per-theta').

    Parameters
    ----------
    k : int
    fourth_moments : dict
        mu_alpha for |alpha| = 4 (third moments are assumed zero)
    n : int
    x : k-vector
    theta : sequence of float, optional
    scale : str, optional
        Default: 'per-theta' when theta is given, else 'averaged'
    sign : str, optional
    """
    if scale is None:
        scale = PER_THETA if theta is not None else AVERAGED
    if scale == PER_THETA:
        if theta is None:
            raise ValueError("The per-theta scale needs theta.")
        L = lp_power_sum([float(t) for t in theta], 4)
    elif scale == AVERAGED:
        L = 3.0 / n
    else:
        raise ValueError("Unknown scale convention '%s'." % scale)
    x = [float(xi) for xi in x]
    corr = lemma_correction(k, {a: float(v) for a, v in fourth_moments.items()}, x, sign=sign)
    return float(gaussian_density(x)) * (1.0 + L * corr)


def bobkov_g_cdf(beta4, n, x):
    """One-dimensional corrected distribution function G(x) = Phi(x) - (beta_4-3)/(8n) (x^3-3x) phi(x)."""
    if n < 1:
        raise ValueError("n must be positive, got %d." % n)
    if np.isinf(x):
        return 1.0 if x > 0 else 0.0
    return float(gaussian_cdf(x) - (beta4 - 3) / (8.0 * n) * (x**3 - 3 * x) * gaussian_pdf(x))
