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

"""Moment tensors of standardized test distributions.

A :class:`MomentSet` stores mu_alpha = E X^alpha for every multi-index
1 <= |alpha| <= m (dense). Values are either exact (:obj:`fractions.Fraction`)
or floating point; :class:`DistributionSpec` supplies analytic moment rules
and seeded samplers for the catalog of test laws.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt, sqrt

import numpy as np

from .multiindex import MultiIndex, enumerate_up_to, enumerate_degree, monomial, \
    format_multi_index, parse_multi_index


EXACT = "exact"
FLOAT = "float"

MAX_ANALYTIC_ORDER = 8


def is_exact(v):
    return isinstance(v, (int, Fraction)) and not isinstance(v, bool)


def format_value(v):
    if is_exact(v):
        return str(Fraction(v))
    return "%.17g" % v


def parse_value(text, mode):
    if mode == EXACT:
        return Fraction(text.strip())
    return float(text)


class TensorSet:
    """Dense association multi-index -> scalar for 1 <= |alpha| <= m.

    Shared by :class:`MomentSet` and :class:`~edgekit.cumulants.CumulantSet`.

    Parameters
    ----------
    k : int
        Dimension
    m : int
        Maximum order
    values : dict
        Mapping from multi-index (tuple or :obj:`MultiIndex`) to value.
        Every index of degree 1..m must be present.
    """
    kind = "tensor"

    def __init__(self, k, m, values):
        if k < 1:
            raise ValueError("Dimension k must be positive, got %d." % k)
        if m < 1:
            raise ValueError("Order m must be positive, got %d." % m)
        self._k = k
        self._m = m
        self._values = {}
        for alpha in enumerate_up_to(k, m):
            if alpha not in values:
                raise ValueError("%s of order %d is not dense: missing %s." %
                                 (self.kind, m, format_multi_index(alpha)))
            self._values[alpha] = values[alpha]
        self._mode = EXACT if all(is_exact(v) for v in self._values.values()) else FLOAT

    @property
    def k(self):
        return self._k

    @property
    def m(self):
        return self._m

    @property
    def arithmetic_mode(self):
        """'exact' (all values rational) or 'float'."""
        return self._mode

    def __getitem__(self, alpha):
        return self._values[MultiIndex(alpha)]

    def __contains__(self, alpha):
        return MultiIndex(alpha) in self._values

    def __iter__(self):
        return iter(self._values)

    def __len__(self):
        return len(self._values)

    def __eq__(self, other):
        return type(self) is type(other) and self._k == other._k and \
            self._m == other._m and self._values == other._values

    def items(self):
        """(alpha, value) pairs in canonical order."""
        return self._values.items()

    def of_degree(self, d):
        return {alpha: self._values[alpha] for alpha in enumerate_degree(self._k, d)}

    def as_float(self):
        return type(self)(self._k, self._m, {a: float(v) for a, v in self._values.items()})

    def map_values(self, f):
        """New set of the same type with f(alpha, value) as values."""
        return type(self)(self._k, self._m, {a: f(a, v) for a, v in self._values.items()})

    def to_text(self):
        """Line-record serialization.

        A header line ``# <kind> k=<k> m=<m> mode=<mode>`` followed by one
        ``alpha;value`` record per index in canonical order.
        """
        lines = ["# %s k=%d m=%d mode=%s" % (self.kind, self._k, self._m, self._mode)]
        for alpha, v in self._values.items():
            lines.append("%s;%s" % (format_multi_index(alpha), format_value(v)))
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text):
        lines = [l for l in text.splitlines() if l.strip()]
        if not lines or not lines[0].startswith("#"):
            raise ValueError("Missing header line in %s file." % cls.kind)
        header = dict(e.split("=", 1) for e in lines[0][1:].split() if "=" in e)
        try:
            k = int(header["k"])
            m = int(header["m"])
            mode = header.get("mode", FLOAT)
        except KeyError as e:
            raise ValueError("Header of %s file lacks %s." % (cls.kind, e))
        values = {}
        for line in lines[1:]:
            alpha, value = line.split(";")
            values[parse_multi_index(alpha)] = parse_value(value, mode)
        return cls(k, m, values)

    def write(self, path):
        with open(path, "w") as f:
            f.write(self.to_text())

    @classmethod
    def read(cls, path):
        with open(path) as f:
            return cls.from_text(f.read())

    def __repr__(self):
        return "%s(k=%d, m=%d, mode=%s)" % (type(self).__name__, self._k, self._m, self._mode)


class MomentSet(TensorSet):
    """Moments mu_alpha = E X^alpha, 1 <= |alpha| <= m.

    Parameters
    ----------
    standardized : bool, optional
        Assert zero mean and identity covariance on construction.
        Default: False
    """
    kind = "moments"

    def __init__(self, k, m, values, standardized=False):
        TensorSet.__init__(self, k, m, values)
        if standardized:
            report = check_standardized(self, 0 if self.arithmetic_mode == EXACT else 1e-12)
            if not (report.mean_ok and report.covariance_ok):
                raise ValueError("Moments flagged standardized are not: %s" % report)

    def moment(self, alpha):
        """mu_alpha, with mu_0 = 1."""
        alpha = MultiIndex(alpha)
        if alpha.degree == 0:
            return 1
        return self[alpha]


class CoordinateLaw:
    """One-dimensional law of a single coordinate of a product spec."""
    name = None
    support = None

    def moment(self, p):
        """E X^p; exact when possible."""
        raise NotImplementedError

    def sample(self, rng, size):
        raise NotImplementedError

    @property
    def params(self):
        return {}


class Rademacher(CoordinateLaw):
    """X = +-1 with probability 1/2 each."""
    name = "rademacher"
    support = ((-1.0, 1.0), (Fraction(1, 2), Fraction(1, 2)))

    def moment(self, p):
        return Fraction(1 if p % 2 == 0 else 0)

    def sample(self, rng, size):
        return 2.0 * rng.integers(0, 2, size=size) - 1.0


class Uniform(CoordinateLaw):
    """Uniform on [-sqrt(3), sqrt(3)]."""
    name = "uniform"

    def moment(self, p):
        if p % 2:
            return Fraction(0)
        return Fraction(3**(p // 2), p + 1)

    def sample(self, rng, size):
        return rng.uniform(-sqrt(3), sqrt(3), size=size)


class ThreePoint(CoordinateLaw):
    """Symmetric {-a, 0, a} with P(+-a) = 1/(2a^2); fourth moment a^2.

    Parameters
    ----------
    a2 : rational >= 1
        The squared atom location a^2 (= mu_4).
    """
    name = "three-point"

    def __init__(self, a2=2):
        a2 = Fraction(a2)
        if a2 < 1:
            raise ValueError("three-point law needs a2 >= 1, got %s." % a2)
        self.a2 = a2
        a = exact_sqrt(a2)
        pa = 1 / (2 * a2)
        self.support = ((-float(a), 0.0, float(a)), (pa, 1 - 2 * pa, pa))

    @property
    def params(self):
        return {"a2": format_value(self.a2)}

    def moment(self, p):
        if p == 0:
            return Fraction(1)
        if p % 2:
            return Fraction(0)
        return self.a2**(p // 2 - 1)

    def sample(self, rng, size):
        values, probs = self.support
        return rng.choice(np.array(values), size=size, p=np.array(probs, dtype=float))


class Gaussian(CoordinateLaw):
    """Standard normal coordinate (control case)."""
    name = "gaussian"

    def moment(self, p):
        if p % 2:
            return Fraction(0)
        ret = 1
        for j in range(p - 1, 0, -2):
            ret *= j
        return Fraction(ret)

    def sample(self, rng, size):
        return rng.standard_normal(size=size)


class AsymmetricTwoPoint(CoordinateLaw):
    """Standardized two-point law {-b, c} with P(c) = p and nonzero third moment.

    c = sqrt((1-p)/p), b = sqrt(p/(1-p)). The default p = 1/5 gives the
    rational atoms {-1/2, 2} and mu_3 = 3/2.
    """
    name = "asymmetric"

    def __init__(self, p=Fraction(1, 5)):
        p = Fraction(p)
        if not 0 < p < 1:
            raise ValueError("asymmetric law needs 0 < p < 1, got %s." % p)
        self.p = p
        self.c = exact_sqrt((1 - p) / p)
        self.b = exact_sqrt(p / (1 - p))
        self.support = ((-float(self.b), float(self.c)), (1 - p, p))

    @property
    def params(self):
        return {"p": format_value(self.p)}

    def moment(self, r):
        return self.p * self.c**r + (1 - self.p) * (-self.b)**r

    def sample(self, rng, size):
        values, probs = self.support
        return rng.choice(np.array(values), size=size, p=np.array(probs, dtype=float))


def exact_sqrt(q):
    """sqrt of a rational, as a Fraction when it is a perfect square, else float."""
    q = Fraction(q)
    num, den = isqrt(q.numerator), isqrt(q.denominator)
    if num * num == q.numerator and den * den == q.denominator:
        return Fraction(num, den)
    return sqrt(q)


class DistributionSpec:
    """Law of the summand X_1 in R^k: i.i.d. coordinates following ``law``.

    Parameters
    ----------
    law : :obj:`CoordinateLaw`
        Law of every coordinate
    k : int
        Dimension

    Examples
    --------

    >>> spec = DistributionSpec(Rademacher(), 2)
    >>> spec.discrete_support
    True
    """
    def __init__(self, law, k):
        if k < 1:
            raise ValueError("Dimension k must be positive, got %d." % k)
        self.law = law
        self.k = k

    @property
    def name(self):
        return self.law.name

    @property
    def params(self):
        return self.law.params

    @property
    def max_order(self):
        return MAX_ANALYTIC_ORDER

    def moment(self, alpha):
        """Analytic mu_alpha; factorizes across coordinates."""
        ret = Fraction(1)
        for e in alpha:
            ret = ret * self.law.moment(e)
        return ret

    @property
    def standardized(self):
        return self.law.moment(1) == 0 and self.law.moment(2) == 1

    @property
    def vanishing_third_moments(self):
        return all(self.moment(a) == 0 for a in enumerate_degree(self.k, 3))

    @property
    def discrete_support(self):
        return self.law.support is not None

    @property
    def support(self):
        """Per-coordinate (values, probabilities), or None for continuous laws."""
        return self.law.support

    def sample(self, rng, size):
        """Draw ``size`` i.i.d. copies of X_1 as a (size, k) array."""
        return self.law.sample(rng, (size, self.k))

    def __repr__(self):
        p = ",".join("%s=%s" % e for e in self.params.items())
        return "DistributionSpec(%s%s, k=%d)" % (self.name, "(%s)" % p if p else "", self.k)


SPEC_CATALOG = {
    "rademacher": Rademacher,
    "uniform": Uniform,
    "three-point": ThreePoint,
    "gaussian": Gaussian,
    "asymmetric": AsymmetricTwoPoint,
}


def get_spec(name, k, **params):
    """Catalog lookup: ``get_spec("three-point", 2, a2=3)``."""
    try:
        law = SPEC_CATALOG[name]
    except KeyError:
        raise ValueError("Unknown distribution '%s'. Available: %s." %
                         (name, ", ".join("'%s'" % e for e in SPEC_CATALOG)))
    return DistributionSpec(law(**params), k)


def analytic_moments(spec, m):
    """Dense exact MomentSet of ``spec`` up to order m.

    Parameters
    ----------
    spec : :obj:`DistributionSpec`
    m : int
        Maximum order, at most ``spec.max_order``

    Returns
    -------
    :obj:`MomentSet`
    """
    if m > spec.max_order:
        raise ValueError("Order %d beyond the moment rule of %s (max %d)." % (m, spec, spec.max_order))
    return MomentSet(spec.k, m, {alpha: spec.moment(alpha) for alpha in enumerate_up_to(spec.k, m)})


def empirical_moments(samples, m):
    """Sample moments: mu_alpha estimated by the mean of X^alpha.

    Parameters
    ----------
    samples : array-like, shape (N, k)
        At least one sample
    m : int
        Maximum order

    Returns
    -------
    :obj:`MomentSet`
        Floating point moments
    """
    X = np.asarray(samples, dtype=float)
    if X.ndim == 1:
        X = X[:, None]
    if X.shape[0] == 0:
        raise ValueError("empirical_moments needs at least one sample.")
    k = X.shape[1]
    values = {alpha: float(np.mean(monomial(alpha, X.T))) for alpha in enumerate_up_to(k, m)}
    return MomentSet(k, m, values)


@dataclass(frozen=True)
class StandardizationReport:
    """Outcome of :func:`check_standardized`.

    ``third_ok`` and ``third_violation`` are None when the set has order < 3.
    """
    tol: float
    mean_ok: bool
    mean_violation: float
    covariance_ok: bool
    covariance_violation: float
    third_ok: object = None
    third_violation: object = None

    @property
    def passed(self):
        return self.mean_ok and self.covariance_ok and self.third_ok is not False

    @property
    def worst_violation(self):
        return max(e for e in (self.mean_violation, self.covariance_violation, self.third_violation)
                   if e is not None)


def check_standardized(ms, tol):
    """Check the hypotheses on X_1: zero mean, unit covariance, zero third moments.

    Parameters
    ----------
    ms : :obj:`MomentSet`
    tol : float >= 0
        A condition passes when its largest absolute violation is <= tol

    Returns
    -------
    :obj:`StandardizationReport`
    """
    def worst(deviations):
        return max((abs(e) for e in deviations), default=0)

    mean = worst(ms[a] for a in enumerate_degree(ms.k, 1))
    cov = worst(ms[a] - (1 if a.pattern == (2,) else 0) for a in enumerate_degree(ms.k, 2)) \
        if ms.m >= 2 else None
    third = worst(ms[a] for a in enumerate_degree(ms.k, 3)) if ms.m >= 3 else None
    return StandardizationReport(
        tol=tol,
        mean_ok=mean <= tol, mean_violation=mean,
        covariance_ok=cov is not None and cov <= tol, covariance_violation=cov,
        third_ok=None if third is None else third <= tol, third_violation=third)
