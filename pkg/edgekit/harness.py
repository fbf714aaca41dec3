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
"""
Rate experiments: discrepancy between the law of sum_j theta_j X_j and its
Gaussian or Edgeworth approximation over a finite family of sets, averaged
over random weights theta on the sphere, with fitted log-log slopes in n.

Approximation modes
-------------------
``plain``
    the standard Gaussian measure
``edgeworth[:sign[:scale]]``
    the order-2 correction built from the fourth cumulants only (third
    cumulants treated as zero)
``edgeworth-full[:sign]``
    the generic order-2 expansion from all cumulants of the weighted sum
"""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
import json
import logging

import numpy as np
from numpy import inf

from . import __version__
from .moments import get_spec, DistributionSpec
from .cumulants import CumulantSet, cumulants_of_spec, drop_degree
from .edgeworth import EdgeworthExpansion, bobkov_g_cdf, SUBSTITUTION_PLUS, PAPER_MINUS, \
    SIGN_CONVENTIONS, PER_THETA, AVERAGED, SCALE_CONVENTIONS
from .measures import Box, gaussian_measure, expansion_measure_box, expansion_measure_mc
from .hermite import gaussian_cdf
from .weighted_sums import ExactSumLaw, sample_sphere, equal_weights, sample_weighted_sum, MAX_EXACT_N
from .families import family_from_config
from .report import RateReport, fit_slope
from .errors import ConfigError, NumericError

logger = logging.getLogger('edgekit')

PLAIN = "plain"
EDGEWORTH = "edgeworth"
EDGEWORTH_FULL = "edgeworth-full"
MODE_KINDS = (PLAIN, EDGEWORTH, EDGEWORTH_FULL)

DEFAULT_THETA_DRAWS = 200
DEFAULT_MC_SAMPLES = 100000
BOBKOV_TOL = 1e-12


@dataclass(frozen=True)
class Mode:
    """Parsed approximation mode."""
    kind: str
    sign: str = SUBSTITUTION_PLUS
    scale: str = PER_THETA

    @property
    def name(self):
        if self.kind == PLAIN:
            return PLAIN
        if self.kind == EDGEWORTH_FULL:
            return "%s:%s" % (self.kind, self.sign)
        return "%s:%s:%s" % (self.kind, self.sign, self.scale)

    @property
    def rate_exponent(self):
        """p in the implied constant mean_delta * n^p."""
        return 1.0 if self.kind == PLAIN else 1.5

    def __str__(self):
        return self.name


def parse_mode(text):
    """Mode from its text form.

    Examples
    --------

    >>> parse_mode("edgeworth:paper-minus")
    Mode(kind='edgeworth', sign='paper-minus', scale='per-theta')
    """
    if isinstance(text, Mode):
        return text
    parts = str(text).split(":")
    kind = parts[0]
    if kind not in MODE_KINDS:
        raise ConfigError("Unknown mode '%s'. Use one of %s." % (text, ", ".join(MODE_KINDS)))
    if kind == PLAIN:
        if len(parts) > 1:
            raise ConfigError("Mode 'plain' takes no options, got '%s'." % text)
        return Mode(PLAIN)
    max_parts = 2 if kind == EDGEWORTH_FULL else 3
    if len(parts) > max_parts:
        raise ConfigError("Too many options in mode '%s'." % text)
    sign = parts[1] if len(parts) > 1 else SUBSTITUTION_PLUS
    scale = parts[2] if len(parts) > 2 else PER_THETA
    if sign not in SIGN_CONVENTIONS:
        raise ConfigError("Unknown sign convention '%s' in mode '%s'." % (sign, text))
    if scale not in SCALE_CONVENTIONS:
        raise ConfigError("Unknown scale convention '%s' in mode '%s'." % (scale, text))
    return Mode(kind, sign, scale)


@dataclass(frozen=True)
class ExperimentConfig:
    """Immutable description of a rate experiment.

    Build it with :meth:`from_dict` or :meth:`from_json`; the JSON keys are
    spec, k, n_grid, theta_draws, family, estimator, modes, seed, theta and
    threads.
    """
    spec: str
    k: int
    n_grid: tuple
    spec_params: dict = field(default_factory=dict)
    theta_draws: int = DEFAULT_THETA_DRAWS
    family: object = None
    estimator: str = "exact"
    mc_samples: int = None
    modes: tuple = (PLAIN, EDGEWORTH)
    seed: int = 0
    theta: str = "sphere"
    threads: int = 1

    def __post_init__(self):
        if len(self.n_grid) < 3:
            raise ConfigError("The n grid needs at least 3 points for slope fitting, got %s." %
                              list(self.n_grid))
        if any(n < 1 for n in self.n_grid) or any(a >= b for a, b in zip(self.n_grid, self.n_grid[1:])):
            raise ConfigError("The n grid must be positive and strictly ascending, got %s." %
                              list(self.n_grid))
        if self.theta_draws < 1:
            raise ConfigError("theta_draws must be positive, got %d." % self.theta_draws)
        if self.threads < 1:
            raise ConfigError("threads must be positive, got %d." % self.threads)
        if self.theta not in ("sphere", "equal"):
            raise ConfigError("theta must be 'sphere' or 'equal', got '%s'." % self.theta)
        if not self.modes:
            raise ConfigError("At least one mode is required.")
        for m in self.modes:
            parse_mode(m)
        spec = self.get_spec()
        family = self.get_family()
        if self.estimator == "exact":
            if spec.name != "gaussian":
                if not spec.discrete_support:
                    raise ConfigError("The exact estimator needs a discrete spec, got %r." % (spec,))
                if self.n_grid[-1] > MAX_EXACT_N:
                    raise ConfigError("The exact estimator supports n <= %d, got max(n) = %d." %
                                      (MAX_EXACT_N, self.n_grid[-1]))
                if not family.boxes_only:
                    raise ConfigError("The exact estimator handles box families only.")
        elif self.estimator == "mc":
            if self.mc_samples is None or self.mc_samples < 1000:
                raise ConfigError("The mc estimator needs at least 1000 samples, got %s." % self.mc_samples)
        else:
            raise ConfigError("Unknown estimator '%s'. Use 'exact' or {\"mc\": N}." % self.estimator)

    @classmethod
    def from_dict(cls, d):
        d = dict(d)
        unknown = set(d) - {"spec", "k", "n_grid", "theta_draws", "family", "estimator",
                            "modes", "seed", "theta", "threads"}
        if unknown:
            raise ConfigError("Unknown config keys: %s." % ", ".join(sorted(unknown)))
        for key in ("spec", "k", "n_grid"):
            if key not in d:
                raise ConfigError("Config lacks required key '%s'." % key)
        spec = d.pop("spec")
        params = {}
        if isinstance(spec, dict):
            params = dict(spec)
            spec = params.pop("name", None)
        if not isinstance(spec, str):
            raise ConfigError("spec must be a name or {\"name\": ...}, got %r." % (spec,))
        estimator = d.pop("estimator", "exact")
        mc_samples = None
        if isinstance(estimator, dict):
            if set(estimator) != {"mc"}:
                raise ConfigError("Estimator object must be {\"mc\": N}, got %r." % (estimator,))
            mc_samples = int(estimator["mc"])
            estimator = "mc"
        modes = d.pop("modes", [PLAIN, EDGEWORTH])
        if isinstance(modes, str):
            modes = [modes]
        try:
            return cls(spec=spec, spec_params=params, k=int(d.pop("k")),
                       n_grid=tuple(int(n) for n in d.pop("n_grid")),
                       estimator=estimator, mc_samples=mc_samples,
                       modes=tuple(str(parse_mode(m)) for m in modes), **d)
        except TypeError as e:
            raise ConfigError("Malformed config: %s" % e)

    @classmethod
    def from_json(cls, text):
        try:
            d = json.loads(text)
        except json.JSONDecodeError as e:
            raise ConfigError("Config is not valid JSON: %s" % e)
        if not isinstance(d, dict):
            raise ConfigError("Config must be a JSON object.")
        return cls.from_dict(d)

    @classmethod
    def read(cls, path):
        try:
            with open(path) as f:
                return cls.from_json(f.read())
        except OSError as e:
            raise ConfigError("Cannot read config '%s': %s" % (path, e))

    def override(self, **kwargs):
        """Copy with the given non-None values replaced (CLI flags)."""
        return replace(self, **{k: v for k, v in kwargs.items() if v is not None})

    def get_spec(self):
        try:
            return get_spec(self.spec, self.k, **self.spec_params)
        except (ValueError, TypeError) as e:
            raise ConfigError(str(e))

    def get_family(self):
        return family_from_config(self.family, self.k)

    def get_modes(self):
        return [parse_mode(m) for m in self.modes]

    def to_dict(self):
        """Config echo in the JSON key layout."""
        spec = dict(name=self.spec, **self.spec_params) if self.spec_params else self.spec
        return {"spec": spec, "k": self.k, "n_grid": list(self.n_grid),
                "theta_draws": self.theta_draws, "family": self.get_family().describe(),
                "estimator": "exact" if self.estimator == "exact" else {"mc": self.mc_samples},
                "modes": list(self.modes), "seed": self.seed, "theta": self.theta}


def true_probabilities(spec, theta, sets, estimator="exact", seed=None, mc_samples=None):
    """P(sum_j theta_j X_j in B) for every B in ``sets``.

    The exact estimator enumerates discrete specs; a Gaussian spec gives the
    standard Gaussian law for any theta on the sphere. The mc estimator
    shares one batch of samples across all sets.
    """
    if estimator == "exact":
        if spec.name == "gaussian":
            return np.array([gaussian_measure(s) for s in sets])
        law = ExactSumLaw(spec, theta)
        for s in sets:
            if not isinstance(s, Box):
                raise ConfigError("The exact estimator handles boxes only, got %s." % (s,))
        return np.array([law.box_probability(s) for s in sets])
    if estimator == "mc":
        if mc_samples is None:
            raise ConfigError("The mc estimator needs a sample count.")
        S = sample_weighted_sum(spec, theta, seed, mc_samples).T
        return np.array([np.count_nonzero(s.contains(S)) / mc_samples for s in sets])
    raise ConfigError("Unknown estimator '%s'." % (estimator,))


def mode_expansion(base, theta, mode):
    """Expansion used by an Edgeworth mode, from the summand cumulants ``base``."""
    mode = parse_mode(mode)
    if mode.kind == EDGEWORTH:
        return EdgeworthExpansion.for_weighted_sum(drop_degree(base, 3), s=2, theta=theta,
                                                   n=len(theta), scale=mode.scale, sign=mode.sign)
    if mode.kind == EDGEWORTH_FULL:
        return EdgeworthExpansion.for_weighted_sum(base, s=2, theta=theta, sign=mode.sign)
    raise ValueError("Mode '%s' has no expansion." % mode)


def approximate_probabilities(base, theta, sets, mode, seed=None, mc_samples=DEFAULT_MC_SAMPLES):
    """Approximation measure of every set under ``mode``."""
    mode = parse_mode(mode)
    if mode.kind == PLAIN:
        return np.array([gaussian_measure(s) for s in sets])
    e = mode_expansion(base, theta, mode)
    ret = []
    for s in sets:
        if isinstance(s, Box):
            ret.append(expansion_measure_box(e, s))
        else:
            ret.append(expansion_measure_mc(e, s, mc_samples, seed)[0])
    return np.array(ret)


def delta_for_theta(spec, theta, mode, family, estimator="exact", seed=None, mc_samples=None):
    """max over the family of |P(sum_j theta_j X_j in B) - approx(B)|.

    Parameters
    ----------
    spec : :obj:`~edgekit.moments.DistributionSpec`
    theta : sequence of float
        Weights on the unit sphere
    mode : str or :obj:`Mode`
    family : callable or list
        A set family (see :mod:`edgekit.families`) or a list of sets
    estimator : str, optional
        'exact' or 'mc'
        Default: 'exact'
    seed : int or :obj:`numpy.random.SeedSequence`, optional
        Needed by Monte Carlo estimates
    mc_samples : int, optional
        Sample count of the mc estimator

    Examples
    --------

    >>> from edgekit import get_spec, equal_weights
    >>> delta_for_theta(get_spec("rademacher", 1), equal_weights(2), "plain", [Box([-inf], [0])])
    0.25
    """
    sets = family() if callable(family) else list(family)
    if not sets:
        raise ConfigError("The set family is empty.")
    truth_seed, approx_seed = np.random.SeedSequence(seed).spawn(2) \
        if not isinstance(seed, np.random.SeedSequence) else seed.spawn(2)
    truth = true_probabilities(spec, theta, sets, estimator, truth_seed, mc_samples)
    base = cumulants_of_spec(spec, 4)
    approx = approximate_probabilities(base, theta, sets, mode, approx_seed,
                                       mc_samples or DEFAULT_MC_SAMPLES)
    return float(np.max(np.abs(truth - approx)))


@dataclass(frozen=True)
class BobkovCheck:
    """Agreement of the one-dimensional expansion with the printed G."""
    xs: tuple
    bobkov: tuple
    substitution_plus: tuple
    paper_minus: tuple
    magnitude_error: float
    agreeing: tuple

    def to_dict(self):
        return {"magnitude_error": self.magnitude_error, "agreeing_conventions": list(self.agreeing)}


def bobkov_check(beta4, n, xs=None):
    """Compare the s = 2 box measures of (-inf, x] with bobkov_g_cdf.

    Both sign conventions use equal weights with the averaged scale 3/n.
    ``agreeing`` lists the conventions reproducing G within 1e-12 (both when
    beta4 = 3, where every correction vanishes).
    """
    if xs is None:
        xs = np.linspace(-4, 4, 50)
    kappa4 = beta4 - 3
    cs = CumulantSet(1, 4, {(1,): 0, (2,): 1, (3,): 0, (4,): kappa4})
    phi = [float(gaussian_cdf(x)) for x in xs]
    g = [float(bobkov_g_cdf(beta4, n, x)) for x in xs]
    rows = {}
    for sign in SIGN_CONVENTIONS:
        e = EdgeworthExpansion.for_weighted_sum(cs, s=2, n=n, scale=AVERAGED, sign=sign)
        rows[sign] = [expansion_measure_box(e, Box([-inf], [x])) for x in xs]
    magnitude = max(abs(abs(a - p) - abs(b - p)) for a, b, p in zip(rows[SUBSTITUTION_PLUS], g, phi))
    agreeing = tuple(sign for sign in SIGN_CONVENTIONS
                     if max(abs(a - b) for a, b in zip(rows[sign], g)) <= BOBKOV_TOL)
    return BobkovCheck(tuple(float(x) for x in xs), tuple(g), tuple(rows[SUBSTITUTION_PLUS]),
                       tuple(rows[PAPER_MINUS]), float(magnitude), agreeing)


class RateExperiment:
    """Runner behind :func:`rate_experiment`.

    Cells (n index, draw index) get the substream
    ``SeedSequence(seed, spawn_key=(i, r))`` and are aggregated in cell order,
    so that the report does not depend on the number of threads.
    """
    def __init__(self, cfg):
        self.cfg = cfg
        self.spec = cfg.get_spec()
        self.sets = cfg.get_family()()
        self.modes = cfg.get_modes()
        self.base = cumulants_of_spec(self.spec, 4)
        self._logger = logger.getChild(self.__class__.__name__)

    def theta(self, n, ss):
        if self.cfg.theta == "equal":
            return equal_weights(n)
        return sample_sphere(n, ss)

    def run_cell(self, cell):
        i, r = cell
        n = self.cfg.n_grid[i]
        ss = np.random.SeedSequence(self.cfg.seed, spawn_key=(i, r))
        theta_ss, truth_ss, approx_ss = ss.spawn(3)
        theta = self.theta(n, theta_ss)
        truth = true_probabilities(self.spec, theta, self.sets, self.cfg.estimator,
                                   truth_ss, self.cfg.mc_samples)
        ret = []
        for mode in self.modes:
            approx = approximate_probabilities(self.base, theta, self.sets, mode, approx_ss,
                                               self.cfg.mc_samples or DEFAULT_MC_SAMPLES)
            ret.append(float(np.max(np.abs(truth - approx))))
        self._logger.debug("n=%d draw=%d deltas=%s", n, r, ret)
        return ret

    def deltas(self):
        """Array of shape (len(n_grid), theta_draws, len(modes))."""
        cfg = self.cfg
        R = cfg.theta_draws
        ret = np.empty((len(cfg.n_grid), R, len(self.modes)))
        for i, n in enumerate(cfg.n_grid):
            cells = [(i, r) for r in range(R)]
            if cfg.threads > 1:
                with ThreadPoolExecutor(max_workers=cfg.threads) as pool:
                    results = list(pool.map(self.run_cell, cells))
            else:
                results = [self.run_cell(c) for c in cells]
            ret[i] = np.array(results)
            self._logger.info("n=%d: mean deltas %s", n,
                              ", ".join("%s=%.3e" % (m, v) for m, v in zip(self.modes, ret[i].mean(axis=0))))
        return ret

    def aggregate(self, deltas):
        cfg = self.cfg
        bad = np.argwhere(~np.isfinite(deltas))
        if len(bad):
            i, r, j = bad[0]
            raise NumericError("Non-finite delta at n=%d, draw %d, mode %s (%d bad cells)." %
                               (cfg.n_grid[i], r, self.modes[j], len(bad)))
        R = deltas.shape[1]
        rows = []
        for i, n in enumerate(cfg.n_grid):
            for j, mode in enumerate(self.modes):
                d = deltas[i, :, j]
                rows.append({"n": n, "mode": mode.name,
                             "mean_delta": float(np.mean(d)),
                             "stderr_delta": float(np.std(d, ddof=1) / np.sqrt(R)) if R > 1 else 0.0,
                             "q50": float(np.quantile(d, 0.5)),
                             "q90": float(np.quantile(d, 0.9))})
        fits = {}
        for j, mode in enumerate(self.modes):
            means = deltas[:, :, j].mean(axis=1)
            fit = fit_slope(cfg.n_grid, means)
            if fit["slope"] is None:
                self._logger.warning("Mode %s: no slope fit, some mean delta is not positive.", mode)
            fit["implied_constants"] = [float(v * n**mode.rate_exponent) for v, n in zip(means, cfg.n_grid)]
            fit["rate_exponent"] = mode.rate_exponent
            fits[mode.name] = fit
        return rows, fits

    def metadata(self):
        law_1d = DistributionSpec(self.spec.law, 1)
        check = bobkov_check(float(law_1d.moment((4,))), self.cfg.n_grid[0])
        return {"config": self.cfg.to_dict(), "seed": self.cfg.seed, "version": __version__,
                "bobkov": check.to_dict()}

    def run(self):
        rows, fits = self.aggregate(self.deltas())
        return RateReport(rows, fits, self.metadata())


def rate_experiment(cfg):
    """Discrepancy table and fitted slopes for every mode of ``cfg``.

    Parameters
    ----------
    cfg : :obj:`ExperimentConfig` or dict

    Returns
    -------
    :obj:`~edgekit.report.RateReport`
    """
    if isinstance(cfg, dict):
        cfg = ExperimentConfig.from_dict(cfg)
    return RateExperiment(cfg).run()
