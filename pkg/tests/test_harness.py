import doctest
import json
import tempfile
import unittest

import numpy as np
from numpy import inf

import edgekit.harness
import edgekit.report
from edgekit import get_spec, equal_weights, sample_sphere, Box, ExperimentConfig, delta_for_theta, \
    rate_experiment, ConfigError, NumericError, HalfLineFamily
from edgekit.harness import parse_mode, Mode, RateExperiment
from edgekit.report import fit_slope, dump_json, RateReport, CSV_COLUMNS
from problems import rate_config


class ModeTests(unittest.TestCase):

    def test_parse(self):
        self.assertEqual(parse_mode("plain"), Mode("plain"))
        m = parse_mode("edgeworth")
        self.assertEqual((m.sign, m.scale), ("substitution-plus", "per-theta"))
        self.assertEqual(parse_mode("edgeworth:paper-minus:averaged").scale, "averaged")
        self.assertEqual(parse_mode("edgeworth-full").name, "edgeworth-full:substitution-plus")
        self.assertEqual(parse_mode("plain").rate_exponent, 1.0)
        for text in ("gauss", "plain:x", "edgeworth:minus", "edgeworth:paper-minus:global",
                     "edgeworth-full:paper-minus:averaged"):
            with self.assertRaises(ConfigError):
                parse_mode(text)


class DeltaTests(unittest.TestCase):

    def test_two_rademacher(self):
        d = delta_for_theta(get_spec("rademacher", 1), equal_weights(2), "plain", [Box([-inf], [0])])
        self.assertAlmostEqual(d, 0.25, places=15)

    def test_gaussian_spec(self):
        spec = get_spec("gaussian", 2)
        theta = sample_sphere(5, 0)
        for mode in ("plain", "edgeworth", "edgeworth-full"):
            self.assertLessEqual(delta_for_theta(spec, theta, mode, lambda: [Box([-1, -inf], [0.5, 2])]), 1e-12)

    def test_mc_estimator(self):
        spec = get_spec("rademacher", 1)
        theta = sample_sphere(10, 1)
        family = HalfLineFamily(points=9)
        exact = delta_for_theta(spec, theta, "plain", family)
        mc = delta_for_theta(spec, theta, "plain", family, estimator="mc", seed=4, mc_samples=200000)
        self.assertAlmostEqual(mc, exact, delta=0.01)

    def test_errors(self):
        with self.assertRaises(ConfigError):
            delta_for_theta(get_spec("uniform", 1), equal_weights(3), "plain", [Box([-inf], [0])])
        with self.assertRaises(ConfigError):
            delta_for_theta(get_spec("rademacher", 1), equal_weights(3), "plain", [])


class ConfigTests(unittest.TestCase):

    def test_from_json(self):
        cfg = ExperimentConfig.from_json(json.dumps(rate_config(spec={"name": "three-point", "a2": 3})))
        self.assertEqual(cfg.spec_params, {"a2": 3})
        self.assertEqual(cfg.n_grid, (8, 12, 16, 20, 24))
        self.assertEqual(cfg.theta_draws, 200)
        self.assertEqual(cfg.get_spec().moment((4,)), 3)
        self.assertEqual(cfg.override(seed=5, threads=None).seed, 5)
        cfg = ExperimentConfig.from_dict(rate_config(spec="uniform", estimator={"mc": 5000}))
        self.assertEqual((cfg.estimator, cfg.mc_samples), ("mc", 5000))

    def test_invalid(self):
        for overrides in ({"n_grid": [8, 16]}, {"n_grid": [8, 8, 16]}, {"spec": "uniform"},
                          {"n_grid": [8, 16, 32]}, {"modes": ["edgeworth:minus"]}, {"spec": "cauchy"},
                          {"estimator": {"mc": 10}}, {"estimator": "bootstrap"}, {"theta_draws": 0},
                          {"family": {"sets": ["ball 0 1"]}}, {"colour": "red"}, {"theta": "random"}):
            with self.assertRaises(ConfigError):
                ExperimentConfig.from_dict(rate_config(**overrides))
        with self.assertRaises(ConfigError):
            ExperimentConfig.from_json("[1, 2]")
        with self.assertRaises(ConfigError):
            ExperimentConfig.from_json("{spec: rademacher")
        cfg = ExperimentConfig.from_dict(rate_config(spec="gaussian", n_grid=[10, 40, 90]))
        self.assertEqual(cfg.estimator, "exact")


class ReportTests(unittest.TestCase):

    def test_fit_slope(self):
        ns = np.array([8, 16, 32, 64])
        fit = fit_slope(ns, 3.0 / ns**1.5)
        self.assertAlmostEqual(fit["slope"], -1.5, places=12)
        self.assertAlmostEqual(fit["intercept"], np.log(3.0), places=12)
        self.assertAlmostEqual(fit["residual"], 0.0, places=20)
        self.assertIsNone(fit_slope(ns, [1.0, 0.0, 1.0, 1.0])["slope"])

    def test_dump_json(self):
        self.assertEqual(dump_json({"a": [0.1, None, True]}), '{\n  "a": [\n    0.10000000000000001,\n    null,\n    true\n  ]\n}')
        self.assertEqual(json.loads(dump_json({"x": float("nan")})), {"x": None})

    def test_docstring_examples(self):
        self.assertEqual(doctest.testmod(edgekit.report).failed, 0)
        self.assertEqual(doctest.testmod(edgekit.harness).failed, 0)

    def test_slope_on_tail(self):
        rows = [{"n": n, "mode": "plain", "mean_delta": (2.0 if n < 16 else 1.0) / n, "stderr_delta": 0.0,
                 "q50": 0.0, "q90": 0.0} for n in (8, 12, 16, 20, 24)]
        report = RateReport(rows, {"plain": {"slope": -1.4}}, {})
        self.assertEqual(report.slope("plain"), -1.4)
        self.assertAlmostEqual(report.slope("plain", n_min=16), -1.0, places=12)


class RateTests(unittest.TestCase):

    def test_small_experiment(self):
        cfg = rate_config(n_grid=[4, 6, 8], theta_draws=3, modes=["plain", "edgeworth", "edgeworth-full"])
        report = rate_experiment(cfg)
        self.assertEqual(len(report.rows), 9)
        self.assertEqual(report.modes, ["plain", "edgeworth:substitution-plus:per-theta",
                                        "edgeworth-full:substitution-plus"])
        for row in report.rows:
            self.assertGreaterEqual(row["mean_delta"], 0)
            self.assertEqual(tuple(row), CSV_COLUMNS)
            self.assertLessEqual(row["q50"], row["q90"])
        self.assertEqual(report.metadata["bobkov"]["agreeing_conventions"], ["substitution-plus"])
        csv = report.to_csv().splitlines()
        self.assertEqual(csv[0], "n,mode,mean_delta,stderr_delta,q50,q90")
        self.assertEqual(len(csv), 10)
        with tempfile.TemporaryDirectory() as d:
            paths = report.write(d)
            with open(paths[0]) as f:
                back = json.load(f)
        self.assertEqual(back["metadata"]["seed"], 0)
        self.assertEqual(len(back["rows"]), 9)
        self.assertEqual(set(back["fits"]), set(report.modes))

    def test_determinism(self):
        cfg = rate_config(n_grid=[4, 6, 8], theta_draws=4)
        a = rate_experiment(cfg).to_json()
        self.assertEqual(a, rate_experiment(cfg).to_json())
        self.assertEqual(a, rate_experiment(dict(cfg, threads=3)).to_json())
        self.assertNotEqual(a, rate_experiment(dict(cfg, seed=1)).to_json())

    def test_single_draw(self):
        report = rate_experiment(rate_config(n_grid=[4, 6, 8], theta_draws=1, theta="equal"))
        self.assertTrue(all(r["stderr_delta"] == 0.0 for r in report.rows))

    def test_gaussian_spec(self):
        report = rate_experiment(rate_config(spec="gaussian", n_grid=[4, 8, 16], theta_draws=3))
        for row in report.rows:
            self.assertLessEqual(row["mean_delta"], 1e-10)

    def test_mc_experiment(self):
        cfg = rate_config(spec="uniform", n_grid=[4, 6, 8], theta_draws=2, estimator={"mc": 2000},
                          family={"name": "halfline", "points": 5})
        report = rate_experiment(cfg)
        self.assertTrue(all(np.isfinite(r["mean_delta"]) for r in report.rows))
        self.assertEqual(report.metadata["config"]["estimator"], {"mc": 2000})

    def test_non_finite_aggregation(self):
        runner = RateExperiment(ExperimentConfig.from_dict(rate_config(n_grid=[4, 6, 8], theta_draws=2)))
        deltas = np.ones((3, 2, 2))
        deltas[1, 0, 1] = np.nan
        with self.assertRaises(NumericError):
            runner.aggregate(deltas)


class RateCheckTests(unittest.TestCase):
    """Desk-scale rate check on Rademacher summands (exact enumeration)."""

    @classmethod
    def setUpClass(cls):
        cls.report = rate_experiment(rate_config(modes=["plain", "edgeworth", "edgeworth:paper-minus"]))

    def test_slopes(self):
        plain = self.report.slope("plain")
        corrected = self.report.slope("edgeworth:substitution-plus:per-theta")
        self.assertLessEqual(corrected, -1.30)
        self.assertLess(corrected, plain)
        # n = 8, 12 carry an extra fast-decaying discreteness term (measured slope -1.41)
        self.assertGreaterEqual(plain, -1.60)
        self.assertLessEqual(plain, -0.80)

    def test_plain_slope_large_n(self):
        plain = self.report.slope("plain", n_min=16)
        self.assertGreaterEqual(plain, -1.25)
        self.assertLessEqual(plain, -0.80)
        with self.assertRaises(ValueError):
            self.report.slope("plain", n_min=24)

    def test_mode_ordering(self):
        for n in self.report.n_grid:
            if n < 16:
                continue
            plus = self.report.value(n, "edgeworth:substitution-plus:per-theta")
            minus = self.report.value(n, "edgeworth:paper-minus:per-theta")
            self.assertLess(plus, self.report.value(n, "plain"))
            self.assertGreater(minus, plus)

    def test_implied_constants(self):
        fit = self.report.fits["plain"]
        self.assertEqual(len(fit["implied_constants"]), 5)
        self.assertAlmostEqual(fit["implied_constants"][0], 8 * self.report.value(8, "plain"), places=12)


class HypothesisNecessityTests(unittest.TestCase):
    """With nonzero third moments the fourth-cumulant correction buys nothing over plain."""

    def test_asymmetric_slopes(self):
        report = rate_experiment(rate_config(spec="asymmetric", modes=["plain", "edgeworth", "edgeworth-full"]))
        plain = report.slope("plain")
        corrected = report.slope("edgeworth:substitution-plus:per-theta")
        full = report.slope("edgeworth-full:substitution-plus")
        self.assertGreaterEqual(corrected, plain - 0.25)
        self.assertLessEqual(full, corrected - 0.40)


if __name__ == '__main__':
    unittest.main()
