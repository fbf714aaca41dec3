import os
import tempfile
import unittest
from fractions import Fraction

import numpy as np

from edgekit import get_spec, analytic_moments, empirical_moments, check_standardized, MomentSet
from edgekit.moments import SPEC_CATALOG, exact_sqrt
from problems import random_moments, moment_zscores


class MomentTests(unittest.TestCase):

    def test_rademacher(self):
        ms = analytic_moments(get_spec("rademacher", 2), 4)
        self.assertEqual(ms.arithmetic_mode, "exact")
        self.assertEqual(ms[(1, 0)], 0)
        self.assertEqual(ms[(2, 0)], 1)
        self.assertEqual(ms[(1, 1)], 0)
        self.assertEqual(ms[(2, 2)], 1)
        self.assertEqual(ms[(4, 0)], 1)
        self.assertEqual(ms[(3, 1)], 0)
        self.assertEqual(ms.moment((0, 0)), 1)

    def test_catalog_values(self):
        self.assertEqual(get_spec("uniform", 1).moment((4,)), Fraction(9, 5))
        self.assertEqual(get_spec("gaussian", 1).moment((6,)), 15)
        self.assertEqual(get_spec("three-point", 1).moment((4,)), 2)
        self.assertEqual(get_spec("three-point", 1, a2=5).moment((6,)), 25)
        spec = get_spec("asymmetric", 1)
        self.assertEqual(spec.moment((1,)), 0)
        self.assertEqual(spec.moment((2,)), 1)
        self.assertEqual(spec.moment((3,)), Fraction(3, 2))
        self.assertEqual(spec.moment((4,)), Fraction(13, 4))
        self.assertEqual(spec.support[0], (-0.5, 2.0))
        self.assertFalse(spec.vanishing_third_moments)

    def test_catalog_standardized(self):
        for name in SPEC_CATALOG:
            spec = get_spec(name, 2)
            self.assertTrue(spec.standardized, name)
            report = check_standardized(analytic_moments(spec, 4), 0)
            self.assertTrue(report.mean_ok and report.covariance_ok, name)
            self.assertEqual(report.third_ok, name != "asymmetric")

    def test_discrete_support(self):
        self.assertTrue(get_spec("rademacher", 1).discrete_support)
        self.assertTrue(get_spec("three-point", 3).discrete_support)
        self.assertFalse(get_spec("uniform", 1).discrete_support)
        values, probs = get_spec("three-point", 1, a2=4).support
        self.assertEqual(values, (-2.0, 0.0, 2.0))
        self.assertEqual(sum(probs), 1)

    def test_errors(self):
        with self.assertRaises(ValueError):
            get_spec("cauchy", 1)
        with self.assertRaises(ValueError):
            get_spec("three-point", 1, a2=Fraction(1, 2))
        with self.assertRaises(ValueError):
            analytic_moments(get_spec("rademacher", 1), 9)
        with self.assertRaises(ValueError):
            MomentSet(2, 2, {(1, 0): 0, (0, 1): 0, (2, 0): 1})

    def test_standardized_flag(self):
        with self.assertRaises(ValueError):
            MomentSet(1, 2, {(1,): Fraction(1, 3), (2,): 1}, standardized=True)
        report = check_standardized(MomentSet(1, 2, {(1,): 1e-13, (2,): 1 + 2e-13}), 1e-12)
        self.assertTrue(report.passed)
        self.assertIsNone(report.third_ok)
        self.assertAlmostEqual(report.worst_violation, 2e-13, places=15)
        self.assertFalse(check_standardized(MomentSet(1, 2, {(1,): 0, (2,): 1.5}), 1e-12).passed)

    def test_empirical(self):
        spec = get_spec("uniform", 2)
        X = spec.sample(np.random.default_rng(1), 200000)
        self.assertEqual(X.shape, (200000, 2))
        ms = empirical_moments(X, 4)
        self.assertEqual(ms.arithmetic_mode, "float")
        for alpha, z in moment_zscores(ms, spec, 200000).items():
            self.assertLess(z, 5, alpha)

    def test_empirical_gaussian_fourth_moment(self):
        spec = get_spec("gaussian", 1)
        N = 1000000
        ms = empirical_moments(spec.sample(np.random.default_rng(2), N), 4)
        self.assertLess(moment_zscores(ms, spec, N)[(4,)], 5)
        self.assertAlmostEqual(ms[(4,)], 3, delta=5 * np.sqrt(96 / N))

    def test_empirical_rademacher_converges(self):
        spec = get_spec("rademacher", 1)
        rng = np.random.default_rng(3)
        for N in (1000, 10000, 100000):
            ms = empirical_moments(spec.sample(rng, N), 4)
            self.assertEqual(ms[(2,)], 1.0)
            self.assertLessEqual(abs(ms[(1,)]), 5 / np.sqrt(N))
            self.assertLessEqual(abs(ms[(3,)]), 5 / np.sqrt(N))

    def test_text_form(self):
        ms = random_moments(2, 3, np.random.default_rng(3))
        self.assertEqual(MomentSet.from_text(ms.to_text()), ms)
        text = ms.to_text().splitlines()
        self.assertEqual(text[0], "# moments k=2 m=3 mode=exact")
        self.assertTrue(text[1].startswith("1,0;"))
        with tempfile.TemporaryDirectory() as d:
            path = os.path.join(d, "m.txt")
            analytic_moments(get_spec("gaussian", 1), 6).as_float().write(path)
            back = MomentSet.read(path)
        self.assertEqual(back.arithmetic_mode, "float")
        self.assertEqual(back[(6,)], 15.0)

    def test_exact_sqrt(self):
        self.assertEqual(exact_sqrt(Fraction(9, 4)), Fraction(3, 2))
        self.assertAlmostEqual(exact_sqrt(2), 2**0.5)


if __name__ == '__main__':
    unittest.main()
