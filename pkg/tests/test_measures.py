import unittest

import numpy as np
from numpy import inf
from scipy.integrate import quad, dblquad, tplquad
from scipy.stats import chi2

from edgekit import Box, Ball, HalfSpace, parse_set, format_set, gaussian_measure, \
    expansion_measure_box, expansion_measure_mc, expansion_measure, EdgeworthExpansion, \
    cumulants_of_spec, get_spec, equal_weights, DimensionError
from edgekit.hermite import gaussian_cdf, gaussian_density
from problems import standardized_cumulants


class MeasureTests(unittest.TestCase):

    def setUp(self):
        base = cumulants_of_spec(get_spec("rademacher", 2), 4)
        self.e = EdgeworthExpansion.for_weighted_sum(base, theta=equal_weights(6))

    def test_parse(self):
        b = parse_set("box -inf,-1 0.5,inf")
        self.assertEqual(b, Box([-inf, -1], [0.5, inf]))
        self.assertEqual(parse_set(format_set(b)), b)
        ball = parse_set("ball 1,0 2")
        self.assertEqual((ball.center, ball.radius), ((1.0, 0.0), 2.0))
        h = parse_set("halfspace 0.6,0.8 1.5")
        self.assertEqual(h.normal, (0.6, 0.8))
        for text in ("cube 0 1", "box 0", "ball 0,0 -1", "halfspace 1,1 0", "box 1 0"):
            with self.assertRaises(ValueError):
                parse_set(text)

    def test_contains_closed(self):
        b = Box([0, 0], [1, 1])
        pts = np.array([[0.0, 1.0, 1.0 + 1e-9], [1.0, 0.5, 0.5]])
        self.assertEqual(list(b.contains(pts)), [True, True, False])
        self.assertTrue(Ball([0, 0], 1).contains(np.array([[1.0], [0.0]]))[0])
        self.assertTrue(HalfSpace([1, 0], 0.5).contains(np.array([[0.5], [7.0]]))[0])
        with self.assertRaises(DimensionError):
            b.contains(np.zeros((3, 2)))

    def test_gaussian_measure(self):
        self.assertAlmostEqual(gaussian_measure(Box.orthant([0, 0])), 0.25, places=15)
        self.assertEqual(gaussian_measure(Box.whole_space(3)), 1.0)
        self.assertAlmostEqual(gaussian_measure(HalfSpace([0.6, -0.8], 0.7)), float(gaussian_cdf(0.7)), places=15)
        self.assertAlmostEqual(gaussian_measure(Ball([0, 0, 0], 1.5)), chi2.cdf(2.25, 3), places=14)

    def test_one_dimensional_ball(self):
        self.assertAlmostEqual(gaussian_measure(Ball([0], 1)), 0.682689, places=6)
        self.assertAlmostEqual(gaussian_measure(Ball([0], 1)), float(gaussian_cdf(1) - gaussian_cdf(-1)), places=14)

    def test_off_center_ball(self):
        v, _ = dblquad(lambda y, x: float(gaussian_density([x, y])), 0, 2,
                       lambda x: -np.sqrt(max(1 - (x - 1)**2, 0)), lambda x: np.sqrt(max(1 - (x - 1)**2, 0)),
                       epsabs=1e-12, epsrel=1e-12)
        self.assertAlmostEqual(gaussian_measure(Ball([1, 0], 1)), v, delta=1e-8)

    def test_expansion_box(self):
        # on products of half-lines the correction integrates to He_3 phi terms
        b = Box([-inf, -inf], [0.3, inf])
        c = -2 * (1 / 6) / 24
        expected = float(gaussian_cdf(0.3)) + c * (-(0.3**3 - 3 * 0.3)) * float(gaussian_density([0.3]))
        self.assertAlmostEqual(expansion_measure_box(self.e, b), expected, places=14)
        self.assertEqual(expansion_measure_box(self.e, Box.whole_space(2)), 1.0)
        with self.assertRaises(TypeError):
            expansion_measure_box(self.e, Ball([0, 0], 1))

    def test_expansion_box_against_quadrature(self):
        rng = np.random.default_rng(13)
        cs = standardized_cumulants(1, rng, m=4, exact=False, zero_third=False, spread=3)
        e1 = EdgeworthExpansion(cs, s=2)
        v, _ = quad(lambda x: e1.density([x]), -0.7, 1.9, epsabs=1e-13, epsrel=1e-13)
        self.assertAlmostEqual(expansion_measure_box(e1, Box([-0.7], [1.9])), v, delta=1e-10)
        b = Box([-0.5, -1.0], [1.0, 0.7])
        v, _ = dblquad(lambda y, x: self.e.density([x, y]), -0.5, 1.0, -1.0, 0.7, epsabs=1e-12, epsrel=1e-12)
        self.assertAlmostEqual(expansion_measure_box(self.e, b), v, delta=1e-10)
        e3 = EdgeworthExpansion.for_weighted_sum(cumulants_of_spec(get_spec("three-point", 3), 4),
                                                 theta=equal_weights(5))
        v, _ = tplquad(lambda z, y, x: e3.density([x, y, z]), -1.0, 0.5, 0.0, 1.2, -0.3, 0.8,
                       epsabs=1e-11, epsrel=1e-11)
        self.assertAlmostEqual(expansion_measure_box(e3, Box([-1.0, 0.0, -0.3], [0.5, 1.2, 0.8])), v, delta=1e-9)

    def test_rademacher_half_line(self):
        base = cumulants_of_spec(get_spec("rademacher", 1), 4)
        e = EdgeworthExpansion.for_weighted_sum(base, theta=equal_weights(10))
        v, _ = quad(lambda x: e.density([x]), -inf, 1.0, epsabs=1e-13, epsrel=1e-13)
        self.assertAlmostEqual(expansion_measure_box(e, Box([-inf], [1.0])), v, delta=1e-10)
        # kappa_4 l_4 / 24 He_3(1) phi(1) with kappa_4 = -2, l_4 = 1/10
        expected = float(gaussian_cdf(1.0)) - (-2 / 240) * (1 - 3) * float(gaussian_density([1.0]))
        self.assertAlmostEqual(expansion_measure_box(e, Box([-inf], [1.0])), expected, places=14)

    def test_gaussian_order_zero_monotone(self):
        e = EdgeworthExpansion(cumulants_of_spec(get_spec("gaussian", 2), 2), s=0)
        previous = 0.0
        for r in (0.1, 0.5, 1.0, 2.0, 4.0):
            m = expansion_measure_box(e, Box([-r, -r / 2], [r, 2 * r]))
            self.assertGreater(m, previous)
            self.assertAlmostEqual(m, gaussian_measure(Box([-r, -r / 2], [r, 2 * r])), places=14)
            previous = m

    def test_expansion_mc(self):
        b = Box([-0.5, -1.0], [1.0, 0.7])
        exact = expansion_measure_box(self.e, b)
        est, se = expansion_measure_mc(self.e, b, 200000, 7)
        self.assertLess(abs(est - exact), 5 * se)
        self.assertEqual(expansion_measure_mc(self.e, b, 5000, 3), expansion_measure_mc(self.e, b, 5000, 3))
        with self.assertRaises(ValueError):
            expansion_measure_mc(self.e, b, 999, 1)
        with self.assertRaises(ValueError):
            expansion_measure_mc(self.e, b, 0, 1)

    def test_expansion_mc_ball(self):
        ball = Ball([0.5, 0], 1.5)
        r = 1.5
        v, _ = dblquad(lambda y, x: self.e.density([x, y]), -1.0, 2.0,
                       lambda x: -np.sqrt(max(r**2 - (x - 0.5)**2, 0)), lambda x: np.sqrt(max(r**2 - (x - 0.5)**2, 0)),
                       epsabs=1e-10, epsrel=1e-10)
        est, se = expansion_measure_mc(self.e, ball, 200000, 11)
        self.assertLess(abs(est - v), 5 * se)

    def test_symmetric_halfspace(self):
        est, se = expansion_measure_mc(self.e, HalfSpace([0.6, 0.8], 0.0), 100000, 5)
        self.assertLess(abs(est - 0.5), 5 * se)

    def test_expansion_measure_dispatch(self):
        b = Box([-1, -1], [1, 1])
        self.assertEqual(expansion_measure(self.e, b), expansion_measure_box(self.e, b))
        ball = Ball([0, 0], 1.5)
        self.assertEqual(expansion_measure(self.e, ball, N=100000, seed=2),
                         expansion_measure_mc(self.e, ball, 100000, 2)[0])
        with self.assertRaises(ValueError):
            expansion_measure(self.e, ball)


if __name__ == '__main__':
    unittest.main()
