import unittest
from fractions import Fraction

import numpy as np
from hypothesis import given, settings, strategies as st

from edgekit import get_spec, analytic_moments, moments_to_cumulants, cumulants_to_moments, \
    cumulants_of_spec, weighted_sum_cumulants, drop_degree, equal_weights, CumulantSet, enumerate_up_to
from problems import random_moments, standardized_cumulants, random_discrete_law, convolve, law_moments


class CumulantTests(unittest.TestCase):

    def test_round_trip_exact(self):
        rng = np.random.default_rng(0)
        for k in range(1, 5):
            for _ in range(3):
                ms = random_moments(k, 6, rng)
                cs = moments_to_cumulants(ms)
                self.assertEqual(cs.arithmetic_mode, "exact")
                self.assertEqual(cumulants_to_moments(cs), ms)
                cs = standardized_cumulants(k, rng, m=6, zero_third=False)
                self.assertEqual(moments_to_cumulants(cumulants_to_moments(cs)), cs)

    def test_known_values(self):
        cs = cumulants_of_spec(get_spec("rademacher", 1), 6)
        self.assertEqual([cs[(p,)] for p in range(1, 7)], [0, 1, 0, -2, 0, 16])
        cs = cumulants_of_spec(get_spec("gaussian", 2), 6)
        for alpha, v in cs.items():
            self.assertEqual(v, 1 if alpha.pattern == (2,) else 0)
        cs = cumulants_of_spec(get_spec("asymmetric", 1), 4)
        self.assertEqual(cs[(3,)], Fraction(3, 2))
        self.assertEqual(cs[(4,)], Fraction(1, 4))

    def test_independent_coordinates(self):
        cs = cumulants_of_spec(get_spec("uniform", 3), 4)
        self.assertEqual(cs[(4, 0, 0)], Fraction(-6, 5))
        self.assertEqual(cs[(2, 2, 0)], 0)
        self.assertEqual(cs[(2, 1, 1)], 0)

    def test_float_mode(self):
        ms = analytic_moments(get_spec("rademacher", 1), 4).as_float()
        cs = moments_to_cumulants(ms)
        self.assertEqual(cs.arithmetic_mode, "float")
        self.assertAlmostEqual(cs[(4,)], -2.0, places=14)

    def test_weighted_sum(self):
        base = cumulants_of_spec(get_spec("rademacher", 2), 4)
        cs = weighted_sum_cumulants(base, equal_weights(4))
        self.assertAlmostEqual(cs[(4, 0)], -0.5, places=14)
        self.assertEqual(cs[(2, 0)], 1)
        self.assertIsInstance(cs[(2, 0)], Fraction)
        self.assertEqual(cs[(1, 1)], 0)
        with self.assertRaises(ValueError):
            weighted_sum_cumulants(base, [0.5, 0.5])

    def test_weighted_sum_exact_weights(self):
        base = cumulants_of_spec(get_spec("asymmetric", 1), 4)
        cs = weighted_sum_cumulants(base, [Fraction(3, 5), Fraction(-4, 5)])
        self.assertEqual(cs[(3,)], Fraction(3, 2) * (Fraction(27, 125) - Fraction(64, 125)))
        self.assertEqual(cs[(4,)], Fraction(1, 4) * Fraction(81 + 256, 625))

    def test_drop_degree(self):
        cs = drop_degree(cumulants_of_spec(get_spec("asymmetric", 2), 4), 3)
        self.assertTrue(all(v == 0 for v in cs.of_degree(3).values()))
        self.assertEqual(cs[(4, 0)], Fraction(1, 4))

    def test_sum_of_independent(self):
        rng = np.random.default_rng(5)
        a = standardized_cumulants(2, rng)
        b = standardized_cumulants(2, rng)
        self.assertEqual((a + b)[(4, 0)], a[(4, 0)] + b[(4, 0)])
        with self.assertRaises(ValueError):
            a + standardized_cumulants(1, rng)

    def test_convolution_additivity(self):
        rng = np.random.default_rng(8)
        for k in (1, 2):
            a = random_discrete_law(k, rng)
            b = random_discrete_law(k, rng, atoms=2)
            ca = moments_to_cumulants(law_moments(a, 5))
            cb = moments_to_cumulants(law_moments(b, 5))
            self.assertEqual(moments_to_cumulants(law_moments(convolve(a, b), 5)), ca + cb)

    @given(st.lists(st.integers(min_value=-5, max_value=5), min_size=6, max_size=6),
           st.integers(min_value=1, max_value=4))
    @settings(max_examples=30, deadline=None)
    def test_scaling_homogeneity(self, raw, c):
        # X -> cX multiplies kappa of degree p by c^p
        values = {alpha: Fraction(raw[alpha.degree - 1], alpha.degree) for alpha in enumerate_up_to(1, 6)}
        cs = CumulantSet(1, 6, values)
        ms = cumulants_to_moments(cs)
        scaled = ms.map_values(lambda a, v: v * c**a.degree)
        self.assertEqual(moments_to_cumulants(scaled), cs.scale_by_degree(lambda p: c**p))


if __name__ == '__main__':
    unittest.main()
