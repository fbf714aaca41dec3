import unittest
from math import factorial

import casadi as cs
import numpy as np
from numpy.testing import assert_allclose
from scipy.integrate import quad

from edgekit import hermite_coeffs, hermite_eval, gaussian_derivative, gaussian_partial_integral, \
    gaussian_cdf, gaussian_pdf, enumerate_up_to, MultiIndex
from edgekit.hermite import hermite_product, gaussian_density
from edgekit.casadi_helpers import gaussian_expr, hermite_expr


class HermiteTests(unittest.TestCase):

    def test_coefficients(self):
        self.assertEqual(hermite_coeffs(0).coeffs, (1,))
        self.assertEqual(hermite_coeffs(3).coeffs, (0, -3, 0, 1))
        self.assertEqual(hermite_coeffs(4).coeffs, (3, 0, -6, 0, 1))
        self.assertEqual(hermite_coeffs(6).coeffs, (-15, 0, 45, 0, -15, 0, 1))
        with self.assertRaises(ValueError):
            hermite_coeffs(13)
        self.assertEqual(len(hermite_coeffs(12).coeffs), 13)
        with self.assertRaises(ValueError):
            gaussian_derivative((7, 6), [0.1, 0.2])

    def test_recurrence(self):
        x = np.linspace(-5, 5, 41)
        for n in range(1, 12):
            assert_allclose(hermite_eval(n + 1, x), x * hermite_eval(n, x) - n * hermite_eval(n - 1, x),
                            rtol=1e-12, atol=1e-9)

    def test_orthogonality(self):
        for m in range(6):
            for n in range(6):
                v, _ = quad(lambda x: hermite_eval(m, x) * hermite_eval(n, x) * gaussian_pdf(x), -np.inf, np.inf)
                self.assertAlmostEqual(v, factorial(n) if m == n else 0, places=8)

    def test_product_vectorised(self):
        x = np.array([[0.5, -1.0, 2.0], [1.5, 0.0, -0.25]])
        expected = hermite_eval(2, x[0]) * hermite_eval(3, x[1])
        assert_allclose(hermite_product((2, 3), x), expected)
        self.assertEqual(hermite_product((0, 0), [1.0, 2.0]), 1)

    def test_cdf(self):
        self.assertEqual(gaussian_cdf(0.0), 0.5)
        self.assertAlmostEqual(float(gaussian_cdf(1.959963984540054)), 0.975, places=14)
        self.assertAlmostEqual(float(gaussian_pdf(0.0)), 0.3989422804014327, places=16)

    def test_derivative_finite_differences(self):
        rng = np.random.default_rng(2)
        h = 1e-5
        for k in (1, 2, 3):
            for nu in enumerate_up_to(k, 4):
                for _ in range(5):
                    x = rng.uniform(-2.5, 2.5, size=k)
                    for i in range(k):
                        e = np.zeros(k)
                        e[i] = h
                        fd = (gaussian_derivative(nu, x + e) - gaussian_derivative(nu, x - e)) / (2 * h)
                        up = nu + MultiIndex.unit(k, i)
                        self.assertAlmostEqual(gaussian_derivative(up, x), fd, delta=1e-6)

    def test_derivative_against_casadi(self):
        x = cs.SX.sym("x", 2)
        phi = gaussian_expr(x)
        grad = cs.gradient(phi, x)
        hess, _ = cs.hessian(phi, x)
        third = cs.jacobian(hess[0, 0], x)
        f = cs.Function("f", [x], [grad, hess, third])
        for point in ([0.3, -1.2], [1.7, 0.4], [-2.0, 2.5]):
            g, H, T = [np.array(v) for v in f(point)]
            self.assertAlmostEqual(gaussian_derivative((1, 0), point), g[0, 0], places=13)
            self.assertAlmostEqual(gaussian_derivative((0, 1), point), g[1, 0], places=13)
            self.assertAlmostEqual(gaussian_derivative((2, 0), point), H[0, 0], places=13)
            self.assertAlmostEqual(gaussian_derivative((1, 1), point), H[0, 1], places=13)
            self.assertAlmostEqual(gaussian_derivative((3, 0), point), T[0, 0], places=13)
            self.assertAlmostEqual(gaussian_derivative((2, 1), point), T[0, 1], places=13)

    def test_hermite_expr(self):
        x = cs.SX.sym("x")
        f = cs.Function("f", [x], [hermite_expr(5, x)])
        for v in (-1.3, 0.0, 2.2):
            self.assertAlmostEqual(float(f(v)), hermite_eval(5, v), places=12)

    def test_partial_integral(self):
        for n in range(6):
            for a, b in [(-np.inf, 0.3), (-1.2, 2.0), (0.5, np.inf), (2.0, 6.0), (-np.inf, np.inf)]:
                v, _ = quad(lambda x: gaussian_derivative((n,), [x]), a, b, epsabs=1e-13, epsrel=1e-13)
                self.assertAlmostEqual(gaussian_partial_integral(n, a, b), v, delta=1e-9)
        self.assertEqual(gaussian_partial_integral(3, -np.inf, np.inf), 0.0)
        with self.assertRaises(ValueError):
            gaussian_partial_integral(0, 1.0, 0.0)

    def test_density(self):
        self.assertAlmostEqual(float(gaussian_density([0.0, 0.0])), 1 / (2 * np.pi), places=15)


if __name__ == '__main__':
    unittest.main()
