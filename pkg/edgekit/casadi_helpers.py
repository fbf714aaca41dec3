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

from math import pi

import casadi as cs
import numpy as np

from .hermite import hermite_coeffs


def DM2numpy(dm, n_out=None):
    """Convert a casadi DM (or list of them) to a squeezed numpy array."""
    if isinstance(dm, (list, tuple)):
        return [DM2numpy(e) for e in dm]
    res = np.array(cs.DM(dm))
    if n_out is not None:
        return res.reshape(n_out)
    return res.squeeze()


def hermite_expr(n, x):
    """He_n(x) as a casadi expression (Horner on the exact coefficients)."""
    coeffs = hermite_coeffs(n).coeffs
    ret = cs.SX(coeffs[-1]) if isinstance(x, cs.SX) else coeffs[-1]
    for c in reversed(coeffs[:-1]):
        ret = ret * x + c
    return ret


def gaussian_expr(x):
    """Standard normal density of the k-vector symbol x."""
    k = x.numel()
    return cs.exp(-0.5 * cs.sumsqr(x)) / (2 * pi)**(k / 2.0)


def correction_expr(terms, x):
    """1 + sum_nu c_nu prod_i He_{nu_i}(x_i) for terms [(c_nu, nu), ...]."""
    ret = cs.SX(1)
    for c, nu in terms:
        term = cs.SX(float(c))
        for i, e in enumerate(nu):
            if e:
                term = term * hermite_expr(e, x[i])
        ret = ret + term
    return ret


def density_function(terms, k, name="density"):
    """casadi Function x -> (density, correction factor).

    The density is phi(x) * (1 + sum_nu c_nu He_nu(x)).
    """
    x = cs.SX.sym("x", k)
    factor = correction_expr(terms, x)
    return cs.Function(name, [x], [gaussian_expr(x) * factor, factor], ["x"], ["density", "factor"])


def evaluate_batch(f, points, output=0):
    """Evaluate a single-input casadi Function on the columns of a (k, N) array."""
    points = np.atleast_2d(np.asarray(points, dtype=float))
    N = points.shape[1]
    res = f.map(N)(cs.DM(points))
    if isinstance(res, (list, tuple)):
        res = res[output]
    return DM2numpy(res, N)
