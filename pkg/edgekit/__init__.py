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
edgekit: multivariate Edgeworth corrections for weighted sums of i.i.d.
standardized random vectors, with exact and Monte Carlo oracles and a rate
experiment harness.
"""

__version__ = "0.1.0"

from .multiindex import MultiIndex, enumerate_degree, enumerate_up_to, mi_factorial, monomial, \
    parse_multi_index, format_multi_index
from .moments import MomentSet, DistributionSpec, get_spec, analytic_moments, empirical_moments, \
    check_standardized
from .cumulants import CumulantSet, moments_to_cumulants, cumulants_to_moments, cumulants_of_spec, \
    weighted_sum_cumulants, drop_degree
from .hermite import hermite_coeffs, hermite_eval, gaussian_derivative, gaussian_partial_integral, \
    gaussian_cdf, gaussian_pdf
from .edgeworth import EdgeworthExpansion, phat_polynomial, pr_density, expansion_density, \
    lemma_correction, closed_form_g_density, bobkov_g_cdf, expected_lp, lp_norm
from .measures import Box, Ball, HalfSpace, parse_set, format_set, gaussian_measure, \
    expansion_measure_box, expansion_measure_mc, expansion_measure
from .weighted_sums import ThetaVector, sample_sphere, equal_weights, sample_weighted_sum, \
    empirical_probability, exact_box_probability, exact_cdf_table, read_theta, write_theta
from .families import HalfLineFamily, IntervalFamily, OrthantFamily, ExplicitFamily
from .report import RateReport
from .harness import ExperimentConfig, delta_for_theta, rate_experiment, bobkov_check
from .errors import ConfigError, NumericError, DimensionError
