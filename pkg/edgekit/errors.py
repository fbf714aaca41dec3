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

"""Exception classes raised by edgekit.

The command line front-end maps these onto exit codes:
:class:`ConfigError` gives 2, :class:`NumericError` gives 3.
"""


class ConfigError(ValueError):
    """Invalid experiment configuration, spec name, mode or set description."""


class NumericError(ArithmeticError):
    """A computation produced a non-finite value or failed to converge."""


class DimensionError(ValueError):
    """Vector dimension does not match the dimension of the object."""


def check_dimension(x, k, what="x"):
    """Raise :class:`DimensionError` unless ``x`` has ``k`` entries."""
    if len(x) != k:
        raise DimensionError("%s has dimension %d, expected %d." % (what, len(x), k))
