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

"""Finite set families replacing the supremum over all convex sets.

A family is called with no arguments and returns its list of sets.
"""

from itertools import product, combinations

import numpy as np
from numpy import inf

from .measures import Box, parse_set
from .errors import ConfigError


class SetFamily:
    """Grid of anchor points on [min, max] with ``points`` points per axis."""
    name = None

    def __init__(self, k, min=-4.0, max=4.0, points=41):
        if k < 1:
            raise ConfigError("Family dimension must be positive, got %d." % k)
        if points < 1 or min > max:
            raise ConfigError("Bad family grid: [%g, %g] with %d points." % (min, max, points))
        self.k = k
        self.min = min
        self.max = max
        self.points = points

    def anchors(self):
        return list(np.linspace(self.min, self.max, self.points))

    def __call__(self):
        raise NotImplementedError

    @property
    def boxes_only(self):
        return True

    def __len__(self):
        return len(self())

    def describe(self):
        return {"name": self.name, "min": self.min, "max": self.max, "points": self.points}


class HalfLineFamily(SetFamily):
    """Half-lines (-inf, x] for x on the grid (k = 1).

    Examples
    --------

    >>> len(HalfLineFamily(1)())  # 41-point grid over [-4, 4]
    41
    """
    name = "halfline"

    def __init__(self, k=1, **kwargs):
        if k != 1:
            raise ConfigError("The halfline family is one-dimensional, got k = %d." % k)
        SetFamily.__init__(self, k, **kwargs)

    def __call__(self):
        return [Box([-inf], [x]) for x in self.anchors()]


class IntervalFamily(SetFamily):
    """Closed intervals [a, b] for all grid pairs a < b (k = 1)."""
    name = "interval"

    def __init__(self, k=1, **kwargs):
        if k != 1:
            raise ConfigError("The interval family is one-dimensional, got k = %d." % k)
        SetFamily.__init__(self, k, **kwargs)

    def __call__(self):
        return [Box([a], [b]) for a, b in combinations(self.anchors(), 2)]


class OrthantFamily(SetFamily):
    """Orthant boxes prod_i (-inf, x_i] anchored on a ``points``-per-axis grid."""
    name = "orthant"

    def __init__(self, k, points=9, **kwargs):
        SetFamily.__init__(self, k, points=points, **kwargs)

    def __call__(self):
        return [Box.orthant(corner) for corner in product(self.anchors(), repeat=self.k)]


class ExplicitFamily(SetFamily):
    """Explicit list of sets in the set grammar."""
    name = "sets"

    def __init__(self, k, sets):
        self.k = k
        self.sets = [parse_set(s) if isinstance(s, str) else s for s in sets]
        if not self.sets:
            raise ConfigError("An explicit family needs at least one set.")
        for s in self.sets:
            if s.k != k:
                raise ConfigError("Set '%s' has dimension %d, expected %d." % (s, s.k, k))

    def __call__(self):
        return list(self.sets)

    @property
    def boxes_only(self):
        return all(isinstance(s, Box) for s in self.sets)

    def describe(self):
        return {"name": self.name, "sets": [str(s) for s in self.sets]}


FAMILIES = {c.name: c for c in (HalfLineFamily, IntervalFamily, OrthantFamily)}


def default_family(k):
    """Half-lines on 41 points for k = 1, orthants on 9 points per axis otherwise."""
    return HalfLineFamily() if k == 1 else OrthantFamily(k)


def family_from_config(value, k):
    """Family from a config value.

    ``None`` (default family), a name (``"halfline"``, ``"interval"``,
    ``"orthant"``), ``{"name": ..., "min": ..., "max": ..., "points": ...}``
    or ``{"sets": ["box ...", ...]}``.
    """
    if value is None:
        return default_family(k)
    if isinstance(value, str):
        value = {"name": value}
    if not isinstance(value, dict):
        raise ConfigError("Family must be a name or an object, got %r." % (value,))
    value = dict(value)
    if "sets" in value:
        return ExplicitFamily(k, value["sets"])
    name = value.pop("name", None)
    try:
        cls = FAMILIES[name]
    except KeyError:
        raise ConfigError("Unknown family '%s'. Available: %s, sets." % (name, ", ".join(FAMILIES)))
    try:
        return cls(k, **value)
    except TypeError as e:
        raise ConfigError("Bad family options %r: %s" % (value, e))
